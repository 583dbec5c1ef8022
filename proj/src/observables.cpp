// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsim/observables.hpp"

#include <cmath>

#include "bellsim/special.hpp"

namespace bellsim {

double quadrature_variance(const DensityMatrix& rho, int mode, double theta)
{
    const OperatorMatrix x = quadrature_op(rho.space, mode, theta);
    const double m1 = std::real(expectation(rho, x));
    const double m2 = std::real(expectation(rho, x * x));
    return m2 - m1 * m1;
}

namespace {

double diff_variance(const DensityMatrix& rho, double sign)
{
    if (rho.space.num_modes() != 2) {
        throw DimensionError("two-mode variance needs a two-mode state");
    }
    const OperatorMatrix d = quadrature_op(rho.space, 0, 0.0)
                             + Complex(sign) * quadrature_op(rho.space, 1, 0.0);
    const double m1 = std::real(expectation(rho, d));
    const double m2 = std::real(expectation(rho, d * d));
    return 0.5 * (m2 - m1 * m1);
}

} // namespace

double two_mode_diff_variance(const DensityMatrix& rho)
{
    return diff_variance(rho, -1.0);
}

double two_mode_sum_variance(const DensityMatrix& rho)
{
    return diff_variance(rho, +1.0);
}

double logarithmic_negativity(const DensityMatrix& rho)
{
    if (rho.space.num_modes() != 2) {
        throw DimensionError("logarithmic_negativity needs a two-mode state");
    }
    const int d1 = rho.space.mode_dim(0);
    const int d2 = rho.space.mode_dim(1);
    DenseMatrix pt(rho.mat.rows(), rho.mat.cols());
    for (int m = 0; m < d1; ++m) {
        for (int p = 0; p < d1; ++p) {
            for (int n = 0; n < d2; ++n) {
                for (int q = 0; q < d2; ++q) {
                    pt(m * d2 + q, p * d2 + n) = rho.mat(m * d2 + n, p * d2 + q);
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (pt + pt.adjoint()),
                                                  Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("logarithmic_negativity: eigen-decomposition failed");
    }
    const double trace_norm = es.eigenvalues().cwiseAbs().sum();
    const double en = std::log2(trace_norm);
    return en < 0.0 ? 0.0 : en;
}

std::vector<double> fock_distribution(const DensityMatrix& rho, int mode)
{
    const DensityMatrix red = partial_trace(rho, {mode});
    const long d = red.space.total_dim();
    std::vector<double> p(d);
    for (long n = 0; n < d; ++n) {
        p[n] = std::real(red.mat(n, n));
    }
    return p;
}

double WignerGrid::integral() const
{
    if (xs.size() < 2 || ps.size() < 2) {
        return 0.0;
    }
    const double dx = xs[1] - xs[0];
    const double dp = ps[1] - ps[0];
    return values.sum() * dx * dp;
}

namespace {

// Wigner transform of |m><n| at alpha, m >= n:
//   (2/pi) (-1)^n sqrt(n!/m!) (2 conj(alpha))^{m-n} e^{-2|alpha|^2}
//     L_n^{m-n}(4 |alpha|^2)
Complex wigner_mn(int m, int n, Complex alpha)
{
    const double r2 = 4.0 * std::norm(alpha);
    const int k = m - n;
    // generalized Laguerre L_n^k at r2
    double lprev = 1.0;
    double lcur = 1.0 + k - r2;
    if (n == 0) {
        lcur = lprev;
    } else {
        for (int i = 1; i < n; ++i) {
            const double lnext = ((2.0 * i + k + 1.0 - r2) * lcur - (i + k) * lprev) / (i + 1.0);
            lprev = lcur;
            lcur = lnext;
        }
    }
    const double amp = std::exp(0.5 * (log_factorial(n) - log_factorial(m))
                                - 2.0 * std::norm(alpha));
    const Complex pw = std::pow(2.0 * std::conj(alpha), k);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return (2.0 / M_PI) * sign * amp * pw * lcur;
}

} // namespace

WignerGrid wigner_single_mode(const DensityMatrix& rho, int mode,
                              const std::vector<double>& xs,
                              const std::vector<double>& ps)
{
    const DensityMatrix red = partial_trace(rho, {mode});
    const int d = static_cast<int>(red.space.total_dim());

    WignerGrid grid;
    grid.xs = xs;
    grid.ps = ps;
    grid.values = RealMatrix::Zero(xs.size(), ps.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        for (size_t j = 0; j < ps.size(); ++j) {
            // alpha = (x + i p)/sqrt(2): vacuum W(0,0) = 1/pi, integral 1
            const Complex alpha(xs[i] / std::sqrt(2.0), ps[j] / std::sqrt(2.0));
            Complex w = 0.0;
            for (int m = 0; m < d; ++m) {
                w += red.mat(m, m) * wigner_mn(m, m, alpha);
                for (int n = 0; n < m; ++n) {
                    w += 2.0 * (red.mat(m, n) * wigner_mn(m, n, alpha)).real();
                }
            }
            grid.values(i, j) = 0.5 * std::real(w); // d^2alpha = dx dp / 2
        }
    }
    return grid;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * i / (n - 1.0);
    }
    return v;
}

} // namespace bellsim
