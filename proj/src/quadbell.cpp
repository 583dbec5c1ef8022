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

#include "bellsim/quadbell.hpp"

#include <cmath>
#include <sstream>

#include "bellsim/special.hpp"

namespace bellsim {

QuadratureKernel::QuadratureKernel(int max_n) : max_n_(max_n)
{
    if (max_n < 0) {
        throw DimensionError("QuadratureKernel: max_n must be nonnegative");
    }
    const int n = max_n + 1;
    // psi_{2k}(0) by the ratio recursion psi_{2k} = -sqrt((2k-1)/(2k)) psi_{2k-2};
    // psi_{2k+1}'(0) = sqrt(2(2k+1)) psi_{2k}(0).
    std::vector<double> psi0(n + 1, 0.0);
    psi0[0] = std::pow(M_PI, -0.25);
    for (int k = 1; 2 * k <= n; ++k) {
        psi0[2 * k] = -std::sqrt((2.0 * k - 1.0) / (2.0 * k)) * psi0[2 * k - 2];
    }
    std::vector<double> dpsi0(n + 1, 0.0);
    for (int o = 1; o <= n; o += 2) {
        dpsi0[o] = std::sqrt(2.0 * o) * psi0[o - 1];
    }

    halfline_ = RealMatrix::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        halfline_(m, m) = 0.5;
        for (int p = 0; p < n; ++p) {
            if (p == m || (p - m) % 2 == 0) {
                continue;
            }
            // one of m,p is even, the other odd
            halfline_(m, p) = (psi0[m] * dpsi0[p] - psi0[p] * dpsi0[m]) / (2.0 * (p - m));
        }
    }
}

AngleSet parameterized_angles(double varphi)
{
    return AngleSet{-2.0 * varphi, 3.0 * varphi, 0.0, varphi};
}

namespace {

struct TwoModeDims {
    int d1;
    int d2;
};

TwoModeDims require_two_modes(const DensityMatrix& rho)
{
    if (rho.space.num_modes() != 2) {
        throw DimensionError("quadrature Bell quantities need a two-mode state");
    }
    return {rho.space.mode_dim(0), rho.space.mode_dim(1)};
}

std::vector<Complex> phase_table(int dim, double angle)
{
    // e^{i * angle * (col - row)} indexed by (col - row) + dim - 1
    std::vector<Complex> t(2 * dim - 1);
    for (int d = -(dim - 1); d <= dim - 1; ++d) {
        t[d + dim - 1] = std::polar(1.0, angle * d);
    }
    return t;
}

} // namespace

double joint_pdf(const DensityMatrix& rho, double theta, double phi, double X1, double X2)
{
    const auto [d1, d2] = require_two_modes(rho);
    const std::vector<double> psi1 = hermite_functions(d1 - 1, X1);
    const std::vector<double> psi2 = hermite_functions(d2 - 1, X2);
    DenseVector u(d1 * d2);
    for (int m = 0; m < d1; ++m) {
        const Complex um = psi1[m] * std::polar(1.0, -theta * m);
        for (int n = 0; n < d2; ++n) {
            u(m * d2 + n) = um * psi2[n] * std::polar(1.0, -phi * n);
        }
    }
    const Complex val = u.transpose() * (rho.mat * u.conjugate());
    return std::real(val);
}

BinnedProbabilities binned_probabilities(const DensityMatrix& rho, double theta,
                                         double phi, const QuadratureKernel& kernel)
{
    const auto [d1, d2] = require_two_modes(rho);
    if (kernel.max_n() < std::max(d1, d2) - 1) {
        throw DimensionError("binned_probabilities: kernel too small for the state");
    }
    const auto ph1 = phase_table(d1, theta);
    const auto ph2 = phase_table(d2, phi);

    Complex p11 = 0.0, p10 = 0.0, p01 = 0.0, p00 = 0.0;
    for (int m = 0; m < d1; ++m) {
        for (int p = 0; p < d1; ++p) {
            const Complex w1 = ph1[p - m + d1 - 1];
            const double kp1 = kernel.kplus(m, p);
            const double km1 = kernel.kminus(m, p);
            if (kp1 == 0.0 && km1 == 0.0) {
                continue;
            }
            for (int n = 0; n < d2; ++n) {
                for (int q = 0; q < d2; ++q) {
                    const double kp2 = kernel.kplus(n, q);
                    const double km2 = kernel.kminus(n, q);
                    if (kp2 == 0.0 && km2 == 0.0) {
                        continue;
                    }
                    const Complex elem =
                        rho.mat(m * d2 + n, p * d2 + q) * w1 * ph2[q - n + d2 - 1];
                    p11 += elem * (kp1 * kp2);
                    p10 += elem * (kp1 * km2);
                    p01 += elem * (km1 * kp2);
                    p00 += elem * (km1 * km2);
                }
            }
        }
    }
    return BinnedProbabilities{p11.real(), p10.real(), p01.real(), p00.real()};
}

double binned_marginal(const DensityMatrix& rho, int mode, double angle,
                       const QuadratureKernel& kernel)
{
    const auto [d1, d2] = require_two_modes(rho);
    if (mode != 0 && mode != 1) {
        throw DimensionError("binned_marginal: mode must be 0 or 1");
    }
    if (kernel.max_n() < std::max(d1, d2) - 1) {
        throw DimensionError("binned_marginal: kernel too small for the state");
    }
    Complex p = 0.0;
    if (mode == 0) {
        const auto ph = phase_table(d1, angle);
        for (int m = 0; m < d1; ++m) {
            for (int q = 0; q < d1; ++q) {
                const double k = kernel.kplus(m, q);
                if (k == 0.0) {
                    continue;
                }
                Complex diag = 0.0;
                for (int n = 0; n < d2; ++n) {
                    diag += rho.mat(m * d2 + n, q * d2 + n);
                }
                p += diag * ph[q - m + d1 - 1] * k;
            }
        }
    } else {
        const auto ph = phase_table(d2, angle);
        for (int n = 0; n < d2; ++n) {
            for (int q = 0; q < d2; ++q) {
                const double k = kernel.kplus(n, q);
                if (k == 0.0) {
                    continue;
                }
                Complex diag = 0.0;
                for (int m = 0; m < d1; ++m) {
                    diag += rho.mat(m * d2 + n, m * d2 + q);
                }
                p += diag * ph[q - n + d2 - 1] * k;
            }
        }
    }
    return p.real();
}

BellResult bell_result(const DensityMatrix& rho, const AngleSet& angles,
                       const QuadratureKernel& kernel)
{
    const auto corr = [](const BinnedProbabilities& b) {
        return b.p11 + b.p00 - b.p10 - b.p01;
    };
    const BinnedProbabilities tf = binned_probabilities(rho, angles.theta, angles.phi, kernel);
    const BinnedProbabilities tfp =
        binned_probabilities(rho, angles.theta, angles.phi_p, kernel);
    const BinnedProbabilities tpf =
        binned_probabilities(rho, angles.theta_p, angles.phi, kernel);
    const BinnedProbabilities tpfp =
        binned_probabilities(rho, angles.theta_p, angles.phi_p, kernel);

    BellResult res{};
    res.angles = angles;
    res.p11_tf = tf.p11;
    res.p11_tfp = tfp.p11;
    res.p11_tpf = tpf.p11;
    res.p11_tpfp = tpfp.p11;
    res.p1_theta_p = binned_marginal(rho, 0, angles.theta_p, kernel);
    res.p1_phi = binned_marginal(rho, 1, angles.phi, kernel);
    res.b_ch = (tf.p11 + tfp.p11 - tpf.p11 + tpfp.p11) / (res.p1_theta_p + res.p1_phi);
    res.b_chsh = corr(tf) - corr(tpf) + corr(tfp) + corr(tpfp);
    return res;
}

double bell_ch(const DensityMatrix& rho, const AngleSet& angles,
               const QuadratureKernel& kernel)
{
    return bell_result(rho, angles, kernel).b_ch;
}

double bell_chsh(const DensityMatrix& rho, const AngleSet& angles,
                 const QuadratureKernel& kernel)
{
    return bell_result(rho, angles, kernel).b_chsh;
}

double bell_series_f(int n, int m)
{
    // 1/[Gamma(1/2 - n/2) * Gamma(-m/2)]; arguments as halves: (1-n)/2, -m/2
    return reciprocal_gamma_half(1 - n) * reciprocal_gamma_half(-m);
}

BellSeries bell_series_g(double r, double varphi)
{
    if (r <= 0.0) {
        throw DimensionError("bell_series_g: requires r > 0");
    }
    const double log2r2 = std::log(2.0 * r * r);
    constexpr double kLogPi = 1.1447298858494002;
    constexpr double kLog8 = 2.0794415416798357;

    double g = 0.0;
    double dg = 0.0;
    int stable_shells = 0;
    bool any_term = false;
    for (int shell = 1; shell <= 400; ++shell) {
        const double before = g;
        for (int n = 0; n < shell; ++n) {
            const int m = shell - n;
            if (m <= n) {
                break;
            }
            const double df = bell_series_f(n, m) - bell_series_f(m, n);
            if (df == 0.0) {
                continue;
            }
            const double ang = 3.0 * std::cos((n - m) * varphi)
                               - std::cos(3.0 * varphi * (n - m));
            const double logc = kLog8 + shell * log2r2 + kLogPi
                                - 2.0 * (log_factorial(n) + log_factorial(m))
                                - 2.0 * std::log(static_cast<double>(m - n));
            const double term = std::exp(logc) * df * df * ang;
            g += term;
            dg += term * 2.0 * shell / r;
            any_term = true;
        }
        if (any_term && std::abs(g - before) <= 1e-10 * std::abs(g)) {
            if (++stable_shells >= 10) {
                return BellSeries{g, dg};
            }
        } else {
            stable_shells = 0;
        }
    }
    throw NumericalError("bell_series_g: series did not stabilize within 400 shells");
}

double optimal_r(double tolerance)
{
    if (tolerance <= 0.0) {
        throw DimensionError("optimal_r: tolerance must be positive");
    }
    constexpr double kVarphi = M_PI / 4.0;
    const auto stationarity = [](double r) {
        const BellSeries s = bell_series_g(r, kVarphi);
        const double z = 2.0 * r * r;
        return bessel_i0(z) * s.derivative - 4.0 * r * bessel_i1(z) * s.value;
    };

    // The Bell combination G/I0 rises to its maximum and falls beyond it;
    // bracket the first + -> - crossing.
    double lo = 0.1;
    double flo = stationarity(lo);
    double hi = 0.0, fhi = 0.0;
    bool bracketed = false;
    for (double rr = 0.15; rr <= 2.5; rr += 0.05) {
        fhi = stationarity(rr);
        if (flo > 0.0 && fhi <= 0.0) {
            hi = rr;
            bracketed = true;
            break;
        }
        lo = rr;
        flo = fhi;
    }
    if (!bracketed) {
        throw NumericalError("optimal_r: no sign change found in r in [0.1, 2.5]");
    }
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (stationarity(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace bellsim
