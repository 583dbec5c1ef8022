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

#ifndef BELLSIM_QUADBELL_HPP
#define BELLSIM_QUADBELL_HPP

#include "bellsim/fock.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

/// Half-line overlap table of the normalized Hermite functions,
///   K+[m][p] = int_0^inf psi_m(X) psi_p(X) dX.
/// Diagonal entries are exactly 1/2, equal-parity off-diagonal entries
/// vanish, and the mirror half-line is K- = delta - K+.  Built once from
/// the closed form K+[m][p] = (psi_m(0) psi_p'(0) - psi_p(0) psi_m'(0)) /
/// (2(p-m)) via stable recursions on the psi(0) values.
class QuadratureKernel {
public:
    explicit QuadratureKernel(int max_n);

    int max_n() const { return max_n_; }
    double kplus(int m, int p) const { return halfline_(m, p); }
    double kminus(int m, int p) const { return (m == p ? 1.0 : 0.0) - halfline_(m, p); }
    const RealMatrix& halfline() const { return halfline_; }

private:
    int max_n_;
    RealMatrix halfline_;
};

/// Measurement angles (theta, phi) and primed partners of the Bell test.
struct AngleSet {
    double theta;
    double phi;
    double theta_p;
    double phi_p;
};

/// The single-parameter angle family theta = -2*varphi, phi = 3*varphi,
/// theta' = 0, phi' = varphi.
AngleSet parameterized_angles(double varphi);

/// Sign-binned outcome probabilities for a pair of quadrature
/// measurements at angles (theta, phi); outcome 1 means X > 0.
struct BinnedProbabilities {
    double p11;
    double p10;
    double p01;
    double p00;
};

/// Joint quadrature probability density p(X1, X2) at mode-1 angle theta
/// and mode-2 angle phi.  X is the Hermite-function eigenvariable (X =
/// x/sqrt(2) relative to x = a e^{-i theta} + a+ e^{i theta}); the vacuum
/// density is e^{-X1^2 - X2^2}/pi.  Binning at zero is unaffected by the
/// scale.
double joint_pdf(const DensityMatrix& rho, double theta, double phi, double X1, double X2);

BinnedProbabilities binned_probabilities(const DensityMatrix& rho, double theta,
                                         double phi, const QuadratureKernel& kernel);

/// Single-mode marginal P(X > 0) at the given angle (mode 0 = signal,
/// mode 1 = idler).
double binned_marginal(const DensityMatrix& rho, int mode, double angle,
                       const QuadratureKernel& kernel);

struct BellResult {
    double b_ch;
    double b_chsh;
    // P11 at (theta,phi), (theta,phi'), (theta',phi), (theta',phi')
    double p11_tf;
    double p11_tfp;
    double p11_tpf;
    double p11_tpfp;
    double p1_theta_p; // mode-1 marginal at theta'
    double p1_phi;     // mode-2 marginal at phi
    AngleSet angles;
};

/// CH and CHSH quantities:
///   B_CH   = [P11(t,f) + P11(t,f') - P11(t',f) + P11(t',f')] / [P1(t') + P1(f)]
///   B_CHSH = E(t,f) - E(t',f) + E(t,f') + E(t',f'),
///   E(t,f) = P11 + P00 - P10 - P01.
/// Classical bounds |B_CH| <= 1 and |B_CHSH| <= 2.
BellResult bell_result(const DensityMatrix& rho, const AngleSet& angles,
                       const QuadratureKernel& kernel);

double bell_ch(const DensityMatrix& rho, const AngleSet& angles,
               const QuadratureKernel& kernel);
double bell_chsh(const DensityMatrix& rho, const AngleSet& angles,
                 const QuadratureKernel& kernel);

/// Series G(r) of the steady-state Bell combination at angle varphi, and
/// its derivative dG/dr.  Terms are added shell by shell in n+m until the
/// partial sum is stable to 1e-10 over 10 consecutive shells.
struct BellSeries {
    double value;
    double derivative;
};

BellSeries bell_series_g(double r, double varphi);

/// F(n,m) = [Gamma(1/2 - n/2) Gamma(-m/2)]^{-1}; exactly zero at the
/// Gamma poles (n odd or m even).
double bell_series_f(int n, int m);

/// The r maximizing the steady-state CHSH violation at varphi = pi/4:
/// root of I0(2r^2) dG/dr = 4 r I1(2r^2) G(r), located by a scan for the
/// first sign change and bisection to the given tolerance.
double optimal_r(double tolerance);

} // namespace bellsim

#endif // BELLSIM_QUADBELL_HPP
