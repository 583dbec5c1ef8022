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

#ifndef BELLSIM_OBSERVABLES_HPP
#define BELLSIM_OBSERVABLES_HPP

#include <vector>

#include "bellsim/fock.hpp"

namespace bellsim {

/// Var(x_theta) of one mode in the x = a + a^dag convention (vacuum -> 1,
/// thermal N -> 2N + 1).
double quadrature_variance(const DensityMatrix& rho, int mode, double theta);

/// Variance of the two-mode difference quadrature, normalized so the
/// vacuum value is 1, i.e. Var((x1 - x2)/sqrt(2)) with x = a + a^dag.
double two_mode_diff_variance(const DensityMatrix& rho);

/// Same for the sum quadrature (x1 + x2)/sqrt(2).
double two_mode_sum_variance(const DensityMatrix& rho);

/// Logarithmic negativity E_N = log2 ||rho^{T2}||_1 of a two-mode state,
/// via the eigenvalues of the partial transpose over mode 2.  Small
/// negative numerical noise is clamped to zero.
double logarithmic_negativity(const DensityMatrix& rho);

/// Diagonal of the reduced state of one mode.
std::vector<double> fock_distribution(const DensityMatrix& rho, int mode);

struct WignerGrid {
    std::vector<double> xs;
    std::vector<double> ps;
    RealMatrix values; // values(i, j) = W(xs[i], ps[j])

    /// Trapezoid-free cell-sum integral (grid-limited accuracy).
    double integral() const;
    double min_value() const { return values.minCoeff(); }
};

/// Single-mode Wigner function of the reduced state on a grid, in the
/// convention integral W dx dp = 1 with vacuum W(0,0) = 1/pi.  Fock-basis
/// Laguerre expansion.
WignerGrid wigner_single_mode(const DensityMatrix& rho, int mode,
                              const std::vector<double>& xs,
                              const std::vector<double>& ps);

std::vector<double> linspace(double lo, double hi, int n);

} // namespace bellsim

#endif // BELLSIM_OBSERVABLES_HPP
