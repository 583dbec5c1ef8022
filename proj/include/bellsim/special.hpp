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

#ifndef BELLSIM_SPECIAL_HPP
#define BELLSIM_SPECIAL_HPP

#include <vector>

namespace bellsim {

/// Modified Bessel function of the first kind, order 0.
/// Power series for |x| <= 20, asymptotic expansion above; both branches
/// are accurate to better than 1e-13 relative.
double bessel_i0(double x);

/// Modified Bessel function of the first kind, order 1.
double bessel_i1(double x);

double log_factorial(int n);

/// 1/Gamma(half_num/2) for integer and half-integer arguments.
/// Returns exact 0.0 at the poles (nonpositive integer arguments).
double reciprocal_gamma_half(int half_num);

/// Values of the normalized Hermite functions psi_0..psi_nmax at x,
/// psi_n(x) = (2^n n! sqrt(pi))^{-1/2} e^{-x^2/2} H_n(x).
std::vector<double> hermite_functions(int nmax, double x);

/// Bose-Einstein occupation 1/(e^x - 1) for x = hbar*omega/(kB*T).
double bose_occupation(double hw_over_kt);

} // namespace bellsim

#endif // BELLSIM_SPECIAL_HPP
