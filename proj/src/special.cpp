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

#include "bellsim/special.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {

constexpr double kSeriesAsymptoticCrossover = 20.0;

// Asymptotic series I_nu(z) ~ e^z/sqrt(2 pi z) * sum_k t_k with
// t_k = t_{k-1} * ((2k-1)^2 - 4 nu^2) / (8 z k).  Usable once the
// truncation tail e^{-2z} is below double precision (z >= 20).
double bessel_i_asymptotic(double z, double mu)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double c = 2.0 * k - 1.0;
        term *= (c * c - mu) / (8.0 * z * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return std::exp(z) / std::sqrt(2.0 * M_PI * z) * sum;
}

} // namespace

double bessel_i0(double x)
{
    const double z = std::abs(x);
    if (z <= kSeriesAsymptoticCrossover) {
        // sum_k (z^2/4)^k / (k!)^2, all terms positive
        const double q = 0.25 * z * z;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k <= 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-18 * sum) {
                break;
            }
        }
        return sum;
    }
    return bessel_i_asymptotic(z, 0.0);
}

double bessel_i1(double x)
{
    const double z = std::abs(x);
    double result;
    if (z <= kSeriesAsymptoticCrossover) {
        // (z/2) * sum_k (z^2/4)^k / (k! (k+1)!)
        const double q = 0.25 * z * z;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k <= 200; ++k) {
            term *= q / (static_cast<double>(k) * (k + 1));
            sum += term;
            if (term < 1e-18 * sum) {
                break;
            }
        }
        result = 0.5 * z * sum;
    } else {
        result = bessel_i_asymptotic(z, 4.0);
    }
    return x < 0.0 ? -result : result;
}

double log_factorial(int n)
{
    if (n < 0) {
        throw std::invalid_argument("log_factorial: negative argument");
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double reciprocal_gamma_half(int half_num)
{
    if (half_num % 2 == 0) {
        // integer argument n = half_num/2
        const int n = half_num / 2;
        if (n <= 0) {
            return 0.0; // pole of Gamma
        }
        return std::exp(-log_factorial(n - 1));
    }
    constexpr double kHalfLogPi = 0.57236494292470008707; // log(sqrt(pi))
    if (half_num <= 1) {
        // x = 1/2 - k with k >= 0: 1/Gamma = (-1)^k (2k)! / (4^k k! sqrt(pi))
        const int k = (1 - half_num) / 2;
        const double lg = log_factorial(2 * k) - k * std::log(4.0)
                          - log_factorial(k) - kHalfLogPi;
        return (k % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
    }
    // x = 1/2 + j with j >= 1: 1/Gamma = 4^j j! / ((2j)! sqrt(pi))
    const int j = (half_num - 1) / 2;
    const double lg = j * std::log(4.0) + log_factorial(j)
                      - log_factorial(2 * j) - kHalfLogPi;
    return std::exp(lg);
}

std::vector<double> hermite_functions(int nmax, double x)
{
    if (nmax < 0) {
        throw std::invalid_argument("hermite_functions: nmax < 0");
    }
    std::vector<double> psi(nmax + 1);
    psi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (nmax == 0) {
        return psi;
    }
    psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int n = 1; n < nmax; ++n) {
        psi[n + 1] = std::sqrt(2.0 / (n + 1.0)) * x * psi[n]
                     - std::sqrt(n / (n + 1.0)) * psi[n - 1];
    }
    return psi;
}

double bose_occupation(double hw_over_kt)
{
    if (hw_over_kt <= 0.0) {
        throw std::invalid_argument("bose_occupation: requires positive hbar*omega/kB*T");
    }
    return 1.0 / std::expm1(hw_over_kt);
}

} // namespace bellsim
