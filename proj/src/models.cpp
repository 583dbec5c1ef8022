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

#include "bellsim/models.hpp"

#include <cmath>
#include <sstream>

#include "bellsim/special.hpp"

namespace bellsim {

double ModelSpec::r() const
{
    if (kappa <= 0.0) {
        throw DimensionError("ModelSpec::r: requires kappa > 0");
    }
    return std::sqrt(2.0 * std::abs(E) / kappa);
}

std::vector<std::string> ModelSpec::validate() const
{
    if (gamma0 < 0.0 || gamma1 < 0.0 || gamma2 < 0.0) {
        throw DimensionError("ModelSpec: dissipation rates must be nonnegative");
    }
    if (N1 < 0.0 || N2 < 0.0) {
        throw DimensionError("ModelSpec: thermal occupations must be nonnegative");
    }
    if (dims.size() != 2 && dims.size() != 3) {
        throw DimensionError("ModelSpec: dims must list 2 (signal, idler) or "
                             "3 (pump, signal, idler) truncations");
    }
    for (int d : dims) {
        if (d < 2) {
            throw DimensionError("ModelSpec: every truncation must be >= 2");
        }
    }
    std::vector<std::string> warnings;
    const double gmax = std::max(gamma1, gamma2);
    if (gmax > 0.0 && gamma0 < 10.0 * gmax) {
        std::ostringstream os;
        os << "pump elimination hierarchy weak: gamma0 = " << gamma0
           << " < 10*max(gamma1, gamma2) = " << 10.0 * gmax;
        warnings.push_back(os.str());
    }
    return warnings;
}

CompositeSpace ModelSpec::two_mode_space() const
{
    if (dims.size() == 2) {
        return CompositeSpace({ModeSpace{dims[0]}, ModeSpace{dims[1]}});
    }
    if (dims.size() == 3) {
        return CompositeSpace({ModeSpace{dims[1]}, ModeSpace{dims[2]}});
    }
    throw DimensionError("ModelSpec: dims must list 2 or 3 truncations");
}

CompositeSpace ModelSpec::three_mode_space() const
{
    if (dims.size() != 3) {
        throw DimensionError("ModelSpec: three-mode space needs dims = (pump, signal, idler)");
    }
    return CompositeSpace({ModeSpace{dims[0]}, ModeSpace{dims[1]}, ModeSpace{dims[2]}});
}

EffectiveParams effective_params(const ModelSpec& spec)
{
    const Complex pole(0.5 * spec.gamma0, spec.DeltaL);
    const double pole2 = std::norm(pole);
    EffectiveParams p{};
    p.gamma_2ph = spec.kappa * spec.kappa * spec.gamma0 * 0.5 / pole2;
    p.mu = spec.E * spec.kappa / pole;
    p.chi = -spec.kappa * spec.kappa * spec.DeltaL / pole2;
    p.r = spec.r();
    return p;
}

OperatorMatrix three_mode_hamiltonian(const ModelSpec& spec)
{
    const CompositeSpace space = spec.three_mode_space();
    const OperatorMatrix a0 = annihilation(space, 0);
    const OperatorMatrix a1 = annihilation(space, 1);
    const OperatorMatrix a2 = annihilation(space, 2);
    const double delta12 = 0.5 * (spec.Delta0 - spec.DeltaL);
    const Complex i(0.0, 1.0);

    OperatorMatrix h = Complex(spec.DeltaL) * number_op(space, 0)
                       + Complex(delta12) * (number_op(space, 1) + number_op(space, 2));
    OperatorMatrix coupling = a1.adjoint() * a2.adjoint() * a0;
    h = h + i * spec.kappa * (coupling - coupling.adjoint());
    OperatorMatrix drive = spec.E * a0.adjoint() - std::conj(spec.E) * a0;
    return h - i * drive;
}

std::vector<CollapseTerm> three_mode_collapses(const ModelSpec& spec)
{
    const CompositeSpace space = spec.three_mode_space();
    std::vector<CollapseTerm> cols;
    cols.push_back({annihilation(space, 0), spec.gamma0}); // pump at N0 = 0
    cols.push_back({annihilation(space, 1), spec.gamma1 * (spec.N1 + 1.0)});
    cols.push_back({creation(space, 1), spec.gamma1 * spec.N1});
    cols.push_back({annihilation(space, 2), spec.gamma2 * (spec.N2 + 1.0)});
    cols.push_back({creation(space, 2), spec.gamma2 * spec.N2});
    return cols;
}

TwoModeModel two_mode_effective_model(const ModelSpec& spec)
{
    if (spec.dims.size() != 2) {
        throw DimensionError("two_mode_effective_model: dims must list exactly "
                             "the signal and idler truncations");
    }
    const CompositeSpace space = spec.two_mode_space();
    const EffectiveParams params = effective_params(spec);
    const OperatorMatrix a1 = annihilation(space, 0);
    const OperatorMatrix a2 = annihilation(space, 1);
    const double delta12 = 0.5 * (spec.Delta0 - spec.DeltaL);
    const Complex i(0.0, 1.0);

    OperatorMatrix h = Complex(delta12) * (number_op(space, 0) + number_op(space, 1));
    OperatorMatrix pair_up = a1.adjoint() * a2.adjoint();
    h = h + i * (params.mu * pair_up - std::conj(params.mu) * pair_up.adjoint());
    if (params.chi != 0.0) {
        h = h + Complex(params.chi) * (number_op(space, 0) * number_op(space, 1));
    }

    std::vector<CollapseTerm> cols;
    cols.push_back({a1 * a2, params.gamma_2ph});
    cols.push_back({a1, spec.gamma1 * (spec.N1 + 1.0)});
    cols.push_back({a1.adjoint(), spec.gamma1 * spec.N1});
    cols.push_back({a2, spec.gamma2 * (spec.N2 + 1.0)});
    cols.push_back({a2.adjoint(), spec.gamma2 * spec.N2});
    return TwoModeModel{std::move(h), std::move(cols), params};
}

DensityMatrix analytic_steady_state(double r, const std::vector<int>& dims)
{
    if (r < 0.0) {
        throw DimensionError("analytic_steady_state: r must be nonnegative");
    }
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw DimensionError("analytic_steady_state: needs two equal mode truncations");
    }
    const int d = dims[0];
    const double norm = bessel_i0(2.0 * r * r);

    // untruncated tail of the diagonal weights r^{4m}/(m!)^2 / I0(2 r^2)
    double head = 0.0;
    double w = 1.0; // r^{4m}/(m!)^2
    for (int m = 0; m < d; ++m) {
        head += w;
        w *= std::pow(r, 4) / ((m + 1.0) * (m + 1.0));
    }
    const double tail = 1.0 - head / norm;
    if (tail >= 1e-8) {
        std::ostringstream os;
        os << "analytic_steady_state: truncation " << d << " too small for r = " << r
           << " (tail " << tail << ")";
        throw NumericalError(os.str());
    }

    const CompositeSpace space({ModeSpace{d}, ModeSpace{d}});
    DenseMatrix rho = DenseMatrix::Zero(space.total_dim(), space.total_dim());
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const double lg = (m + n) * 2.0 * std::log(std::max(r, 1e-300))
                              - log_factorial(m) - log_factorial(n);
            const double val = (r == 0.0 && m + n > 0) ? 0.0 : std::exp(lg);
            rho(m * d + m, n * d + n) = val / norm;
        }
    }
    return DensityMatrix(space, std::move(rho));
}

double var_x_diff_analytic(double r)
{
    if (r < 0.0) {
        throw DimensionError("var_x_diff_analytic: r must be nonnegative");
    }
    if (r == 0.0) {
        return 1.0;
    }
    const double z = 2.0 * r * r;
    return 1.0 + z * bessel_i1(z) / bessel_i0(z) - z;
}

DensityMatrix initial_two_mode_state(const ModelSpec& spec)
{
    return thermal_state(spec.two_mode_space(), {spec.N1, spec.N2});
}

} // namespace bellsim
