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

#ifndef BELLSIM_MODELS_HPP
#define BELLSIM_MODELS_HPP

#include <string>
#include <vector>

#include "bellsim/lindblad.hpp"

namespace bellsim {

/// Physical parameters of the driven three-mode parametric oscillator and
/// its pump-eliminated two-mode reduction.  All rates and frequencies are
/// in the same dimensionless frequency unit.
struct ModelSpec {
    double kappa = 0.15;   // inter-mode coupling
    Complex E = 0.094;     // pump drive amplitude (real in all stock setups)
    double gamma0 = 1.0;   // pump dissipation
    double gamma1 = 0.0;   // signal single-phonon dissipation
    double gamma2 = 0.0;   // idler single-phonon dissipation
    double Delta0 = 0.0;   // mode-matching detuning
    double DeltaL = 0.0;   // drive detuning
    double N1 = 0.0;       // signal thermal occupation
    double N2 = 0.0;       // idler thermal occupation
    std::vector<int> dims = {12, 12}; // per-mode truncations (2 or 3 modes)

    /// Steady-state amplitude parameter r = sqrt(2|E|/kappa); meaningful
    /// for the resonant (DeltaL = 0), real-drive case.
    double r() const;

    /// Throws on invalid parameters; returns human-readable warnings
    /// (e.g. the pump-elimination hierarchy gamma0 >> gamma1, gamma2 not
    /// satisfied).
    std::vector<std::string> validate() const;

    CompositeSpace two_mode_space() const;
    CompositeSpace three_mode_space() const;
};

/// Pump-eliminated interaction parameters.
struct EffectiveParams {
    double gamma_2ph; // two-phonon dissipation rate
    Complex mu;       // two-mode squeezing strength
    double chi;       // cross-Kerr strength (zero on resonance)
    double r;         // sqrt(2|E|/kappa)
};

EffectiveParams effective_params(const ModelSpec& spec);

/// Rotating-frame three-mode Hamiltonian
///   DeltaL n0 + sum_k Delta_k n_k + i kappa (a1+ a2+ a0 - a1 a2 a0+)
///   - i (E a0+ - E* a0),
/// with Delta_1 = Delta_2 = (Delta0 - DeltaL)/2.  Mode order (pump,
/// signal, idler); spec.dims must have three entries.
OperatorMatrix three_mode_hamiltonian(const ModelSpec& spec);

/// Collapse set of the full three-mode master equation (pump at zero
/// temperature, signal/idler at N1, N2).
std::vector<CollapseTerm> three_mode_collapses(const ModelSpec& spec);

struct TwoModeModel {
    OperatorMatrix hamiltonian;
    std::vector<CollapseTerm> collapses;
    EffectiveParams params;
};

/// Effective two-mode model: Hamiltonian
///   sum_k Delta_k n_k + i (mu a1+ a2+ - mu* a1 a2) + chi n1 n2,
/// two-phonon dissipation gamma_2ph D[a1 a2] plus the thermal
/// single-phonon channels of each mode.  spec.dims must have two entries.
TwoModeModel two_mode_effective_model(const ModelSpec& spec);

/// Closed-form steady state of the ideal two-mode model
/// (gamma1 = gamma2 = 0):
///   rho = (1/I0(2 r^2)) sum_{m,n} r^{2m+2n}/(m! n!) |m,m><n,n|.
/// Throws if the truncation leaves an untruncated-tail weight >= 1e-8.
DensityMatrix analytic_steady_state(double r, const std::vector<int>& dims);

/// Var(x1 - x2) of the analytic steady state, normalized so the vacuum
/// value is 1:  1 + 2 r^2 I1(2 r^2)/I0(2 r^2) - 2 r^2.
double var_x_diff_analytic(double r);

/// Initial state for transient runs: thermal product at (N1, N2); the
/// vacuum when both are zero.
DensityMatrix initial_two_mode_state(const ModelSpec& spec);

} // namespace bellsim

#endif // BELLSIM_MODELS_HPP
