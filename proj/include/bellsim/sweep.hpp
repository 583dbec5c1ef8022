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

#ifndef BELLSIM_SWEEP_HPP
#define BELLSIM_SWEEP_HPP

#include <string>
#include <vector>

#include "bellsim/models.hpp"
#include "bellsim/observables.hpp"
#include "bellsim/output.hpp"
#include "bellsim/quadbell.hpp"

namespace bellsim {

/// Scaled time used on all transient axes: tau = t * kappa^2 / gamma0
/// (time in units of gamma0/kappa^2, the violation-onset scale).
double scaled_time_unit(const ModelSpec& spec);

struct TransientOptions {
    double varphi = M_PI / 4.0;
    double tmax_scaled = 5.0;
    int nt = 101;
    EvolveOptions evolve;
};

struct TransientResult {
    ResultTable table;
    bool violated = false;
    double t_on_scaled = 0.0;  // first contiguous window with normalized B > 1
    double t_off_scaled = 0.0; // last sampled time of that window
};

/// Time series of the normalized Bell quantities and the supporting
/// observables for the effective two-mode model, starting from the
/// thermal (vacuum when N1 = N2 = 0) state.
TransientResult run_transient(const ModelSpec& spec, const TransientOptions& opts,
                              const QuadratureKernel& kernel);

struct SteadyOptions {
    SteadyStateStrategy strategy = SteadyStateStrategy::LongTime;
    double varphi = M_PI / 4.0;
    double wigner_min = -4.0;
    double wigner_max = 4.0;
    int wigner_n = 81;
    double pdf_min = -4.0;
    double pdf_max = 4.0;
    int pdf_n = 81;
};

struct SteadyReport {
    ResultTable summary; // scalar observables as one-row columns
    ResultTable fock;    // n, p1, p2
    ResultTable wigner;  // x, p, W (long format)
    ResultTable pdf;     // X1, X2, p (long format at theta = phi = 0)
};

SteadyReport run_steady(const ModelSpec& spec, const SteadyOptions& opts,
                        const QuadratureKernel& kernel);

struct SweepAxis {
    std::string name; // one of t, kappa, E, gamma0, varphi, N_thermal
    std::vector<double> grid;
};

struct SweepPlan {
    ModelSpec model;
    SweepAxis axis1;
    SweepAxis axis2;
    double varphi = M_PI / 4.0;      // fixed angle when varphi is not an axis
    double tmax_scaled = 5.0;        // sample time when t is not an axis
    int threads = 0;                 // 0 = hardware concurrency
    long max_points = 10000;
    EvolveOptions evolve;
};

struct SweepResult {
    ResultTable table;     // axis1, axis2, b_ch_norm, b_chsh_norm
    RealMatrix chsh_norm;  // (axis1, axis2) grid
    RealMatrix ch_norm;
    bool regions_coincide = true; // CH and CHSH violation cells identical
    int missing = 0;              // grid points lost to engine errors
};

/// Normalized Bell quantities over a 2D parameter grid.  Grid points are
/// independent jobs on a worker pool; a failing point is recorded as
/// missing, not a run abort.
SweepResult run_sweep(const SweepPlan& plan);

/// argmax over r of B_CHSH evaluated on the analytic steady states at
/// varphi = pi/4 (cross-check for the series root).
double optimal_r_grid_argmax(double r_lo, double r_hi, int n,
                             const QuadratureKernel& kernel);

struct EliminationOptions {
    double tmax_scaled = 2.0;
    int nt = 15;
    double bound = 0.05; // relative agreement target
    EvolveOptions evolve;
};

struct EliminationReport {
    ResultTable curves; // t_scaled, n1_3mode, n1_2mode, vardiff_3mode, ...
    double dev_n1 = 0.0;
    double dev_var = 0.0;
    bool pass = false;
};

/// Full three-mode model vs the pump-eliminated effective model:
/// signal/idler observables over the transient, with the relative
/// deviation max_t|a-b| / max_t max(|a|,|b|) per observable.
EliminationReport run_elimination_check(const ModelSpec& spec,
                                        const EliminationOptions& opts);

} // namespace bellsim

#endif // BELLSIM_SWEEP_HPP
