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

#ifndef BELLSIM_LINDBLAD_HPP
#define BELLSIM_LINDBLAD_HPP

#include <functional>
#include <vector>

#include "bellsim/fock.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

/// One dissipation channel: rate * D[op], with
/// D[c] rho = c rho c^dag - 1/2 {c^dag c, rho}.
struct CollapseTerm {
    OperatorMatrix op;
    double rate;
};

/// Generator of the master equation
///   d rho/dt = -i[H, rho] + sum_k rate_k D[op_k] rho.
/// Application is matrix-free (sparse operator products on the dense
/// state); the full superoperator matrix is materialized on demand for
/// spaces with total_dim <= 256 (steady-state null-space solves).
class Liouvillian {
public:
    Liouvillian(OperatorMatrix H, std::vector<CollapseTerm> collapses);

    const CompositeSpace& space() const { return space_; }

    /// L(rho) for an arbitrary (not necessarily Hermitian) matrix.
    DenseMatrix apply(const DenseMatrix& rho) const;

    double residual_max(const DenseMatrix& rho) const;

    /// Sparse superoperator in the column-stacking convention
    /// vec(A X B) = (B^T kron A) vec(X).
    SparseMatrix materialize() const;

    /// Coarse magnitude of the fastest rates; used to seed step sizes.
    double rate_scale() const { return rate_scale_; }

    static constexpr long kMaxMaterializeDim = 256;

private:
    CompositeSpace space_;
    SparseMatrix hamiltonian_;
    // Non-Hermitian drift H - (i/2) sum rate * C^dag C; the commutator and
    // anticommutator parts of L collapse into one pair of products with it.
    SparseMatrix drift_;
    SparseMatrix drift_adj_;
    std::vector<std::pair<SparseMatrix, SparseMatrix>> jumps_; // (sqrt(rate)*C, adjoint)
    std::vector<CollapseTerm> collapses_;
    double rate_scale_;
};

Liouvillian build_liouvillian(const OperatorMatrix& H,
                              const std::vector<CollapseTerm>& collapses);

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

struct EvolveStats {
    double max_trace_drift = 0.0;
    double max_hermiticity_defect = 0.0;
};

struct EvolveOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    // Output guards: drift below the bound is renormalized away, above it
    // is an integration failure.
    double trace_drift_bound = 1e-6;
    bool validate_outputs = true;
    Tolerances output_tolerances{1e-8, 1e-6, -1e-8};
    EvolveStats* stats = nullptr; // optional sink for conservation metrics
};

/// Integrates d rho/dt = L(rho) with an embedded Dormand-Prince 5(4)
/// scheme and records the state at each requested time.
TrajectoryRecord evolve(const Liouvillian& L, const DensityMatrix& rho0,
                        const std::vector<double>& t_grid,
                        const EvolveOptions& opts = {});

/// Streaming variant: hands each sampled state to the callback instead of
/// storing the full trajectory.
void evolve_observe(const Liouvillian& L, const DensityMatrix& rho0,
                    const std::vector<double>& t_grid,
                    const std::function<void(int, double, const DensityMatrix&)>& cb,
                    const EvolveOptions& opts = {});

enum class SteadyStateStrategy {
    LongTime,
    NullSpace,
};

struct SteadyStateOptions {
    double residual_tol = 1e-9; // ||L(rho)||_max at convergence
    double max_time = 1e7;      // long-time horizon cap
    int max_iterations = 50;    // inverse-iteration cap
    EvolveOptions evolve;
};

/// Steady state of L.  Long-time marches e^{Lt} rho0 until the residual
/// drops below tolerance (tightening the local error when the residual
/// floor stagnates).  Null-space runs shifted inverse iteration on the
/// materialized superoperator seeded with rho0, which selects the kernel
/// element reachable from rho0 when the kernel is degenerate.
DensityMatrix steady_state(const Liouvillian& L, const DensityMatrix& rho0,
                           SteadyStateStrategy strategy = SteadyStateStrategy::LongTime,
                           const SteadyStateOptions& opts = {});

} // namespace bellsim

#endif // BELLSIM_LINDBLAD_HPP
