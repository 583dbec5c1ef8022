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

#include "bellsim/lindblad.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bellsim {

namespace {

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b)
{
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
                    trips.emplace_back(ia.row() * b.rows() + ib.row(),
                                       ia.col() * b.cols() + ib.col(),
                                       ia.value() * ib.value());
                }
            }
        }
    }
    SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

double sparse_abs_max(const SparseMatrix& m)
{
    double worst = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            worst = std::max(worst, std::abs(it.value()));
        }
    }
    return worst;
}

} // namespace

Liouvillian::Liouvillian(OperatorMatrix H, std::vector<CollapseTerm> collapses)
    : space_(H.space), hamiltonian_(H.mat), collapses_(std::move(collapses))
{
    if (!H.is_hermitian(1e-10)) {
        throw DimensionError("Liouvillian: Hamiltonian is not Hermitian to 1e-10");
    }
    SparseMatrix drift = H.mat;
    double scale = sparse_abs_max(H.mat);
    for (const auto& c : collapses_) {
        if (c.op.space != space_) {
            throw DimensionError("Liouvillian: collapse operator on a different space");
        }
        if (c.rate < 0.0) {
            throw DimensionError("Liouvillian: negative collapse rate");
        }
        if (c.rate == 0.0) {
            continue;
        }
        SparseMatrix cdc = SparseMatrix(c.op.mat.adjoint()) * c.op.mat;
        drift = drift - Complex(0.0, 0.5 * c.rate) * cdc;
        SparseMatrix j = std::sqrt(c.rate) * c.op.mat;
        jumps_.emplace_back(j, SparseMatrix(j.adjoint()));
        scale = std::max(scale, c.rate * sparse_abs_max(cdc));
    }
    drift_ = drift;
    drift_adj_ = SparseMatrix(drift.adjoint());
    rate_scale_ = std::max(scale, 1e-12);
}

DenseMatrix Liouvillian::apply(const DenseMatrix& rho) const
{
    const Complex mi(0.0, -1.0);
    DenseMatrix out = mi * (drift_ * rho - rho * drift_adj_);
    for (const auto& [j, jadj] : jumps_) {
        out.noalias() += (j * rho) * jadj;
    }
    return out;
}

double Liouvillian::residual_max(const DenseMatrix& rho) const
{
    return apply(rho).cwiseAbs().maxCoeff();
}

SparseMatrix Liouvillian::materialize() const
{
    const long n = space_.total_dim();
    if (n > kMaxMaterializeDim) {
        throw NumericalError("Liouvillian::materialize: space too large for a sparse "
                             "superoperator (total_dim > 256); use matrix-free apply");
    }
    SparseMatrix id(n, n);
    id.setIdentity();
    const Complex mi(0.0, -1.0);
    // vec(A X B) = (B^T kron A) vec(X) in column stacking
    SparseMatrix sup = mi * (sparse_kron(id, hamiltonian_)
                             - sparse_kron(SparseMatrix(hamiltonian_.transpose()), id));
    for (const auto& c : collapses_) {
        if (c.rate == 0.0) {
            continue;
        }
        const SparseMatrix& cm = c.op.mat;
        SparseMatrix cdc = SparseMatrix(cm.adjoint()) * cm;
        sup = sup + Complex(c.rate)
                        * (sparse_kron(SparseMatrix(cm.conjugate()), cm)
                           - 0.5 * sparse_kron(id, cdc)
                           - 0.5 * sparse_kron(SparseMatrix(cdc.transpose()), id));
    }
    sup.makeCompressed();
    return sup;
}

Liouvillian build_liouvillian(const OperatorMatrix& H,
                              const std::vector<CollapseTerm>& collapses)
{
    return Liouvillian(H, collapses);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

class DormandPrinceStepper {
public:
    DormandPrinceStepper(const Liouvillian& L, DenseMatrix y0, double t0,
                         double rtol, double atol)
        : L_(L), y_(std::move(y0)), t_(t0), rtol_(rtol), atol_(atol)
    {
        k1_ = L_.apply(y_); // FSAL slot
        h_ = 0.01 / L_.rate_scale();
    }

    double time() const { return t_; }
    const DenseMatrix& state() const { return y_; }

    void set_tolerances(double rtol, double atol)
    {
        rtol_ = rtol;
        atol_ = atol;
    }

    /// Advances exactly to t_target.
    void advance_to(double t_target)
    {
        while (t_ < t_target) {
            const double h = std::min(h_, t_target - t_);
            if (!(h > 0.0) || t_ + h == t_) {
                throw NumericalError("evolve: step-size underflow");
            }
            step_once(h);
        }
    }

private:
    void step_once(double h)
    {
        DenseMatrix y2 = y_ + (h * a21) * k1_;
        DenseMatrix k2 = L_.apply(y2);
        DenseMatrix y3 = y_ + h * (a31 * k1_ + a32 * k2);
        DenseMatrix k3 = L_.apply(y3);
        DenseMatrix y4 = y_ + h * (a41 * k1_ + a42 * k2 + a43 * k3);
        DenseMatrix k4 = L_.apply(y4);
        DenseMatrix y5 = y_ + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4);
        DenseMatrix k5 = L_.apply(y5);
        DenseMatrix y6 = y_ + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        DenseMatrix k6 = L_.apply(y6);
        DenseMatrix ynew = y_ + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        DenseMatrix k7 = L_.apply(ynew);
        DenseMatrix y4th = y_ + h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        // max over entries of |err| / (atol + rtol * |y|)
        double err = 0.0;
        for (long j = 0; j < ynew.size(); ++j) {
            const double scale =
                atol_ + rtol_ * std::max(std::abs(y_.data()[j]), std::abs(ynew.data()[j]));
            err = std::max(err, std::abs(ynew.data()[j] - y4th.data()[j]) / scale);
        }

        if (err <= 1.0) {
            t_ += h;
            y_ = std::move(ynew);
            k1_ = std::move(k7); // FSAL
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h_ = h * factor;
        if (h_ < 1e-14) {
            throw NumericalError("evolve: step-size underflow");
        }
    }

    const Liouvillian& L_;
    DenseMatrix y_;
    DenseMatrix k1_;
    double t_;
    double h_;
    double rtol_;
    double atol_;
};

DensityMatrix finalize_output(const Liouvillian& L, const DenseMatrix& y,
                              const EvolveOptions& opts)
{
    const Complex tr = y.trace();
    const double drift = std::abs(tr - Complex(1.0));
    if (drift > opts.trace_drift_bound) {
        std::ostringstream os;
        os << "evolve: trace drift " << drift << " beyond " << opts.trace_drift_bound;
        throw NumericalError(os.str());
    }
    if (opts.stats != nullptr) {
        opts.stats->max_trace_drift = std::max(opts.stats->max_trace_drift, drift);
        opts.stats->max_hermiticity_defect =
            std::max(opts.stats->max_hermiticity_defect,
                     (y - y.adjoint()).cwiseAbs().maxCoeff());
    }
    DensityMatrix rho(L.space(), y / tr);
    if (opts.validate_outputs) {
        rho.validate(opts.output_tolerances);
    }
    return rho;
}

} // namespace

void evolve_observe(const Liouvillian& L, const DensityMatrix& rho0,
                    const std::vector<double>& t_grid,
                    const std::function<void(int, double, const DensityMatrix&)>& cb,
                    const EvolveOptions& opts)
{
    if (rho0.space != L.space()) {
        throw DimensionError("evolve: state space mismatch");
    }
    if (t_grid.empty() || t_grid.front() < 0.0) {
        throw DimensionError("evolve: time grid must start at t >= 0");
    }
    for (size_t i = 1; i < t_grid.size(); ++i) {
        if (t_grid[i] <= t_grid[i - 1]) {
            throw DimensionError("evolve: time grid must be strictly increasing");
        }
    }
    DormandPrinceStepper stepper(L, rho0.mat, 0.0, opts.rtol, opts.atol);
    for (size_t i = 0; i < t_grid.size(); ++i) {
        stepper.advance_to(t_grid[i]);
        cb(static_cast<int>(i), t_grid[i], finalize_output(L, stepper.state(), opts));
    }
}

TrajectoryRecord evolve(const Liouvillian& L, const DensityMatrix& rho0,
                        const std::vector<double>& t_grid, const EvolveOptions& opts)
{
    TrajectoryRecord rec;
    rec.times = t_grid;
    rec.states.reserve(t_grid.size());
    evolve_observe(L, rho0, t_grid,
                   [&rec](int, double, const DensityMatrix& rho) {
                       rec.states.push_back(rho);
                   },
                   opts);
    return rec;
}

namespace {

DensityMatrix steady_state_long_time(const Liouvillian& L, const DensityMatrix& rho0,
                                     const SteadyStateOptions& opts)
{
    EvolveOptions eopts = opts.evolve;
    DormandPrinceStepper stepper(L, rho0.mat, 0.0, eopts.rtol, eopts.atol);
    double window = 10.0 / L.rate_scale();
    double t = 0.0;
    double prev_resid = std::numeric_limits<double>::infinity();
    while (t < opts.max_time) {
        t += window;
        stepper.advance_to(t);
        const double resid = L.residual_max(stepper.state());
        if (resid < opts.residual_tol) {
            return finalize_output(L, stepper.state(), eopts);
        }
        if (resid > 0.3 * prev_resid) {
            window *= 2.0;
            // Near the target the residual floor is set by local
            // integration error, not by the remaining transient: tighten.
            if (resid < 1e3 * opts.residual_tol && eopts.rtol > 1e-13) {
                eopts.rtol *= 0.1;
                eopts.atol *= 0.1;
                stepper.set_tolerances(eopts.rtol, eopts.atol);
            }
        }
        prev_resid = resid;
    }
    std::ostringstream os;
    os << "steady_state: no convergence to " << opts.residual_tol << " within t = "
       << opts.max_time << " (residual " << prev_resid << ")";
    throw NumericalError(os.str());
}

DensityMatrix steady_state_null_space(const Liouvillian& L, const DensityMatrix& rho0,
                                      const SteadyStateOptions& opts)
{
    const long n = L.space().total_dim();
    SparseMatrix sup = L.materialize();
    // Shift slightly off the kernel; inverse iteration then projects rho0
    // onto the kernel subspace, matching the long-time limit e^{Lt} rho0.
    const double sigma = 1e-8 * L.rate_scale();
    SparseMatrix id(n * n, n * n);
    id.setIdentity();
    SparseMatrix shifted = sup - Complex(sigma) * id;
    shifted.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu;
    lu.analyzePattern(shifted);
    lu.factorize(shifted);
    if (lu.info() != Eigen::Success) {
        throw NumericalError("steady_state: sparse LU factorization failed");
    }

    DenseVector x = Eigen::Map<const DenseVector>(rho0.mat.data(), n * n);
    for (int it = 0; it < opts.max_iterations; ++it) {
        x = lu.solve(x);
        x /= x.norm();
        DenseMatrix cand = Eigen::Map<const DenseMatrix>(x.data(), n, n);
        cand = 0.5 * (cand + cand.adjoint()).eval();
        const Complex tr = cand.trace();
        if (std::abs(tr) < 1e-10) {
            throw NumericalError("steady_state: kernel element carries no trace; "
                                 "no selection rule applicable");
        }
        cand /= tr;
        if (L.residual_max(cand) < opts.residual_tol) {
            DensityMatrix rho(L.space(), std::move(cand));
            rho.validate(opts.evolve.output_tolerances);
            return rho;
        }
    }
    throw NumericalError("steady_state: inverse iteration did not converge");
}

} // namespace

DensityMatrix steady_state(const Liouvillian& L, const DensityMatrix& rho0,
                           SteadyStateStrategy strategy, const SteadyStateOptions& opts)
{
    if (rho0.space != L.space()) {
        throw DimensionError("steady_state: state space mismatch");
    }
    switch (strategy) {
    case SteadyStateStrategy::LongTime:
        return steady_state_long_time(L, rho0, opts);
    case SteadyStateStrategy::NullSpace:
        return steady_state_null_space(L, rho0, opts);
    }
    throw SimError("steady_state: unknown strategy");
}

} // namespace bellsim
