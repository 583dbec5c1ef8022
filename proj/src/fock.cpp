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

#include "bellsim/fock.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace bellsim {

CompositeSpace::CompositeSpace(std::vector<ModeSpace> modes)
    : modes_(std::move(modes))
{
    if (modes_.empty()) {
        throw DimensionError("CompositeSpace: needs at least one mode");
    }
    total_dim_ = 1;
    for (const auto& m : modes_) {
        if (m.dim < 2) {
            throw DimensionError("ModeSpace: dim must be >= 2");
        }
        total_dim_ *= m.dim;
    }
}

int CompositeSpace::mode_dim(int k) const
{
    if (k < 0 || k >= num_modes()) {
        throw DimensionError("CompositeSpace: mode index out of range");
    }
    return modes_[k].dim;
}

long CompositeSpace::pack_index(const std::vector<int>& occupation) const
{
    if (static_cast<int>(occupation.size()) != num_modes()) {
        throw DimensionError("pack_index: one occupation number per mode required");
    }
    long idx = 0;
    for (int k = 0; k < num_modes(); ++k) {
        if (occupation[k] < 0 || occupation[k] >= modes_[k].dim) {
            throw DimensionError("pack_index: occupation outside truncation");
        }
        idx = idx * modes_[k].dim + occupation[k];
    }
    return idx;
}

bool CompositeSpace::operator==(const CompositeSpace& other) const
{
    if (num_modes() != other.num_modes()) {
        return false;
    }
    for (int k = 0; k < num_modes(); ++k) {
        if (modes_[k].dim != other.modes_[k].dim) {
            return false;
        }
    }
    return true;
}

OperatorMatrix::OperatorMatrix(CompositeSpace s, SparseMatrix m)
    : space(std::move(s)), mat(std::move(m))
{
    if (mat.rows() != mat.cols() || mat.rows() != space.total_dim()) {
        throw DimensionError("OperatorMatrix: matrix does not match space dimension");
    }
}

OperatorMatrix OperatorMatrix::adjoint() const
{
    return OperatorMatrix(space, SparseMatrix(mat.adjoint()));
}

bool OperatorMatrix::is_hermitian(double tol) const
{
    SparseMatrix d = mat - SparseMatrix(mat.adjoint());
    double worst = 0.0;
    for (int k = 0; k < d.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
            worst = std::max(worst, std::abs(it.value()));
        }
    }
    return worst <= tol;
}

DensityMatrix::DensityMatrix(CompositeSpace s, DenseMatrix m)
    : space(std::move(s)), mat(std::move(m))
{
    if (mat.rows() != mat.cols() || mat.rows() != space.total_dim()) {
        throw DimensionError("DensityMatrix: matrix does not match space dimension");
    }
}

double DensityMatrix::hermiticity_defect() const
{
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (mat + mat.adjoint()),
                                                  Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate(const Tolerances& tol) const
{
    const double herm = hermiticity_defect();
    if (herm > tol.hermiticity) {
        std::ostringstream os;
        os << "DensityMatrix: Hermiticity defect " << herm << " exceeds " << tol.hermiticity;
        throw NumericalError(os.str());
    }
    const double tr_err = std::abs(trace() - Complex(1.0, 0.0));
    if (tr_err > tol.trace) {
        std::ostringstream os;
        os << "DensityMatrix: |trace - 1| = " << tr_err << " exceeds " << tol.trace;
        throw NumericalError(os.str());
    }
    const double lam = min_eigenvalue();
    if (lam < tol.positivity_floor) {
        std::ostringstream os;
        os << "DensityMatrix: eigenvalue " << lam << " below floor " << tol.positivity_floor;
        throw NumericalError(os.str());
    }
}

namespace {

SparseMatrix single_mode_annihilation(int dim)
{
    SparseMatrix a(dim, dim);
    a.reserve(Eigen::VectorXi::Constant(dim, 1));
    for (int n = 1; n < dim; ++n) {
        a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    a.makeCompressed();
    return a;
}

SparseMatrix sparse_identity(long dim)
{
    SparseMatrix id(dim, dim);
    id.setIdentity();
    return id;
}

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

SparseMatrix embed(const CompositeSpace& space, int mode_index, const SparseMatrix& op)
{
    SparseMatrix out = sparse_identity(1);
    for (int k = 0; k < space.num_modes(); ++k) {
        const SparseMatrix& factor =
            (k == mode_index) ? op : sparse_identity(space.mode_dim(k));
        out = sparse_kron(out, factor);
    }
    return out;
}

} // namespace

OperatorMatrix identity_op(const CompositeSpace& space)
{
    return OperatorMatrix(space, sparse_identity(space.total_dim()));
}

OperatorMatrix annihilation(const CompositeSpace& space, int mode_index)
{
    if (mode_index < 0 || mode_index >= space.num_modes()) {
        throw DimensionError("annihilation: mode index out of range");
    }
    return OperatorMatrix(space,
                          embed(space, mode_index,
                                single_mode_annihilation(space.mode_dim(mode_index))));
}

OperatorMatrix creation(const CompositeSpace& space, int mode_index)
{
    return annihilation(space, mode_index).adjoint();
}

OperatorMatrix number_op(const CompositeSpace& space, int mode_index)
{
    OperatorMatrix a = annihilation(space, mode_index);
    return OperatorMatrix(space, SparseMatrix(SparseMatrix(a.mat.adjoint()) * a.mat));
}

OperatorMatrix quadrature_op(const CompositeSpace& space, int mode_index, double theta)
{
    OperatorMatrix a = annihilation(space, mode_index);
    const Complex phase = std::polar(1.0, theta);
    return OperatorMatrix(space,
                          SparseMatrix(a.mat / phase + SparseMatrix(a.mat.adjoint()) * phase));
}

OperatorMatrix tensor(const std::vector<OperatorMatrix>& per_mode_ops)
{
    if (per_mode_ops.empty()) {
        throw DimensionError("tensor: needs at least one operator");
    }
    std::vector<ModeSpace> modes;
    SparseMatrix out = sparse_identity(1);
    for (const auto& op : per_mode_ops) {
        if (op.space.num_modes() != 1) {
            throw DimensionError("tensor: expects single-mode operators, one per mode");
        }
        modes.push_back(op.space.modes()[0]);
        out = sparse_kron(out, op.mat);
    }
    return OperatorMatrix(CompositeSpace(std::move(modes)), std::move(out));
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b)
{
    if (a.space != b.space) {
        throw DimensionError("operator*: space mismatch");
    }
    return OperatorMatrix(a.space, SparseMatrix(a.mat * b.mat));
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b)
{
    if (a.space != b.space) {
        throw DimensionError("operator+: space mismatch");
    }
    return OperatorMatrix(a.space, SparseMatrix(a.mat + b.mat));
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b)
{
    if (a.space != b.space) {
        throw DimensionError("operator-: space mismatch");
    }
    return OperatorMatrix(a.space, SparseMatrix(a.mat - b.mat));
}

OperatorMatrix operator*(Complex scale, const OperatorMatrix& a)
{
    return OperatorMatrix(a.space, SparseMatrix(scale * a.mat));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep)
{
    const CompositeSpace& space = rho.space;
    const int nm = space.num_modes();
    if (keep.empty()) {
        throw DimensionError("partial_trace: keep set must be nonempty");
    }
    std::vector<bool> kept(nm, false);
    for (int k : keep) {
        if (k < 0 || k >= nm) {
            throw DimensionError("partial_trace: invalid mode index");
        }
        if (kept[k]) {
            throw DimensionError("partial_trace: duplicate mode index");
        }
        kept[k] = true;
    }
    // keep must preserve mode order
    std::vector<int> keep_sorted;
    std::vector<int> traced;
    for (int k = 0; k < nm; ++k) {
        (kept[k] ? keep_sorted : traced).push_back(k);
    }

    std::vector<ModeSpace> out_modes;
    long out_dim = 1;
    for (int k : keep_sorted) {
        out_modes.push_back(space.modes()[k]);
        out_dim *= space.mode_dim(k);
    }
    long traced_dim = 1;
    for (int k : traced) {
        traced_dim *= space.mode_dim(k);
    }

    // Strides of each mode in the full composite index.
    std::vector<long> stride(nm, 1);
    for (int k = nm - 2; k >= 0; --k) {
        stride[k] = stride[k + 1] * space.mode_dim(k + 1);
    }

    auto unpack = [&](long idx, const std::vector<int>& modes_list) {
        long offset = 0;
        for (int pos = static_cast<int>(modes_list.size()) - 1; pos >= 0; --pos) {
            const int k = modes_list[pos];
            offset += (idx % space.mode_dim(k)) * stride[k];
            idx /= space.mode_dim(k);
        }
        return offset;
    };

    DenseMatrix out = DenseMatrix::Zero(out_dim, out_dim);
    for (long row = 0; row < out_dim; ++row) {
        const long row_off = unpack(row, keep_sorted);
        for (long col = 0; col < out_dim; ++col) {
            const long col_off = unpack(col, keep_sorted);
            Complex sum = 0.0;
            for (long t = 0; t < traced_dim; ++t) {
                const long t_off = unpack(t, traced);
                sum += rho.mat(row_off + t_off, col_off + t_off);
            }
            out(row, col) = sum;
        }
    }
    return DensityMatrix(CompositeSpace(std::move(out_modes)), std::move(out));
}

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op)
{
    if (rho.space != op.space) {
        throw DimensionError("expectation: space mismatch");
    }
    Complex sum = 0.0;
    for (int k = 0; k < op.mat.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(op.mat, k); it; ++it) {
            sum += it.value() * rho.mat(it.col(), it.row());
        }
    }
    return sum;
}

DensityMatrix vacuum_state(const CompositeSpace& space)
{
    return fock_state(space, std::vector<int>(space.num_modes(), 0));
}

DensityMatrix fock_state(const CompositeSpace& space, const std::vector<int>& occupation)
{
    DenseMatrix m = DenseMatrix::Zero(space.total_dim(), space.total_dim());
    const long idx = space.pack_index(occupation);
    m(idx, idx) = 1.0;
    return DensityMatrix(space, std::move(m));
}

DensityMatrix thermal_state(const CompositeSpace& space, const std::vector<double>& Ns)
{
    if (static_cast<int>(Ns.size()) != space.num_modes()) {
        throw DimensionError("thermal_state: one occupation per mode required");
    }
    DenseMatrix m = DenseMatrix::Ones(1, 1);
    for (int k = 0; k < space.num_modes(); ++k) {
        const double N = Ns[k];
        if (N < 0.0) {
            throw DimensionError("thermal_state: negative thermal occupation");
        }
        const int d = space.mode_dim(k);
        Eigen::VectorXd p(d);
        const double q = N / (N + 1.0);
        double pw = 1.0;
        for (int n = 0; n < d; ++n) {
            p(n) = pw;
            pw *= q;
        }
        p /= p.sum();
        DenseMatrix mode = p.cast<Complex>().asDiagonal();
        DenseMatrix next(m.rows() * d, m.cols() * d);
        for (long i = 0; i < m.rows(); ++i) {
            for (long j = 0; j < m.cols(); ++j) {
                next.block(i * d, j * d, d, d) = m(i, j) * mode;
            }
        }
        m = std::move(next);
    }
    return DensityMatrix(space, std::move(m));
}

double truncation_tail(const DensityMatrix& rho, int mode_index)
{
    DensityMatrix red = partial_trace(rho, {mode_index});
    const long d = red.space.total_dim();
    double tail = std::real(red.mat(d - 1, d - 1));
    if (d >= 2) {
        tail += std::real(red.mat(d - 2, d - 2));
    }
    return tail;
}

} // namespace bellsim
