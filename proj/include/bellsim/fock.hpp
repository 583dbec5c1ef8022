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

#ifndef BELLSIM_FOCK_HPP
#define BELLSIM_FOCK_HPP

#include <vector>

#include "bellsim/types.hpp"

namespace bellsim {

/// A single bosonic mode truncated to Fock states |0>..|dim-1>.
struct ModeSpace {
    int dim;
};

/// Ordered tensor product of truncated modes.  Mode 0 is the pump when a
/// pump is present, followed by the signal a1 and the idler a2.  Basis
/// index layout is mixed-radix with mode 0 the slowest digit (Kronecker
/// order mode0 x mode1 x ...).
class CompositeSpace {
public:
    explicit CompositeSpace(std::vector<ModeSpace> modes);

    int num_modes() const { return static_cast<int>(modes_.size()); }
    int mode_dim(int k) const;
    long total_dim() const { return total_dim_; }
    const std::vector<ModeSpace>& modes() const { return modes_; }

    /// Composite basis index of the occupation vector (one entry per mode).
    long pack_index(const std::vector<int>& occupation) const;

    bool operator==(const CompositeSpace& other) const;
    bool operator!=(const CompositeSpace& other) const { return !(*this == other); }

private:
    std::vector<ModeSpace> modes_;
    long total_dim_;
};

/// Operator on a composite space, stored sparse (ladder operators and the
/// Hamiltonians built from them are banded).
struct OperatorMatrix {
    CompositeSpace space;
    SparseMatrix mat;

    OperatorMatrix(CompositeSpace s, SparseMatrix m);

    OperatorMatrix adjoint() const;
    bool is_hermitian(double tol = 1e-10) const;
};

/// Density matrix, stored dense (states fill in under dissipation).
struct DensityMatrix {
    CompositeSpace space;
    DenseMatrix mat;

    DensityMatrix(CompositeSpace s, DenseMatrix m);

    Complex trace() const { return mat.trace(); }
    double hermiticity_defect() const;
    double min_eigenvalue() const;

    /// Throws NumericalError if Hermiticity, unit trace or positivity are
    /// violated beyond the given tolerances.
    void validate(const Tolerances& tol = default_tolerances()) const;
};

OperatorMatrix identity_op(const CompositeSpace& space);

/// Annihilation operator of one mode, embedded in the composite space by
/// tensoring with identities: <n-1|a|n> = sqrt(n) within the truncation.
OperatorMatrix annihilation(const CompositeSpace& space, int mode_index);
OperatorMatrix creation(const CompositeSpace& space, int mode_index);
OperatorMatrix number_op(const CompositeSpace& space, int mode_index);

/// Quadrature x_theta = a e^{-i theta} + a^dag e^{i theta} of one mode.
OperatorMatrix quadrature_op(const CompositeSpace& space, int mode_index, double theta);

/// Kronecker product of one single-mode operator per mode, in mode order.
OperatorMatrix tensor(const std::vector<OperatorMatrix>& per_mode_ops);

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex scale, const OperatorMatrix& a);

/// Reduced state on the kept modes (trace over the others).  keep is a set
/// of mode indices; the kept modes retain their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Tr(rho * op).  Real to ~1e-10 when op is Hermitian and rho is valid.
Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op);

DensityMatrix vacuum_state(const CompositeSpace& space);
DensityMatrix fock_state(const CompositeSpace& space, const std::vector<int>& occupation);

/// Product of single-mode thermal states with mean occupations Ns,
/// renormalized within the truncation.
DensityMatrix thermal_state(const CompositeSpace& space, const std::vector<double>& Ns);

/// Population of the top two Fock levels of the given mode; the default
/// truncation guard requires this to stay below 1e-6.
double truncation_tail(const DensityMatrix& rho, int mode_index);

} // namespace bellsim

#endif // BELLSIM_FOCK_HPP
