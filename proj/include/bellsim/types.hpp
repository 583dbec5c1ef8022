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

#ifndef BELLSIM_TYPES_HPP
#define BELLSIM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace bellsim {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched spaces, invalid mode indices, wrong mode counts.
struct DimensionError : SimError {
    using SimError::SimError;
};

// Integration failures, trace drift, non-convergence, positivity loss.
struct NumericalError : SimError {
    using SimError::SimError;
};

struct ConfigError : SimError {
    using SimError::SimError;
};

struct BudgetError : SimError {
    using SimError::SimError;
};

// Density-matrix sanity thresholds. These are the module-wide defaults;
// pass a custom instance where a different budget is needed.
struct Tolerances {
    double hermiticity = 1e-10;
    double trace = 1e-10;
    double positivity_floor = -1e-8;
};

inline const Tolerances& default_tolerances()
{
    static const Tolerances tol{};
    return tol;
}

} // namespace bellsim

#endif // BELLSIM_TYPES_HPP
