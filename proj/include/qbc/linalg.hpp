// Copyright 2026 The qbclab Authors
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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qbc/errors.hpp"
#include "qbc/layout.hpp"
#include "qbc/rng.hpp"

namespace qbc {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Tolerances shared across the numeric kernels.
inline constexpr double kNormTol = 1e-10;        // state normalization slack
inline constexpr double kHermTol = 1e-10;        // Hermiticity slack
inline constexpr double kEigFloor = -1e-10;      // most negative admissible eigenvalue
inline constexpr double kExactTol = 1e-12;       // "equal up to roundoff" checks

/// Unit vector over a labeled tensor-factor layout.
class StateVector {
 public:
  StateVector() = default;
  /// Validates length and unit norm (within kNormTol).
  StateVector(SubsystemLayout layout, VectorXcd amplitudes);

  const SubsystemLayout& layout() const { return layout_; }
  const VectorXcd& amplitudes() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }

  /// Computational basis state |digits_0, digits_1, ...> over `layout`.
  static StateVector basis(const SubsystemLayout& layout, const std::vector<int>& digits);

 private:
  SubsystemLayout layout_;
  VectorXcd amps_;
};

/// Positive unit-trace Hermitian operator over a labeled layout.
class DensityOperator {
 public:
  DensityOperator() = default;
  /// Validates shape, Hermiticity, trace = 1 and eigenvalue floor.
  /// Eigenvalues slightly below zero (>= kEigFloor) are accepted; anything
  /// more negative is a hard error, never silently clipped.
  DensityOperator(SubsystemLayout layout, MatrixXcd matrix);

  const SubsystemLayout& layout() const { return layout_; }
  const MatrixXcd& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  static DensityOperator pure(const StateVector& psi);

 private:
  SubsystemLayout layout_;
  MatrixXcd mat_;
};

struct EighResult {
  VectorXd values;    // ascending
  MatrixXcd vectors;  // columns, matching `values`
};

/// Hermitian eigendecomposition; the single dense primitive everything else
/// (trace norms, fidelities, square roots, polar factors, matrix
/// exponentials) is built on. Throws ValidationError if the input is not
/// Hermitian within kHermTol.
EighResult eigh(const MatrixXcd& m);

/// Kronecker product with the left factor as the slow index.
MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);
VectorXcd kron(const VectorXcd& a, const VectorXcd& b);

/// Tensor product of states; layouts are concatenated left-to-right.
StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Partial trace keeping `keep` (result factors appear in the original
/// layout order, regardless of the order given here).
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep);

/// Reduction of a pure state onto `keep`: cheaper than forming |psi><psi|
/// and tracing, and the route used throughout the protocol analyses.
DensityOperator reduced_density(const StateVector& psi, const std::vector<std::string>& keep);

/// Unitary permuting equal-dimension factors: output slot j receives input
/// factor perm[j]. Example on 4 qubits: perm = (3,0,1,2) maps
/// |x0 x1 x2 x3> to |x3 x0 x1 x2| (a cyclic shift to the right).
MatrixXcd permutation_unitary(const std::vector<int>& perm, const SubsystemLayout& layout);

/// Amplitudes rearranged so the factors appear in `new_order` (which must be
/// a permutation of all labels).
StateVector reorder_factors(const StateVector& psi, const std::vector<std::string>& new_order);

/// Apply `u` to the subsystem spanned by `labels` (in the order given;
/// identity elsewhere). `u` must be unitary-sized, d x d with d the product
/// of the label dimensions; unitarity itself is the caller's business so the
/// same routine can apply isometric gadgets in tests.
StateVector apply_to_labels(const MatrixXcd& u, const StateVector& psi,
                            const std::vector<std::string>& labels);

/// Apply one of `branches[c]` to `targets` conditioned on the computational
/// value c of the single factor `control`.
StateVector controlled_apply(const StateVector& psi, const std::string& control,
                             const std::vector<std::string>& targets,
                             const std::vector<MatrixXcd>& branches);

/// Zero every matrix element that is off-diagonal in the computational
/// indices of `labels` (classical registers carry no coherences).
DensityOperator dephase(const DensityOperator& rho, const std::vector<std::string>& labels);

/// Haar-random unit vector over `layout` (complex Gaussian entries,
/// normalized).
StateVector random_pure_state(const SubsystemLayout& layout, SeededRng& rng);
StateVector random_pure_state(int dim, SeededRng& rng);  // single factor "q"

/// Random unitary exp(iH) with Gaussian Hermitian H scaled by `spread`.
MatrixXcd random_unitary(int dim, SeededRng& rng, double spread = 1.0);

/// Random full-rank density operator (Wishart construction G G^dag / tr).
DensityOperator random_density(const SubsystemLayout& layout, SeededRng& rng);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [kEigFloor, 0) are clipped to zero; more negative ones
/// raise ValidationError.
MatrixXcd psd_sqrt(const MatrixXcd& m);

/// exp(iH) for Hermitian H, via eigh.
MatrixXcd unitary_exp_ih(const MatrixXcd& h);

/// |v><v|
MatrixXcd projector(const VectorXcd& v);

}  // namespace qbc
