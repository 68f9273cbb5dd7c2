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

#include <string>
#include <vector>

#include "qbc/linalg.hpp"

namespace qbc {

/// Two families of candidate evidence states over a shared register group,
/// one family per bit value, with the probabilities the committer announces
/// them. Both families must have the same size and live on the same layout.
struct CommitmentEnsemble {
  std::vector<StateVector> states0;
  std::vector<double> probs0;
  std::vector<StateVector> states1;
  std::vector<double> probs1;

  int count() const { return static_cast<int>(states0.size()); }
  const SubsystemLayout& state_layout() const { return states0.front().layout(); }
  void validate() const;
};

/// |Phi_b> = sum_i sqrt(p_bi) |e_i> (x) |phi_bi>, the entangled form of a
/// commitment in which the committer keeps the announcement index coherent.
/// The index register is prepended (slowest factor), so each announcement
/// owns one contiguous block of the amplitude vector.
StateVector committed_state(const CommitmentEnsemble& ens, int bit,
                            const std::string& index_label = "a");

/// sum_k sqrt(w_k) |psi_k> (x) |f_k>, a purification of the mixture
/// {w_k, psi_k}. The purifying register is appended (fastest factor).
StateVector purification(const std::vector<double>& weights,
                         const std::vector<StateVector>& states,
                         const std::string& label);

/// Bipartite decomposition |psi> = sum_i c_i |a_i> (x) |b_i> with c_i > 0
/// descending; a_i are columns of a_vectors over the chosen group (in the
/// order given) and b_i are columns of b_vectors over the remaining factors
/// (in layout order).
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;
  MatrixXcd a_vectors;
  MatrixXcd b_vectors;
  SubsystemLayout a_layout;
  SubsystemLayout b_layout;

  int rank() const { return static_cast<int>(coefficients.size()); }
};

SchmidtDecomposition schmidt(const StateVector& psi, const std::vector<std::string>& a_labels);

/// The matrix X = M0 M1^dag, where M_b is the coefficient matrix of phi_b
/// with the chosen group as row index. A unitary U on that group turns the
/// overlap <phi1|(U x I)|phi0> into tr(U X), so everything about optimal
/// local rotations of the group is encoded in X. Its trace norm can never
/// exceed 1; that is checked and violations throw.
MatrixXcd cross_operator(const StateVector& phi0, const StateVector& phi1,
                         const std::vector<std::string>& acting_labels);

struct UhlmannReport {
  /// max_U |<phi1|(U x I)|phi0>|^2, the best passing probability against a
  /// projective check on phi1 reachable by rotating only the chosen group.
  double p = 0.0;
  /// A unitary attaining it, in the basis of `acting_labels` as given.
  MatrixXcd u;
};

/// Closed-form optimal local rotation via the polar decomposition of the
/// cross operator. Also equals the fidelity of the two reductions onto the
/// complement group; that identity is what makes the result trustworthy, and
/// the function re-checks its own answer by direct substitution.
UhlmannReport uhlmann_cheat(const StateVector& phi0, const StateVector& phi1,
                            const std::vector<std::string>& acting_labels);

}  // namespace qbc
