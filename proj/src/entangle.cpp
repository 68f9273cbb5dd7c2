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

#include "qbc/entangle.hpp"

#include <cmath>
#include <string>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

void check_probabilities(const std::vector<double>& p, const std::string& what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw ValidationError(what + " must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError(what + " must sum to 1");
}

/// Amplitudes of `psi` as a matrix whose row index runs over `front` (in the
/// order given) and whose column index runs over the remaining factors in
/// layout order. Slow-first indexing makes this a plain row-major reshape
/// after moving `front` to the front.
MatrixXcd coefficient_matrix(const StateVector& psi, const std::vector<std::string>& front) {
  std::vector<std::string> order = front;
  for (const std::string& l : psi.layout().complement(front)) order.push_back(l);
  StateVector re = reorder_factors(psi, order);
  int da = psi.layout().dim_of(front);
  int db = re.dim() / da;
  return Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      re.amplitudes().data(), da, db);
}

void check_split(const StateVector& psi, const std::vector<std::string>& acting_labels) {
  if (acting_labels.empty()) throw LabelError("the acting group must contain at least one factor");
  if (psi.layout().complement(acting_labels).empty())
    throw LabelError("the acting group must leave at least one factor untouched");
}

}  // namespace

void CommitmentEnsemble::validate() const {
  if (states0.empty() || states0.size() != states1.size())
    throw ValidationError("the two families must be nonempty and equally sized");
  if (probs0.size() != states0.size() || probs1.size() != states1.size())
    throw ValidationError("each state needs exactly one probability");
  for (const StateVector& s : states0)
    if (s.layout() != states0.front().layout())
      throw ShapeError("all ensemble states must share one layout");
  for (const StateVector& s : states1)
    if (s.layout() != states0.front().layout())
      throw ShapeError("all ensemble states must share one layout");
  check_probabilities(probs0, "bit-0 probabilities");
  check_probabilities(probs1, "bit-1 probabilities");
}

StateVector committed_state(const CommitmentEnsemble& ens, int bit,
                            const std::string& index_label) {
  ens.validate();
  if (bit != 0 && bit != 1) throw ValidationError("bit must be 0 or 1");
  const std::vector<StateVector>& states = bit == 0 ? ens.states0 : ens.states1;
  const std::vector<double>& probs = bit == 0 ? ens.probs0 : ens.probs1;

  int m = ens.count();
  int d = ens.state_layout().dim();
  SubsystemLayout layout =
      SubsystemLayout::single(index_label, m).concat(ens.state_layout());
  VectorXcd amps = VectorXcd::Zero(layout.dim());
  for (int i = 0; i < m; ++i)
    amps.segment(i * d, d) = std::sqrt(probs[static_cast<std::size_t>(i)]) *
                             states[static_cast<std::size_t>(i)].amplitudes();
  return StateVector(layout, amps);
}

StateVector purification(const std::vector<double>& weights,
                         const std::vector<StateVector>& states, const std::string& label) {
  if (weights.empty() || weights.size() != states.size())
    throw ValidationError("need one weight per state and at least one state");
  for (const StateVector& s : states)
    if (s.layout() != states.front().layout())
      throw ShapeError("all mixture components must share one layout");
  check_probabilities(weights, "mixture weights");

  int k = static_cast<int>(weights.size());
  int d = states.front().dim();
  SubsystemLayout layout =
      states.front().layout().concat(SubsystemLayout::single(label, k));
  VectorXcd amps = VectorXcd::Zero(layout.dim());
  for (int i = 0; i < k; ++i) {
    double root = std::sqrt(weights[static_cast<std::size_t>(i)]);
    const VectorXcd& s = states[static_cast<std::size_t>(i)].amplitudes();
    for (int g = 0; g < d; ++g) amps[g * k + i] += root * s[g];
  }
  return StateVector(layout, amps);
}

SchmidtDecomposition schmidt(const StateVector& psi, const std::vector<std::string>& a_labels) {
  check_split(psi, a_labels);
  MatrixXcd m = coefficient_matrix(psi, a_labels);
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  int rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()[rank] > 1e-12) ++rank;

  SchmidtDecomposition out;
  out.coefficients = svd.singularValues().head(rank);
  out.a_vectors = svd.matrixU().leftCols(rank);
  // psi_{a,b} = sum_i s_i U_{a i} conj(V_{b i}), so the b-side states are the
  // conjugated columns of V.
  out.b_vectors = svd.matrixV().leftCols(rank).conjugate();
  out.a_layout = psi.layout().select(a_labels);
  out.b_layout = psi.layout().select(psi.layout().complement(a_labels));
  return out;
}

MatrixXcd cross_operator(const StateVector& phi0, const StateVector& phi1,
                         const std::vector<std::string>& acting_labels) {
  if (phi0.layout() != phi1.layout())
    throw ShapeError("both commitments must live on the same layout");
  check_split(phi0, acting_labels);
  MatrixXcd m0 = coefficient_matrix(phi0, acting_labels);
  MatrixXcd m1 = coefficient_matrix(phi1, acting_labels);
  MatrixXcd x = m0 * m1.adjoint();
  double tn = Eigen::JacobiSVD<MatrixXcd>(x).singularValues().sum();
  if (tn > 1.0 + 1e-9)
    throw ValidationError("cross operator trace norm exceeds 1: " + std::to_string(tn));
  return x;
}

UhlmannReport uhlmann_cheat(const StateVector& phi0, const StateVector& phi1,
                            const std::vector<std::string>& acting_labels) {
  MatrixXcd x = cross_operator(phi0, phi1, acting_labels);
  Eigen::JacobiSVD<MatrixXcd> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);

  UhlmannReport out;
  double tn = svd.singularValues().sum();
  out.p = std::min(1.0, tn * tn);
  // Polar X = W |X| with W = U V^dag; U = W^dag makes tr(U X) = tr|X| real
  // and maximal.
  out.u = svd.matrixV() * svd.matrixU().adjoint();

  StateVector rotated = apply_to_labels(out.u, phi0, acting_labels);
  double direct = std::norm(phi1.amplitudes().dot(rotated.amplitudes()));
  if (std::abs(direct - out.p) > 1e-9)
    throw Error("optimal rotation failed its substitution check: " + std::to_string(direct) +
                " vs " + std::to_string(out.p));
  return out;
}

}  // namespace qbc
