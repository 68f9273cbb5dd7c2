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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbc/entangle.hpp"
#include "qbc/linalg.hpp"

namespace qbc {

/// Registers whose value the committer announces at unveiling, and the basis
/// the announcement is read out in (columns = basis states; computational
/// basis when absent).
struct AnnouncementBasis {
  std::vector<std::string> labels;
  std::optional<MatrixXcd> basis;
};

/// The verifier's per-announcement tests: outcome i of the announcement
/// readout triggers the check `projector(bit, i)` on the `labels` group.
/// Projectors are produced lazily so large families never sit in memory at
/// once; each must satisfy 0 <= P <= I on the group.
struct VerifyingProjectors {
  std::vector<std::string> labels;
  int count = 0;
  std::function<MatrixXcd(int bit, int index)> projector;
};

/// Probability that the verifier accepts `psi` as a commitment to `bit`:
/// sum_i tr[(A_i (x) P_{bit,i} (x) I) |psi><psi|], with A_i the announcement
/// readout and P the verifying tests. Anything not announced or tested is
/// traced out.
double acceptance_prob(const StateVector& psi, int bit, const AnnouncementBasis& announce,
                       const VerifyingProjectors& verify);

/// A figure of merit for a unitary u on some register group.
using Objective = std::function<double(const MatrixXcd&)>;

/// f(u) = |<phi1|(u x I)|phi0>|^2: how well rotating the acting group of
/// phi0 fakes a projective check on phi1.
Objective make_overlap_objective(const StateVector& phi0, const StateVector& phi1,
                                 const std::vector<std::string>& acting_labels);

/// f(u) = acceptance_prob of psi after u acts on the chosen group. This is
/// the operational cheat payoff; it is never smaller than the projective
/// overlap against any state the tests accept with certainty.
Objective make_acceptance_objective(const StateVector& psi, int bit,
                                    const AnnouncementBasis& announce,
                                    const VerifyingProjectors& verify,
                                    const std::vector<std::string>& acting_labels);

struct OptimizerConfig {
  /// Independent search starts; start 0 is the identity, the rest are random.
  int restarts = 32;
  /// Objective-evaluation budget per restart.
  int max_evaluations = 2000;
  /// A final restart that improves the incumbent by less than this counts as
  /// converged. Must lie in (0, 1e-2].
  double value_tol = 1e-6;
};

struct CheatReport {
  double best_p = 0.0;
  MatrixXcd u_best;
  /// Exact optimum when one is known for this objective (projective case).
  std::optional<double> closed_form_bound;
  int restarts = 0;
  long evaluations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
};

/// Derivative-free maximization over the unitary group U(dim), parametrized
/// as exp(iH) with H Hermitian, by coordinate descent with a quadratic line
/// fit and multiple restarts. Deterministic for fixed (seed, config), and
/// adding restarts never changes what the earlier restarts do.
CheatReport optimize_cheat(const Objective& objective, int dim, const OptimizerConfig& cfg,
                           std::uint64_t seed,
                           std::optional<double> closed_form_bound = std::nullopt);

}  // namespace qbc
