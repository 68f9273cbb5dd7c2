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

#include "qbc/attack_opt.hpp"
#include "qbc/distinguish.hpp"
#include "qbc/entangle.hpp"
#include "qbc/rng.hpp"

namespace qbc {

/// A two-party commitment protocol frozen at the end of the commit phase:
/// the two honest entangled states, who holds what while the bit is hidden,
/// what gets announced at opening, and how the verifier tests it.
struct ProtocolSpec {
  std::string name;
  int n = 1;  // security parameter of the family this spec came from

  StateVector phi0;
  StateVector phi1;
  AnnouncementBasis announce;
  VerifyingProjectors verify;

  /// Registers on the receiving side while the commitment is held. Together
  /// with adam_full these partition the layout.
  std::vector<std::string> babe_kept;
  /// Kept registers held only as classical records; concealment analyses
  /// dephase them.
  std::vector<std::string> babe_classical;
  /// Registers the committer may rotate without the verifier noticing by
  /// role (a subset of adam_full).
  std::vector<std::string> adam_acting;
  /// Everything on the committing side while the commitment is held.
  std::vector<std::string> adam_full;

  /// True when the committer is assumed to know which preparation method the
  /// receiver used; analyses may branch on it.
  bool adam_knows_method = true;

  /// Receiver-side mixture weights this instance was built with, when the
  /// construction has any; empty otherwise.
  std::vector<double> prescribed_weights;
  /// Rebuilds the same protocol with different receiver-side weights; unset
  /// when the construction has no such knob.
  std::function<ProtocolSpec(const std::vector<double>&)> rebuild_with_weights;
};

/// Throws unless layouts match, labels exist, and the holdings partition the
/// layout.
void validate_spec(const ProtocolSpec& spec);

struct Transcript {
  std::string protocol;
  int bit = 0;
  int announced = 0;                 // flat announcement outcome
  std::vector<int> announced_digits;  // same outcome, one digit per register
  double accept_prob = 0.0;          // verifier's acceptance given the outcome
  bool accepted = false;
};

/// Commit, open, verify with everyone honest; the announcement is sampled
/// from the state's own distribution.
Transcript run_honest(const ProtocolSpec& spec, int bit, SeededRng& rng);

/// What the receiver can learn while holding the commitment: reduce both
/// states onto her registers (classical ones dephased) and compare. The
/// second form restricts or extends the kept group, for split-space studies.
ConcealmentReport concealment(const ProtocolSpec& spec);
ConcealmentReport concealment(const ProtocolSpec& spec, const std::vector<std::string>& kept);

struct BindingReport {
  std::vector<std::string> acting;
  /// Steering ceiling: fidelity of the reductions outside the acting group,
  /// with classical records dephased. No rotation of the acting group can
  /// reach the opposite commitment more closely than this; when a classical
  /// record sits outside everyone's reach the ceiling may exceed what any
  /// rotation attains.
  double closed_form_p = 0.0;
  /// Exact optimum of the projective cheat (trace norm of the cross
  /// operator, squared); equals the fidelity of the coherent reductions
  /// outside the acting group, and equals closed_form_p when nothing is
  /// dephased.
  double purified_p = 0.0;
  /// Numerical optimizer on the projective payoff, bound attached.
  CheatReport projective;
  /// Numerical optimizer on the operational payoff (announce + verify).
  CheatReport measurement;
  /// The closed-form rotation scored operationally. Whenever verification
  /// accepts the honest opposite commitment with certainty this is >=
  /// purified_p, so the projective optimum is always operationally
  /// realizable.
  double uhlmann_meas_p = 0.0;
  /// Best operational cheat found: max(measurement.best_p, uhlmann_meas_p).
  double best_p = 0.0;
  double honest_accept0 = 0.0;
  double honest_accept1 = 0.0;
};

/// Open-the-other-bit analysis: commit phi0 honestly, then rotate `acting`
/// (default: the spec's adam_acting) to pass verification for bit 1.
BindingReport binding(const ProtocolSpec& spec, const OptimizerConfig& cfg, std::uint64_t seed,
                      const std::optional<std::vector<std::string>>& acting_override =
                          std::nullopt);

struct MixedBindingReport {
  /// Steering ceilings per method (classical records dephased).
  double known_a_bound = 0.0;
  double known_b_bound = 0.0;
  /// Best single-method operational cheat found (optimizer plus the
  /// closed-form rotation as a candidate), with the method known.
  double known_a_p = 0.0;
  double known_b_p = 0.0;
  /// Method-A's closed-form rotation scored on the uniform method mixture,
  /// and likewise for B; strong starting candidates for the committer.
  double cross_a_p = 0.0;
  double cross_b_p = 0.0;
  CheatReport mixed;      // optimizer on the averaged operational payoff
  double best_p = 0.0;    // best averaged value over optimizer and candidates
  /// How far the method-oblivious committer stays below the method-known
  /// ceiling: min(known_a_bound, known_b_bound) - best_p.
  double margin = 0.0;
};

/// One rotation against two possible preparations: the committer does not
/// know which method the receiver used, so a single unitary on his group is
/// scored by the uniform average of both methods' acceptance. The two specs
/// must agree on the acting group's labels and dimensions.
MixedBindingReport binding_mixed(const ProtocolSpec& a, const ProtocolSpec& b,
                                 const OptimizerConfig& cfg, std::uint64_t seed);

struct WeightScanRow {
  std::vector<double> weights;
  ConcealmentReport report;
  /// True when deviating to these weights lets the receiver guess better
  /// than the prescribed ones by more than 1e-9.
  bool exceeds_prescribed = false;
};

/// Receiver-side deviation scan: rebuild the protocol at each weight vector
/// and report what the deviating receiver could learn.
std::vector<WeightScanRow> psi_variation_scan(const ProtocolSpec& spec,
                                              const std::vector<std::vector<double>>& grid);

struct CurveRow {
  int n = 0;
  double p_b_cheat = 0.0;     // receiver's guess probability
  double closed_form_p = 0.0; // steering ceiling (classical records dephased)
  double best_p = 0.0;        // the closed-form rotation scored operationally
  double epsilon = 0.0;       // max(p_b_cheat - 1/2, best_p)
};

/// Security trend over the parameter n: concealment plus the closed-form
/// cheat per point (no optimizer; raw values only, no extrapolation).
std::vector<CurveRow> us_curve(const std::function<ProtocolSpec(int)>& family,
                               const std::vector<int>& n_values);

}  // namespace qbc
