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

#include "qbc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"

namespace qbc {

namespace {

std::set<std::string> as_set(const std::vector<std::string>& v) {
  return std::set<std::string>(v.begin(), v.end());
}

void check_subset(const std::set<std::string>& inner, const std::set<std::string>& outer,
                  const std::string& what) {
  for (const std::string& l : inner)
    if (!outer.count(l)) throw LabelError(what + " contains a label outside its group: " + l);
}

// Fidelity of the two commitments reduced onto everything outside `acting`,
// with classical records there dephased: the ceiling on any acting-group
// cheat.
double steering_ceiling(const ProtocolSpec& spec, const std::vector<std::string>& acting) {
  std::vector<std::string> outside = spec.phi0.layout().complement(acting);
  if (outside.empty()) return 1.0;  // nothing anchors the commitment
  DensityOperator r0 = reduced_density(spec.phi0, outside);
  DensityOperator r1 = reduced_density(spec.phi1, outside);
  std::vector<std::string> classical;
  std::set<std::string> there = as_set(outside);
  for (const std::string& l : spec.babe_classical)
    if (there.count(l)) classical.push_back(l);
  if (!classical.empty()) {
    r0 = dephase(r0, classical);
    r1 = dephase(r1, classical);
  }
  return fidelity(r0, r1);
}

}  // namespace

void validate_spec(const ProtocolSpec& spec) {
  if (spec.phi0.dim() == 0 || spec.phi1.dim() == 0)
    throw ValidationError("protocol states are empty");
  if (spec.phi0.layout() != spec.phi1.layout())
    throw ValidationError("the two commitments disagree on the register layout");
  const SubsystemLayout& lay = spec.phi0.layout();

  if (spec.announce.labels.empty()) throw LabelError("announcement group must be nonempty");
  if (spec.verify.labels.empty()) throw LabelError("verifying group must be nonempty");
  lay.indices_of(spec.announce.labels);
  lay.indices_of(spec.verify.labels);
  lay.indices_of(spec.babe_kept);
  lay.indices_of(spec.adam_full);
  lay.indices_of(spec.adam_acting);
  if (!spec.verify.projector) throw ValidationError("verifying tests are missing");
  if (spec.verify.count != lay.dim_of(spec.announce.labels))
    throw ShapeError("one verifying test per announcement outcome is required");

  std::set<std::string> kept = as_set(spec.babe_kept);
  std::set<std::string> full = as_set(spec.adam_full);
  for (const std::string& l : kept)
    if (full.count(l)) throw LabelError("label held by both parties: " + l);
  if (kept.size() + full.size() != static_cast<std::size_t>(lay.factor_count()))
    throw LabelError("holdings must cover every register exactly once");
  if (kept.empty() || full.empty()) throw LabelError("each party must hold something");

  check_subset(as_set(spec.babe_classical), kept, "classical-record group");
  if (spec.adam_acting.empty()) throw LabelError("acting group must be nonempty");
  check_subset(as_set(spec.adam_acting), full, "acting group");
  check_subset(as_set(spec.announce.labels), full, "announcement group");
  std::set<std::string> ver = as_set(spec.verify.labels);
  for (const std::string& l : spec.announce.labels)
    if (ver.count(l)) throw LabelError("a register cannot be both announced and tested: " + l);
}

Transcript run_honest(const ProtocolSpec& spec, int bit, SeededRng& rng) {
  validate_spec(spec);
  if (bit != 0 && bit != 1) throw ValidationError("bit must be 0 or 1");
  const SubsystemLayout& lay = spec.phi0.layout();

  StateVector working = bit == 0 ? spec.phi0 : spec.phi1;
  if (spec.announce.basis) {
    int d_ann = lay.dim_of(spec.announce.labels);
    if (spec.announce.basis->rows() != d_ann || spec.announce.basis->cols() != d_ann)
      throw ShapeError("announcement basis does not fit its group");
    working = apply_to_labels(spec.announce.basis->adjoint(), working, spec.announce.labels);
  }

  std::vector<std::string> order = spec.announce.labels;
  order.insert(order.end(), spec.verify.labels.begin(), spec.verify.labels.end());
  std::vector<std::string> rest = lay.complement(order);
  order.insert(order.end(), rest.begin(), rest.end());
  StateVector arranged = reorder_factors(working, order);

  int d_ann = lay.dim_of(spec.announce.labels);
  int d_ver = lay.dim_of(spec.verify.labels);
  int d_rest = lay.dim() / (d_ann * d_ver);
  const VectorXcd& amps = arranged.amplitudes();

  std::vector<double> weights(static_cast<std::size_t>(d_ann));
  for (int i = 0; i < d_ann; ++i)
    weights[static_cast<std::size_t>(i)] =
        amps.segment(static_cast<long>(i) * d_ver * d_rest, static_cast<long>(d_ver) * d_rest)
            .squaredNorm();
  int outcome = rng.pick_weighted(weights);

  MatrixXcd p = spec.verify.projector(bit, outcome);
  if (p.rows() != d_ver || p.cols() != d_ver)
    throw ShapeError("verifying test does not fit its group");
  using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> w(amps.data() + static_cast<long>(outcome) * d_ver * d_rest, d_ver,
                             d_rest);
  double mass = weights[static_cast<std::size_t>(outcome)];
  double joint = ((p * w).cwiseProduct(w.conjugate())).sum().real();

  Transcript t;
  t.protocol = spec.name;
  t.bit = bit;
  t.announced = outcome;
  int digits_rest = outcome;
  t.announced_digits.assign(spec.announce.labels.size(), 0);
  for (int i = static_cast<int>(spec.announce.labels.size()) - 1; i >= 0; --i) {
    int d = lay.dim_of({spec.announce.labels[static_cast<std::size_t>(i)]});
    t.announced_digits[static_cast<std::size_t>(i)] = digits_rest % d;
    digits_rest /= d;
  }
  t.accept_prob = mass <= 0.0 ? 0.0 : std::min(1.0, std::max(0.0, joint / mass));
  t.accepted = rng.uniform01() < t.accept_prob;
  return t;
}

ConcealmentReport concealment(const ProtocolSpec& spec) {
  return concealment(spec, spec.babe_kept);
}

ConcealmentReport concealment(const ProtocolSpec& spec, const std::vector<std::string>& kept) {
  validate_spec(spec);
  if (kept.empty()) throw LabelError("kept group must be nonempty");
  DensityOperator r0 = reduced_density(spec.phi0, kept);
  DensityOperator r1 = reduced_density(spec.phi1, kept);
  std::vector<std::string> classical;
  std::set<std::string> in_kept = as_set(kept);
  for (const std::string& l : spec.babe_classical)
    if (in_kept.count(l)) classical.push_back(l);
  if (!classical.empty()) {
    r0 = dephase(r0, classical);
    r1 = dephase(r1, classical);
  }
  return concealment_report(r0, r1);
}

BindingReport binding(const ProtocolSpec& spec, const OptimizerConfig& cfg, std::uint64_t seed,
                      const std::optional<std::vector<std::string>>& acting_override) {
  validate_spec(spec);
  std::vector<std::string> acting = acting_override.value_or(spec.adam_acting);
  if (acting.empty()) throw LabelError("acting group must be nonempty");

  BindingReport out;
  out.acting = acting;
  UhlmannReport uh = uhlmann_cheat(spec.phi0, spec.phi1, acting);
  out.purified_p = uh.p;
  out.closed_form_p = steering_ceiling(spec, acting);

  int dim = spec.phi0.layout().dim_of(acting);
  Objective overlap = make_overlap_objective(spec.phi0, spec.phi1, acting);
  out.projective = optimize_cheat(overlap, dim, cfg, seed, uh.p);

  Objective operational =
      make_acceptance_objective(spec.phi0, 1, spec.announce, spec.verify, acting);
  out.measurement = optimize_cheat(operational, dim, cfg, seed + 1);
  out.uhlmann_meas_p = operational(uh.u);
  out.best_p = std::max(out.measurement.best_p, out.uhlmann_meas_p);

  out.honest_accept0 = acceptance_prob(spec.phi0, 0, spec.announce, spec.verify);
  out.honest_accept1 = acceptance_prob(spec.phi1, 1, spec.announce, spec.verify);
  return out;
}

MixedBindingReport binding_mixed(const ProtocolSpec& a, const ProtocolSpec& b,
                                 const OptimizerConfig& cfg, std::uint64_t seed) {
  validate_spec(a);
  validate_spec(b);
  if (a.adam_acting != b.adam_acting)
    throw LabelError("the two methods must expose the same acting group");
  for (const std::string& l : a.adam_acting)
    if (a.phi0.layout().dim_of({l}) != b.phi0.layout().dim_of({l}))
      throw ShapeError("acting group dimensions differ between the two methods");

  Objective on_a = make_acceptance_objective(a.phi0, 1, a.announce, a.verify, a.adam_acting);
  Objective on_b = make_acceptance_objective(b.phi0, 1, b.announce, b.verify, b.adam_acting);
  Objective mixed_obj = [on_a, on_b](const MatrixXcd& u) { return 0.5 * (on_a(u) + on_b(u)); };

  MixedBindingReport out;
  out.known_a_bound = steering_ceiling(a, a.adam_acting);
  out.known_b_bound = steering_ceiling(b, b.adam_acting);

  UhlmannReport rot_a = uhlmann_cheat(a.phi0, a.phi1, a.adam_acting);
  UhlmannReport rot_b = uhlmann_cheat(b.phi0, b.phi1, b.adam_acting);
  int dim = a.phi0.layout().dim_of(a.adam_acting);
  out.known_a_p = std::max(on_a(rot_a.u), optimize_cheat(on_a, dim, cfg, seed + 2).best_p);
  out.known_b_p = std::max(on_b(rot_b.u), optimize_cheat(on_b, dim, cfg, seed + 3).best_p);
  out.cross_a_p = mixed_obj(rot_a.u);
  out.cross_b_p = mixed_obj(rot_b.u);

  out.mixed = optimize_cheat(mixed_obj, dim, cfg, seed);
  out.best_p = std::max({out.mixed.best_p, out.cross_a_p, out.cross_b_p});
  out.margin = std::min(out.known_a_bound, out.known_b_bound) - out.best_p;
  return out;
}

std::vector<WeightScanRow> psi_variation_scan(const ProtocolSpec& spec,
                                              const std::vector<std::vector<double>>& grid) {
  validate_spec(spec);
  if (!spec.rebuild_with_weights)
    throw UnsupportedScanError("protocol " + spec.name + " has no receiver-side weight knob");
  if (grid.empty()) throw ValidationError("weight grid is empty");

  double prescribed = concealment(spec).p_b_cheat;
  std::vector<WeightScanRow> rows;
  rows.reserve(grid.size());
  for (const std::vector<double>& w : grid) {
    ProtocolSpec variant = spec.rebuild_with_weights(w);
    WeightScanRow row;
    row.weights = w;
    row.report = concealment(variant);
    row.exceeds_prescribed = row.report.p_b_cheat > prescribed + 1e-9;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CurveRow> us_curve(const std::function<ProtocolSpec(int)>& family,
                               const std::vector<int>& n_values) {
  if (!family) throw ValidationError("family builder is empty");
  std::vector<CurveRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    ProtocolSpec spec = family(n);
    validate_spec(spec);
    CurveRow row;
    row.n = n;
    row.p_b_cheat = concealment(spec).p_b_cheat;
    row.closed_form_p = steering_ceiling(spec, spec.adam_acting);
    UhlmannReport uh = uhlmann_cheat(spec.phi0, spec.phi1, spec.adam_acting);
    Objective operational =
        make_acceptance_objective(spec.phi0, 1, spec.announce, spec.verify, spec.adam_acting);
    row.best_p = operational(uh.u);
    row.epsilon = std::max(row.p_b_cheat - 0.5, row.best_p);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qbc
