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

#include "qbc/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"

namespace qbc {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> uniform_weights(int count) {
  return std::vector<double>(static_cast<std::size_t>(count), 1.0 / count);
}

std::vector<double> resolve_weights(const std::vector<double>& weights, int count,
                                    const std::string& what) {
  if (weights.empty()) return uniform_weights(count);
  if (static_cast<int>(weights.size()) != count)
    throw ValidationError(what + " needs " + std::to_string(count) + " weights, got " +
                          std::to_string(weights.size()));
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError(what + " weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError(what + " weights must sum to 1");
  return weights;
}

int wrap4(int j) { return ((j % 4) + 4) % 4; }

/// Pure state |s_{j(0)} s_{j(1)} ...> over `layout` with a per-factor index map.
VectorXcd pattern_amplitudes(const std::vector<VectorXcd>& parts) {
  VectorXcd amps = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) amps = kron(amps, parts[i]);
  return amps;
}

}  // namespace

std::vector<StateVector> s0_states() {
  SubsystemLayout q = SubsystemLayout::single("q", 2);
  std::vector<StateVector> out;
  out.reserve(4);
  for (int j = 0; j < 4; ++j) {
    VectorXcd v(2);
    v << std::cos(j * kPi / 4.0), std::sin(j * kPi / 4.0);
    out.emplace_back(q, v);
  }
  return out;
}

Eigen::Matrix2cd pi_shift() {
  Eigen::Matrix2cd u;
  u << 0.0, -1.0, 1.0, 0.0;
  return u;
}

CommitmentEnsemble bb84_ensemble() {
  SubsystemLayout q = SubsystemLayout::single("q", 2);
  VectorXcd zero(2), one(2), plus(2), minus(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CommitmentEnsemble ens;
  ens.states0 = {StateVector(q, zero), StateVector(q, one)};
  ens.states1 = {StateVector(q, plus), StateVector(q, minus)};
  ens.probs0 = {0.5, 0.5};
  ens.probs1 = {0.5, 0.5};
  return ens;
}

CommitmentEnsemble orthogonal_ensemble() {
  SubsystemLayout q = SubsystemLayout::single("q", 2);
  VectorXcd zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  CommitmentEnsemble ens;
  ens.states0 = {StateVector(q, zero)};
  ens.states1 = {StateVector(q, one)};
  ens.probs0 = {1.0};
  ens.probs1 = {1.0};
  return ens;
}

CommitmentEnsemble degenerate_ensemble() {
  SubsystemLayout q = SubsystemLayout::single("q", 2);
  VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CommitmentEnsemble ens;
  ens.states0 = {StateVector(q, plus)};
  ens.states1 = {StateVector(q, plus)};
  ens.probs0 = {1.0};
  ens.probs1 = {1.0};
  return ens;
}

ProtocolSpec simple_m_spec(const CommitmentEnsemble& ensemble) {
  ensemble.validate();
  ProtocolSpec spec;
  spec.name = "simple-m";
  spec.n = 1;
  spec.phi0 = committed_state(ensemble, 0, "a");
  spec.phi1 = committed_state(ensemble, 1, "a");
  spec.announce.labels = {"a"};
  spec.verify.labels = ensemble.state_layout().labels();
  spec.verify.count = ensemble.count();
  spec.verify.projector = [ensemble](int bit, int index) -> MatrixXcd {
    const std::vector<StateVector>& states = bit == 0 ? ensemble.states0 : ensemble.states1;
    return projector(states[static_cast<std::size_t>(index)].amplitudes());
  };
  spec.babe_kept = ensemble.state_layout().labels();
  spec.adam_acting = {"a"};
  spec.adam_full = {"a"};
  return spec;
}

ProtocolSpec perm4_spec(bool babe_entangled, const std::vector<double>& weights) {
  std::vector<double> lambda = resolve_weights(weights, 4, "shift mixture");

  std::vector<StateVector> s0 = s0_states();
  std::vector<VectorXcd> s(4);
  for (int j = 0; j < 4; ++j) s[j] = s0[static_cast<std::size_t>(j)].amplitudes();

  // Shifted patterns: qubit j of pattern k carries s_{j-k}.
  SubsystemLayout qubits({{"b11", 2}, {"b12", 2}, {"b13", 2}, {"b14", 2}});
  std::vector<StateVector> patterns;
  patterns.reserve(4);
  for (int k = 0; k < 4; ++k) {
    std::vector<VectorXcd> parts(4);
    for (int j = 0; j < 4; ++j) parts[static_cast<std::size_t>(j)] = s[wrap4(j - k)];
    patterns.emplace_back(qubits, pattern_amplitudes(parts));
  }

  StateVector babe_side = purification(lambda, patterns, "b2");
  VectorXcd quarter(4);
  quarter.setConstant(0.5);
  StateVector adam_index(SubsystemLayout::single("a1", 4), quarter);
  StateVector joint = tensor(adam_index, babe_side);

  // Index m scrambles the four qubits by the cyclic shift of m positions,
  // turning pattern k into pattern k+m.
  std::vector<MatrixXcd> shifts(4);
  for (int m = 0; m < 4; ++m) {
    std::vector<int> perm(4);
    for (int j = 0; j < 4; ++j) perm[static_cast<std::size_t>(j)] = wrap4(j - m);
    shifts[static_cast<std::size_t>(m)] = permutation_unitary(perm, qubits);
  }
  std::vector<std::string> qubit_labels = {"b11", "b12", "b13", "b14"};
  StateVector scrambled = controlled_apply(joint, "a1", qubit_labels, shifts);

  ProtocolSpec spec;
  spec.name = babe_entangled ? "perm4-entangled" : "perm4-classical";
  spec.n = 4;
  spec.phi0 = scrambled;
  spec.phi1 = apply_to_labels(pi_shift(), scrambled, {"b11"});
  spec.announce.labels = {"a1"};

  // The verifier's registers after the committer returns b12..b14.
  spec.verify.labels = {"b11", "b12", "b13", "b14", "b2"};
  spec.verify.count = 4;
  MatrixXcd u1 = pi_shift();
  if (babe_entangled) {
    // Rank-1 check onto the exact displaced copy of what was sent.
    spec.verify.projector = [lambda, shifts, patterns, u1](int bit, int m) -> MatrixXcd {
      VectorXcd chi = VectorXcd::Zero(64);
      for (int k = 0; k < 4; ++k) {
        VectorXcd v = shifts[static_cast<std::size_t>(m)] *
                      patterns[static_cast<std::size_t>(k)].amplitudes();
        if (bit == 1) v = kron(u1, MatrixXcd::Identity(8, 8)) * v;
        for (int g = 0; g < 16; ++g)
          chi[g * 4 + k] += std::sqrt(lambda[static_cast<std::size_t>(k)]) * v[g];
      }
      return projector(chi);
    };
  } else {
    // The shift record is classical: check each branch against its own k.
    spec.verify.projector = [shifts, patterns, u1](int bit, int m) -> MatrixXcd {
      MatrixXcd p = MatrixXcd::Zero(64, 64);
      for (int k = 0; k < 4; ++k) {
        VectorXcd v = shifts[static_cast<std::size_t>(m)] *
                      patterns[static_cast<std::size_t>(k)].amplitudes();
        if (bit == 1) v = kron(u1, MatrixXcd::Identity(8, 8)) * v;
        MatrixXcd tag = MatrixXcd::Zero(4, 4);
        tag(k, k) = 1.0;
        p += kron(projector(v), tag);
      }
      return p;
    };
  }

  spec.babe_kept = {"b11", "b2"};
  if (!babe_entangled) spec.babe_classical = {"b2"};
  spec.adam_acting = {"a1"};
  spec.adam_full = {"a1", "b12", "b13", "b14"};
  spec.prescribed_weights = lambda;
  spec.rebuild_with_weights = [babe_entangled](const std::vector<double>& w) {
    return perm4_spec(babe_entangled, w);
  };
  return spec;
}

ProtocolSpec qbc1_spec(int n, const std::string& method, bool adam_knows_method,
                       bool babe_holds_evidence, const std::vector<double>& weights) {
  if (n < 1) throw ConfigError("qbc1 needs n >= 1");
  bool fresh = method == "fresh-ancilla";
  if (!fresh && method != "swap-slot")
    throw ConfigError("unknown selection method: " + method +
                      " (expected swap-slot or fresh-ancilla)");
  std::vector<double> lambda = resolve_weights(weights, n, "slot selection");

  std::vector<StateVector> s0 = s0_states();
  std::vector<VectorXcd> s(4);
  for (int j = 0; j < 4; ++j) s[j] = s0[static_cast<std::size_t>(j)].amplitudes();

  // One announce-index pair: |pair> = (1/2) sum_j |j>|s_j>.
  auto pair_state = [&s](const std::string& c, const std::string& r) {
    SubsystemLayout lay({{c, 4}, {r, 2}});
    VectorXcd amps(8);
    for (int j = 0; j < 4; ++j)
      for (int g = 0; g < 2; ++g) amps[j * 2 + g] = 0.5 * s[static_cast<std::size_t>(j)][g];
    return StateVector(lay, amps);
  };

  std::vector<std::string> c_labels, slot_labels;
  StateVector psi;
  if (fresh) {
    for (int i = 1; i <= n; ++i) {
      std::string c = "c" + std::to_string(i);
      std::string r = "r" + std::to_string(i);
      StateVector pair = pair_state(c, r);
      psi = i == 1 ? pair : tensor(psi, pair);
      c_labels.push_back(c);
      slot_labels.push_back(r);
    }
    psi = tensor(psi, StateVector::basis(SubsystemLayout::single("ev", 2), {0}));
    slot_labels.push_back("ev");
  } else {
    // Slot 1 doubles as the evidence register.
    psi = pair_state("c1", "ev");
    c_labels.push_back("c1");
    slot_labels.push_back("ev");
    for (int i = 2; i <= n; ++i) {
      std::string c = "c" + std::to_string(i);
      std::string r = "r" + std::to_string(i);
      psi = tensor(psi, pair_state(c, r));
      c_labels.push_back(c);
      slot_labels.push_back(r);
    }
  }

  VectorXcd sel(n);
  for (int k = 0; k < n; ++k) sel[k] = std::sqrt(lambda[static_cast<std::size_t>(k)]);
  psi = tensor(psi, StateVector(SubsystemLayout::single("bsel", n), sel));

  // Route slot k into the evidence position. The selection register stays a
  // classical record on the receiver's side, so analyses dephase it; the
  // amplitude form here is only a bookkeeping device for the k-mixture.
  SubsystemLayout slot_layout = psi.layout().select(slot_labels);
  int slot_count = static_cast<int>(slot_labels.size());
  int ev_pos = fresh ? slot_count - 1 : 0;
  std::vector<MatrixXcd> routes;
  routes.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<int> perm(static_cast<std::size_t>(slot_count));
    for (int i = 0; i < slot_count; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::swap(perm[static_cast<std::size_t>(ev_pos)], perm[static_cast<std::size_t>(k)]);
    routes.push_back(permutation_unitary(perm, slot_layout));
  }
  psi = controlled_apply(psi, "bsel", slot_labels, routes);

  ProtocolSpec spec;
  spec.name = "qbc1-" + method + "-n" + std::to_string(n);
  spec.n = n;
  spec.phi0 = psi;
  spec.phi1 = apply_to_labels(pi_shift(), psi, {"ev"});
  spec.announce.labels = c_labels;

  spec.verify.labels = slot_labels;
  spec.verify.labels.push_back("bsel");
  spec.verify.count = 1;
  for (int i = 0; i < n; ++i) spec.verify.count *= 4;
  MatrixXcd u1 = pi_shift();
  spec.verify.projector = [n, fresh, s, u1, ev_pos](int bit, int index) -> MatrixXcd {
    // Announced indices, c1 most significant.
    std::vector<int> j(static_cast<std::size_t>(n));
    int rest = index;
    for (int i = n - 1; i >= 0; --i) {
      j[static_cast<std::size_t>(i)] = rest % 4;
      rest /= 4;
    }
    VectorXcd zero(2);
    zero << 1.0, 0.0;
    int dim = (fresh ? (2 << n) : (2 << (n - 1))) * n;
    MatrixXcd p = MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
      VectorXcd evidence = s[static_cast<std::size_t>(j[static_cast<std::size_t>(k)])];
      if (bit == 1) evidence = u1 * evidence;
      std::vector<VectorXcd> parts;
      if (fresh) {
        // r_i keeps s_{j_i} except the emptied slot k; the ancilla holds the
        // modulated qubit.
        for (int i = 0; i < n; ++i)
          parts.push_back(i == k ? zero : s[static_cast<std::size_t>(j[static_cast<std::size_t>(i)])]);
        parts.push_back(evidence);
      } else {
        // Slot 1 holds the modulated qubit; slot k received slot 1's state.
        for (int i = 0; i < n; ++i) {
          if (i == ev_pos)
            parts.push_back(evidence);
          else if (i == k)
            parts.push_back(s[static_cast<std::size_t>(j[0])]);
          else
            parts.push_back(s[static_cast<std::size_t>(j[static_cast<std::size_t>(i)])]);
        }
      }
      VectorXcd tag = VectorXcd::Zero(n);
      tag[k] = 1.0;
      parts.push_back(tag);
      p += projector(pattern_amplitudes(parts));
    }
    return p;
  };

  spec.babe_kept.assign(slot_labels.begin(), slot_labels.end());
  spec.babe_kept.erase(std::remove(spec.babe_kept.begin(), spec.babe_kept.end(), "ev"),
                       spec.babe_kept.end());
  spec.babe_kept.push_back("bsel");
  spec.babe_classical = {"bsel"};
  spec.adam_full = c_labels;
  if (babe_holds_evidence) {
    spec.babe_kept.insert(spec.babe_kept.begin(), "ev");
  } else {
    spec.adam_full.push_back("ev");
  }
  spec.adam_acting = spec.adam_full;
  spec.adam_knows_method = adam_knows_method;
  spec.prescribed_weights = lambda;
  spec.rebuild_with_weights = [n, method, adam_knows_method,
                               babe_holds_evidence](const std::vector<double>& w) {
    return qbc1_spec(n, method, adam_knows_method, babe_holds_evidence, w);
  };
  return spec;
}

}  // namespace qbc
