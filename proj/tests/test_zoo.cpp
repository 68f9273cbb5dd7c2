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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qbc/distinguish.hpp"
#include "qbc/zoo.hpp"

using namespace qbc;

namespace {

std::vector<double> delta_weights(int count, int hot) {
  std::vector<double> w(static_cast<std::size_t>(count), 0.0);
  w[static_cast<std::size_t>(hot)] = 1.0;
  return w;
}

/// Four-qubit shifted pattern assembled from raw Kronecker products, sharing
/// no code with the builder under test.
VectorXcd pattern_oracle(int k) {
  auto s = [](int j) {
    VectorXcd v(2);
    double a = ((j % 4) + 4) % 4 * 3.14159265358979323846 / 4.0;
    v << std::cos(a), std::sin(a);
    return v;
  };
  VectorXcd amps = s(-k);
  for (int j = 1; j < 4; ++j) amps = kron(amps, s(j - k));
  return amps;
}

}  // namespace

TEST_CASE("the four equiangular states and their quarter-turn") {
  std::vector<StateVector> s = s0_states();
  REQUIRE(s.size() == 4);
  for (const StateVector& v : s) CHECK(std::abs(v.amplitudes().norm() - 1.0) < 1e-15);

  CHECK(std::abs(s[0].amplitudes()[0] - 1.0) < 1e-15);
  CHECK(std::abs(s[0].amplitudes()[1]) < 1e-15);
  CHECK(std::abs(std::abs(s[2].amplitudes()[1]) - 1.0) < 1e-12);  // s_2 = |1> up to phase

  MatrixXcd mix = MatrixXcd::Zero(2, 2);
  for (const StateVector& v : s) mix += 0.25 * projector(v.amplitudes());
  CHECK((mix - 0.5 * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::Matrix2cd u = pi_shift();
  CHECK((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((u * u + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);  // twice = -I
  for (int j = 0; j < 4; ++j) {
    cd overlap = s[(j + 2) % 4].amplitudes().dot(u * s[j].amplitudes());
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
  }
}

TEST_CASE("stock ensembles validate and have the advertised overlaps") {
  CHECK_NOTHROW(bb84_ensemble().validate());
  CHECK_NOTHROW(orthogonal_ensemble().validate());
  CHECK_NOTHROW(degenerate_ensemble().validate());

  CommitmentEnsemble bb84 = bb84_ensemble();
  DensityOperator r0 = reduced_density(committed_state(bb84, 0, "a"), {"q"});
  DensityOperator r1 = reduced_density(committed_state(bb84, 1, "a"), {"q"});
  CHECK((r0.matrix() - 0.5 * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((r1.matrix() - 0.5 * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("announce-the-index protocol wiring") {
  ProtocolSpec spec = simple_m_spec(bb84_ensemble());
  CHECK_NOTHROW(validate_spec(spec));
  CHECK(spec.phi0.layout().labels() == std::vector<std::string>{"a", "q"});
  CHECK(spec.verify.count == 2);
  CHECK(spec.announce.labels == std::vector<std::string>{"a"});

  CHECK(acceptance_prob(spec.phi0, 0, spec.announce, spec.verify) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(acceptance_prob(spec.phi1, 1, spec.announce, spec.verify) == doctest::Approx(1.0).epsilon(1e-12));

  // Wrong-bit opening of a revealing pair is rejected outright.
  ProtocolSpec ortho = simple_m_spec(orthogonal_ensemble());
  CHECK(acceptance_prob(ortho.phi0, 1, ortho.announce, ortho.verify) < 1e-12);
}

TEST_CASE("announce-the-index concealment endpoints") {
  CHECK(concealment(simple_m_spec(bb84_ensemble())).p_b_cheat == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(concealment(simple_m_spec(orthogonal_ensemble())).p_b_cheat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concealment(simple_m_spec(degenerate_ensemble())).p_b_cheat == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(uhlmann_cheat(simple_m_spec(orthogonal_ensemble()).phi0,
                      simple_m_spec(orthogonal_ensemble()).phi1, {"a"})
            .p < 1e-9);
  CHECK(uhlmann_cheat(simple_m_spec(degenerate_ensemble()).phi0,
                      simple_m_spec(degenerate_ensemble()).phi1, {"a"})
            .p > 1.0 - 1e-9);
}

TEST_CASE("four-qubit cyclic protocol structure") {
  ProtocolSpec spec = perm4_spec(true);
  CHECK_NOTHROW(validate_spec(spec));
  CHECK(spec.phi0.dim() == 256);
  CHECK(spec.phi0.layout().labels() ==
        std::vector<std::string>{"a1", "b11", "b12", "b13", "b14", "b2"});
  CHECK(spec.babe_kept == std::vector<std::string>{"b11", "b2"});
  CHECK(spec.adam_acting == std::vector<std::string>{"a1"});
  CHECK(spec.prescribed_weights == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK(bool(spec.rebuild_with_weights));

  // Conditional on index m = 0 and shift k pinned by a delta weight, the
  // receiver-side qubits must carry the oracle pattern.
  for (int k = 0; k < 4; ++k) {
    ProtocolSpec pinned = perm4_spec(true, delta_weights(4, k));
    StateVector front = reorder_factors(pinned.phi0, {"a1", "b2", "b11", "b12", "b13", "b14"});
    // a1 = 0 block, b2 = k block, each of length 16.
    VectorXcd block = front.amplitudes().segment(k * 16, 16);
    VectorXcd expected = 0.5 * pattern_oracle(k);
    CHECK((block - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("four-qubit cyclic protocol honest completeness") {
  for (bool entangled : {true, false}) {
    ProtocolSpec spec = perm4_spec(entangled);
    CHECK(acceptance_prob(spec.phi0, 0, spec.announce, spec.verify) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(acceptance_prob(spec.phi1, 1, spec.announce, spec.verify) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  ProtocolSpec pinned = perm4_spec(false, delta_weights(4, 2));
  CHECK(acceptance_prob(pinned.phi0, 0, pinned.announce, pinned.verify) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(acceptance_prob(pinned.phi1, 1, pinned.announce, pinned.verify) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("modulated qubit carries nothing once the index is averaged out") {
  // For every pinned shift k the two evidence reductions coincide exactly.
  for (int k = 0; k < 4; ++k) {
    ProtocolSpec spec = perm4_spec(false, delta_weights(4, k));
    DensityOperator r0 = reduced_density(spec.phi0, {"b11"});
    DensityOperator r1 = reduced_density(spec.phi1, {"b11"});
    CHECK(trace_distance(r0, r1) <= 1e-12);
    CHECK((r0.matrix() - 0.5 * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("split-space concealment of the cyclic protocol") {
  ProtocolSpec spec = perm4_spec(false);

  // Without the modulated qubit the receiver learns nothing, exactly.
  ConcealmentReport returned = concealment(spec, {"b12", "b13", "b14", "b2"});
  CHECK(std::abs(returned.p_b_cheat - 0.5) <= 1e-12);
  CHECK(returned.trace_distance <= 1e-12);
  ConcealmentReport partial = concealment(spec, {"b12", "b2"});
  CHECK(std::abs(partial.p_b_cheat - 0.5) <= 1e-12);

  // With every qubit in hand the bit leaks.
  ConcealmentReport full = concealment(spec, {"b11", "b12", "b13", "b14", "b2"});
  CHECK(full.p_b_cheat > 0.5 + 1e-3);
}

TEST_CASE("index averaging protects the modulated qubit even against a purified receiver") {
  // The four cyclic shifts average every selection-register block into a
  // form the quarter-turn conjugation leaves untouched, so the reduction on
  // {modulated qubit, purifier} is bit-independent exactly - for any shift
  // weights, uniform or not.
  for (const std::vector<double>& w :
       {std::vector<double>{0.25, 0.25, 0.25, 0.25}, std::vector<double>{0.4, 0.3, 0.2, 0.1}}) {
    ConcealmentReport holding = concealment(perm4_spec(true, w));
    CHECK(std::abs(holding.p_b_cheat - 0.5) <= 1e-12);
    CHECK(holding.trace_distance <= 1e-12);
  }
}

TEST_CASE("restricted steering of the cyclic protocol stays away from 1") {
  // Oracle: with the index register as the only acting group, the best
  // projective cheat equals the fidelity of the two uniform-index mixtures
  // on the qubits, assembled here by hand.
  std::vector<StateVector> s0 = s0_states();
  MatrixXcd u1 = kron(MatrixXcd(pi_shift()), MatrixXcd(MatrixXcd::Identity(8, 8)));
  SubsystemLayout qubits({{"q1", 2}, {"q2", 2}, {"q3", 2}, {"q4", 2}});
  MatrixXcd a = MatrixXcd::Zero(16, 16), b = MatrixXcd::Zero(16, 16);
  for (int j = 0; j < 4; ++j) {
    VectorXcd v = pattern_oracle(j);
    a += 0.25 * projector(v);
    b += 0.25 * projector(u1 * v);
  }
  double oracle = fidelity(DensityOperator(qubits, a), DensityOperator(qubits, b));

  for (int k : {0, 2}) {
    ProtocolSpec spec = perm4_spec(false, delta_weights(4, k));
    UhlmannReport restricted = uhlmann_cheat(spec.phi0, spec.phi1, {"a1"});
    CHECK(std::abs(restricted.p - oracle) < 1e-9);
    CHECK(restricted.p <= 1.0 - 1e-3);

    UhlmannReport full = uhlmann_cheat(spec.phi0, spec.phi1, {"a1", "b12", "b13", "b14"});
    CHECK(full.p >= 1.0 - 1e-9);
  }
}

TEST_CASE("evidence-swap protocol structure and capacity") {
  ProtocolSpec swap2 = qbc1_spec(2, "swap-slot");
  CHECK_NOTHROW(validate_spec(swap2));
  CHECK(swap2.phi0.layout().labels() ==
        std::vector<std::string>{"c1", "ev", "c2", "r2", "bsel"});
  CHECK(swap2.adam_acting == std::vector<std::string>{"c1", "c2"});
  CHECK(swap2.babe_kept == std::vector<std::string>{"ev", "r2", "bsel"});
  CHECK(swap2.babe_classical == std::vector<std::string>{"bsel"});
  CHECK(swap2.verify.count == 16);

  ProtocolSpec fresh2 = qbc1_spec(2, "fresh-ancilla");
  CHECK_NOTHROW(validate_spec(fresh2));
  CHECK(fresh2.phi0.layout().labels() ==
        std::vector<std::string>{"c1", "r1", "c2", "r2", "ev", "bsel"});
  CHECK(fresh2.adam_acting == std::vector<std::string>{"c1", "c2"});
  CHECK(fresh2.babe_kept == std::vector<std::string>{"ev", "r1", "r2", "bsel"});

  // The variant that leaves the modulated qubit with the committer until
  // opening moves it into his acting group.
  ProtocolSpec held = qbc1_spec(2, "swap-slot", true, false);
  CHECK_NOTHROW(validate_spec(held));
  CHECK(held.adam_acting == std::vector<std::string>{"c1", "c2", "ev"});
  CHECK(held.babe_kept == std::vector<std::string>{"r2", "bsel"});

  CHECK_THROWS_AS(qbc1_spec(0, "swap-slot"), ConfigError);
  CHECK_THROWS_AS(qbc1_spec(2, "telepathy"), ConfigError);
  CHECK_THROWS_AS(qbc1_spec(4, "swap-slot"), CapacityError);
  CHECK_THROWS_AS(qbc1_spec(4, "fresh-ancilla"), CapacityError);
  CHECK_THROWS_AS(qbc1_spec(2, "swap-slot", true, true, {0.4, 0.7}), ValidationError);
  CHECK_THROWS_AS(qbc1_spec(2, "swap-slot", true, true, {0.4, 0.4, 0.2}), ValidationError);
}

TEST_CASE("evidence-swap protocol honest completeness") {
  for (int n : {1, 2, 3}) {
    for (std::string method : {"swap-slot", "fresh-ancilla"}) {
      ProtocolSpec spec = qbc1_spec(n, method);
      CHECK(acceptance_prob(spec.phi0, 0, spec.announce, spec.verify) ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(acceptance_prob(spec.phi1, 1, spec.announce, spec.verify) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("evidence-swap concealment is exact for every slot count and weighting") {
  for (int n : {1, 2, 3}) {
    for (std::string method : {"swap-slot", "fresh-ancilla"}) {
      ConcealmentReport rep = concealment(qbc1_spec(n, method));
      CHECK(std::abs(rep.p_b_cheat - 0.5) <= 1e-12);
      CHECK(rep.trace_distance <= 1e-12);
    }
  }
  // Skewed selection weights change nothing: per selected slot the evidence
  // reduction is maximally mixed either way.
  ConcealmentReport skew = concealment(qbc1_spec(2, "swap-slot", true, true, {0.9, 0.1}));
  CHECK(std::abs(skew.p_b_cheat - 0.5) <= 1e-12);
  // So does parking the modulated qubit with the committer until opening.
  ConcealmentReport held = concealment(qbc1_spec(2, "swap-slot", true, false));
  CHECK(std::abs(held.p_b_cheat - 0.5) <= 1e-12);
}

TEST_CASE("a coherent selection record would mark the evidence") {
  // The which-slot note must stay classical: carried as a coherent register
  // it picks up the modulation on its off-diagonal blocks, and the receiver
  // could read the bit from her own holdings. Scoring the raw (undephased)
  // reductions shows the damage; the protocol analyses therefore dephase.
  for (std::string method : {"swap-slot", "fresh-ancilla"}) {
    ProtocolSpec spec = qbc1_spec(2, method);
    ConcealmentReport raw = concealment_report(reduced_density(spec.phi0, spec.babe_kept),
                                               reduced_density(spec.phi1, spec.babe_kept));
    CHECK(std::abs(raw.p_b_cheat - 0.75) <= 1e-9);
    CHECK(std::abs(concealment(spec).p_b_cheat - 0.5) <= 1e-12);
  }
  // One slot means no off-diagonal blocks, so n = 1 is safe even coherently.
  ProtocolSpec one = qbc1_spec(1, "swap-slot");
  ConcealmentReport raw = concealment_report(reduced_density(one.phi0, one.babe_kept),
                                             reduced_density(one.phi1, one.babe_kept));
  CHECK(std::abs(raw.p_b_cheat - 0.5) <= 1e-12);
}

// The quarter-turn carried over to the announcement register: relabelling
// index j to j+2 (signs for the wrap) acts on a committed pair exactly like
// turning the paired qubit itself.
MatrixXcd index_shift_unitary() {
  MatrixXcd u = MatrixXcd::Zero(4, 4);
  u(2, 0) = 1.0;
  u(3, 1) = 1.0;
  u(0, 2) = -1.0;
  u(1, 3) = -1.0;
  return u;
}

TEST_CASE("announcement-side steering opens either way at one slot") {
  for (std::string method : {"swap-slot", "fresh-ancilla"}) {
    ProtocolSpec spec = qbc1_spec(1, method);
    // Closed form: the index relabelling on c1 reproduces the modulated
    // commitment exactly, so the committer opens either bit at will.
    StateVector steered = apply_to_labels(index_shift_unitary().adjoint(), spec.phi0, {"c1"});
    CHECK((steered.amplitudes() - spec.phi1.amplitudes()).norm() <= 1e-12);

    UhlmannReport rot = uhlmann_cheat(spec.phi0, spec.phi1, spec.adam_acting);
    CHECK(rot.p >= 1.0 - 1e-9);
    Objective accept =
        make_acceptance_objective(spec.phi0, 1, spec.announce, spec.verify, spec.adam_acting);
    CHECK(accept(rot.u) >= 1.0 - 1e-9);
  }
}

TEST_CASE("announcement-side steering caps at one selection branch beyond one slot") {
  for (std::string method : {"swap-slot", "fresh-ancilla"}) {
    ProtocolSpec spec = qbc1_spec(2, method);
    // The selected slot is outside the committer's reach and he does not
    // know which it is: relabelling one pair flips exactly that pair's
    // branch and ruins the other, for either method.
    Objective accept =
        make_acceptance_objective(spec.phi0, 1, spec.announce, spec.verify, spec.adam_acting);
    MatrixXcd flip_first =
        kron(MatrixXcd(index_shift_unitary().adjoint()), MatrixXcd(MatrixXcd::Identity(4, 4)));
    CHECK(accept(flip_first) == doctest::Approx(0.5).epsilon(1e-12));

    // Coherent steering cannot do better than the purified fidelity, which
    // collapses once two selection branches exist.
    UhlmannReport rot = uhlmann_cheat(spec.phi0, spec.phi1, spec.adam_acting);
    CHECK(std::abs(rot.p - 0.25) <= 1e-9);
  }
}

TEST_CASE("retained evidence would open either way for both methods") {
  // Custody is the whole game: if the committer still held the modulated
  // qubit at opening, one local quarter-turn on it would flip the bit
  // perfectly no matter how the receiver routed her selection.
  for (std::string method : {"swap-slot", "fresh-ancilla"}) {
    ProtocolSpec spec = qbc1_spec(2, method, true, false);
    Objective accept =
        make_acceptance_objective(spec.phi0, 1, spec.announce, spec.verify, spec.adam_acting);
    MatrixXcd u = kron(MatrixXcd(MatrixXcd::Identity(16, 16)), MatrixXcd(pi_shift()));
    CHECK(accept(u) >= 1.0 - 1e-12);
  }
}
