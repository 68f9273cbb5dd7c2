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
#include <vector>

#include "qbc/distinguish.hpp"
#include "qbc/entangle.hpp"

using namespace qbc;

namespace {

StateVector qubit(const std::string& label, cd a0, cd a1) {
  VectorXcd v(2);
  v << a0, a1;
  v /= v.norm();
  return StateVector(SubsystemLayout::single(label, 2), v);
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CommitmentEnsemble bb84_like() {
  CommitmentEnsemble ens;
  ens.states0 = {qubit("q", 1, 0), qubit("q", 0, 1)};
  ens.states1 = {qubit("q", 1, 1), qubit("q", 1, -1)};
  ens.probs0 = {0.5, 0.5};
  ens.probs1 = {0.5, 0.5};
  return ens;
}

}  // namespace

TEST_CASE("committed state lays announcements out in blocks") {
  CommitmentEnsemble ens = bb84_like();
  StateVector phi0 = committed_state(ens, 0);
  StateVector phi1 = committed_state(ens, 1);

  CHECK(phi0.layout().labels() == std::vector<std::string>{"a", "q"});
  CHECK(phi0.dim() == 4);
  // sqrt(1/2)(|0>|0> + |1>|1>)
  CHECK(std::abs(phi0.amplitudes()[0] - kInvSqrt2) < 1e-15);
  CHECK(std::abs(phi0.amplitudes()[3] - kInvSqrt2) < 1e-15);
  CHECK(std::abs(phi0.amplitudes()[1]) < 1e-15);
  // sqrt(1/2)(|0>|+> + |1>|->)
  CHECK(std::abs(phi1.amplitudes()[0] - 0.5) < 1e-15);
  CHECK(std::abs(phi1.amplitudes()[3] + 0.5) < 1e-15);

  CHECK_THROWS_AS(committed_state(ens, 2), ValidationError);
}

TEST_CASE("ensemble validation rejects malformed input") {
  CommitmentEnsemble ens = bb84_like();
  ens.states1.pop_back();
  CHECK_THROWS_AS(ens.validate(), ValidationError);

  ens = bb84_like();
  ens.probs0 = {0.7, 0.7};
  CHECK_THROWS_AS(ens.validate(), ValidationError);

  ens = bb84_like();
  ens.probs1 = {1.5, -0.5};
  CHECK_THROWS_AS(ens.validate(), ValidationError);

  ens = bb84_like();
  ens.states0[1] = qubit("r", 0, 1);
  CHECK_THROWS_AS(ens.validate(), ShapeError);
}

TEST_CASE("frozen two-state commitment: spectrum, purity, decomposition") {
  // Equal mixture of |0> and |+> on the evidence side.
  CommitmentEnsemble ens;
  ens.states0 = {qubit("q", 1, 0), qubit("q", 1, 1)};
  ens.states1 = ens.states0;
  ens.probs0 = {0.5, 0.5};
  ens.probs1 = {0.5, 0.5};
  StateVector phi = committed_state(ens, 0);

  DensityOperator rb = reduced_density(phi, {"q"});
  EighResult e = eigh(rb.matrix());
  CHECK(e.values[0] == doctest::Approx(0.146447).epsilon(1e-5));
  CHECK(e.values[1] == doctest::Approx(0.853553).epsilon(1e-5));
  CHECK((rb.matrix() * rb.matrix()).trace().real() == doctest::Approx(0.75).epsilon(1e-12));

  SchmidtDecomposition sd = schmidt(phi, {"a"});
  REQUIRE(sd.rank() == 2);
  CHECK(sd.coefficients[0] == doctest::Approx(0.923880).epsilon(1e-5));
  CHECK(sd.coefficients[1] == doctest::Approx(0.382683).epsilon(1e-5));
}

TEST_CASE("purification reproduces the mixture it purifies") {
  SeededRng rng(271828, 0);
  SubsystemLayout l({{"x", 2}, {"y", 3}});
  std::vector<StateVector> comps;
  std::vector<double> w = {0.5, 0.3, 0.2};
  for (int i = 0; i < 3; ++i) comps.push_back(random_pure_state(l, rng));

  StateVector psi = purification(w, comps, "p");
  CHECK(psi.layout().labels() == std::vector<std::string>{"x", "y", "p"});

  MatrixXcd want = MatrixXcd::Zero(6, 6);
  for (int i = 0; i < 3; ++i)
    want += w[static_cast<std::size_t>(i)] *
            (comps[static_cast<std::size_t>(i)].amplitudes() *
             comps[static_cast<std::size_t>(i)].amplitudes().adjoint());
  DensityOperator got = reduced_density(psi, {"x", "y"});
  CHECK((got.matrix() - want).cwiseAbs().maxCoeff() < 1e-12);

  // One-component purification is just the state with a trivial tag.
  StateVector single = purification({1.0}, {comps[0]}, "p");
  DensityOperator back = reduced_density(single, {"x", "y"});
  CHECK((back.matrix() - comps[0].amplitudes() * comps[0].amplitudes().adjoint())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  CHECK_THROWS_AS(purification({0.5, 0.5}, {comps[0]}, "p"), ValidationError);
  CHECK_THROWS_AS(purification({0.5, 0.4}, {comps[0], comps[1]}, "p"), ValidationError);
}

TEST_CASE("schmidt reconstructs the state and yields orthonormal sides") {
  SeededRng rng(271828, 1);
  SubsystemLayout l({{"a", 3}, {"b", 2}, {"c", 4}});
  for (int trial = 0; trial < 50; ++trial) {
    StateVector psi = random_pure_state(l, rng);
    // Non-adjacent acting group, given out of layout order.
    std::vector<std::string> acting = {"c", "a"};
    SchmidtDecomposition sd = schmidt(psi, acting);

    CHECK((sd.a_vectors.adjoint() * sd.a_vectors - MatrixXcd::Identity(sd.rank(), sd.rank()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK((sd.b_vectors.adjoint() * sd.b_vectors - MatrixXcd::Identity(sd.rank(), sd.rank()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (int i = 1; i < sd.rank(); ++i) CHECK(sd.coefficients[i] <= sd.coefficients[i - 1]);

    StateVector re = reorder_factors(psi, {"c", "a", "b"});
    VectorXcd rebuilt = VectorXcd::Zero(re.dim());
    for (int i = 0; i < sd.rank(); ++i)
      rebuilt += sd.coefficients[i] * kron(VectorXcd(sd.a_vectors.col(i)),
                                           VectorXcd(sd.b_vectors.col(i)));
    CHECK((rebuilt - re.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("schmidt rank of a product state is one") {
  SeededRng rng(271828, 2);
  StateVector left = random_pure_state(SubsystemLayout::single("a", 3), rng);
  StateVector right = random_pure_state(SubsystemLayout::single("b", 5), rng);
  StateVector prod = tensor(left, right);
  SchmidtDecomposition sd = schmidt(prod, {"a"});
  CHECK(sd.rank() == 1);
  CHECK(sd.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(schmidt(prod, std::vector<std::string>{}), LabelError);
  CHECK_THROWS_AS(schmidt(prod, std::vector<std::string>{"a", "b"}), LabelError);
}

TEST_CASE("cross operator of a maximally entangled pair is I/2") {
  VectorXcd bell(4);
  bell << kInvSqrt2, 0, 0, kInvSqrt2;
  StateVector phi(SubsystemLayout({{"a", 2}, {"b", 2}}), bell);
  MatrixXcd x = cross_operator(phi, phi, {"a"});
  CHECK((x - 0.5 * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  UhlmannReport rep = uhlmann_cheat(phi, phi, {"a"});
  CHECK(rep.p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((rep.u - MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("identical commitments need no rotation at all") {
  SeededRng rng(271828, 3);
  SubsystemLayout l({{"a", 3}, {"b", 4}});
  StateVector phi = random_pure_state(l, rng);
  UhlmannReport rep = uhlmann_cheat(phi, phi, {"a"});
  CHECK(rep.p == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((rep.u - MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("optimal rotation probability equals the fidelity of the kept sides") {
  SeededRng rng(271828, 4);
  for (int trial = 0; trial < 200; ++trial) {
    int da = 2 + rng.uniform_int(7);
    int db = 2 + rng.uniform_int(7);
    SubsystemLayout l({{"a", da}, {"b", db}});
    StateVector phi0 = random_pure_state(l, rng);
    StateVector phi1 = random_pure_state(l, rng);

    UhlmannReport rep = uhlmann_cheat(phi0, phi1, {"a"});
    double f = fidelity(reduced_density(phi0, {"b"}), reduced_density(phi1, {"b"}));
    CHECK(std::abs(rep.p - f) < 1e-9);

    CHECK((rep.u * rep.u.adjoint() - MatrixXcd::Identity(da, da)).cwiseAbs().maxCoeff() < 1e-10);

    UhlmannReport flipped = uhlmann_cheat(phi1, phi0, {"a"});
    CHECK(std::abs(flipped.p - rep.p) < 1e-9);
  }
}

TEST_CASE("perfectly concealing commitment admits a perfect cheat") {
  CommitmentEnsemble ens = bb84_like();
  StateVector phi0 = committed_state(ens, 0);
  StateVector phi1 = committed_state(ens, 1);

  // Both reductions on the evidence register are exactly I/2.
  DensityOperator r0 = reduced_density(phi0, {"q"});
  DensityOperator r1 = reduced_density(phi1, {"q"});
  CHECK((r0.matrix() - 0.5 * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((r1.matrix() - 0.5 * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  UhlmannReport rep = uhlmann_cheat(phi0, phi1, {"a"});
  CHECK(rep.p >= 1.0 - 1e-12);
}

TEST_CASE("acting on a multi-factor group matches acting on its fused form") {
  SeededRng rng(271828, 5);
  SubsystemLayout split({{"a1", 2}, {"a2", 2}, {"b", 3}});
  for (int trial = 0; trial < 20; ++trial) {
    StateVector phi0 = random_pure_state(split, rng);
    StateVector phi1 = random_pure_state(split, rng);
    UhlmannReport rep = uhlmann_cheat(phi0, phi1, {"a1", "a2"});

    SubsystemLayout fused({{"a", 4}, {"b", 3}});
    StateVector f0(fused, phi0.amplitudes());
    StateVector f1(fused, phi1.amplitudes());
    UhlmannReport fused_rep = uhlmann_cheat(f0, f1, {"a"});
    CHECK(std::abs(rep.p - fused_rep.p) < 1e-12);
  }
}
