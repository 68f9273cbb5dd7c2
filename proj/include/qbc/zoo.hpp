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

#include "qbc/entangle.hpp"
#include "qbc/protocol.hpp"

namespace qbc {

/// Four equiangular qubit states: cos(j pi/4)|0> + sin(j pi/4)|1>, j=0..3.
std::vector<StateVector> s0_states();

/// Quarter-turn of the qubit plane: maps the j-th equiangular state to the
/// (j+2)-th up to sign, [[0,-1],[1,0]].
Eigen::Matrix2cd pi_shift();

/// BB84-style ensemble on one qubit: bit 0 ~ {|0>,|1>}, bit 1 ~ {|+>,|->},
/// uniform weights. Perfectly concealing (both mixtures are I/2).
CommitmentEnsemble bb84_ensemble();

/// Two orthogonal pure states, one per bit: trivially binding,
/// not concealing at all.
CommitmentEnsemble orthogonal_ensemble();

/// Both bits commit to the same single state: perfectly concealing and
/// completely unbinding.
CommitmentEnsemble degenerate_ensemble();

/// Simplest announce-the-index protocol: the committer keeps the index
/// register "a" of a purified ensemble, the receiver keeps the modulated
/// register "q". Opening announces the index; the verifier projects "q" onto
/// the announced ensemble member.
ProtocolSpec simple_m_spec(const CommitmentEnsemble& ensemble);

/// Cyclic-shift protocol on four qubits. The receiver prepares four qubits
/// in a shifted pattern of the equiangular states (mixed over the shift k
/// with `weights`, entangled to a purifier "b2" when `babe_entangled`),
/// sends them; the committer modulates the first qubit by the quarter-turn
/// for bit 1 after scrambling all four by a permutation drawn on his index
/// register "a1". Opening announces the permutation and returns the three
/// unmodulated qubits.
///
/// Registers: a1 (dim 4, committer's announced index), b11 (modulated
/// qubit), b12..b14 (returned qubits), b2 (dim 4 purifier, receiver-kept).
/// A delta weight vector pins the shift to a single known k.
ProtocolSpec perm4_spec(bool babe_entangled = true, const std::vector<double>& weights = {});

/// Evidence-swap protocol: the committer prepares n announce-index pairs
/// (c_i, r_i), the receiver secretly selects slot k (register "bsel",
/// drawn with `weights`, uniform by default) and routes the selected qubit
/// into the evidence register "ev", which the committer modulates by the
/// quarter-turn for bit 1 and hands back as the committed evidence.
///
/// method "swap-slot":     the evidence register is slot 1 itself; slot k is
///                         swapped into it before modulation.
/// method "fresh-ancilla": a fresh |0> register is swapped with r_k.
///
/// The selection is a classical record on the receiver's side (an inert
/// which-slot note, never a coherent register): keeping it coherent would
/// itself mark the evidence with which-path information and break the
/// protocol's concealment, so every analysis treats "bsel" as classical.
/// By default the receiver holds the modulated evidence during the holding
/// phase and the committer can act on c_1..c_n only; `babe_holds_evidence =
/// false` leaves the evidence with the committer until opening instead, in
/// which case flipping the bit is a local rotation on his own register and
/// binding collapses entirely. `adam_knows_method=false` marks the spec for
/// mixed-method binding.
ProtocolSpec qbc1_spec(int n, const std::string& method, bool adam_knows_method = true,
                       bool babe_holds_evidence = true,
                       const std::vector<double>& weights = {});

}  // namespace qbc
