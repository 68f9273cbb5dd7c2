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

#include "qbc/linalg.hpp"

namespace qbc {

/// D(rho0, rho1) = (1/2) tr |rho0 - rho1|, in [0, 1].
double trace_distance(const DensityOperator& rho0, const DensityOperator& rho1);

/// Best single-shot probability of naming the bit behind an equiprobable
/// pair of evidence states: (1 + D) / 2. Equals 1/2 exactly when the
/// evidence carries nothing, 1 for orthogonal evidence.
double helstrom_probability(const DensityOperator& rho0, const DensityOperator& rho1);

/// Uhlmann fidelity in the squared convention, F = (tr |sqrt(rho0) sqrt(rho1)|)^2.
/// F = 1 iff the states coincide; for pure states F = |<psi0|psi1>|^2.
double fidelity(const DensityOperator& rho0, const DensityOperator& rho1);

struct FidelityBounds {
  double lower;  // 4 (1 - p_b)^2
  double upper;  // 2 sqrt(p_b (1 - p_b))
};

/// The Fuchs - van de Graaf inequalities rearranged to bound the fidelity of
/// an evidence pair by the sniffer's guess probability p_b = (1 + D)/2:
///     (1 - D)^2 <= F <= sqrt(1 - D^2).
/// Substituting D = 2 p_b - 1 gives the forms above. The fidelity is also
/// exactly the best probability with which the committing party can steer a
/// purification of one evidence state into the other, so the pair expresses
/// the concealment / bindingness trade-off in a single breath.
FidelityBounds fidelity_bounds(double p_b);

/// Everything a holding-phase eavesdropping analysis reports.
struct ConcealmentReport {
  double p_b_cheat = 0.0;        // Helstrom guess probability
  double trace_distance = 0.0;   // of the two evidence states
  double fidelity = 0.0;         // of the two evidence states
  double fidelity_lower = 0.0;   // bound from p_b_cheat
  double fidelity_upper = 0.0;   // bound from p_b_cheat
};

ConcealmentReport concealment_report(const DensityOperator& rho0, const DensityOperator& rho1);

/// One row of a randomized sweep validating the fidelity sandwich.
struct BoundsRow {
  double p_b = 0.0;
  double fidelity = 0.0;
  double fidelity_lower = 0.0;
  double fidelity_upper = 0.0;
  bool ok = false;
};

BoundsRow bounds_row(const DensityOperator& rho0, const DensityOperator& rho1);

}  // namespace qbc
