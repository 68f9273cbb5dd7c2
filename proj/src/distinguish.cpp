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

#include "qbc/distinguish.hpp"

#include <algorithm>
#include <cmath>

namespace qbc {

namespace {

void check_same_shape(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim())
    throw ShapeError("distinguishability measures need operators of equal dimension");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double trace_distance(const DensityOperator& rho0, const DensityOperator& rho1) {
  check_same_shape(rho0, rho1);
  EighResult e = eigh(rho0.matrix() - rho1.matrix());
  double sum = 0.0;
  for (int i = 0; i < e.values.size(); ++i) sum += std::abs(e.values[i]);
  return clamp01(0.5 * sum);
}

double helstrom_probability(const DensityOperator& rho0, const DensityOperator& rho1) {
  return (2.0 + 2.0 * trace_distance(rho0, rho1)) / 4.0;
}

double fidelity(const DensityOperator& rho0, const DensityOperator& rho1) {
  check_same_shape(rho0, rho1);
  // tr |X| with X = sqrt(rho0) sqrt(rho1), via SVD: Jacobi keeps the small
  // singular values honest, which matters when either state is near pure.
  MatrixXcd x = psd_sqrt(rho0.matrix()) * psd_sqrt(rho1.matrix());
  Eigen::JacobiSVD<MatrixXcd> svd(x);
  double root_sum = svd.singularValues().sum();
  return clamp01(root_sum * root_sum);
}

FidelityBounds fidelity_bounds(double p_b) {
  if (p_b < 0.5 - 1e-12 || p_b > 1.0 + 1e-12)
    throw ValidationError("guess probability must lie in [1/2, 1]");
  double p = std::min(1.0, std::max(0.5, p_b));
  return {4.0 * (1.0 - p) * (1.0 - p), 2.0 * std::sqrt(p * (1.0 - p))};
}

ConcealmentReport concealment_report(const DensityOperator& rho0, const DensityOperator& rho1) {
  ConcealmentReport r;
  r.trace_distance = trace_distance(rho0, rho1);
  r.p_b_cheat = (2.0 + 2.0 * r.trace_distance) / 4.0;
  r.fidelity = fidelity(rho0, rho1);
  FidelityBounds b = fidelity_bounds(r.p_b_cheat);
  r.fidelity_lower = b.lower;
  r.fidelity_upper = b.upper;
  return r;
}

BoundsRow bounds_row(const DensityOperator& rho0, const DensityOperator& rho1) {
  ConcealmentReport r = concealment_report(rho0, rho1);
  BoundsRow row;
  row.p_b = r.p_b_cheat;
  row.fidelity = r.fidelity;
  row.fidelity_lower = r.fidelity_lower;
  row.fidelity_upper = r.fidelity_upper;
  row.ok = (r.fidelity >= r.fidelity_lower - 1e-9) && (r.fidelity <= r.fidelity_upper + 1e-9);
  return row;
}

}  // namespace qbc
