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

#include "qbc/attack_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/rng.hpp"

namespace qbc {

namespace {

using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

MatrixXcd hermitian_from(const VectorXd& theta, int d) {
  MatrixXcd h(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) h(i, i) = theta[k++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      h(i, j) = cd(theta[k], theta[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  return h;
}

}  // namespace

double acceptance_prob(const StateVector& psi, int bit, const AnnouncementBasis& announce,
                       const VerifyingProjectors& verify) {
  const SubsystemLayout& layout = psi.layout();
  if (announce.labels.empty()) throw LabelError("nothing is announced");
  if (verify.labels.empty()) throw LabelError("nothing is verified");
  if (!verify.projector) throw ValidationError("the verifier has no projector provider");
  for (const std::string& v : verify.labels)
    for (const std::string& a : announce.labels)
      if (v == a) throw LabelError("announced and verified groups must be disjoint");

  int d_ann = layout.dim_of(announce.labels);
  int d_ver = layout.dim_of(verify.labels);
  if (verify.count != d_ann)
    throw ValidationError("need exactly one verifying test per announcement outcome");

  StateVector work = psi;
  if (announce.basis) {
    const MatrixXcd& b = *announce.basis;
    if (b.rows() != d_ann || b.cols() != d_ann ||
        (b.adjoint() * b - MatrixXcd::Identity(d_ann, d_ann)).cwiseAbs().maxCoeff() > 1e-9)
      throw ValidationError("announcement basis must be unitary on the announced group");
    work = apply_to_labels(b.adjoint(), work, announce.labels);
  }

  std::vector<std::string> order = announce.labels;
  order.insert(order.end(), verify.labels.begin(), verify.labels.end());
  for (const std::string& l : layout.complement(order)) order.push_back(l);
  StateVector re = reorder_factors(work, order);

  int d_rest = re.dim() / (d_ann * d_ver);
  double total = 0.0;
  for (int i = 0; i < d_ann; ++i) {
    Eigen::Map<const RowMat> w(re.amplitudes().data() + static_cast<long>(i) * d_ver * d_rest,
                               d_ver, d_rest);
    MatrixXcd p = verify.projector(bit, i);
    if (p.rows() != d_ver || p.cols() != d_ver)
      throw ShapeError("verifying test " + std::to_string(i) + " has the wrong dimension");
    total += ((p * w).cwiseProduct(w.conjugate())).sum().real();
  }
  if (total > 1.0 + 1e-9)
    throw ValidationError("acceptance probability exceeds 1; the tests are not contractive");
  return std::clamp(total, 0.0, 1.0);
}

Objective make_overlap_objective(const StateVector& phi0, const StateVector& phi1,
                                 const std::vector<std::string>& acting_labels) {
  MatrixXcd x = cross_operator(phi0, phi1, acting_labels);
  return [x](const MatrixXcd& u) { return std::min(1.0, std::norm((u * x).trace())); };
}

Objective make_acceptance_objective(const StateVector& psi, int bit,
                                    const AnnouncementBasis& announce,
                                    const VerifyingProjectors& verify,
                                    const std::vector<std::string>& acting_labels) {
  if (acting_labels.empty()) throw LabelError("the acting group must contain a factor");
  psi.layout().indices_of(acting_labels);
  acceptance_prob(psi, bit, announce, verify);  // validate the plumbing once
  return [psi, bit, announce, verify, acting_labels](const MatrixXcd& u) {
    return acceptance_prob(apply_to_labels(u, psi, acting_labels), bit, announce, verify);
  };
}

CheatReport optimize_cheat(const Objective& objective, int dim, const OptimizerConfig& cfg,
                           std::uint64_t seed, std::optional<double> closed_form_bound) {
  if (!objective) throw ValidationError("no objective given");
  if (dim < 1) throw ValidationError("the acting dimension must be positive");
  if (cfg.restarts < 1) throw ConfigError("need at least one restart");
  if (cfg.max_evaluations < 4) throw ConfigError("the evaluation budget is too small to move");
  if (!(cfg.value_tol > 0.0) || cfg.value_tol > 1e-2)
    throw ConfigError("value_tol must lie in (0, 1e-2]");

  const int np = dim * dim;
  long total_evals = 0;
  auto eval = [&](const VectorXd& theta, long& used) {
    ++used;
    return objective(unitary_exp_ih(hermitian_from(theta, dim)));
  };

  double global_best = -std::numeric_limits<double>::infinity();
  VectorXd global_theta = VectorXd::Zero(np);
  bool converged = false;

  for (int r = 0; r < cfg.restarts; ++r) {
    // One derived stream per restart, so a longer run replays a shorter one.
    SeededRng rng(seed, static_cast<std::uint64_t>(r));
    VectorXd theta = VectorXd::Zero(np);
    if (r > 0)
      for (int k = 0; k < np; ++k) theta[k] = 0.8 * rng.gaussian();

    long used = 0;
    double f = eval(theta, used);
    double delta = 0.5;
    while (used + 3 <= cfg.max_evaluations && delta > 1e-7) {
      double pass_start = f;
      for (int k = 0; k < np && used + 3 <= cfg.max_evaluations; ++k) {
        VectorXd probe = theta;
        probe[k] = theta[k] + delta;
        double fp = eval(probe, used);
        probe[k] = theta[k] - delta;
        double fm = eval(probe, used);

        double best_here = f;
        double step = 0.0;
        if (fp > best_here) { best_here = fp; step = delta; }
        if (fm > best_here) { best_here = fm; step = -delta; }
        // Quadratic fit through (-delta, 0, +delta); only trust a concave fit.
        double curv = fp + fm - 2.0 * f;
        if (curv < -1e-15) {
          double vertex = std::clamp(0.5 * delta * (fp - fm) / (-curv), -3.0 * delta,
                                     3.0 * delta);
          probe[k] = theta[k] + vertex;
          double fv = eval(probe, used);
          if (fv > best_here) { best_here = fv; step = vertex; }
        }
        if (step != 0.0) {
          theta[k] += step;
          f = best_here;
        }
      }
      if (f - pass_start < 1e-12) delta *= 0.3;
    }
    bool collapsed = delta <= 1e-7;

    total_evals += used;
    double improvement = f - global_best;
    if (f > global_best) {
      global_best = f;
      global_theta = theta;
    }
    if (r == cfg.restarts - 1)
      converged = cfg.restarts > 1 ? improvement < cfg.value_tol : collapsed;
  }

  CheatReport rep;
  rep.best_p = global_best;
  rep.u_best = unitary_exp_ih(hermitian_from(global_theta, dim));
  rep.closed_form_bound = closed_form_bound;
  rep.restarts = cfg.restarts;
  rep.evaluations = total_evals;
  rep.seed = seed;
  rep.converged = converged;
  return rep;
}

}  // namespace qbc
