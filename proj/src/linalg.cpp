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

#include "qbc/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qbc {

namespace {

// Digits of global index g under the layout's mixed radix.
void decompose(const SubsystemLayout& layout, int g, std::vector<int>& digits) {
  digits.resize(static_cast<std::size_t>(layout.factor_count()));
  for (int i = 0; i < layout.factor_count(); ++i) {
    digits[static_cast<std::size_t>(i)] = (g / layout.stride(i)) % layout.factor(i).dim;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector / DensityOperator
// ---------------------------------------------------------------------------

StateVector::StateVector(SubsystemLayout layout, VectorXcd amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.dim())
    throw ShapeError("amplitude vector length " + std::to_string(amps_.size()) +
                     " does not match layout dimension " + std::to_string(layout_.dim()));
  double n = amps_.norm();
  if (std::abs(n - 1.0) > kNormTol)
    throw ValidationError("state vector is not normalized (|norm - 1| = " +
                          std::to_string(std::abs(n - 1.0)) + ")");
}

StateVector StateVector::basis(const SubsystemLayout& layout, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) != layout.factor_count())
    throw ShapeError("basis digit count does not match factor count");
  int g = 0;
  for (int i = 0; i < layout.factor_count(); ++i) {
    int x = digits[static_cast<std::size_t>(i)];
    if (x < 0 || x >= layout.factor(i).dim)
      throw ShapeError("basis digit out of range for factor " + layout.factor(i).label);
    g += x * layout.stride(i);
  }
  VectorXcd v = VectorXcd::Zero(layout.dim());
  v[g] = 1.0;
  return StateVector(layout, std::move(v));
}

DensityOperator::DensityOperator(SubsystemLayout layout, MatrixXcd matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != layout_.dim())
    throw ShapeError("density matrix shape does not match layout dimension");
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw ValidationError("density matrix is not Hermitian");
  if (std::abs(mat_.trace().real() - 1.0) > 1e-9 || std::abs(mat_.trace().imag()) > 1e-9)
    throw ValidationError("density matrix trace is not 1");
  EighResult e = eigh(mat_);
  if (e.values.minCoeff() < kEigFloor)
    throw ValidationError("density matrix has eigenvalue " + std::to_string(e.values.minCoeff()) +
                          " below the admissible floor");
  if (e.values.maxCoeff() > 1.0 + 1e-9)
    throw ValidationError("density matrix has eigenvalue above 1");
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.layout(), psi.amplitudes() * psi.amplitudes().adjoint());
}

// ---------------------------------------------------------------------------
// Dense primitives
// ---------------------------------------------------------------------------

EighResult eigh(const MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ShapeError("eigh expects a square matrix");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw ValidationError("eigh expects a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw ValidationError("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

VectorXcd kron(const VectorXcd& a, const VectorXcd& b) {
  VectorXcd out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  SubsystemLayout combined = a.layout().concat(b.layout());
  return StateVector(combined, kron(a.amplitudes(), b.amplitudes()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  SubsystemLayout combined = a.layout().concat(b.layout());
  return DensityOperator(combined, kron(a.matrix(), b.matrix()));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep) {
  const SubsystemLayout& layout = rho.layout();
  std::vector<std::string> kept = layout.canonical(keep);
  std::vector<std::string> traced = layout.complement(kept);
  SubsystemLayout out_layout = layout.select(kept);
  SubsystemLayout tr_layout = layout.select(traced);

  std::vector<int> kept_idx = layout.indices_of(kept);
  std::vector<int> tr_idx = layout.indices_of(traced);

  int dk = out_layout.dim();
  int dt = tr_layout.dim();

  // Map (kept digits, traced digits) -> global index offsets once.
  std::vector<int> kept_offset(static_cast<std::size_t>(dk), 0);
  std::vector<int> digits;
  for (int k = 0; k < dk; ++k) {
    decompose(out_layout, k, digits);
    int off = 0;
    for (std::size_t i = 0; i < kept_idx.size(); ++i)
      off += digits[i] * layout.stride(kept_idx[i]);
    kept_offset[static_cast<std::size_t>(k)] = off;
  }
  std::vector<int> tr_offset(static_cast<std::size_t>(dt), 0);
  for (int t = 0; t < dt; ++t) {
    decompose(tr_layout, t, digits);
    int off = 0;
    for (std::size_t i = 0; i < tr_idx.size(); ++i)
      off += digits[i] * layout.stride(tr_idx[i]);
    tr_offset[static_cast<std::size_t>(t)] = off;
  }

  MatrixXcd out = MatrixXcd::Zero(dk, dk);
  const MatrixXcd& a = rho.matrix();
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      cd sum = 0.0;
      for (int t = 0; t < dt; ++t)
        sum += a(kept_offset[static_cast<std::size_t>(r)] + tr_offset[static_cast<std::size_t>(t)],
                 kept_offset[static_cast<std::size_t>(c)] + tr_offset[static_cast<std::size_t>(t)]);
      out(r, c) = sum;
    }
  return DensityOperator(out_layout, std::move(out));
}

DensityOperator reduced_density(const StateVector& psi, const std::vector<std::string>& keep) {
  const SubsystemLayout& layout = psi.layout();
  std::vector<std::string> kept = layout.canonical(keep);
  std::vector<std::string> rest = layout.complement(kept);

  std::vector<std::string> order = kept;
  order.insert(order.end(), rest.begin(), rest.end());
  StateVector front = reorder_factors(psi, order);

  int dk = layout.dim_of(kept);
  int dr = layout.dim() / dk;
  Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      front.amplitudes().data(), dk, dr);
  MatrixXcd rho = m * m.adjoint();
  return DensityOperator(layout.select(kept), std::move(rho));
}

MatrixXcd permutation_unitary(const std::vector<int>& perm, const SubsystemLayout& layout) {
  int k = layout.factor_count();
  if (static_cast<int>(perm.size()) != k)
    throw ShapeError("permutation length does not match factor count");
  std::vector<bool> hit(static_cast<std::size_t>(k), false);
  for (int p : perm) {
    if (p < 0 || p >= k) throw ShapeError("permutation entry out of range");
    if (hit[static_cast<std::size_t>(p)]) throw ShapeError("permutation entry repeated");
    hit[static_cast<std::size_t>(p)] = true;
  }
  for (int j = 0; j < k; ++j)
    if (layout.factor(perm[static_cast<std::size_t>(j)]).dim != layout.factor(j).dim)
      throw ShapeError("cannot permute factors of unequal dimension");

  int d = layout.dim();
  MatrixXcd u = MatrixXcd::Zero(d, d);
  std::vector<int> digits;
  for (int col = 0; col < d; ++col) {
    decompose(layout, col, digits);
    int row = 0;
    // Output slot j carries the digit of input factor perm[j].
    for (int j = 0; j < k; ++j)
      row += digits[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] * layout.stride(j);
    u(row, col) = 1.0;
  }
  return u;
}

StateVector reorder_factors(const StateVector& psi, const std::vector<std::string>& new_order) {
  const SubsystemLayout& layout = psi.layout();
  if (static_cast<int>(new_order.size()) != layout.factor_count())
    throw LabelError("factor reordering must list every label exactly once");
  std::vector<int> src = layout.indices_of(new_order);

  std::vector<Factor> fs;
  fs.reserve(new_order.size());
  for (int i : src) fs.push_back(layout.factor(i));
  SubsystemLayout out_layout(std::move(fs));

  const VectorXcd& in = psi.amplitudes();
  VectorXcd out(layout.dim());
  std::vector<int> digits;
  for (int g = 0; g < out_layout.dim(); ++g) {
    decompose(out_layout, g, digits);
    int old_g = 0;
    for (std::size_t a = 0; a < src.size(); ++a)
      old_g += digits[a] * layout.stride(src[a]);
    out[g] = in[old_g];
  }
  return StateVector(out_layout, std::move(out));
}

StateVector apply_to_labels(const MatrixXcd& u, const StateVector& psi,
                            const std::vector<std::string>& labels) {
  const SubsystemLayout& layout = psi.layout();
  int dt = layout.dim_of(labels);
  if (u.rows() != dt || u.cols() != dt)
    throw ShapeError("operator dimension does not match target labels");

  std::vector<std::string> rest = layout.complement(labels);
  std::vector<std::string> order(labels.begin(), labels.end());
  order.insert(order.end(), rest.begin(), rest.end());

  StateVector front = reorder_factors(psi, order);
  int dr = layout.dim() / dt;
  Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      front.amplitudes().data(), dt, dr);
  Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> applied = u * m;

  VectorXcd flat = Eigen::Map<VectorXcd>(applied.data(), layout.dim());
  StateVector tmp(front.layout(), std::move(flat));
  return reorder_factors(tmp, layout.labels());
}

StateVector controlled_apply(const StateVector& psi, const std::string& control,
                             const std::vector<std::string>& targets,
                             const std::vector<MatrixXcd>& branches) {
  const SubsystemLayout& layout = psi.layout();
  int dc = layout.dim_of({control});
  if (static_cast<int>(branches.size()) != dc)
    throw ShapeError("need one branch operator per control value");
  int dt = layout.dim_of(targets);
  for (const MatrixXcd& b : branches)
    if (b.rows() != dt || b.cols() != dt)
      throw ShapeError("branch operator dimension does not match target labels");

  std::vector<std::string> group{control};
  group.insert(group.end(), targets.begin(), targets.end());
  std::vector<std::string> rest = layout.complement(group);
  std::vector<std::string> order = group;
  order.insert(order.end(), rest.begin(), rest.end());

  StateVector front = reorder_factors(psi, order);
  int dr = layout.dim() / (dc * dt);
  VectorXcd amps = front.amplitudes();
  Eigen::Map<Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(amps.data(),
                                                                                   dc * dt, dr);
  for (int c = 0; c < dc; ++c)
    m.block(c * dt, 0, dt, dr) = (branches[static_cast<std::size_t>(c)] *
                                  m.block(c * dt, 0, dt, dr))
                                     .eval();
  StateVector tmp(front.layout(), std::move(amps));
  return reorder_factors(tmp, layout.labels());
}

DensityOperator dephase(const DensityOperator& rho, const std::vector<std::string>& labels) {
  const SubsystemLayout& layout = rho.layout();
  std::vector<int> idx = layout.indices_of(labels);
  MatrixXcd out = rho.matrix();
  int d = layout.dim();
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      for (int i : idx) {
        int digit_r = (r / layout.stride(i)) % layout.factor(i).dim;
        int digit_c = (c / layout.stride(i)) % layout.factor(i).dim;
        if (digit_r != digit_c) {
          out(r, c) = 0.0;
          break;
        }
      }
    }
  return DensityOperator(layout, std::move(out));
}

StateVector random_pure_state(const SubsystemLayout& layout, SeededRng& rng) {
  if (layout.dim() == 1) {
    // Only one physical state exists; return the canonical representative.
    VectorXcd v(1);
    v[0] = 1.0;
    return StateVector(layout, std::move(v));
  }
  VectorXcd v(layout.dim());
  for (int i = 0; i < v.size(); ++i) v[i] = cd(rng.gaussian(), rng.gaussian());
  v /= v.norm();
  return StateVector(layout, std::move(v));
}

StateVector random_pure_state(int dim, SeededRng& rng) {
  return random_pure_state(SubsystemLayout::single("q", dim), rng);
}

MatrixXcd random_unitary(int dim, SeededRng& rng, double spread) {
  MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cd(rng.gaussian(), rng.gaussian());
  MatrixXcd h = spread * 0.5 * (g + g.adjoint());
  return unitary_exp_ih(h);
}

DensityOperator random_density(const SubsystemLayout& layout, SeededRng& rng) {
  int d = layout.dim();
  MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cd(rng.gaussian(), rng.gaussian());
  MatrixXcd w = g * g.adjoint();
  w /= w.trace().real();
  return DensityOperator(layout, std::move(w));
}

MatrixXcd psd_sqrt(const MatrixXcd& m) {
  EighResult e = eigh(m);
  VectorXd vals = e.values;
  // Eigenvalues below a relative floor are eigensolver noise; their square
  // roots would be ~1e-8 and dominate downstream trace norms, so zero them.
  double cut = 1e-13 * std::max(1e-300, vals.cwiseAbs().maxCoeff());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < kEigFloor)
      throw ValidationError("matrix is not positive semidefinite (eigenvalue " +
                            std::to_string(vals[i]) + ")");
    vals[i] = vals[i] < cut ? 0.0 : std::sqrt(vals[i]);
  }
  return e.vectors * vals.asDiagonal() * e.vectors.adjoint();
}

MatrixXcd unitary_exp_ih(const MatrixXcd& h) {
  EighResult e = eigh(h);
  VectorXcd phases(e.values.size());
  for (int i = 0; i < e.values.size(); ++i)
    phases[i] = std::exp(cd(0.0, e.values[i]));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

MatrixXcd projector(const VectorXcd& v) { return v * v.adjoint(); }

}  // namespace qbc
