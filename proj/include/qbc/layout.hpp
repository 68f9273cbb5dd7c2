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

namespace qbc {

/// Hard cap on the dense Hilbert-space dimension handled by this library.
/// Everything here is meant to run on a desk machine; the cap keeps mistakes
/// (an accidental extra tensor factor) from turning into an OOM instead of
/// an error message.
inline constexpr int kDimensionCap = 4096;

struct Factor {
  std::string label;
  int dim = 0;
};

/// Ordered list of labeled tensor factors.
///
/// Index convention: the FIRST factor is the slowest-varying one, i.e. a
/// composite basis index is
///     g = x_0 * (d_1 * d_2 * ...) + x_1 * (d_2 * ...) + ... + x_{K-1}
/// which is exactly the row-major / Kronecker-product convention where the
/// left operand of a product owns the most significant digit.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Factor> factors);

  static SubsystemLayout single(const std::string& label, int dim);

  int dim() const { return dim_; }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  const Factor& factor(int i) const { return factors_[static_cast<std::size_t>(i)]; }
  const std::vector<Factor>& factors() const { return factors_; }

  bool has_label(const std::string& label) const;
  /// Position of `label`; throws LabelError if absent.
  int index_of(const std::string& label) const;
  /// Positions of several labels, in the order given.
  std::vector<int> indices_of(const std::vector<std::string>& labels) const;
  /// All labels, in layout order.
  std::vector<std::string> labels() const;
  /// Labels NOT listed in `labels`, in layout order.
  std::vector<std::string> complement(const std::vector<std::string>& labels) const;
  /// The given label set reordered to layout order (duplicates rejected).
  std::vector<std::string> canonical(const std::vector<std::string>& labels) const;
  /// Product of the dimensions of the given labels.
  int dim_of(const std::vector<std::string>& labels) const;
  /// Sub-layout holding just the given labels, in layout order.
  SubsystemLayout select(const std::vector<std::string>& labels) const;
  /// This layout followed by `other`; labels must stay unique and the
  /// combined dimension must stay under the cap.
  SubsystemLayout concat(const SubsystemLayout& other) const;

  /// Stride (distance between consecutive values of factor i's digit).
  int stride(int i) const { return strides_[static_cast<std::size_t>(i)]; }

  bool operator==(const SubsystemLayout& other) const;
  bool operator!=(const SubsystemLayout& other) const { return !(*this == other); }

 private:
  std::vector<Factor> factors_;
  std::vector<int> strides_;
  int dim_ = 1;
};

}  // namespace qbc
