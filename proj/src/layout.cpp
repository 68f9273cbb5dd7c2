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

#include "qbc/layout.hpp"

#include <algorithm>
#include <set>

#include "qbc/errors.hpp"

namespace qbc {

SubsystemLayout::SubsystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  long long total = 1;
  for (const Factor& f : factors_) {
    if (f.label.empty()) throw LabelError("factor label must be nonempty");
    if (!seen.insert(f.label).second) throw LabelError("duplicate factor label: " + f.label);
    if (f.dim < 1) throw ShapeError("factor dimension must be >= 1: " + f.label);
    total *= f.dim;
    if (total > kDimensionCap)
      throw CapacityError("layout dimension exceeds cap of " + std::to_string(kDimensionCap));
  }
  dim_ = static_cast<int>(total);
  strides_.assign(factors_.size(), 1);
  for (int i = static_cast<int>(factors_.size()) - 2; i >= 0; --i)
    strides_[static_cast<std::size_t>(i)] =
        strides_[static_cast<std::size_t>(i + 1)] * factors_[static_cast<std::size_t>(i + 1)].dim;
}

SubsystemLayout SubsystemLayout::single(const std::string& label, int dim) {
  return SubsystemLayout({{label, dim}});
}

bool SubsystemLayout::has_label(const std::string& label) const {
  for (const Factor& f : factors_)
    if (f.label == label) return true;
  return false;
}

int SubsystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return static_cast<int>(i);
  throw LabelError("unknown factor label: " + label);
}

std::vector<int> SubsystemLayout::indices_of(const std::vector<std::string>& labels) const {
  std::vector<int> out;
  out.reserve(labels.size());
  std::set<std::string> seen;
  for (const std::string& l : labels) {
    if (!seen.insert(l).second) throw LabelError("label listed twice: " + l);
    out.push_back(index_of(l));
  }
  return out;
}

std::vector<std::string> SubsystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const Factor& f : factors_) out.push_back(f.label);
  return out;
}

std::vector<std::string> SubsystemLayout::complement(const std::vector<std::string>& labels) const {
  std::set<int> picked;
  for (int i : indices_of(labels)) picked.insert(i);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!picked.count(static_cast<int>(i))) out.push_back(factors_[i].label);
  return out;
}

std::vector<std::string> SubsystemLayout::canonical(const std::vector<std::string>& labels) const {
  std::vector<int> idx = indices_of(labels);
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(factors_[static_cast<std::size_t>(i)].label);
  return out;
}

int SubsystemLayout::dim_of(const std::vector<std::string>& labels) const {
  int d = 1;
  for (int i : indices_of(labels)) d *= factors_[static_cast<std::size_t>(i)].dim;
  return d;
}

SubsystemLayout SubsystemLayout::select(const std::vector<std::string>& labels) const {
  std::vector<Factor> fs;
  for (const std::string& l : canonical(labels))
    fs.push_back(factors_[static_cast<std::size_t>(index_of(l))]);
  return SubsystemLayout(std::move(fs));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<Factor> fs = factors_;
  fs.insert(fs.end(), other.factors_.begin(), other.factors_.end());
  return SubsystemLayout(std::move(fs));  // re-validates labels and the cap
}

bool SubsystemLayout::operator==(const SubsystemLayout& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label != other.factors_[i].label || factors_[i].dim != other.factors_[i].dim)
      return false;
  return true;
}

}  // namespace qbc
