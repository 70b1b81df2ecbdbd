/*
 * Copyright 2026 The qpvkex Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qpvkex/delta_table.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "qpvkex/errors.h"

namespace qpvkex::bounds {

namespace {

std::vector<double> SortedUnique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Index i with axis[i] <= x <= axis[i+1], and the weight of axis[i+1].
std::pair<std::size_t, double> Bracket(const std::vector<double>& axis, double x) {
  if (axis.size() == 1) return {0, 0.0};
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - axis.begin());
  if (hi >= axis.size()) hi = axis.size() - 1;
  if (hi == 0) hi = 1;
  std::size_t lo = hi - 1;
  double w = (x - axis[lo]) / (axis[hi] - axis[lo]);
  return {lo, std::clamp(w, 0.0, 1.0)};
}

}  // namespace

DeltaTildeTable::DeltaTildeTable(DeltaTableMeta meta, const std::vector<DeltaTableEntry>& entries)
    : meta_(std::move(meta)) {
  if (entries.empty()) throw ValidationError("delta table has no grid entries");
  if (!(meta_.solver_tol >= 0.0)) throw ValidationError("solver_tol must be nonnegative");
  std::vector<double> eps, eta;
  for (const auto& e : entries) {
    if (!std::isfinite(e.eps_tilde) || !std::isfinite(e.eta_tilde)) {
      throw ValidationError("delta table coordinates must be finite");
    }
    if (!(e.delta_tilde >= 0.0 && e.delta_tilde <= 1.0)) {
      throw ValidationError("delta_tilde outside [0,1]");
    }
    eps.push_back(e.eps_tilde);
    eta.push_back(e.eta_tilde);
  }
  eps_axis_ = SortedUnique(std::move(eps));
  eta_axis_ = SortedUnique(std::move(eta));
  if (eps_axis_.size() * eta_axis_.size() != entries.size()) {
    throw ValidationError("delta table grid is not rectangular");
  }
  values_.assign(entries.size(), -1.0);
  for (const auto& e : entries) {
    auto i = std::lower_bound(eps_axis_.begin(), eps_axis_.end(), e.eps_tilde) - eps_axis_.begin();
    auto j = std::lower_bound(eta_axis_.begin(), eta_axis_.end(), e.eta_tilde) - eta_axis_.begin();
    double& slot = values_[static_cast<std::size_t>(i) * eta_axis_.size() + static_cast<std::size_t>(j)];
    if (slot >= 0.0) throw ValidationError("duplicate delta table grid point");
    slot = e.delta_tilde;
  }
  for (std::size_t j = 0; j < eta_axis_.size(); ++j) {
    for (std::size_t i = 1; i < eps_axis_.size(); ++i) {
      if (At(i, j) > At(i - 1, j) + meta_.solver_tol) {
        std::ostringstream msg;
        msg << "delta_tilde increases in eps_tilde at eta_tilde=" << eta_axis_[j]
            << ", eps_tilde=" << eps_axis_[i];
        throw ValidationError(msg.str());
      }
    }
  }
}

double DeltaTildeTable::Lookup(double eps_tilde, double eta_tilde) const {
  if (std::isnan(eps_tilde) || std::isnan(eta_tilde)) throw DomainError("lookup at NaN");
  eps_tilde = std::max(eps_tilde, eps_axis_.front());
  if (eps_tilde > eps_axis_.back() || eta_tilde < eta_axis_.front() ||
      eta_tilde > eta_axis_.back()) {
    std::ostringstream msg;
    msg << "delta table does not cover eps_tilde=" << eps_tilde << ", eta_tilde=" << eta_tilde;
    throw CoverageError(msg.str());
  }
  auto [i, u] = Bracket(eps_axis_, eps_tilde);
  auto [j, v] = Bracket(eta_axis_, eta_tilde);
  std::size_t i1 = std::min(i + 1, eps_axis_.size() - 1);
  std::size_t j1 = std::min(j + 1, eta_axis_.size() - 1);
  return (1 - u) * (1 - v) * At(i, j) + u * (1 - v) * At(i1, j) + (1 - u) * v * At(i, j1) +
         u * v * At(i1, j1);
}

DeltaTildeTable ParseDeltaTable(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("delta table is not valid JSON: ") + e.what());
  }
  try {
    DeltaTableMeta meta;
    const auto& m = doc.at("meta");
    meta.npa_level = m.at("npa_level").get<int>();
    meta.solver_tol = m.at("solver_tol").get<double>();
    if (m.contains("generator")) meta.generator = m.at("generator").get<std::string>();
    std::vector<DeltaTableEntry> entries;
    for (const auto& g : doc.at("grid")) {
      entries.push_back({g.at("eps_tilde").get<double>(), g.at("eta_tilde").get<double>(),
                         g.at("delta_tilde").get<double>()});
    }
    return DeltaTildeTable(std::move(meta), entries);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed delta table: ") + e.what());
  }
}

DeltaTildeTable LoadDeltaTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open delta table " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseDeltaTable(buf.str());
}

}  // namespace qpvkex::bounds
