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

#ifndef QPVKEX_DELTA_TABLE_H_
#define QPVKEX_DELTA_TABLE_H_

#include <string>
#include <vector>

namespace qpvkex::bounds {

struct DeltaTableMeta {
  int npa_level = 0;
  double solver_tol = 0.0;
  std::string generator;
};

struct DeltaTableEntry {
  double eps_tilde = 0.0;
  double eta_tilde = 0.0;
  double delta_tilde = 0.0;
};

// Trace-distance lower bounds on a rectangular (eps_tilde, eta_tilde) grid.
class DeltaTildeTable {
 public:
  // Throws ValidationError unless the entries form a full rectangular grid
  // with values in [0,1], nonincreasing in eps_tilde (up to solver_tol).
  DeltaTildeTable(DeltaTableMeta meta, const std::vector<DeltaTableEntry>& entries);

  // Bilinear interpolation. eps_tilde below the grid snaps up to the first
  // grid column, which can only lower the result. Anything else outside the
  // grid throws CoverageError.
  double Lookup(double eps_tilde, double eta_tilde) const;

  const DeltaTableMeta& meta() const { return meta_; }
  const std::vector<double>& eps_axis() const { return eps_axis_; }
  const std::vector<double>& eta_axis() const { return eta_axis_; }
  double At(std::size_t eps_index, std::size_t eta_index) const {
    return values_[eps_index * eta_axis_.size() + eta_index];
  }

 private:
  DeltaTableMeta meta_;
  std::vector<double> eps_axis_;
  std::vector<double> eta_axis_;
  std::vector<double> values_;  // row-major over eps_axis_
};

// Parses {"meta":{"npa_level":int,"solver_tol":real,"generator"?:string},
//         "grid":[{"eps_tilde":r,"eta_tilde":r,"delta_tilde":r},...]}.
DeltaTildeTable ParseDeltaTable(const std::string& json_text);
DeltaTildeTable LoadDeltaTable(const std::string& path);

}  // namespace qpvkex::bounds

#endif  // QPVKEX_DELTA_TABLE_H_
