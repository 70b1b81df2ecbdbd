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

#ifndef QPVKEX_TOOLS_CLI_PARAMS_H_
#define QPVKEX_TOOLS_CLI_PARAMS_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qpvkex::cli {

// Insertion-ordered so emitted configs list keys in declaration order.
using Json = nlohmann::ordered_json;

enum class ParamType { kInt, kUint, kReal, kRealOrInf, kBool, kString, kIntList, kRealList };

struct Param {
  std::string key;
  ParamType type = ParamType::kReal;
  Json default_value;
  std::string help;
  std::vector<std::string> choices;  // kString only; empty accepts any text
};

inline Param RealParam(std::string key, double def, std::string help) {
  return {std::move(key), ParamType::kReal, def, std::move(help), {}};
}
inline Param IntParam(std::string key, int def, std::string help) {
  return {std::move(key), ParamType::kInt, def, std::move(help), {}};
}
inline Param ChoiceParam(std::string key, std::string def, std::vector<std::string> choices,
                         std::string help) {
  return {std::move(key), ParamType::kString, std::move(def), std::move(help), std::move(choices)};
}
inline Param TextParam(std::string key, std::string def, std::string help) {
  return {std::move(key), ParamType::kString, std::move(def), std::move(help), {}};
}
inline Param BoolParam(std::string key, bool def, std::string help) {
  return {std::move(key), ParamType::kBool, def, std::move(help), {}};
}

// eps_qkd -> --eps-qkd.
std::string FlagName(const std::string& key);

// Converts command-line text to the parameter's JSON type. Throws
// ValidationError.
Json ParseParamText(const Param& param, const std::string& text);

// Type- and choice-checks a JSON value, normalising numbers to the declared
// kind. Throws ValidationError.
Json CheckParamValue(const Param& param, const Json& value);

// Defaults, then keys from `file` (may be null), then command-line flags.
// Unknown keys in `file` are rejected with ValidationError.
Json ResolveConfig(const std::vector<Param>& params, const Json* file,
                   const std::map<std::string, std::string>& flags);

double GetReal(const Json& config, const std::string& key);  // "inf" maps to infinity
int GetInt(const Json& config, const std::string& key);
std::uint64_t GetUint(const Json& config, const std::string& key);
bool GetBool(const Json& config, const std::string& key);
std::string GetString(const Json& config, const std::string& key);
std::vector<int> GetIntList(const Json& config, const std::string& key);
std::vector<double> GetRealList(const Json& config, const std::string& key);

// Shortest round-trip decimal with at least one fractional digit ("1.0").
std::string FormatReal(double value);

}  // namespace qpvkex::cli

#endif  // QPVKEX_TOOLS_CLI_PARAMS_H_
