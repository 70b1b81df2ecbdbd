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

#include "params.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "qpvkex/errors.h"

namespace qpvkex::cli {
namespace {

[[noreturn]] void Reject(const Param& p, const std::string& why) {
  throw ValidationError("parameter '" + p.key + "': " + why);
}

double ParseRealText(const Param& p, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) Reject(p, "expected a real, got '" + text + "'");
  return v;
}

std::int64_t ParseIntText(const Param& p, const std::string& text) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) Reject(p, "expected an integer, got '" + text + "'");
  return v;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) parts.push_back(item);
  if (text.back() == ',') parts.emplace_back();
  return parts;
}

Json CheckInt(const Param& p, const Json& v) {
  if (v.is_number_unsigned()) {
    if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      Reject(p, "integer out of range");
    }
    return Json(static_cast<int>(v.get<std::uint64_t>()));
  }
  if (v.is_number_integer()) {
    std::int64_t x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      Reject(p, "integer out of range");
    }
    return Json(static_cast<int>(x));
  }
  Reject(p, "expected an integer");
}

Json CheckReal(const Param& p, const Json& v) {
  if (!v.is_number()) Reject(p, "expected a number");
  return Json(v.get<double>());
}

}  // namespace

std::string FlagName(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

Json ParseParamText(const Param& p, const std::string& text) {
  switch (p.type) {
    case ParamType::kInt:
      return CheckInt(p, Json(ParseIntText(p, text)));
    case ParamType::kUint: {
      std::uint64_t v = 0;
      const char* end = text.data() + text.size();
      int base = 10;
      const char* begin = text.data();
      if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        begin += 2;
        base = 16;
      }
      auto [ptr, ec] = std::from_chars(begin, end, v, base);
      if (ec != std::errc() || ptr != end || begin == end) {
        Reject(p, "expected an unsigned integer, got '" + text + "'");
      }
      return Json(v);
    }
    case ParamType::kReal:
      return Json(ParseRealText(p, text));
    case ParamType::kRealOrInf:
      if (text == "inf") return Json("inf");
      return Json(ParseRealText(p, text));
    case ParamType::kBool:
      if (text == "true" || text == "1") return Json(true);
      if (text == "false" || text == "0") return Json(false);
      Reject(p, "expected true or false, got '" + text + "'");
    case ParamType::kString:
      return CheckParamValue(p, Json(text));
    case ParamType::kIntList: {
      Json out = Json::array();
      for (const auto& item : SplitList(text)) out.push_back(CheckInt(p, Json(ParseIntText(p, item))));
      return out;
    }
    case ParamType::kRealList: {
      Json out = Json::array();
      for (const auto& item : SplitList(text)) out.push_back(ParseRealText(p, item));
      return out;
    }
  }
  Reject(p, "unsupported type");
}

Json CheckParamValue(const Param& p, const Json& v) {
  switch (p.type) {
    case ParamType::kInt:
      return CheckInt(p, v);
    case ParamType::kUint:
      if (v.is_number_unsigned()) return v;
      if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return Json(static_cast<std::uint64_t>(v.get<std::int64_t>()));
      }
      Reject(p, "expected an unsigned integer");
    case ParamType::kReal:
      return CheckReal(p, v);
    case ParamType::kRealOrInf:
      if (v.is_string() && v.get<std::string>() == "inf") return v;
      return CheckReal(p, v);
    case ParamType::kBool:
      if (!v.is_boolean()) Reject(p, "expected a boolean");
      return v;
    case ParamType::kString: {
      if (!v.is_string()) Reject(p, "expected a string");
      const std::string s = v.get<std::string>();
      if (!p.choices.empty() && std::find(p.choices.begin(), p.choices.end(), s) == p.choices.end()) {
        std::string allowed;
        for (const auto& c : p.choices) allowed += (allowed.empty() ? "" : ", ") + c;
        Reject(p, "'" + s + "' is not one of: " + allowed);
      }
      return v;
    }
    case ParamType::kIntList: {
      if (!v.is_array()) Reject(p, "expected an array of integers");
      Json out = Json::array();
      for (const auto& item : v) out.push_back(CheckInt(p, item));
      return out;
    }
    case ParamType::kRealList: {
      if (!v.is_array()) Reject(p, "expected an array of numbers");
      Json out = Json::array();
      for (const auto& item : v) out.push_back(CheckReal(p, item));
      return out;
    }
  }
  Reject(p, "unsupported type");
}

Json ResolveConfig(const std::vector<Param>& params, const Json* file,
                   const std::map<std::string, std::string>& flags) {
  Json config = Json::object();
  for (const auto& p : params) config[p.key] = CheckParamValue(p, p.default_value);
  if (file) {
    if (!file->is_object()) throw ValidationError("config file must hold a JSON object");
    for (const auto& [key, value] : file->items()) {
      auto it = std::find_if(params.begin(), params.end(), [&](const Param& p) { return p.key == key; });
      if (it == params.end()) throw ValidationError("unknown config key '" + key + "'");
      config[key] = CheckParamValue(*it, value);
    }
  }
  for (const auto& [key, text] : flags) {
    auto it = std::find_if(params.begin(), params.end(), [&](const Param& p) { return p.key == key; });
    if (it == params.end()) throw ValidationError("unknown parameter '" + key + "'");
    config[key] = ParseParamText(*it, text);
  }
  return config;
}

double GetReal(const Json& config, const std::string& key) {
  const Json& v = config.at(key);
  if (v.is_string()) return std::numeric_limits<double>::infinity();
  return v.get<double>();
}

int GetInt(const Json& config, const std::string& key) { return config.at(key).get<int>(); }

std::uint64_t GetUint(const Json& config, const std::string& key) {
  return config.at(key).get<std::uint64_t>();
}

bool GetBool(const Json& config, const std::string& key) { return config.at(key).get<bool>(); }

std::string GetString(const Json& config, const std::string& key) {
  return config.at(key).get<std::string>();
}

std::vector<int> GetIntList(const Json& config, const std::string& key) {
  return config.at(key).get<std::vector<int>>();
}

std::vector<double> GetRealList(const Json& config, const std::string& key) {
  return config.at(key).get<std::vector<double>>();
}

std::string FormatReal(double value) { return Json(value).dump(); }

}  // namespace qpvkex::cli
