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

#ifndef QPVKEX_TOOLS_CLI_COMMANDS_H_
#define QPVKEX_TOOLS_CLI_COMMANDS_H_

#include <functional>
#include <string>
#include <vector>

#include "params.h"
#include "qpvkex/bits.h"

namespace qpvkex::cli {

enum class Format { kText, kJson, kCsv };

struct CommandResult {
  Json result = Json::object();
  Format preferred = Format::kJson;
  // Rendering for --format text; empty selects "key value" lines.
  std::string text;
  // Rendering for --format csv; an empty header selects "key,value" rows.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

struct Command {
  std::string group;  // "simulate"
  std::string name;   // "qpv"
  std::string summary;
  std::vector<Param> params;
  std::function<CommandResult(const Json& config)> run;

  std::string Id() const { return name.empty() ? group : group + "." + name; }
  std::string Title() const { return name.empty() ? group : group + " " + name; }
};

// Binary digits, or hex with a 0x prefix, as exactly `bits` bits. Empty
// text gives an empty string. Throws ValidationError.
BitString ParseBitsText(const std::string& name, const std::string& text, std::size_t bits);

std::vector<Command> SimulateCommands();
std::vector<Command> BoundsCommands();
std::vector<Command> CodecCommands();

}  // namespace qpvkex::cli

#endif  // QPVKEX_TOOLS_CLI_COMMANDS_H_
