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

#ifndef QPVKEX_TOOLS_CLI_CLI_H_
#define QPVKEX_TOOLS_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "commands.h"

namespace qpvkex::cli {

// Every command, including "validate".
const std::vector<Command>& Registry();

// Accepts "simulate.qpv" or "simulate qpv". Null when unknown.
const Command* FindCommand(const std::string& id);

// Runs the tool on `args` (program name excluded). Returns 0 on success, 2 on
// invalid input and 1 on runtime failure.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpvkex::cli

#endif  // QPVKEX_TOOLS_CLI_CLI_H_
