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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "qpvkex/delta_table.h"
#include "qpvkex/errors.h"

namespace qpvkex::cli {
namespace {

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(path + " is not valid JSON: " + e.what());
  }
}

CommandResult RunValidate(const Json& c) {
  const std::string file = GetString(c, "file");
  if (file.empty()) throw ValidationError("file is required");
  CommandResult out;
  out.preferred = Format::kText;
  if (GetString(c, "kind") == "delta-table") {
    bounds::DeltaTildeTable t = bounds::LoadDeltaTable(file);
    out.result = {{"valid", true},
                  {"kind", "delta-table"},
                  {"eps_points", t.eps_axis().size()},
                  {"eta_points", t.eta_axis().size()},
                  {"generator", t.meta().generator}};
  } else {
    const Command* target = FindCommand(GetString(c, "command"));
    if (!target) throw ValidationError("unknown command '" + GetString(c, "command") + "'");
    Json doc = ReadJsonFile(file);
    Json resolved = ResolveConfig(target->params, &doc, {});
    out.result = {{"valid", true}, {"kind", "config"}, {"command", target->Id()}, {"resolved", resolved}};
  }
  out.text = "valid\n";
  return out;
}

std::vector<Command> BuildRegistry() {
  std::vector<Command> all;
  for (auto* group : {&SimulateCommands, &BoundsCommands, &CodecCommands}) {
    for (auto& c : (*group)()) all.push_back(std::move(c));
  }
  all.push_back({"validate", "", "check a run config or a delta-tilde table",
                 {ChoiceParam("kind", "config", {"config", "delta-table"}, "what the file holds"),
                  TextParam("command", "", "command the config is for, e.g. simulate.qpv"),
                  TextParam("file", "", "file to check")},
                 RunValidate});
  return all;
}

void Flatten(const Json& value, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) Flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) Flatten(value[i], prefix + "." + std::to_string(i), out);
  } else if (value.is_string()) {
    out.emplace_back(prefix, value.get<std::string>());
  } else {
    out.emplace_back(prefix, value.dump());
  }
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string Render(const Command& cmd, const Json& config, const CommandResult& r, Format format) {
  std::ostringstream os;
  if (format == Format::kJson) {
    Json doc;
    doc["command"] = cmd.Title();
    doc["config"] = config;
    doc["result"] = r.result;
    os << doc.dump(2) << "\n";
    return os.str();
  }
  std::vector<std::pair<std::string, std::string>> flat;
  if (format == Format::kText) {
    if (!r.text.empty()) return r.text;
    Flatten(r.result, "", flat);
    for (const auto& [k, v] : flat) os << k << " " << v << "\n";
    return os.str();
  }
  if (!r.csv_header.empty()) {
    for (std::size_t i = 0; i < r.csv_header.size(); ++i) os << (i ? "," : "") << CsvField(r.csv_header[i]);
    os << "\n";
    for (const auto& row : r.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << CsvField(row[i]);
      os << "\n";
    }
    return os.str();
  }
  Flatten(r.result, "", flat);
  os << "key,value\n";
  for (const auto& [k, v] : flat) os << CsvField(k) << "," << CsvField(v) << "\n";
  return os.str();
}

std::filesystem::path OutputPath(const std::string& requested) {
  std::filesystem::path p(requested);
  const char* dir = std::getenv("QPVKEX_OUT_DIR");
  if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
  return p;
}

struct Binding {
  const Command* command = nullptr;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_file, format, output;
};

}  // namespace

const std::vector<Command>& Registry() {
  static const std::vector<Command> registry = BuildRegistry();
  return registry;
}

const Command* FindCommand(const std::string& id) {
  for (const auto& c : Registry()) {
    if (c.Id() == id || c.Title() == id) return &c;
  }
  return nullptr;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qpvkex: QPV-authenticated key exchange simulator and bounds toolkit", "qpvkex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qpvkex 0.1.0");
  std::vector<std::unique_ptr<Binding>> bindings;
  std::map<std::string, CLI::App*> groups;
  for (const auto& cmd : Registry()) {
    CLI::App* parent = &app;
    if (!cmd.name.empty()) {
      auto it = groups.find(cmd.group);
      if (it == groups.end()) {
        CLI::App* g = app.add_subcommand(cmd.group, cmd.group + " commands");
        g->require_subcommand(1);
        it = groups.emplace(cmd.group, g).first;
      }
      parent = it->second;
    }
    auto b = std::make_unique<Binding>();
    b->command = &cmd;
    b->app = parent->add_subcommand(cmd.name.empty() ? cmd.group : cmd.name, cmd.summary);
    for (const auto& p : cmd.params) {
      std::string help = p.help + " [default: " +
                         (p.default_value.is_string() ? p.default_value.get<std::string>() : p.default_value.dump()) +
                         "]";
      b->options[p.key] = b->app->add_option(FlagName(p.key), b->values[p.key], help);
    }
    b->app->add_option("--config", b->config_file, "JSON object of parameters; flags override it");
    b->app->add_option("--format", b->format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    b->app->add_option("--output", b->output,
                       "write here instead of stdout; relative paths resolve against $QPVKEX_OUT_DIR");
    bindings.push_back(std::move(b));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Binding* chosen = nullptr;
  for (auto& b : bindings) {
    if (b->app->parsed()) chosen = b.get();
  }
  if (!chosen) {
    err << "error: no command given\n";
    return 2;
  }
  const Command& cmd = *chosen->command;
  try {
    std::map<std::string, std::string> flags;
    for (const auto& [key, opt] : chosen->options) {
      if (opt->count() > 0) flags[key] = chosen->values[key];
    }
    Json file_config;
    const Json* file_ptr = nullptr;
    if (!chosen->config_file.empty()) {
      file_config = ReadJsonFile(chosen->config_file);
      file_ptr = &file_config;
    }
    Json config = ResolveConfig(cmd.params, file_ptr, flags);
    CommandResult r = cmd.run(config);
    Format format = r.preferred;
    if (chosen->format == "text") format = Format::kText;
    if (chosen->format == "json") format = Format::kJson;
    if (chosen->format == "csv") format = Format::kCsv;
    std::string rendered = Render(cmd, config, r, format);
    if (chosen->output.empty()) {
      out << rendered;
    } else {
      std::filesystem::path path = OutputPath(chosen->output);
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      std::ofstream file(path, std::ios::binary);
      file << rendered;
      if (!file) throw Error("cannot write " + path.string());
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qpvkex::cli
