// Copyright 2026 The schinzel-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// schinzel-lab: command-line front end over the C API.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "schinzel_lab.h"

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

json list(const std::string& s) {
  json out = json::array();
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) out.push_back(item);
  return out;
}

// "1,0,1;2,1" -> [["1","0","1"],["2","1"]]
json lists(const std::string& s) {
  json out = json::array();
  for (const auto& part : split(s, ';')) out.push_back(list(part));
  return out;
}

struct Flag {
  std::string name;  // long flag without dashes and config key
  std::string help;
  enum Kind { scalar, list, lists, repeated } kind = scalar;
};

// Flags shared by several commands; each command opts in by name.
const std::map<std::string, Flag>& flag_table() {
  static const std::map<std::string, Flag> table{
      {"height", {"height", "height bound H", Flag::scalar}},
      {"degrees", {"degrees", "degrees d_i, comma list", Flag::list}},
      {"modulus", {"modulus", "modulus M", Flag::scalar}},
      {"anchor", {"anchor", "anchor n0", Flag::scalar}},
      {"residues", {"residues", "residue polynomials Q_i: coefficients by ',' and polynomials by ';'", Flag::lists}},
      {"x", {"x", "range x", Flag::scalar}},
      {"bound", {"bound", "scan bound or search radius", Flag::scalar}},
      {"samples", {"samples", "sample count", Flag::scalar}},
      {"seed", {"seed", "64-bit seed", Flag::scalar}},
      {"truncation", {"truncation", "Euler product truncation L", Flag::scalar}},
      {"poly", {"polys", "polynomial coefficients c0,c1,...; repeat for tuples", Flag::repeated}},
      {"ell", {"ell", "prime ell", Flag::scalar}},
      {"m", {"m", "residue or input m", Flag::scalar}},
      {"k", {"k", "input k", Flag::scalar}},
      {"c", {"c", "exponent C", Flag::scalar}},
      {"epsilon", {"epsilon", "exponent slack", Flag::scalar}},
      {"rd", {"rd", "degree d for r_d", Flag::scalar}},
      {"a-list", {"a", "a1,a2,a3", Flag::list}},
      {"a", {"a", "coefficient a", Flag::scalar}},
      {"primes", {"primes", "primes of pi_1;pi_2;pi_3", Flag::lists}},
      {"coeffs", {"coeffs", "conic coefficients a,b,c", Flag::list}},
      {"groups", {"groups", "group sizes n1,n2,n3", Flag::list}},
      {"path", {"path", "fast or full", Flag::scalar}},
      {"mode", {"mode", "command mode", Flag::scalar}},
  };
  return table;
}

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> flags;
};

const std::vector<Command>& command_table() {
  static const std::vector<Command> table{
      {"density", "Schinzel density constant, optionally with the exhaustive box proportion",
       {"degrees", "modulus", "truncation", "height", "residues", "anchor"}},
      {"series", "truncated singular series", {"poly", "x", "anchor", "modulus"}},
      {"theta", "theta_P(x) and its prediction", {"poly", "x", "anchor", "modulus"}},
      {"least-prime", "least prime inputs (modes: single, linnik, fraction)",
       {"mode", "poly", "c", "anchor", "modulus", "bound", "degrees", "height", "samples", "epsilon", "seed",
        "residues"}},
      {"pair-corr", "pair correlation G_{k,m}(H; d)", {"height", "degrees", "k", "m", "samples", "seed"}},
      {"dispersion", "dispersion averages R and V over a box",
       {"degrees", "height", "modulus", "residues", "anchor", "x", "mode", "samples", "seed"}},
      {"model-verify", "exact Bernoulli model identities", {"ell", "degrees", "m"}},
      {"conic", "diagonal conic: solvability, point, Q indicator", {"a-list", "primes", "coeffs", "bound"}},
      {"bundle", "conic bundle search and counting identity",
       {"a-list", "poly", "groups", "anchor", "modulus", "bound", "x"}},
      {"chatelet", "x^2 + a y^2 = f(t) by prime or two-squares values",
       {"a", "poly", "anchor", "modulus", "bound", "path"}},
      {"prob", "r_d, the lower bound, and the sampled solvability proportion",
       {"rd", "truncation", "degrees", "height", "bound", "samples", "seed"}},
  };
  return table;
}

int exit_code(sl_status s) { return s == SL_ERR_IO ? 1 : static_cast<int>(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"schinzel-lab: prime values of polynomials and local-global experiments"};
  app.set_version_flag("--version", std::string(sl_version()));
  app.require_subcommand(0, 1);

  std::string format = "json", out = "-", config_file;
  unsigned threads = 1;
  app.add_option("--config", config_file, "run the config (or report) stored in a JSON file");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out, "output path, - for stdout");
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));

  std::map<std::string, std::map<std::string, std::string>> scalars;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> repeats;
  std::map<std::string, std::set<std::string>> list_keys;

  for (const auto& cmd : command_table()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out, "output path, - for stdout");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    for (const auto& key : cmd.flags) {
      const auto& f = flag_table().at(key);
      std::string flag = "--" + (key == "a-list" ? std::string("a") : key);
      if (key == "height") flag = "-H,--height";
      if (f.kind == Flag::repeated) {
        sub->add_option(flag, repeats[cmd.name][f.name], f.help);
      } else {
        sub->add_option(flag, scalars[cmd.name][key], f.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  json config;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) {
      std::cerr << "error: cannot read " << config_file << "\n";
      return 1;
    }
    try {
      config = json::parse(in);
      if (config.contains("schema") && config.contains("config")) config = config["config"];
      if (app.count("--threads")) config["threads"] = std::to_string(threads);
    } catch (const json::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  } else {
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
      std::cerr << app.help();
      return 1;
    }
    const auto* sub = subs.front();
    const auto name = sub->get_name();
    config["command"] = name;
    for (const auto& cmd : command_table()) {
      if (cmd.name != name) continue;
      for (const auto& key : cmd.flags) {
        const auto& f = flag_table().at(key);
        const std::string flag = "--" + (key == "a-list" ? std::string("a") : key);
        if (sub->count(flag) == 0) continue;
        switch (f.kind) {
          case Flag::scalar: config[f.name] = scalars[name][key]; break;
          case Flag::list: config[f.name] = list(scalars[name][key]); break;
          case Flag::lists: config[f.name] = lists(scalars[name][key]); break;
          case Flag::repeated: {
            json polys = json::array();
            for (const auto& p : repeats[name][f.name]) polys.push_back(list(p));
            config[f.name] = polys;
            break;
          }
        }
      }
    }
    if (sub->count("--threads")) config["threads"] = std::to_string(threads);
  }

  sl_context* ctx = nullptr;
  if (const auto s = sl_context_create(&ctx); s != SL_OK) {
    std::cerr << "error: cannot create context (check SCHINZEL_LAB_BUDGET): " << sl_status_string(s) << "\n";
    return exit_code(s);
  }
  sl_report* report = nullptr;
  const auto text = config.dump();
  auto status = sl_run(ctx, text.c_str(), &report);
  if (status == SL_OK) status = sl_report_write(ctx, report, format.c_str(), out.c_str());
  if (status != SL_OK) std::cerr << "error: " << sl_status_string(status) << ": " << sl_last_error(ctx) << "\n";
  sl_report_destroy(report);
  sl_context_destroy(ctx);
  return exit_code(status);
}
