// Copyright 2026 The privf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "privf/commands.hpp"
#include "privf/errors.hpp"

namespace {

privf::RunConfig load_config(const std::string& path, long long seed_override,
                             const std::string& out_override) {
  privf::RunConfig cfg = privf::parse_config(path);
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (const char* cap = std::getenv("PRIVF_VAR_CAP")) {
    try {
      cfg.solver.variable_cap = std::stoull(cap);
    } catch (const std::exception&) {
      throw privf::DataError("PRIVF_VAR_CAP is not a valid integer");
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-preserving mapping toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  long long seed_override = -1;
  std::string out_override;
  std::string mapping_path;
  std::string other_prior_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration file")
        ->required();
    cmd->add_option("--seed", seed_override, "override the config seed");
    cmd->add_option("--out", out_override, "override the output directory");
  };

  CLI::App* estimate =
      app.add_subcommand("estimate", "estimate the prior from a dataset");
  add_common(estimate);
  CLI::App* solve =
      app.add_subcommand("solve", "compute mappings over the delta list");
  add_common(solve);
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "adversarial evaluation of a mapping");
  add_common(evaluate);
  evaluate->add_option("--mapping", mapping_path, "mapping CSV to evaluate")
      ->required();
  CLI::App* bounds =
      app.add_subcommand("bounds", "mismatched-prior and sampling bounds");
  add_common(bounds);
  bounds->add_option("--other", other_prior_path, "prior CSV to compare")
      ->required();
  CLI::App* synth =
      app.add_subcommand("synth", "generate the synthetic ratings dataset");
  add_common(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    privf::RunConfig cfg =
        load_config(config_path, seed_override, out_override);
    if (estimate->parsed()) return privf::cmd_estimate(cfg);
    if (solve->parsed()) return privf::cmd_solve(cfg);
    if (evaluate->parsed()) return privf::cmd_evaluate(cfg, mapping_path);
    if (bounds->parsed()) return privf::cmd_bounds(cfg, other_prior_path);
    if (synth->parsed()) return privf::cmd_synth(cfg);
  } catch (const privf::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const privf::AlphabetMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const privf::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const privf::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
