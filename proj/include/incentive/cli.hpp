// Copyright 2026 The Authors.
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

// Command-line front end: generate, solve, report.

#ifndef INCENTIVE_CLI_HPP
#define INCENTIVE_CLI_HPP

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "incentive/bilevel.hpp"
#include "incentive/errors.hpp"
#include "incentive/report.hpp"
#include "incentive/scenario_io.hpp"

namespace incentive {

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Incentive pricing solver for time- and cell-sliced mobile traffic"};
  app.require_subcommand(1);

  GeneratorParams gen;
  std::string gen_out;
  CLI::App* generate_cmd = app.add_subcommand("generate", "Write a seeded synthetic scenario");
  generate_cmd->add_option("--seed", gen.seed, "Random seed");
  generate_cmd->add_option("--T", gen.T, "Time slots")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--L", gen.L, "Cells")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--K", gen.K, "Customers")->check(CLI::NonNegativeNumber);
  generate_cmd->add_option("--premium-share", gen.premium_share, "Fraction of premium customers")
      ->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_option("--peaks", gen.peaks, "Busy hours");
  generate_cmd->add_option("--peak-weight", gen.peak_weight, "Draw weight of a busy hour")
      ->check(CLI::PositiveNumber);
  generate_cmd->add_option("--load-factor", gen.load_factor, "Zero-price peak load over capacity");
  generate_cmd->add_option("--out", gen_out, "Scenario file to write")->required();

  std::string scenario_path, solve_out, mode = "auto";
  Slot source = 0;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Compute traffic targets and prices");
  solve_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  solve_cmd->add_option("--mode", mode, "auto, single, major or general")
      ->check(CLI::IsMember({"auto", "single", "major", "general"}));
  solve_cmd->add_option("--source", source, "Slot whose price is pinned to zero");
  solve_cmd->add_option("--out", solve_out, "Result file to write")->required();

  std::string result_path, out_dir;
  bool svg = false;
  CLI::App* report_cmd = app.add_subcommand("report", "Write satisfaction grids and traffic tables");
  report_cmd->add_option("--result", result_path, "Result file")->required();
  report_cmd->add_option("--out-dir", out_dir, "Directory for the report files")->required();
  report_cmd->add_flag("--svg", svg, "Also render the grids as SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(ExitCode::kSuccess) : static_cast<int>(ExitCode::kUsage);
  }

  try {
    if (*generate_cmd) {
      const Scenario sc = generate(gen);
      save_scenario(gen_out, sc);
      out << "wrote " << gen_out << " (" << sc.K() << " customers, " << sc.slot_count() << " slots)\n";
    } else if (*solve_cmd) {
      StoredResult r;
      r.scenario = load_scenario(scenario_path);
      if (source >= r.scenario.slot_count()) throw ValidationError("--source is not a slot of the scenario");
      r.mode = resolve_mode(r.scenario, parse_mode(mode));
      r.result = solve_scenario(r.scenario, r.mode, source);
      save_result(solve_out, r);
      out << "objective " << r.result.objective << " (zero-price " << r.result.baseline_objective << "), "
          << r.result.rounds << " rounds, mode " << mode_name(r.mode) << "\n";
      const long excess = capacity_excess(r.scenario, r.result.traffic);
      if (excess > 0) {
        err << "error: capacity exceeded by " << excess << " requests at the optimum; result kept for inspection\n";
        return static_cast<int>(ExitCode::kInfeasible);
      }
    } else if (*report_cmd) {
      const StoredResult r = load_result(result_path);
      const auto files = build_report(r, svg);
      write_report(out_dir, files);
      out << "wrote " << files.size() << " files to " << out_dir << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kValidation);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInternal);
  }
  return static_cast<int>(ExitCode::kSuccess);
}

}  // namespace incentive

#endif  // INCENTIVE_CLI_HPP
