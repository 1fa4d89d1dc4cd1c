// SPDX-License-Identifier: Apache-2.0
//
// riscat - reconfigurable-surface channel models and scattering patterns
// Copyright (C) 2026 riscat contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "riscat/riscat.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read scenario file " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

riscat::scenario_config load_config(const std::string& path, double grid_step,
                                    const std::string& coupling, const std::string& out_dir) {
  const std::string stem = std::filesystem::path(path).stem().string();
  riscat::scenario_config cfg = riscat::parse_scenario_text(slurp(path), stem);
  if (grid_step > 0) {
    cfg.grid.az_step_deg = grid_step;
    cfg.grid.el_step_deg = grid_step;
    validate(cfg.grid);
  }
  if (!coupling.empty()) {
    if (coupling == "full") cfg.coupling = riscat::coupling_mode::full;
    else if (coupling == "diagonal") cfg.coupling = riscat::coupling_mode::diagonal;
    else throw std::runtime_error("--coupling must be 'full' or 'diagonal'");
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  return cfg;
}

void print_summary(const riscat::scenario_result& res) {
  const auto& s = res.summary;
  std::cout << s.name << ": intended " << s.lobes.intended.level_db << " dB at ("
            << s.lobes.intended.direction.azimuth_deg << ", "
            << s.lobes.intended.direction.elevation_deg << "), specular "
            << s.lobes.specular.level_db << " dB at (" << s.lobes.specular.direction.azimuth_deg
            << ", " << s.lobes.specular.direction.elevation_deg << "), gap "
            << s.lobes.gap_structural_minus_intended_db << " dB\n";
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface channel models, load optimizers and re-radiation patterns"};
  app.require_subcommand(1);
  app.fallthrough();

  double grid_step = 0;
  std::string coupling, out_dir;
  app.add_option("--grid-step", grid_step, "override both angular grid steps (degrees)");
  app.add_option("--coupling", coupling, "override the coupling mode (full|diagonal)");
  app.add_option("--out-dir", out_dir, "override the output directory");

  std::string run_file;
  auto* run_cmd = app.add_subcommand("run", "run one scenario and write its artifacts");
  run_cmd->add_option("scenario", run_file, "scenario JSON file")->required();

  std::vector<std::string> sweep_files;
  auto* sweep_cmd = app.add_subcommand("sweep", "run several scenarios and write a comparison table");
  sweep_cmd->add_option("scenarios", sweep_files, "scenario JSON files")->required();

  std::string dump_file;
  auto* dump_cmd =
      app.add_subcommand("impedance-dump", "write the assembled impedance description");
  dump_cmd->add_option("scenario", dump_file, "scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto cfg = load_config(run_file, grid_step, coupling, out_dir);
      print_summary(riscat::run_scenario(cfg));
    } else if (sweep_cmd->parsed()) {
      std::vector<riscat::scenario_config> cfgs;
      cfgs.reserve(sweep_files.size());
      for (const auto& f : sweep_files) cfgs.push_back(load_config(f, grid_step, coupling, out_dir));
      for (const auto& res : riscat::run_sweep(cfgs, out_dir)) print_summary(res);
    } else if (dump_cmd->parsed()) {
      const auto cfg = load_config(dump_file, grid_step, coupling, out_dir);
      const auto j = riscat::impedance_dump_json(cfg);
      namespace fs = std::filesystem;
      const fs::path dir = fs::path(cfg.output_dir) / cfg.name;
      fs::create_directories(dir);
      std::ofstream os(dir / "impedance.json", std::ios::binary);
      if (!os) throw std::runtime_error("cannot write impedance dump");
      os << j.dump(2) << "\n";
      if (!os.flush()) throw std::runtime_error("write failed for impedance dump");
      std::cout << (dir / "impedance.json").string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
