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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "riscat/runner.hpp"
#include "riscat/scenario.hpp"

using namespace riscat;
namespace fs = std::filesystem;

namespace {

const char* table_doc = R"({
  "name": "table",
  "frequency_hz": 26.168e9,
  "layout": {"n_x": 20, "n_z": 20, "delta": 0.5},
  "aoa": {"azimuth_deg": 0.0, "elevation_deg": 0.0},
  "aod": {"azimuth_deg": 45.0, "elevation_deg": 0.0},
  "pathloss": {"gamma_g": 1.0, "gamma_h": 1.0},
  "load": {"r0_ohm": 5.2, "l_henry": 30e-12, "c_min_farad": 25e-15, "c_max_farad": 30e-15},
  "model": "conventional",
  "quantization": "one_bit_nearest"
})";

scenario_config small_config(const std::string& name, channel_model model,
                             quantization_mode quant) {
  scenario_config c = parse_scenario_text(table_doc, name);
  c.name = name;
  c.n_x = 6;
  c.n_z = 6;
  c.model = model;
  c.quantization = quant;
  c.grid.az_step_deg = 3;
  c.grid.el_step_deg = 3;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("a full document echoes its values") {
  const auto c = parse_scenario_text(table_doc);
  CHECK(c.name == "table");
  CHECK(c.frequency_hz == 26.168e9);
  CHECK(c.n_x == 20);
  CHECK(c.n_z == 20);
  CHECK(c.delta == 0.5);
  CHECK(c.aod.azimuth_deg == 45.0);
  CHECK(c.load.r0 == 5.2);
  CHECK(c.load.l == 30e-12);
  CHECK(c.load.c_min == 25e-15);
  CHECK(c.load.c_max == 30e-15);
  CHECK(c.model == channel_model::conventional);
  CHECK(c.quantization == quantization_mode::one_bit_nearest);
  // defaults
  CHECK(c.coupling == coupling_mode::full);
  CHECK(c.reference_impedance_ohm == 50.0);
  CHECK(c.y0 == std::complex<double>(1, 0));
  CHECK(c.grid.az_step_deg == 1.0);
  CHECK(c.wavelength() == Catch::Approx(0.011457).epsilon(1e-4));
}

TEST_CASE("an empty document reports every missing section") {
  try {
    parse_scenario_text("{}");
    FAIL("expected scenario_error");
  } catch (const scenario_error& e) {
    const auto& issues = e.issues();
    REQUIRE(issues.size() == 8);
    for (const char* field :
         {"frequency_hz", "layout", "aoa", "aod", "pathloss", "load", "model", "quantization"}) {
      bool found = false;
      for (const auto& s : issues)
        if (s.find(field) == 0) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("degenerate capacitance range is rejected") {
  auto doc = nlohmann::json::parse(table_doc);
  doc["load"]["c_max_farad"] = doc["load"]["c_min_farad"];
  try {
    parse_scenario(doc);
    FAIL("expected scenario_error");
  } catch (const scenario_error& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].find("degenerate") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected with their path") {
  auto doc = nlohmann::json::parse(table_doc);
  doc["lay0ut"] = 1;
  doc["load"]["q_factor"] = 10;
  try {
    parse_scenario(doc);
    FAIL("expected scenario_error");
  } catch (const scenario_error& e) {
    REQUIRE(e.issues().size() == 2);
    CHECK(e.issues()[0].find("lay0ut") != std::string::npos);
    CHECK(e.issues()[1].find("load.q_factor") != std::string::npos);
  }
}

TEST_CASE("model and quantizer combinations are validated") {
  auto doc = nlohmann::json::parse(table_doc);
  doc["model"] = "impedance";
  doc["quantization"] = "one_bit_nearest";
  CHECK_THROWS_AS(parse_scenario(doc), scenario_error);
  doc["model"] = "conventional";
  doc["quantization"] = "capacitance_range";
  CHECK_THROWS_AS(parse_scenario(doc), scenario_error);
  doc["quantization"] = "ideal";
  CHECK_NOTHROW(parse_scenario(doc));
}

TEST_CASE("angles outside the half-space are rejected") {
  auto doc = nlohmann::json::parse(table_doc);
  doc["aoa"]["elevation_deg"] = -91.0;
  CHECK_THROWS_AS(parse_scenario(doc), scenario_error);
}

TEST_CASE("parse, serialize, parse is the identity") {
  auto base = parse_scenario_text(table_doc);
  base.coupling = coupling_mode::diagonal;
  base.cell_embedding_gap_ratio = 1.9;
  base.tx_distance_m = 7.5;
  const auto round = parse_scenario(scenario_to_json(base), base.name);
  CHECK(scenario_to_json(round) == scenario_to_json(base));
}

TEST_CASE("run artifacts are complete, self-describing and deterministic") {
  const fs::path out = fs::temp_directory_path() / "riscat_test_run";
  fs::remove_all(out);
  const auto cfg = small_config("det", channel_model::conventional,
                                quantization_mode::one_bit_nearest);
  const auto res = run_scenario(cfg, out.string());
  const fs::path dir = out / "det";
  REQUIRE(fs::exists(dir / "pattern.csv"));
  REQUIRE(fs::exists(dir / "elements.csv"));
  REQUIRE(fs::exists(dir / "summary.json"));

  SECTION("pattern CSV carries provenance, header and the full grid") {
    std::istringstream is(slurp(dir / "pattern.csv"));
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("# config: {", 0) == 0);
    std::getline(is, line);
    CHECK(line.rfind("# normalization_reference_db:", 0) == 0);
    std::getline(is, line);
    CHECK(line == "azimuth_deg,elevation_deg,level_db");
    int rows = 0;
    double first_az = 1e9, first_el = 1e9, second_az = 1e9;
    while (std::getline(is, line)) {
      if (rows == 0) std::sscanf(line.c_str(), "%lf,%lf", &first_az, &first_el);
      if (rows == 1) std::sscanf(line.c_str(), "%lf", &second_az);
      ++rows;
    }
    CHECK(rows == 61 * 61);
    // elevation-major: the azimuth column moves first
    CHECK(first_az == -90.0);
    CHECK(first_el == -90.0);
    CHECK(second_az == -87.0);
  }

  SECTION("summary carries the lobe report and both gains") {
    const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
    for (const char* key :
         {"intended", "specular", "mirror", "gap_structural_minus_intended",
          "h_conventional_abs", "h_impedance_abs", "normalization_reference_db", "config"})
      CHECK(j.contains(key));
    CHECK(j["config"]["load"]["r0_ohm"] == 5.2);
    CHECK(j["h_impedance_abs"].get<double>() > 0.0);
  }

  SECTION("element dump has one labeled row per element") {
    std::istringstream is(slurp(dir / "elements.csv"));
    std::string line;
    std::getline(is, line);  // provenance
    std::getline(is, line);
    CHECK(line == "index,m,n,phase_rad,capacitance_farad,load_re_ohm,load_im_ohm");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 36);
  }

  SECTION("a rerun is byte-identical") {
    const std::string pattern_one = slurp(dir / "pattern.csv");
    const std::string summary_one = slurp(dir / "summary.json");
    run_scenario(cfg, out.string());
    CHECK(slurp(dir / "pattern.csv") == pattern_one);
    CHECK(slurp(dir / "summary.json") == summary_one);
  }
  fs::remove_all(out);
}

TEST_CASE("sweep renders one row per scenario and aborts by name") {
  const fs::path out = fs::temp_directory_path() / "riscat_test_sweep";
  fs::remove_all(out);
  const auto a = small_config("row_a", channel_model::conventional,
                              quantization_mode::one_bit_nearest);
  const auto b = small_config("row_b", channel_model::impedance,
                              quantization_mode::capacitance_range);
  const auto results = run_sweep({a, b, a}, out.string());
  REQUIRE(results.size() == 3);

  std::istringstream is(slurp(out / "sweep.csv"));
  std::string header, row_a, row_b, row_a2;
  std::getline(is, header);
  CHECK(header ==
        "scenario,model,quantization,aoa_azimuth_deg,aoa_elevation_deg,aod_azimuth_deg,"
        "aod_elevation_deg,intended_db,specular_db,mirror_db,gap_db,specular_matched_db");
  std::getline(is, row_a);
  std::getline(is, row_b);
  std::getline(is, row_a2);
  CHECK(row_a.rfind("row_a,conventional,one_bit_nearest,", 0) == 0);
  CHECK(row_b.rfind("row_b,impedance,capacitance_range,", 0) == 0);
  // duplicate scenarios produce identical numbers
  CHECK(row_a.substr(row_a.find(',')) == row_a2.substr(row_a2.find(',')));

  // single-scenario sweep equals the run summary fields
  std::ostringstream expect;
  expect << "row_a,conventional,one_bit_nearest,0.000000,0.000000,45.000000,0.000000,";
  CHECK(row_a.rfind(expect.str(), 0) == 0);

  auto broken = b;
  broken.name = "broken";
  broken.load.c_min = -1;  // invalid at run time
  CHECK_THROWS_WITH(run_sweep({a, broken}, out.string()),
                    Catch::Matchers::ContainsSubstring("broken"));
  fs::remove_all(out);
}

TEST_CASE("impedance dump exposes the assembled couplings") {
  auto cfg = small_config("dump", channel_model::impedance, quantization_mode::capacitance_range);
  cfg.n_x = 3;
  cfg.n_z = 2;
  const auto j = impedance_dump_json(cfg);
  CHECK(j["z_ss"].size() == 6);
  CHECK(j["z_ss"][0].size() == 6);
  CHECK(j["z_st"].size() == 6);
  CHECK(j["z_rs"].size() == 6);
  CHECK(j["z_rt"]["re"] == 0.0);
  CHECK(j["cell_embedding"]["port_resistance_ohm"].get<double>() > 0.0);
}
