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

#ifndef RISCAT_SCENARIO_HPP
#define RISCAT_SCENARIO_HPP

#include <complex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "riscat/detail/common.hpp"
#include "riscat/geometry.hpp"
#include "riscat/impedance.hpp"
#include "riscat/pattern.hpp"

namespace riscat {

enum class channel_model { conventional, impedance };
enum class quantization_mode { ideal, one_bit_nearest, one_bit_sweep, capacitance_range };

inline const char* to_string(channel_model m) {
  return m == channel_model::conventional ? "conventional" : "impedance";
}
inline const char* to_string(quantization_mode q) {
  switch (q) {
    case quantization_mode::ideal: return "ideal";
    case quantization_mode::one_bit_nearest: return "one_bit_nearest";
    case quantization_mode::one_bit_sweep: return "one_bit_sweep";
    default: return "capacitance_range";
  }
}
inline const char* to_string(coupling_mode c) {
  return c == coupling_mode::full ? "full" : "diagonal";
}

// Aggregated validation failure: every issue found in one pass.
class scenario_error : public std::runtime_error {
 public:
  explicit scenario_error(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::ostringstream os;
    os << "invalid scenario (" << v.size() << " issue" << (v.size() == 1 ? "" : "s") << "):";
    for (const auto& s : v) os << "\n  - " << s;
    return os.str();
  }
  std::vector<std::string> issues_;
};

struct scenario_config {
  std::string name = "scenario";
  double frequency_hz = 0;
  int n_x = 0;
  int n_z = 0;
  double delta = 0;
  plane_wave_direction<double> aoa{};
  plane_wave_direction<double> aod{};
  double gamma_g = 1;
  double gamma_h = 1;
  load_model<double> load{};
  channel_model model = channel_model::conventional;
  quantization_mode quantization = quantization_mode::ideal;
  coupling_mode coupling = coupling_mode::full;
  grid_spec<double> grid{};
  double reference_impedance_ohm = 50;
  std::complex<double> y0{1, 0};
  double cell_length_wavelengths = 0.45;
  double cell_radius_wavelengths = 0.002;
  bool cell_embedding_auto = true;
  double cell_embedding_gap_ratio = 2.45;
  double terminal_length_wavelengths = 0.5;
  double terminal_radius_wavelengths = 0.001;
  double tx_distance_m = 0;  // 0 = automatic (3x Fraunhofer)
  double rx_distance_m = 0;
  std::string output_dir = "out";

  double wavelength() const { return constants::speed_of_light / frequency_hz; }
  array_layout<double> layout() const { return {n_x, n_z, delta, wavelength()}; }
};

namespace detail {

class scenario_parser {
 public:
  explicit scenario_parser(const nlohmann::json& root) : root_(root) {}

  scenario_config run(const std::string& default_name) {
    scenario_config c;
    c.name = default_name;
    check_keys(root_, "",
               {"name", "frequency_hz", "layout", "aoa", "aod", "pathloss", "load", "model",
                "quantization", "coupling", "grid", "reference_impedance_ohm", "y0", "cell",
                "terminals", "output_dir"});

    optional_string(root_, "name", c.name);
    if (c.name.empty() || c.name.find('/') != std::string::npos)
      issue("name: must be a non-empty string without path separators");

    required_number(root_, "frequency_hz", c.frequency_hz);
    if (seen("frequency_hz") && !(c.frequency_hz > 0)) issue("frequency_hz: must be > 0");

    if (const auto* layout = required_object(root_, "layout")) {
      check_keys(*layout, "layout.", {"n_x", "n_z", "delta"});
      required_int(*layout, "layout.", "n_x", c.n_x);
      required_int(*layout, "layout.", "n_z", c.n_z);
      required_number(*layout, "layout.", "delta", c.delta);
      if (c.n_x < 1 || c.n_z < 1) issue("layout: element counts must be >= 1");
      if (!(c.delta > 0)) issue("layout.delta: must be > 0");
    }

    parse_direction("aoa", c.aoa);
    parse_direction("aod", c.aod);

    if (const auto* pl = required_object(root_, "pathloss")) {
      check_keys(*pl, "pathloss.", {"gamma_g", "gamma_h"});
      required_number(*pl, "pathloss.", "gamma_g", c.gamma_g);
      required_number(*pl, "pathloss.", "gamma_h", c.gamma_h);
      if (!(c.gamma_g > 0) || !(c.gamma_h > 0)) issue("pathloss: gains must be > 0");
    }

    if (const auto* ld = required_object(root_, "load")) {
      check_keys(*ld, "load.", {"r0_ohm", "l_henry", "c_min_farad", "c_max_farad"});
      required_number(*ld, "load.", "r0_ohm", c.load.r0);
      required_number(*ld, "load.", "l_henry", c.load.l);
      required_number(*ld, "load.", "c_min_farad", c.load.c_min);
      required_number(*ld, "load.", "c_max_farad", c.load.c_max);
      if (c.load.r0 < 0) issue("load.r0_ohm: must be >= 0");
      if (c.load.l < 0) issue("load.l_henry: must be >= 0");
      if (!(c.load.c_min > 0)) issue("load.c_min_farad: must be > 0");
      if (!(c.load.c_min < c.load.c_max))
        issue("load: capacitance range degenerate (requires c_min_farad < c_max_farad)");
    }

    std::string model_s;
    if (required_string(root_, "model", model_s)) {
      if (model_s == "conventional") c.model = channel_model::conventional;
      else if (model_s == "impedance") c.model = channel_model::impedance;
      else issue("model: must be one of {conventional, impedance}");
    }
    std::string quant_s;
    if (required_string(root_, "quantization", quant_s)) {
      if (quant_s == "ideal") c.quantization = quantization_mode::ideal;
      else if (quant_s == "one_bit_nearest") c.quantization = quantization_mode::one_bit_nearest;
      else if (quant_s == "one_bit_sweep") c.quantization = quantization_mode::one_bit_sweep;
      else if (quant_s == "capacitance_range") c.quantization = quantization_mode::capacitance_range;
      else issue("quantization: must be one of {ideal, one_bit_nearest, one_bit_sweep, capacitance_range}");
    }
    if (!model_s.empty() && !quant_s.empty()) {
      const bool one_bit = c.quantization == quantization_mode::one_bit_nearest ||
                           c.quantization == quantization_mode::one_bit_sweep;
      if (one_bit && c.model != channel_model::conventional)
        issue("quantization: one-bit modes apply to the conventional model only");
      if (c.quantization == quantization_mode::capacitance_range &&
          c.model != channel_model::impedance)
        issue("quantization: capacitance_range applies to the impedance model only");
    }

    std::string coupling_s = "full";
    optional_string(root_, "coupling", coupling_s);
    if (coupling_s == "full") c.coupling = coupling_mode::full;
    else if (coupling_s == "diagonal") c.coupling = coupling_mode::diagonal;
    else issue("coupling: must be one of {full, diagonal}");

    if (const auto* gr = optional_object(root_, "grid")) {
      check_keys(*gr, "grid.",
                 {"azimuth_min_deg", "azimuth_max_deg", "azimuth_step_deg", "elevation_min_deg",
                  "elevation_max_deg", "elevation_step_deg"});
      optional_number(*gr, "grid.", "azimuth_min_deg", c.grid.az_min_deg);
      optional_number(*gr, "grid.", "azimuth_max_deg", c.grid.az_max_deg);
      optional_number(*gr, "grid.", "azimuth_step_deg", c.grid.az_step_deg);
      optional_number(*gr, "grid.", "elevation_min_deg", c.grid.el_min_deg);
      optional_number(*gr, "grid.", "elevation_max_deg", c.grid.el_max_deg);
      optional_number(*gr, "grid.", "elevation_step_deg", c.grid.el_step_deg);
      try {
        validate(c.grid);
      } catch (const std::invalid_argument& e) {
        issue(e.what());
      }
    }

    optional_number(root_, "", "reference_impedance_ohm", c.reference_impedance_ohm);
    if (!(c.reference_impedance_ohm > 0)) issue("reference_impedance_ohm: must be > 0");

    if (const auto* y = optional_object(root_, "y0")) {
      check_keys(*y, "y0.", {"re", "im"});
      double re = c.y0.real(), im = c.y0.imag();
      optional_number(*y, "y0.", "re", re);
      optional_number(*y, "y0.", "im", im);
      c.y0 = {re, im};
    }

    if (const auto* cell = optional_object(root_, "cell")) {
      check_keys(*cell, "cell.",
                 {"length_wavelengths", "radius_wavelengths", "embedding", "embedding_gap_ratio"});
      optional_number(*cell, "cell.", "length_wavelengths", c.cell_length_wavelengths);
      optional_number(*cell, "cell.", "radius_wavelengths", c.cell_radius_wavelengths);
      std::string emb = c.cell_embedding_auto ? "auto" : "none";
      optional_string(*cell, "embedding", emb);
      if (emb == "auto") c.cell_embedding_auto = true;
      else if (emb == "none") c.cell_embedding_auto = false;
      else issue("cell.embedding: must be one of {auto, none}");
      optional_number(*cell, "cell.", "embedding_gap_ratio", c.cell_embedding_gap_ratio);
      if (!(c.cell_embedding_gap_ratio > 0)) issue("cell.embedding_gap_ratio: must be > 0");
    }
    if (!(c.cell_length_wavelengths > 0)) issue("cell.length_wavelengths: must be > 0");
    if (!(c.cell_radius_wavelengths > 0)) issue("cell.radius_wavelengths: must be > 0");
    if (c.cell_radius_wavelengths >= c.cell_length_wavelengths / 10)
      issue("cell: thin-wire requires radius < length/10");

    if (const auto* term = optional_object(root_, "terminals")) {
      check_keys(*term, "terminals.",
                 {"length_wavelengths", "radius_wavelengths", "tx_distance_m", "rx_distance_m"});
      optional_number(*term, "terminals.", "length_wavelengths", c.terminal_length_wavelengths);
      optional_number(*term, "terminals.", "radius_wavelengths", c.terminal_radius_wavelengths);
      optional_number(*term, "terminals.", "tx_distance_m", c.tx_distance_m);
      optional_number(*term, "terminals.", "rx_distance_m", c.rx_distance_m);
    }
    if (!(c.terminal_length_wavelengths > 0)) issue("terminals.length_wavelengths: must be > 0");
    if (!(c.terminal_radius_wavelengths > 0)) issue("terminals.radius_wavelengths: must be > 0");
    if (c.terminal_radius_wavelengths >= c.terminal_length_wavelengths / 10)
      issue("terminals: thin-wire requires radius < length/10");
    if (c.tx_distance_m < 0 || c.rx_distance_m < 0)
      issue("terminals: distances must be >= 0 (0 selects the automatic placement)");

    optional_string(root_, "output_dir", c.output_dir);
    if (c.output_dir.empty()) issue("output_dir: must be non-empty");

    if (!issues_.empty()) throw scenario_error(std::move(issues_));
    return c;
  }

 private:
  void issue(const std::string& s) { issues_.push_back(s); }
  bool seen(const std::string& key) const { return root_.contains(key); }

  void check_keys(const nlohmann::json& obj, const std::string& prefix,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) return;
    for (const auto& item : obj.items())
      if (!allowed.count(item.key())) issue(prefix + item.key() + ": unknown key");
  }

  const nlohmann::json* required_object(const nlohmann::json& obj, const std::string& key) {
    if (!obj.contains(key)) {
      issue(key + ": required section missing");
      return nullptr;
    }
    if (!obj.at(key).is_object()) {
      issue(key + ": must be an object");
      return nullptr;
    }
    return &obj.at(key);
  }
  const nlohmann::json* optional_object(const nlohmann::json& obj, const std::string& key) {
    if (!obj.contains(key)) return nullptr;
    if (!obj.at(key).is_object()) {
      issue(key + ": must be an object");
      return nullptr;
    }
    return &obj.at(key);
  }

  bool required_number(const nlohmann::json& obj, const std::string& prefix,
                       const std::string& key, double& out) {
    if (!obj.contains(key)) {
      issue(prefix + key + ": required value missing");
      return false;
    }
    if (!obj.at(key).is_number()) {
      issue(prefix + key + ": must be a number");
      return false;
    }
    out = obj.at(key).get<double>();
    return true;
  }
  bool required_number(const nlohmann::json& obj, const std::string& key, double& out) {
    return required_number(obj, "", key, out);
  }
  bool required_int(const nlohmann::json& obj, const std::string& prefix, const std::string& key,
                    int& out) {
    if (!obj.contains(key)) {
      issue(prefix + key + ": required value missing");
      return false;
    }
    if (!obj.at(key).is_number_integer()) {
      issue(prefix + key + ": must be an integer");
      return false;
    }
    out = obj.at(key).get<int>();
    return true;
  }
  bool required_string(const nlohmann::json& obj, const std::string& key, std::string& out) {
    if (!obj.contains(key)) {
      issue(key + ": required value missing");
      return false;
    }
    if (!obj.at(key).is_string()) {
      issue(key + ": must be a string");
      return false;
    }
    out = obj.at(key).get<std::string>();
    return true;
  }
  void optional_number(const nlohmann::json& obj, const std::string& prefix,
                       const std::string& key, double& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_number()) {
      issue(prefix + key + ": must be a number");
      return;
    }
    out = obj.at(key).get<double>();
  }
  void optional_string(const nlohmann::json& obj, const std::string& key, std::string& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_string()) {
      issue(key + ": must be a string");
      return;
    }
    out = obj.at(key).get<std::string>();
  }

  void parse_direction(const std::string& key, plane_wave_direction<double>& out) {
    if (const auto* d = required_object(root_, key)) {
      check_keys(*d, key + ".", {"azimuth_deg", "elevation_deg"});
      required_number(*d, key + ".", "azimuth_deg", out.azimuth_deg);
      required_number(*d, key + ".", "elevation_deg", out.elevation_deg);
      if (out.azimuth_deg < -90 || out.azimuth_deg > 90 || out.elevation_deg < -90 ||
          out.elevation_deg > 90)
        issue(key + ": angles must lie in [-90, 90] deg");
    }
  }

  const nlohmann::json& root_;
  std::vector<std::string> issues_;
};

}  // namespace detail

inline scenario_config parse_scenario(const nlohmann::json& doc,
                                      const std::string& default_name = "scenario") {
  if (!doc.is_object()) throw scenario_error({"document: top level must be a JSON object"});
  return detail::scenario_parser(doc).run(default_name);
}

inline scenario_config parse_scenario_text(const std::string& text,
                                           const std::string& default_name = "scenario") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw scenario_error({std::string("document: ") + e.what()});
  }
  return parse_scenario(doc, default_name);
}

// Full resolved document; parse_scenario(scenario_to_json(c)) is the
// identity on every field.
inline nlohmann::ordered_json scenario_to_json(const scenario_config& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["frequency_hz"] = c.frequency_hz;
  j["layout"] = {{"n_x", c.n_x}, {"n_z", c.n_z}, {"delta", c.delta}};
  j["aoa"] = {{"azimuth_deg", c.aoa.azimuth_deg}, {"elevation_deg", c.aoa.elevation_deg}};
  j["aod"] = {{"azimuth_deg", c.aod.azimuth_deg}, {"elevation_deg", c.aod.elevation_deg}};
  j["pathloss"] = {{"gamma_g", c.gamma_g}, {"gamma_h", c.gamma_h}};
  j["load"] = {{"r0_ohm", c.load.r0},
               {"l_henry", c.load.l},
               {"c_min_farad", c.load.c_min},
               {"c_max_farad", c.load.c_max}};
  j["model"] = to_string(c.model);
  j["quantization"] = to_string(c.quantization);
  j["coupling"] = to_string(c.coupling);
  j["grid"] = {{"azimuth_min_deg", c.grid.az_min_deg},     {"azimuth_max_deg", c.grid.az_max_deg},
               {"azimuth_step_deg", c.grid.az_step_deg},   {"elevation_min_deg", c.grid.el_min_deg},
               {"elevation_max_deg", c.grid.el_max_deg},   {"elevation_step_deg", c.grid.el_step_deg}};
  j["reference_impedance_ohm"] = c.reference_impedance_ohm;
  j["y0"] = {{"re", c.y0.real()}, {"im", c.y0.imag()}};
  j["cell"] = {{"length_wavelengths", c.cell_length_wavelengths},
               {"radius_wavelengths", c.cell_radius_wavelengths},
               {"embedding", c.cell_embedding_auto ? "auto" : "none"},
               {"embedding_gap_ratio", c.cell_embedding_gap_ratio}};
  j["terminals"] = {{"length_wavelengths", c.terminal_length_wavelengths},
                    {"radius_wavelengths", c.terminal_radius_wavelengths},
                    {"tx_distance_m", c.tx_distance_m},
                    {"rx_distance_m", c.rx_distance_m}};
  j["output_dir"] = c.output_dir;
  return j;
}

}  // namespace riscat

#endif  // RISCAT_SCENARIO_HPP
