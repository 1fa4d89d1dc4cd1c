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
//
// Scenario pipeline: assemble the physical scenario, derive a surface
// configuration with the selected model and quantizer, evaluate it on the
// coupled re-radiation physics, and emit the run artifacts.
//
// Every configuration, no matter which model produced it, is evaluated the
// same way: states map to port loads, loads induce currents through the
// coupled linear system, currents superpose into the angular pattern. The
// optimizers never see the full coupling they are evaluated under, which
// is exactly the optimize/evaluate asymmetry the comparison is about.

#ifndef RISCAT_RUNNER_HPP
#define RISCAT_RUNNER_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "riscat/cell_embedding.hpp"
#include "riscat/conventional.hpp"
#include "riscat/dipole.hpp"
#include "riscat/geometry.hpp"
#include "riscat/impedance.hpp"
#include "riscat/load_optimizer.hpp"
#include "riscat/pattern.hpp"
#include "riscat/scenario.hpp"

namespace riscat {

// Assembled physical scenario, independent of any configuration choice.
struct scenario_physics {
  scenario_config config;
  array_layout<double> layout;
  dipole_spec<double> tx, rx, cell;
  impedance_set<double> imps;
  cell_embedding<double> embedding;
  double terminal_distance_m = 0;
  std::vector<std::string> warnings;
};

// Per-element state of one configured run.
struct ris_configuration {
  std::vector<double> phases;         // model-domain phase, radians in [0, 2 pi)
  std::vector<double> capacitance_f;  // NaN where no capacitance applies
  cvec<double> port_loads;            // load attached to each cell port
  std::vector<bool> unbounded;        // optimizer open-circuit flags
};

struct scenario_summary {
  std::string name;
  lobe_report<double> lobes;
  double normalization_reference_db = 0;
  double specular_matched_db = 0;
  lobe<double> matched_peak;  // location of the matched-load grid maximum
  double h_conventional_abs = 0;
  double h_impedance_abs = 0;
  std::vector<std::string> warnings;
};

struct scenario_result {
  pattern_grid<double> pattern;
  ris_configuration state;
  scenario_summary summary;
};

namespace detail {

inline double auto_terminal_distance(const array_layout<double>& layout) {
  const double dx = (layout.n_x - 1) * layout.spacing();
  const double dz = (layout.n_z - 1) * layout.spacing();
  const double aperture = std::sqrt(dx * dx + dz * dz);
  const double fraunhofer = 2 * aperture * aperture / layout.wavelength;
  return std::max(3 * fraunhofer, 20 * layout.wavelength);
}

inline vec3<double> aperture_center(const array_layout<double>& layout) {
  const double d = layout.spacing();
  return {(layout.n_x - 1) * d / 2, 0.0, (layout.n_z - 1) * d / 2};
}

}  // namespace detail

inline scenario_physics build_scenario_physics(const scenario_config& c) {
  scenario_physics phys;
  phys.config = c;
  phys.layout = c.layout();
  validate(phys.layout);
  const double lambda = phys.layout.wavelength;

  phys.cell = dipole_spec<double>{{}, c.cell_length_wavelengths * lambda,
                                  c.cell_radius_wavelengths * lambda};
  const double term_len = c.terminal_length_wavelengths * lambda;
  const double term_rad = c.terminal_radius_wavelengths * lambda;

  const double tx_dist = c.tx_distance_m > 0 ? c.tx_distance_m : detail::auto_terminal_distance(phys.layout);
  const double rx_dist = c.rx_distance_m > 0 ? c.rx_distance_m : detail::auto_terminal_distance(phys.layout);
  phys.terminal_distance_m = tx_dist;
  const auto center = detail::aperture_center(phys.layout);
  phys.tx = dipole_spec<double>{center + tx_dist * unit_direction(c.aoa), term_len, term_rad};
  phys.rx = dipole_spec<double>{center + rx_dist * unit_direction(c.aod), term_len, term_rad};

  phys.imps = assemble_impedance_set(phys.layout, phys.tx, phys.rx, phys.cell, c.coupling,
                                     quadrature_options<double>{}, &phys.warnings);
  phys.imps.z0 = c.reference_impedance_ohm;
  phys.imps.y0 = c.y0;

  if (c.cell_embedding_auto) {
    const std::complex<double> z_cell = phys.imps.z_ss(0, 0);
    phys.embedding = design_cell_embedding(z_cell, c.load, c.frequency_hz,
                                           c.reference_impedance_ohm, c.cell_embedding_gap_ratio);
  }
  return phys;
}

namespace detail {

// Diagonal-coupling view of an assembled set (what the load optimizer is
// allowed to see).
inline impedance_set<double> diagonal_view(const impedance_set<double>& imps) {
  impedance_set<double> d = imps;
  d.z_ss = imps.z_ss.diagonal().asDiagonal();
  return d;
}

inline double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace detail

// Derive the per-element configuration for the scenario's model/quantizer
// selection.
inline ris_configuration configure_surface(const scenario_physics& phys,
                                           std::vector<std::string>* warnings = nullptr) {
  const scenario_config& c = phys.config;
  const auto n = static_cast<size_t>(phys.layout.size());
  ris_configuration out;
  out.phases.assign(n, 0.0);
  out.capacitance_f.assign(n, detail::nan_value());
  out.port_loads.resize(static_cast<Eigen::Index>(n));
  out.unbounded.assign(n, false);

  const auto rlc_port = [&](double cap) {
    return phys.embedding.to_port(load_impedance_rlc(cap, c.load, c.frequency_hz));
  };

  if (c.model == channel_model::conventional) {
    auto [g, h] = build_channels(phys.layout, c.aoa, c.aod, c.gamma_g, c.gamma_h);
    phase_configuration<double> phases;
    switch (c.quantization) {
      case quantization_mode::ideal: phases = optimal_phases(g, h); break;
      case quantization_mode::one_bit_nearest:
        phases = quantize_1bit(g, h, binary_quantizer::nearest);
        break;
      case quantization_mode::one_bit_sweep:
        phases = quantize_1bit(g, h, binary_quantizer::sweep);
        break;
      default:
        throw std::invalid_argument("configure_surface: capacitance_range needs the impedance model");
    }
    out.phases = phases.phases;
    const bool binary = c.quantization != quantization_mode::ideal;
    const double r_port = phys.embedding.identity ? c.load.r0 : phys.embedding.port_resistance;
    const std::complex<double> z_cell = phys.imps.z_ss(0, 0);
    const double r_total = r_port + std::real(z_cell);
    for (size_t i = 0; i < n; ++i) {
      double cap;
      if (binary) {
        // binary state map: phase 0 -> c_max, phase pi -> c_min
        cap = out.phases[i] < detail::pi_v<double> / 2 ? c.load.c_max : c.load.c_min;
      } else {
        // continuous map onto the realizable branch, consistent with the
        // binary endpoints at phase pi
        const double phi = detail::wrap_pi(out.phases[i]);
        if (std::abs(std::abs(phi) - detail::pi_v<double>) < 1e-12) {
          cap = c.load.c_min;
        } else {
          const double x_total_target = r_total * std::tan(phi / 2);
          const std::complex<double> port_target(r_port, x_total_target - std::imag(z_cell));
          const std::complex<double> branch = phys.embedding.to_branch(port_target);
          cap = reactance_to_capacitance(std::imag(branch), c.load, c.frequency_hz);
        }
      }
      out.capacitance_f[i] = cap;
      out.port_loads[static_cast<Eigen::Index>(i)] = rlc_port(cap);
    }
    return out;
  }

  // impedance model
  if (c.coupling == coupling_mode::full && warnings)
    warnings->push_back(
        "optimizer assumes negligible cell coupling: using the diagonal of the full coupling "
        "matrix");
  const auto diag = detail::diagonal_view(phys.imps);
  const double r0_eff = phys.embedding.identity ? c.load.r0 : phys.embedding.port_resistance;
  const auto coeffs = compute_coefficients(diag, r0_eff);
  const auto opt = optimal_loads(coeffs, r0_eff, diag.z_ss.diagonal().eval());
  out.unbounded = opt.unbounded;

  if (c.quantization == quantization_mode::ideal) {
    out.port_loads = opt.loads;
  } else if (c.quantization == quantization_mode::capacitance_range) {
    for (size_t i = 0; i < n; ++i) {
      double cap;
      if (opt.unbounded[i]) {
        cap = c.load.c_max;  // open-circuit wish: no feasible state is nearer
      } else {
        const std::complex<double> branch =
            phys.embedding.to_branch(opt.loads[static_cast<Eigen::Index>(i)]);
        cap = reactance_to_capacitance(std::imag(branch), c.load, c.frequency_hz);
      }
      out.capacitance_f[i] = cap;
      out.port_loads[static_cast<Eigen::Index>(i)] = rlc_port(cap);
    }
  } else {
    throw std::invalid_argument("configure_surface: one-bit modes need the conventional model");
  }
  // equivalent model-domain phase of each realized state: the phase of the
  // reflected (controllable) current component, arg(conj(D)/D)
  for (size_t i = 0; i < n; ++i) {
    const std::complex<double> d =
        phys.imps.z_ss(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +
        out.port_loads[static_cast<Eigen::Index>(i)];
    out.phases[i] = detail::wrap_two_pi(-2.0 * std::arg(d));
  }
  return out;
}

// Full evaluation: configuration, coupled currents, normalized pattern,
// lobe report and both channel-model gains.
inline scenario_result evaluate_scenario(const scenario_physics& phys) {
  const scenario_config& c = phys.config;
  scenario_result res;
  res.summary.name = c.name;
  res.summary.warnings = phys.warnings;
  res.state = configure_surface(phys, &res.summary.warnings);

  // normalization reference: matched loads, broadside incidence
  const auto cells = element_positions(phys.layout);
  const double dist = phys.terminal_distance_m;
  const auto center = detail::aperture_center(phys.layout);
  dipole_spec<double> tx_broad = phys.tx;
  tx_broad.position = center + dist * unit_direction(plane_wave_direction<double>{0, 0});
  impedance_set<double> ref_imps = phys.imps;
  ref_imps.z_st = coupling_vector(cells, phys.cell, tx_broad, phys.layout.wavelength);
  const cvec<double> matched =
      cvec<double>::Constant(phys.imps.z_ss.rows(), std::complex<double>(phys.imps.z0, 0.0));
  const cvec<double> i_ref = induced_currents(ref_imps, matched);
  const pattern_grid<double> ref_grid = scattered_pattern(i_ref, phys.layout, c.grid, 0.0);
  const double reference_db = grid_peak(ref_grid).level_db;
  res.summary.normalization_reference_db = reference_db;

  // configured run
  const cvec<double> currents = induced_currents(phys.imps, res.state.port_loads);
  res.pattern = scattered_pattern(currents, phys.layout, c.grid, reference_db);

  // matched-load run under the scenario incidence
  const cvec<double> i_matched = induced_currents(phys.imps, matched);
  const pattern_grid<double> matched_grid =
      scattered_pattern(i_matched, phys.layout, c.grid, reference_db);

  const plane_wave_direction<double> specular = specular_direction(c.aoa);
  const plane_wave_direction<double> mirror{-c.aod.azimuth_deg, -c.aod.elevation_deg};
  res.summary.lobes = detect_lobes(res.pattern, c.aod, specular, mirror);
  res.summary.specular_matched_db =
      detail::window_maximum(matched_grid, specular, 5.0).level_db;
  res.summary.matched_peak = grid_peak(matched_grid);

  auto [g, h] = build_channels(phys.layout, c.aoa, c.aod, c.gamma_g, c.gamma_h);
  phase_configuration<double> equiv{res.state.phases};
  res.summary.h_conventional_abs = std::abs(received_gain(h, g, equiv));
  res.summary.h_impedance_abs = std::abs(end_to_end_channel(phys.imps, res.state.port_loads));
  return res;
}

namespace detail {

inline std::string compact_config_json(const scenario_config& c) {
  return scenario_to_json(c).dump();
}

inline void write_or_throw(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << content;
  if (!os.flush()) throw std::runtime_error("write failed for " + path.string());
}

inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string format_general(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace detail

inline nlohmann::ordered_json summary_to_json(const scenario_summary& s,
                                              const scenario_config& c) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["model"] = to_string(c.model);
  j["quantization"] = to_string(c.quantization);
  j["intended"] = {{"azimuth_deg", s.lobes.intended.direction.azimuth_deg},
                   {"elevation_deg", s.lobes.intended.direction.elevation_deg},
                   {"level_db", s.lobes.intended.level_db}};
  j["specular"] = {{"azimuth_deg", s.lobes.specular.direction.azimuth_deg},
                   {"elevation_deg", s.lobes.specular.direction.elevation_deg},
                   {"level_db", s.lobes.specular.level_db}};
  j["mirror"] = {{"azimuth_deg", s.lobes.mirror.direction.azimuth_deg},
                 {"elevation_deg", s.lobes.mirror.direction.elevation_deg},
                 {"level_db", s.lobes.mirror.level_db},
                 {"present", s.lobes.mirror_present}};
  j["gap_structural_minus_intended"] = s.lobes.gap_structural_minus_intended_db;
  j["specular_matched_db"] = s.specular_matched_db;
  j["matched_peak"] = {{"azimuth_deg", s.matched_peak.direction.azimuth_deg},
                       {"elevation_deg", s.matched_peak.direction.elevation_deg},
                       {"level_db", s.matched_peak.level_db}};
  j["h_conventional_abs"] = s.h_conventional_abs;
  j["h_impedance_abs"] = s.h_impedance_abs;
  j["normalization_reference_db"] = s.normalization_reference_db;
  j["warnings"] = s.warnings;
  j["config"] = nlohmann::ordered_json::parse(detail::compact_config_json(c));
  return j;
}

// Run one scenario and write pattern.csv, elements.csv and summary.json
// into <out_root>/<name>/. Returns the in-memory result.
inline scenario_result run_scenario(const scenario_config& config,
                                    const std::string& out_root_override = "") {
  const scenario_physics phys = build_scenario_physics(config);
  scenario_result res = evaluate_scenario(phys);

  namespace fs = std::filesystem;
  const fs::path root = out_root_override.empty() ? fs::path(config.output_dir)
                                                  : fs::path(out_root_override);
  const fs::path dir = root / config.name;
  fs::create_directories(dir);

  const std::string provenance = "# config: " + detail::compact_config_json(config) + "\n";

  // pattern grid, elevation-major rows
  {
    std::string csv = provenance;
    csv += "# normalization_reference_db: " +
           detail::format_fixed(res.summary.normalization_reference_db) + "\n";
    csv += "azimuth_deg,elevation_deg,level_db\n";
    const auto& spec = res.pattern.spec;
    for (int ie = 0; ie < spec.n_el(); ++ie)
      for (int ia = 0; ia < spec.n_az(); ++ia)
        csv += detail::format_fixed(spec.az(ia)) + "," + detail::format_fixed(spec.el(ie)) + "," +
               detail::format_fixed(res.pattern.value(ie, ia)) + "\n";
    detail::write_or_throw(dir / "pattern.csv", csv);
  }

  // per-element state dump
  {
    std::string csv = provenance;
    csv += "index,m,n,phase_rad,capacitance_farad,load_re_ohm,load_im_ohm\n";
    const int n_z = config.n_z;
    for (Eigen::Index i = 0; i < res.state.port_loads.size(); ++i) {
      const auto idx = static_cast<int>(i);
      csv += std::to_string(idx) + "," + std::to_string(idx / n_z) + "," +
             std::to_string(idx % n_z) + "," +
             detail::format_general(res.state.phases[static_cast<size_t>(i)]) + "," +
             detail::format_general(res.state.capacitance_f[static_cast<size_t>(i)]) + "," +
             detail::format_general(std::real(res.state.port_loads[i])) + "," +
             detail::format_general(std::imag(res.state.port_loads[i])) + "\n";
    }
    detail::write_or_throw(dir / "elements.csv", csv);
  }

  detail::write_or_throw(dir / "summary.json", summary_to_json(res.summary, config).dump(2) + "\n");
  return res;
}

// Run a list of scenarios and render the comparison table. Any failure
// aborts the sweep with the failing scenario named.
inline std::vector<scenario_result> run_sweep(const std::vector<scenario_config>& configs,
                                              const std::string& out_root_override = "") {
  detail::require(!configs.empty(), "run_sweep: at least one scenario required");
  std::vector<scenario_result> results;
  results.reserve(configs.size());
  for (const auto& c : configs) {
    try {
      results.push_back(run_scenario(c, out_root_override));
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep aborted at scenario '" + c.name + "': " + e.what());
    }
  }

  namespace fs = std::filesystem;
  const fs::path root = out_root_override.empty() ? fs::path(configs.front().output_dir)
                                                  : fs::path(out_root_override);
  fs::create_directories(root);
  std::string csv =
      "scenario,model,quantization,aoa_azimuth_deg,aoa_elevation_deg,aod_azimuth_deg,"
      "aod_elevation_deg,intended_db,specular_db,mirror_db,gap_db,specular_matched_db\n";
  for (size_t i = 0; i < configs.size(); ++i) {
    const auto& c = configs[i];
    const auto& s = results[i].summary;
    csv += c.name;
    csv += std::string(",") + to_string(c.model) + "," + to_string(c.quantization) + "," +
           detail::format_fixed(c.aoa.azimuth_deg) + "," + detail::format_fixed(c.aoa.elevation_deg) +
           "," + detail::format_fixed(c.aod.azimuth_deg) + "," +
           detail::format_fixed(c.aod.elevation_deg) + "," +
           detail::format_fixed(s.lobes.intended.level_db) + "," +
           detail::format_fixed(s.lobes.specular.level_db) + "," +
           detail::format_fixed(s.lobes.mirror.level_db) + "," +
           detail::format_fixed(s.lobes.gap_structural_minus_intended_db) + "," +
           detail::format_fixed(s.specular_matched_db) + "\n";
  }
  detail::write_or_throw(root / "sweep.csv", csv);
  return results;
}

// Assembled-impedance dump for debugging.
inline nlohmann::ordered_json impedance_dump_json(const scenario_config& config) {
  const scenario_physics phys = build_scenario_physics(config);
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::parse(detail::compact_config_json(config));
  j["z0_ohm"] = phys.imps.z0;
  j["y0"] = {{"re", phys.imps.y0.real()}, {"im", phys.imps.y0.imag()}};
  j["z_rt"] = {{"re", phys.imps.z_rt.real()}, {"im", phys.imps.z_rt.imag()}};
  j["cell_embedding"] = phys.embedding.identity
                            ? nlohmann::ordered_json(nullptr)
                            : nlohmann::ordered_json{
                                  {"alpha", {{"re", phys.embedding.alpha.real()},
                                             {"im", phys.embedding.alpha.imag()}}},
                                  {"beta", {{"re", phys.embedding.beta.real()},
                                            {"im", phys.embedding.beta.imag()}}},
                                  {"gamma", {{"re", phys.embedding.gamma.real()},
                                             {"im", phys.embedding.gamma.imag()}}},
                                  {"port_resistance_ohm", phys.embedding.port_resistance}};
  const auto cvec_json = [](const cvec<double>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
      arr.push_back({{"re", v[i].real()}, {"im", v[i].imag()}});
    return arr;
  };
  j["z_st"] = cvec_json(phys.imps.z_st);
  j["z_rs"] = cvec_json(phys.imps.z_rs);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < phys.imps.z_ss.rows(); ++i)
    rows.push_back(cvec_json(phys.imps.z_ss.row(i).transpose().eval()));
  j["z_ss"] = rows;
  j["warnings"] = phys.warnings;
  return j;
}

}  // namespace riscat

#endif  // RISCAT_RUNNER_HPP
