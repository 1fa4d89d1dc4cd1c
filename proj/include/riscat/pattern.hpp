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
// Far-field re-radiation of the loaded surface: induced cell currents from
// the loaded linear system, their angular superposition over an
// (azimuth, elevation) grid, and lobe extraction.

#ifndef RISCAT_PATTERN_HPP
#define RISCAT_PATTERN_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "riscat/detail/common.hpp"
#include "riscat/geometry.hpp"
#include "riscat/impedance.hpp"

namespace riscat {

template <typename T = double>
struct grid_spec {
  T az_min_deg = T(-90);
  T az_max_deg = T(90);
  T az_step_deg = T(1);
  T el_min_deg = T(-90);
  T el_max_deg = T(90);
  T el_step_deg = T(1);

  int n_az() const {
    return 1 + static_cast<int>(std::llround(static_cast<double>((az_max_deg - az_min_deg) / az_step_deg)));
  }
  int n_el() const {
    return 1 + static_cast<int>(std::llround(static_cast<double>((el_max_deg - el_min_deg) / el_step_deg)));
  }
  T az(int i) const { return az_min_deg + T(i) * az_step_deg; }
  T el(int i) const { return el_min_deg + T(i) * el_step_deg; }
};

template <typename T>
void validate(const grid_spec<T>& g) {
  detail::require(g.az_step_deg > T(0) && g.el_step_deg > T(0), "grid_spec: steps must be > 0");
  detail::require(g.az_max_deg > g.az_min_deg && g.el_max_deg > g.el_min_deg,
                  "grid_spec: empty angular range");
  const auto divides = [](T range, T step) {
    const T n = range / step;
    return std::abs(n - std::round(n)) < T(1e-9);
  };
  detail::require(divides(g.az_max_deg - g.az_min_deg, g.az_step_deg),
                  "grid_spec: azimuth step must divide the azimuth range");
  detail::require(divides(g.el_max_deg - g.el_min_deg, g.el_step_deg),
                  "grid_spec: elevation step must divide the elevation range");
}

// Scattered power over the angular grid, in dB relative to reference_db.
// Stored elevation-major: value(i_el, i_az).
template <typename T = double>
struct pattern_grid {
  grid_spec<T> spec;
  std::vector<T> values;
  T reference_db = T(0);  // absolute level subtracted from every entry

  T value(int i_el, int i_az) const {
    return values[static_cast<size_t>(i_el) * static_cast<size_t>(spec.n_az()) +
                  static_cast<size_t>(i_az)];
  }
  T& value(int i_el, int i_az) {
    return values[static_cast<size_t>(i_el) * static_cast<size_t>(spec.n_az()) +
                  static_cast<size_t>(i_az)];
  }
};

template <typename T = double>
struct lobe {
  plane_wave_direction<T> direction;
  T level_db = T(0);
};

template <typename T = double>
struct lobe_report {
  lobe<T> intended;
  lobe<T> specular;
  lobe<T> mirror;
  bool mirror_present = false;
  T gap_structural_minus_intended_db = T(0);
};

// Cell currents under unit transmit excitation:
// i = -(z_ss + diag(loads))^{-1} z_st.
template <typename T>
cvec<T> induced_currents(const impedance_set<T>& imps, const cvec<T>& loads) {
  const auto lu = detail::factor_loaded_system(imps, loads);
  return (-lu.solve(imps.z_st)).eval();
}

// Coherent superposition of the cell currents toward every grid direction:
// value(az, el) = 20 log10 |sum_n i_n exp(j k p_n . u(az, el))| - reference.
// The x/z separability of the grid keeps the evaluation at
// O(n_el (N + n_az n_x)).
template <typename T>
pattern_grid<T> scattered_pattern(const cvec<T>& currents, const array_layout<T>& layout,
                                  const grid_spec<T>& grid, T reference_db = T(0)) {
  validate(layout);
  validate(grid);
  detail::require(currents.size() == layout.size(), "scattered_pattern: current vector mismatch");

  pattern_grid<T> out;
  out.spec = grid;
  out.reference_db = reference_db;
  out.values.resize(static_cast<size_t>(grid.n_az()) * static_cast<size_t>(grid.n_el()));

  const T step = T(2) * detail::pi_v<T> * layout.delta;
  const T floor_amp = T(1e-150);
  cvec<T> col(layout.n_x);
  for (int ie = 0; ie < grid.n_el(); ++ie) {
    const T el = detail::deg2rad(grid.el(ie));
    const T uz = std::sin(el);
    for (int m = 0; m < layout.n_x; ++m) {
      std::complex<T> acc{};
      for (int n = 0; n < layout.n_z; ++n)
        acc += currents[m * layout.n_z + n] * std::polar(T(1), step * T(n) * uz);
      col[m] = acc;
    }
    const T cos_el = std::cos(el);
    for (int ia = 0; ia < grid.n_az(); ++ia) {
      const T ux = std::sin(detail::deg2rad(grid.az(ia))) * cos_el;
      std::complex<T> acc{};
      for (int m = 0; m < layout.n_x; ++m) acc += col[m] * std::polar(T(1), step * T(m) * ux);
      out.value(ie, ia) = T(20) * std::log10(std::max(std::abs(acc), floor_amp)) - reference_db;
    }
  }
  return out;
}

// Upper bound on any grid value from the triangle inequality.
template <typename T>
T pattern_peak_bound_db(const cvec<T>& currents, T reference_db = T(0)) {
  T sum{};
  for (Eigen::Index n = 0; n < currents.size(); ++n) sum += std::abs(currents[n]);
  return T(20) * std::log10(std::max(sum, T(1e-150))) - reference_db;
}

namespace detail {

template <typename T>
lobe<T> window_maximum(const pattern_grid<T>& grid, const plane_wave_direction<T>& center,
                       T window_deg) {
  const auto& s = grid.spec;
  require(center.azimuth_deg - window_deg >= s.az_min_deg - T(1e-9) &&
              center.azimuth_deg + window_deg <= s.az_max_deg + T(1e-9) &&
              center.elevation_deg - window_deg >= s.el_min_deg - T(1e-9) &&
              center.elevation_deg + window_deg <= s.el_max_deg + T(1e-9),
          "detect_lobes: search window outside the grid");
  lobe<T> best;
  best.level_db = -std::numeric_limits<T>::infinity();
  for (int ie = 0; ie < s.n_el(); ++ie) {
    if (std::abs(s.el(ie) - center.elevation_deg) > window_deg + T(1e-9)) continue;
    for (int ia = 0; ia < s.n_az(); ++ia) {
      if (std::abs(s.az(ia) - center.azimuth_deg) > window_deg + T(1e-9)) continue;
      if (grid.value(ie, ia) > best.level_db) {
        best.level_db = grid.value(ie, ia);
        best.direction = {s.az(ia), s.el(ie)};
      }
    }
  }
  return best;
}

}  // namespace detail

// Window maxima around the expected lobe directions. The mirror lobe is
// flagged present when it comes within `mirror_within_db` of the intended
// one.
template <typename T>
lobe_report<T> detect_lobes(const pattern_grid<T>& grid, const plane_wave_direction<T>& intended,
                            const plane_wave_direction<T>& specular,
                            const plane_wave_direction<T>& mirror, T window_deg = T(5),
                            T mirror_within_db = T(3)) {
  lobe_report<T> report;
  report.intended = detail::window_maximum(grid, intended, window_deg);
  report.specular = detail::window_maximum(grid, specular, window_deg);
  report.mirror = detail::window_maximum(grid, mirror, window_deg);
  report.mirror_present = report.mirror.level_db >= report.intended.level_db - mirror_within_db;
  report.gap_structural_minus_intended_db = report.specular.level_db - report.intended.level_db;
  return report;
}

// Location of the global grid maximum.
template <typename T>
lobe<T> grid_peak(const pattern_grid<T>& grid) {
  lobe<T> best;
  best.level_db = -std::numeric_limits<T>::infinity();
  const auto& s = grid.spec;
  for (int ie = 0; ie < s.n_el(); ++ie)
    for (int ia = 0; ia < s.n_az(); ++ia)
      if (grid.value(ie, ia) > best.level_db) {
        best.level_db = grid.value(ie, ia);
        best.direction = {s.az(ia), s.el(ie)};
      }
  return best;
}

}  // namespace riscat

#endif  // RISCAT_PATTERN_HPP
