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
// Impedance description of the transmitter / surface / receiver scenario
// and the end-to-end channel it induces. The direct terminal-to-terminal
// coupling is zero throughout (blocked direct link).

#ifndef RISCAT_IMPEDANCE_HPP
#define RISCAT_IMPEDANCE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "riscat/detail/common.hpp"
#include "riscat/dipole.hpp"
#include "riscat/geometry.hpp"

namespace riscat {

// Self/mutual impedances of the scenario. z_ss couples the surface cells
// among themselves, z_st couples the transmitter into each cell, z_rs each
// cell into the receiver. z_rt stays 0 (blocked direct link).
template <typename T = double>
struct impedance_set {
  cmat<T> z_ss;
  cvec<T> z_st;
  cvec<T> z_rs;
  std::complex<T> z_rt{};
  T z0 = T(50);              // reference impedance, ohms
  std::complex<T> y0{T(1), T(0)};  // lumped terminal constant
};

enum class coupling_mode { full, diagonal };

// Series RLC load of one cell: R0 + j(2 pi f L - 1 / (2 pi f C)).
template <typename T = double>
struct load_model {
  T r0 = T(0);     // ohms
  T l = T(0);      // henries
  T c_min = T(0);  // farads
  T c_max = T(0);  // farads
};

template <typename T>
void validate(const load_model<T>& m) {
  detail::require(m.r0 >= T(0), "load_model: r0 must be >= 0");
  detail::require(m.l >= T(0), "load_model: l must be >= 0");
  detail::require(m.c_min > T(0) && m.c_min < m.c_max,
                  "load_model: capacitance range requires 0 < c_min < c_max");
}

template <typename T>
std::complex<T> load_impedance_rlc(T c, const load_model<T>& model, T f) {
  detail::require(c > T(0), "load_impedance_rlc: capacitance must be > 0");
  detail::require(f > T(0), "load_impedance_rlc: frequency must be > 0");
  const T omega = T(2) * detail::pi_v<T> * f;
  return {model.r0, omega * model.l - T(1) / (omega * c)};
}

namespace detail {

// Mutual impedances on a regular grid depend only on the displacement
// (|dx|, |dz|) between identical cells; cache on a quantized key so the
// N^2 assembly costs only O(unique displacements) quadratures.
template <typename T>
class displacement_cache {
 public:
  explicit displacement_cache(T scale) : scale_(scale) {}

  std::complex<T>* find(T rho, T dz) {
    auto it = map_.find(key(rho, dz));
    return it == map_.end() ? nullptr : &it->second;
  }
  void store(T rho, T dz, std::complex<T> v) { map_[key(rho, dz)] = v; }

 private:
  std::pair<std::int64_t, std::int64_t> key(T rho, T dz) const {
    const T q = scale_ * T(1e-9);
    return {static_cast<std::int64_t>(std::llround(static_cast<double>(rho / q))),
            static_cast<std::int64_t>(std::llround(static_cast<double>(std::abs(dz) / q)))};
  }
  T scale_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::complex<T>> map_;
};

}  // namespace detail

// Coupling vector between one terminal dipole and every cell of the grid.
template <typename T>
cvec<T> coupling_vector(const std::vector<vec3<T>>& cells, const dipole_spec<T>& cell_template,
                        const dipole_spec<T>& terminal, T wavelength,
                        const quadrature_options<T>& opts = {}) {
  cvec<T> v(static_cast<Eigen::Index>(cells.size()));
  dipole_spec<T> cell = cell_template;
  for (size_t n = 0; n < cells.size(); ++n) {
    cell.position = cells[n];
    v[static_cast<Eigen::Index>(n)] = mutual_impedance(terminal, cell, wavelength, opts);
  }
  return v;
}

// Assemble the full impedance description of a scenario. `full` fills all
// N^2 cell couplings, `diagonal` keeps only the self terms. Appends a
// warning (when a sink is given) if a terminal sits inside the Fraunhofer
// distance 2 D^2 / lambda of the aperture.
template <typename T>
impedance_set<T> assemble_impedance_set(const array_layout<T>& layout, const dipole_spec<T>& tx,
                                        const dipole_spec<T>& rx,
                                        const dipole_spec<T>& cell_template, coupling_mode coupling,
                                        const quadrature_options<T>& opts = {},
                                        std::vector<std::string>* warnings = nullptr) {
  validate(tx);
  validate(rx);
  validate(cell_template);
  const auto cells = element_positions(layout);
  const auto n = static_cast<Eigen::Index>(cells.size());
  const T lambda = layout.wavelength;

  if (warnings) {
    const T dx = T(layout.n_x - 1) * layout.spacing();
    const T dz = T(layout.n_z - 1) * layout.spacing();
    const T aperture = std::sqrt(dx * dx + dz * dz);
    const T fraunhofer = T(2) * aperture * aperture / lambda;
    const vec3<T> center{dx / 2, T(0), dz / 2};
    for (const auto& [name, term] : {std::pair{"tx", &tx}, std::pair{"rx", &rx}}) {
      const T dist = (term->position - center).norm();
      if (dist < fraunhofer) {
        std::ostringstream msg;
        msg << name << " at " << dist << " m is inside the far-field distance " << fraunhofer
            << " m of the aperture";
        warnings->push_back(msg.str());
      }
    }
  }

  impedance_set<T> set;
  set.z_ss = cmat<T>::Zero(n, n);
  dipole_spec<T> ci = cell_template, cj = cell_template;
  detail::displacement_cache<T> cache(lambda);
  for (Eigen::Index i = 0; i < n; ++i) {
    ci.position = cells[static_cast<size_t>(i)];
    const Eigen::Index j_end = coupling == coupling_mode::full ? n : i + 1;
    for (Eigen::Index j = i; j < j_end; ++j) {
      cj.position = cells[static_cast<size_t>(j)];
      const T dx = cj.position.x - ci.position.x;
      const T dzp = cj.position.z - ci.position.z;
      const T rho = i == j ? cell_template.radius : std::abs(dx);
      std::complex<T> z;
      if (auto* hit = cache.find(rho, dzp)) {
        z = *hit;
      } else {
        z = mutual_impedance(ci, cj, lambda, opts);
        cache.store(rho, dzp, z);
      }
      set.z_ss(i, j) = z;
      set.z_ss(j, i) = z;
    }
  }

  set.z_st = coupling_vector(cells, cell_template, tx, lambda, opts);
  set.z_rs = coupling_vector(cells, cell_template, rx, lambda, opts);
  set.z_rt = std::complex<T>{};  // blocked direct link
  return set;
}

namespace detail {

template <typename T>
Eigen::PartialPivLU<cmat<T>> factor_loaded_system(const impedance_set<T>& imps,
                                                  const cvec<T>& loads) {
  require(imps.z_ss.rows() == imps.z_ss.cols(), "impedance_set: z_ss must be square");
  require(loads.size() == imps.z_ss.rows(), "loads: dimension mismatch");
  cmat<T> a = imps.z_ss;
  a.diagonal() += loads;
  Eigen::PartialPivLU<cmat<T>> lu(a);
  const T rc = lu.rcond();
  if (!(rc > T(1e-14))) {
    std::ostringstream msg;
    msg << "loaded system is numerically singular (reciprocal condition estimate " << rc << ")";
    throw numeric_error(msg.str());
  }
  return lu;
}

}  // namespace detail

// End-to-end channel y0 (z_rt - z_rs (z_ss + diag(loads))^{-1} z_st),
// evaluated by an LU solve with a condition check.
template <typename T>
std::complex<T> end_to_end_channel(const impedance_set<T>& imps, const cvec<T>& loads) {
  const auto lu = detail::factor_loaded_system(imps, loads);
  const cvec<T> x = lu.solve(imps.z_st);
  const std::complex<T> cascade = (imps.z_rs.transpose() * x)(0);
  return imps.y0 * (imps.z_rt - cascade);
}

// Residual channel with every cell terminated in the reference impedance:
// -y0 z_rs (z_ss + z0 I)^{-1} z_st. This is the structural part of the
// scattering, present even though matched loads do not re-radiate.
template <typename T>
std::complex<T> structural_scattering_channel(const impedance_set<T>& imps) {
  impedance_set<T> blocked = imps;
  blocked.z_rt = std::complex<T>{};
  const cvec<T> matched = cvec<T>::Constant(imps.z_ss.rows(), std::complex<T>(imps.z0, T(0)));
  return end_to_end_channel(blocked, matched);
}

}  // namespace riscat

#endif  // RISCAT_IMPEDANCE_HPP
