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
// Self and mutual impedances of center-fed thin-wire dipoles via the
// induced-EMF method. All dipoles are z-directed and carry the assumed
// sinusoidal current I(z) = I_m sin(k (h - |z - z_c|)).
//
// The exact field of that current needs only three spherical waves, one
// from each wire end and one from the feed, so the mutual impedance
// between a source dipole p and an observation dipole q reduces to a 1-D
// integral along q:
//
//   Z_qp = j eta / (4 pi sin(k h_p) sin(k h_q)) *
//          Int_{-h_q}^{h_q} [ G(R1) + G(R2) - 2 cos(k h_p) G(R0) ]
//                           sin(k (h_q - |t|)) dt,   G(R) = e^{-jkR} / R,
//
// with R0/R1/R2 the distances from q's axis point to p's center and ends.
// The self term evaluates the same integral on the wire surface (rho = a),
// where the end spikes have width ~a and drive the adaptive subdivision.

#ifndef RISCAT_DIPOLE_HPP
#define RISCAT_DIPOLE_HPP

#include <cmath>
#include <complex>
#include <sstream>

#include "riscat/detail/common.hpp"
#include "riscat/detail/quadrature.hpp"
#include "riscat/geometry.hpp"

namespace riscat {

// Center-fed wire dipole, axis fixed along z.
template <typename T = double>
struct dipole_spec {
  vec3<T> position;  // feed point, meters
  T length = T(0.5);   // tip to tip, meters
  T radius = T(1e-3);  // wire radius, meters
};

template <typename T>
void validate(const dipole_spec<T>& d) {
  detail::require(d.length > T(0), "dipole_spec: length must be > 0");
  detail::require(d.radius > T(0), "dipole_spec: radius must be > 0");
  detail::require(d.radius < d.length / T(10), "dipole_spec: thin-wire requires radius < length/10");
}

template <typename T = double>
struct quadrature_options {
  T abs_tol = T(1e-7);  // ohms on the impedance value
  int max_depth = 40;
};

namespace detail {

template <typename T>
bool same_dipole(const dipole_spec<T>& p, const dipole_spec<T>& q) {
  return p.position.x == q.position.x && p.position.y == q.position.y &&
         p.position.z == q.position.z && p.length == q.length && p.radius == q.radius;
}

}  // namespace detail

// Mutual impedance z_qp referred to the terminal currents; self-impedance
// when p and q coincide. Distinct dipoles whose wire volumes intersect are
// rejected. Throws numeric_error with the achieved tolerance if the
// adaptive quadrature stalls.
template <typename T>
std::complex<T> mutual_impedance(const dipole_spec<T>& p, const dipole_spec<T>& q, T wavelength,
                                 const quadrature_options<T>& opts = {}) {
  validate(p);
  validate(q);
  detail::require(wavelength > T(0), "mutual_impedance: wavelength must be > 0");

  const T k = T(2) * detail::pi_v<T> / wavelength;
  const T hp = p.length / 2, hq = q.length / 2;
  const T sp = std::sin(k * hp), sq = std::sin(k * hq);
  detail::require(std::abs(sp) > T(1e-9) && std::abs(sq) > T(1e-9),
                  "mutual_impedance: length too close to a multiple of the wavelength for the "
                  "sinusoidal current model");

  const bool self = detail::same_dipole(p, q);
  const T dx = q.position.x - p.position.x;
  const T dy = q.position.y - p.position.y;
  T rho = std::sqrt(dx * dx + dy * dy);
  const T dz = q.position.z - p.position.z;
  if (self) {
    rho = p.radius;
  } else {
    // overlapping wire volumes: transverse gap below the radii and
    // intersecting z extents
    const bool z_overlap = std::abs(dz) < hp + hq;
    detail::require(!(rho < p.radius + q.radius && z_overlap),
                    "mutual_impedance: overlapping distinct dipoles");
  }

  const T rho2 = rho * rho;
  const T cos_khp = std::cos(k * hp);
  const auto kern = [&](T t) -> std::complex<T> {
    const T zeta = dz + t;
    const T r0 = std::sqrt(rho2 + zeta * zeta);
    const T r1 = std::sqrt(rho2 + (zeta - hp) * (zeta - hp));
    const T r2 = std::sqrt(rho2 + (zeta + hp) * (zeta + hp));
    const std::complex<T> g1 = std::polar(T(1), -k * r1) / r1;
    const std::complex<T> g2 = std::polar(T(1), -k * r2) / r2;
    const std::complex<T> g0 = std::polar(T(1), -k * r0) / r0;
    return (g1 + g2 - T(2) * cos_khp * g0) * std::sin(k * (hq - std::abs(t)));
  };

  // prefactor maps the integral to ohms; run the tolerance budget in the
  // integral's own units, split at the current kink t = 0
  const T pref_mag = T(constants::free_space_impedance) / (T(4) * detail::pi_v<T> * std::abs(sp * sq));
  const T tol = opts.abs_tol / pref_mag / T(2);
  auto left = detail::adaptive_simpson<T>(kern, -hq, T(0), tol, opts.max_depth);
  auto right = detail::adaptive_simpson<T>(kern, T(0), hq, tol, opts.max_depth);
  if (!left.converged || !right.converged) {
    std::ostringstream msg;
    msg << "mutual_impedance: quadrature did not reach " << opts.abs_tol
        << " ohm, achieved about " << (left.error + right.error) * pref_mag << " ohm";
    throw numeric_error(msg.str());
  }

  const std::complex<T> pref =
      std::complex<T>(T(0), T(1)) * T(constants::free_space_impedance) /
      (T(4) * detail::pi_v<T> * sp * sq);
  return pref * (left.value + right.value);
}

}  // namespace riscat

#endif  // RISCAT_DIPOLE_HPP
