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

#ifndef RISCAT_GEOMETRY_HPP
#define RISCAT_GEOMETRY_HPP

#include <cmath>
#include <vector>

#include "riscat/detail/common.hpp"

namespace riscat {

template <typename T = double>
struct vec3 {
  T x{}, y{}, z{};

  friend vec3 operator+(const vec3& a, const vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend vec3 operator-(const vec3& a, const vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend vec3 operator*(T s, const vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  T dot(const vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  T norm() const { return std::sqrt(dot(*this)); }
};

// Planar grid in the x-z plane with outward normal +y. Element spacing is
// given as the spacing-to-wavelength ratio delta = d / lambda.
template <typename T = double>
struct array_layout {
  int n_x = 1;        // elements along x
  int n_z = 1;        // elements along z
  T delta = T(0.5);   // d / lambda
  T wavelength = T(1);  // meters

  int size() const { return n_x * n_z; }
  T spacing() const { return delta * wavelength; }
};

template <typename T>
void validate(const array_layout<T>& a) {
  detail::require(a.n_x >= 1 && a.n_z >= 1, "array_layout: element counts must be >= 1");
  detail::require(a.delta > T(0), "array_layout: delta must be > 0");
  detail::require(a.wavelength > T(0), "array_layout: wavelength must be > 0");
}

// Azimuth/elevation pair measured from the surface normal; (0, 0) is
// broadside. Directions are restricted to the +y half-space.
template <typename T = double>
struct plane_wave_direction {
  T azimuth_deg{};
  T elevation_deg{};
};

template <typename T>
void validate(const plane_wave_direction<T>& d) {
  detail::require(d.azimuth_deg >= T(-90) && d.azimuth_deg <= T(90),
                  "plane_wave_direction: azimuth outside [-90, 90] deg");
  detail::require(d.elevation_deg >= T(-90) && d.elevation_deg <= T(90),
                  "plane_wave_direction: elevation outside [-90, 90] deg");
}

template <typename T>
struct direction_cosine_pair {
  T u_x;
  T u_z;
};

// u_x = sin(az) cos(el), u_z = sin(el); u_x^2 + u_z^2 <= 1 for valid input.
template <typename T>
direction_cosine_pair<T> direction_cosines(const plane_wave_direction<T>& dir) {
  validate(dir);
  const T az = detail::deg2rad(dir.azimuth_deg);
  const T el = detail::deg2rad(dir.elevation_deg);
  return {std::sin(az) * std::cos(el), std::sin(el)};
}

// Unit vector pointing away from the surface into the +y half-space.
template <typename T>
vec3<T> unit_direction(const plane_wave_direction<T>& dir) {
  const auto [ux, uz] = direction_cosines(dir);
  const T uy2 = std::max(T(0), T(1) - ux * ux - uz * uz);
  return {ux, std::sqrt(uy2), uz};
}

// Mirror reflection of an incident direction about the surface normal.
template <typename T>
plane_wave_direction<T> specular_direction(const plane_wave_direction<T>& incident) {
  return {-incident.azimuth_deg, -incident.elevation_deg};
}

// Element positions at (m*d, 0, n*d) in x-major order: index = m*n_z + n.
// This ordering matches the Kronecker structure of the planar steering
// vector, so position index and steering index coincide.
template <typename T>
std::vector<vec3<T>> element_positions(const array_layout<T>& layout) {
  validate(layout);
  const T d = layout.spacing();
  std::vector<vec3<T>> pos;
  pos.reserve(static_cast<size_t>(layout.size()));
  for (int m = 0; m < layout.n_x; ++m)
    for (int n = 0; n < layout.n_z; ++n)
      pos.push_back({T(m) * d, T(0), T(n) * d});
  return pos;
}

}  // namespace riscat

#endif  // RISCAT_GEOMETRY_HPP
