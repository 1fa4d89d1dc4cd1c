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
// Test-only reference computations, kept independent of the library's
// evaluation paths: a fixed fine-grid quadrature of the induced-EMF
// integral, exhaustive binary search, and direct array-factor sums.

#ifndef RISCAT_TESTS_ORACLES_HPP
#define RISCAT_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "riscat/dipole.hpp"
#include "riscat/geometry.hpp"

namespace oracles {

using cd = std::complex<double>;

// Induced-EMF mutual impedance by plain composite Simpson on a fixed fine
// grid (2*n panels, split at the current kink). No adaptivity, no shared
// code with the library quadrature.
inline cd emf_impedance_fine(const riscat::dipole_spec<double>& p,
                             const riscat::dipole_spec<double>& q, double wavelength,
                             int n = 20000) {
  const double pi = 3.14159265358979323846;
  const double eta = 376.730313668;
  const double k = 2 * pi / wavelength;
  const double hp = p.length / 2, hq = q.length / 2;
  const bool self = p.position.x == q.position.x && p.position.y == q.position.y &&
                    p.position.z == q.position.z && p.length == q.length && p.radius == q.radius;
  const double dx = q.position.x - p.position.x;
  const double dy = q.position.y - p.position.y;
  const double rho = self ? p.radius : std::sqrt(dx * dx + dy * dy);
  const double dz = q.position.z - p.position.z;

  const auto kern = [&](double t) {
    const double zeta = dz + t;
    const double r0 = std::sqrt(rho * rho + zeta * zeta);
    const double r1 = std::sqrt(rho * rho + (zeta - hp) * (zeta - hp));
    const double r2 = std::sqrt(rho * rho + (zeta + hp) * (zeta + hp));
    const cd g0 = std::exp(cd(0, -k * r0)) / r0;
    const cd g1 = std::exp(cd(0, -k * r1)) / r1;
    const cd g2 = std::exp(cd(0, -k * r2)) / r2;
    return (g1 + g2 - 2.0 * std::cos(k * hp) * g0) * std::sin(k * (hq - std::abs(t)));
  };
  const auto simpson = [&](double a, double b) {
    const int nn = n % 2 ? n + 1 : n;
    const double h = (b - a) / nn;
    cd s = kern(a) + kern(b);
    for (int i = 1; i < nn; ++i) s += kern(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * (h / 3.0);
  };
  const cd integral = simpson(-hq, 0) + simpson(0, hq);
  const cd pref = cd(0, 1) * eta / (4 * pi * std::sin(k * hp) * std::sin(k * hq));
  return pref * integral;
}

// Best binary pattern by exhaustive enumeration of all 2^N sign choices.
inline double exhaustive_binary_best(const std::vector<cd>& c) {
  const auto n = c.size();
  double best = -1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    cd acc{};
    for (size_t i = 0; i < n; ++i) acc += (mask >> i & 1u) ? -c[i] : c[i];
    best = std::max(best, std::abs(acc));
  }
  return best;
}

// Direct far-field superposition from explicit positions, no Kronecker
// factorization.
inline double array_factor_abs(const std::vector<riscat::vec3<double>>& pos,
                               const std::vector<cd>& currents, double wavelength, double az_deg,
                               double el_deg) {
  const double pi = 3.14159265358979323846;
  const double az = az_deg * pi / 180, el = el_deg * pi / 180;
  const double ux = std::sin(az) * std::cos(el);
  const double uy = std::cos(az) * std::cos(el);
  const double uz = std::sin(el);
  const double k = 2 * pi / wavelength;
  cd acc{};
  for (size_t i = 0; i < pos.size(); ++i) {
    const double phase = k * (pos[i].x * ux + pos[i].y * uy + pos[i].z * uz);
    acc += currents[i] * std::exp(cd(0, phase));
  }
  return std::abs(acc);
}

}  // namespace oracles

#endif  // RISCAT_TESTS_ORACLES_HPP
