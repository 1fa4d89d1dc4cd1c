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
// Phase-shift channel model of a reflecting surface: pure line-of-sight
// steering channels, the SNR-optimal continuous phase rule and the 1-bit
// quantizers used by PIN-diode hardware.

#ifndef RISCAT_CONVENTIONAL_HPP
#define RISCAT_CONVENTIONAL_HPP

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include "riscat/detail/common.hpp"
#include "riscat/geometry.hpp"

namespace riscat {

// Line-of-sight channel between one terminal and the surface. `gains`
// carries the sqrt(pathloss)-scaled steering entries.
template <typename T = double>
struct channel_link {
  cvec<T> gains;
  T pathloss = T(1);
};

template <typename T = double>
struct phase_configuration {
  std::vector<T> phases;  // radians, each in [0, 2*pi)
};

template <typename T = double>
struct received_signal_model {
  std::complex<T> transmit_symbol{T(1), T(0)};
  T noise_power = T(0);  // sigma_n^2, linear
};

template <typename T>
void validate(const received_signal_model<T>& m) {
  detail::require(m.noise_power >= T(0), "received_signal_model: noise_power must be >= 0");
}

// Planar array response. Entry (m, n) at index m*n_z + n equals
// exp(j 2 pi delta (m u_x + n u_z)); all entries are unit modulus.
template <typename T>
cvec<T> steering_vector(const array_layout<T>& layout, const plane_wave_direction<T>& dir) {
  validate(layout);
  const auto [ux, uz] = direction_cosines(dir);
  const T step = T(2) * detail::pi_v<T> * layout.delta;
  cvec<T> a(layout.size());
  for (int m = 0; m < layout.n_x; ++m)
    for (int n = 0; n < layout.n_z; ++n)
      a[m * layout.n_z + n] = std::polar(T(1), step * (T(m) * ux + T(n) * uz));
  return a;
}

// g: transmitter-to-surface link (arrival side), h: surface-to-receiver
// link (departure side), both pure steering vectors scaled by the root of
// their pathloss.
template <typename T>
std::pair<channel_link<T>, channel_link<T>> build_channels(const array_layout<T>& layout,
                                                           const plane_wave_direction<T>& aoa,
                                                           const plane_wave_direction<T>& aod,
                                                           T gamma_g, T gamma_h) {
  detail::require(gamma_g > T(0), "build_channels: gamma_g must be > 0");
  detail::require(gamma_h > T(0), "build_channels: gamma_h must be > 0");
  channel_link<T> g{std::sqrt(gamma_g) * steering_vector(layout, aoa), gamma_g};
  channel_link<T> h{std::sqrt(gamma_h) * steering_vector(layout, aod), gamma_h};
  return {std::move(g), std::move(h)};
}

// Noiseless cascaded gain sum_n conj(h_n) exp(j phi_n) g_n.
template <typename T>
std::complex<T> received_gain(const channel_link<T>& h, const channel_link<T>& g,
                              const phase_configuration<T>& config) {
  detail::require(h.gains.size() == g.gains.size() &&
                      static_cast<size_t>(g.gains.size()) == config.phases.size(),
                  "received_gain: dimension mismatch");
  std::complex<T> acc{};
  for (Eigen::Index n = 0; n < g.gains.size(); ++n)
    acc += std::conj(h.gains[n]) * std::polar(T(1), config.phases[n]) * g.gains[n];
  return acc;
}

namespace detail {

// c_n = conj(h_n) g_n, the per-element cascade coefficient. Zero entries
// make the phase rule ill-defined and are rejected.
template <typename T>
cvec<T> cascade_coefficients(const channel_link<T>& g, const channel_link<T>& h) {
  require(g.gains.size() == h.gains.size(), "channel links: dimension mismatch");
  cvec<T> c(g.gains.size());
  for (Eigen::Index n = 0; n < g.gains.size(); ++n) {
    require(std::abs(g.gains[n]) > T(0) && std::abs(h.gains[n]) > T(0),
            "zero channel entry: element phase undefined");
    c[n] = std::conj(h.gains[n]) * g.gains[n];
  }
  return c;
}

}  // namespace detail

// Continuous SNR-optimal phases. Each phase rotates conj(h_n) g_n onto the
// positive real axis, so |received_gain| attains sum_n |g_n||h_n|.
template <typename T>
phase_configuration<T> optimal_phases(const channel_link<T>& g, const channel_link<T>& h) {
  const cvec<T> c = detail::cascade_coefficients(g, h);
  phase_configuration<T> out;
  out.phases.resize(static_cast<size_t>(c.size()));
  for (Eigen::Index n = 0; n < c.size(); ++n)
    out.phases[static_cast<size_t>(n)] = detail::wrap_two_pi(-std::arg(c[n]));
  return out;
}

enum class binary_quantizer {
  nearest,  // snap each continuous optimum to the closer of {0, pi}
  sweep     // exact binary optimum via the half-plane boundary sweep
};

// 1-bit configuration with phases in {0, pi}. `nearest` reproduces the
// closest-feasible-point rule of binary hardware. `sweep` maximizes
// |sum_n s_n c_n| over s_n in {+1,-1} exactly: the optimal sign pattern is
// s_n = sign Re(c_n e^{-j psi}) for some psi, so testing one psi inside
// each arc between consecutive boundary angles of +/- c_n covers every
// candidate pattern.
template <typename T>
phase_configuration<T> quantize_1bit(const channel_link<T>& g, const channel_link<T>& h,
                                     binary_quantizer mode) {
  const cvec<T> c = detail::cascade_coefficients(g, h);
  const auto n_elems = static_cast<size_t>(c.size());
  phase_configuration<T> out;
  out.phases.resize(n_elems);

  if (mode == binary_quantizer::nearest) {
    for (size_t n = 0; n < n_elems; ++n) {
      const T phi = -std::arg(c[static_cast<Eigen::Index>(n)]);
      out.phases[n] = std::cos(phi) >= T(0) ? T(0) : detail::pi_v<T>;
    }
    return out;
  }

  std::vector<T> bounds;
  bounds.reserve(2 * n_elems);
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    const T a = std::arg(c[n]);
    bounds.push_back(detail::wrap_two_pi(a + detail::pi_v<T> / 2));
    bounds.push_back(detail::wrap_two_pi(a - detail::pi_v<T> / 2));
  }
  std::sort(bounds.begin(), bounds.end());

  T best = T(-1);
  std::vector<int> best_signs(n_elems, 1);
  std::vector<int> signs(n_elems);
  for (size_t i = 0; i < bounds.size(); ++i) {
    const T lo = bounds[i];
    const T hi = (i + 1 < bounds.size()) ? bounds[i + 1] : bounds[0] + T(2) * detail::pi_v<T>;
    const T psi = (lo + hi) / T(2);
    std::complex<T> acc{};
    for (Eigen::Index n = 0; n < c.size(); ++n) {
      const int s = std::real(c[n] * std::polar(T(1), -psi)) >= T(0) ? 1 : -1;
      signs[static_cast<size_t>(n)] = s;
      acc += T(s) * c[n];
    }
    if (std::abs(acc) > best) {
      best = std::abs(acc);
      best_signs = signs;
    }
  }
  for (size_t n = 0; n < n_elems; ++n)
    out.phases[n] = best_signs[n] > 0 ? T(0) : detail::pi_v<T>;
  return out;
}

}  // namespace riscat

#endif  // RISCAT_CONVENTIONAL_HPP
