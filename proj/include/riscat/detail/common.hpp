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

#ifndef RISCAT_DETAIL_COMMON_HPP
#define RISCAT_DETAIL_COMMON_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace riscat {

template <typename T>
using cvec = Eigen::Vector<std::complex<T>, Eigen::Dynamic>;
template <typename T>
using cmat = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

namespace constants {
inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double free_space_impedance = 376.730313668;  // ohm
}  // namespace constants

// Numeric failure with context (singular solve, stalled quadrature, ...).
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
inline constexpr T pi_v = std::numbers::pi_v<T>;

template <typename T>
T deg2rad(T d) { return d * pi_v<T> / T(180); }

template <typename T>
T rad2deg(T r) { return r * T(180) / pi_v<T>; }

// wrap into [0, 2*pi)
template <typename T>
T wrap_two_pi(T a) {
  const T two_pi = T(2) * pi_v<T>;
  a = std::fmod(a, two_pi);
  if (a < T(0)) a += two_pi;
  if (a >= two_pi) a = T(0);
  return a;
}

// wrap into (-pi, pi]
template <typename T>
T wrap_pi(T a) {
  a = wrap_two_pi(a);
  if (a > pi_v<T>) a -= T(2) * pi_v<T>;
  return a;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace detail
}  // namespace riscat

#endif  // RISCAT_DETAIL_COMMON_HPP
