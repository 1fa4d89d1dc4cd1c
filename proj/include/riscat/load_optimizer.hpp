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
// Closed-form load optimization for the impedance channel under negligible
// cell-to-cell coupling, and the mapping of optimal reactances onto the
// feasible capacitance range of the hardware.

#ifndef RISCAT_LOAD_OPTIMIZER_HPP
#define RISCAT_LOAD_OPTIMIZER_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "riscat/detail/common.hpp"
#include "riscat/impedance.hpp"

namespace riscat {

template <typename T = double>
struct optimizer_coefficients {
  cvec<T> a;               // per-element coupling products
  std::complex<T> b{};     // z_rt - sum_n a_n
  std::vector<T> r;        // per-element |r0 + Re(z_ss(n,n))|
};

namespace detail {

template <typename T>
void require_diagonal(const cmat<T>& z_ss) {
  for (Eigen::Index i = 0; i < z_ss.rows(); ++i)
    for (Eigen::Index j = 0; j < z_ss.cols(); ++j)
      require(i == j || z_ss(i, j) == std::complex<T>{},
              "optimizer requires a diagonal coupling matrix");
}

}  // namespace detail

// a_n = z_st(n) z_rs(n) / (2 |r0 + Re z_ss(n,n)|), b = z_rt - sum a_n.
// Valid only for diagonal z_ss.
template <typename T>
optimizer_coefficients<T> compute_coefficients(const impedance_set<T>& imps, T r0) {
  detail::require_diagonal(imps.z_ss);
  const Eigen::Index n = imps.z_ss.rows();
  detail::require(imps.z_st.size() == n && imps.z_rs.size() == n,
                  "impedance_set: coupling vector dimension mismatch");
  optimizer_coefficients<T> out;
  out.a.resize(n);
  out.r.resize(static_cast<size_t>(n));
  std::complex<T> sum{};
  for (Eigen::Index i = 0; i < n; ++i) {
    const T r = std::abs(r0 + std::real(imps.z_ss(i, i)));
    detail::require(r > T(0), "compute_coefficients: zero series resistance denominator");
    out.r[static_cast<size_t>(i)] = r;
    out.a[i] = imps.z_st[i] * imps.z_rs[i] / (T(2) * r);
    sum += out.a[i];
  }
  out.b = imps.z_rt - sum;
  return out;
}

template <typename T = double>
struct optimal_load_result {
  cvec<T> loads;                 // complex load per element
  std::vector<T> angles;         // realized 2*theta_n, in (-pi, pi]
  std::vector<bool> unbounded;   // element wants an open circuit; load is a
                                 // large-reactance stand-in, meant for
                                 // clipping by the hardware quantizer
};

// SNR-maximizing loads: load_n = 2 r_n / (1 + e^{j 2 theta_n}) - z_ss(n,n)
// with 2 theta_n = angle(b) - angle(a_n) + pi, so every term of the channel
// sum anti-aligns with b and |H| reaches |b| + sum |a_n|. Elements whose
// a_n is parallel to b cannot help and are flagged for the open-circuit
// limit.
template <typename T>
optimal_load_result<T> optimal_loads(const optimizer_coefficients<T>& coeffs, T /*r0*/,
                                     const cvec<T>& z_ss_diag) {
  const Eigen::Index n = coeffs.a.size();
  detail::require(z_ss_diag.size() == n, "optimal_loads: diagonal dimension mismatch");
  detail::require(coeffs.r.size() == static_cast<size_t>(n),
                  "optimal_loads: coefficient resistances missing");
  optimal_load_result<T> out;
  out.loads.resize(n);
  out.angles.resize(static_cast<size_t>(n));
  out.unbounded.assign(static_cast<size_t>(n), false);
  const T angle_b = std::arg(coeffs.b);
  for (Eigen::Index i = 0; i < n; ++i) {
    const T two_theta =
        detail::wrap_pi(angle_b - std::arg(coeffs.a[i]) + detail::pi_v<T>);
    out.angles[static_cast<size_t>(i)] = two_theta;
    const std::complex<T> denom = T(1) + std::polar(T(1), two_theta);
    const T r = coeffs.r[static_cast<size_t>(i)];
    if (std::abs(denom) < T(1e-9)) {
      // open-circuit limit: park the element at a huge reactance
      out.unbounded[static_cast<size_t>(i)] = true;
      out.loads[i] = std::complex<T>(T(2) * r, T(1e12)) - z_ss_diag[i];
      continue;
    }
    out.loads[i] = T(2) * r / denom - z_ss_diag[i];
  }
  return out;
}

// Capacitance realizing a target load reactance, clipped to the feasible
// range. Outside the realizable branch 2 pi f L - x <= 0, the bound whose
// realized reactance is closer to the target wins. Total by construction.
template <typename T>
T reactance_to_capacitance(T x_target, const load_model<T>& model, T f) {
  validate(model);
  detail::require(f > T(0), "reactance_to_capacitance: frequency must be > 0");
  const T omega = T(2) * detail::pi_v<T> * f;
  const T denom = omega * model.l - x_target;
  if (denom > T(0)) {
    const T c = T(1) / (omega * denom);
    return std::min(model.c_max, std::max(model.c_min, c));
  }
  const T x_lo = std::imag(load_impedance_rlc(model.c_min, model, f));
  const T x_hi = std::imag(load_impedance_rlc(model.c_max, model, f));
  return std::abs(x_lo - x_target) <= std::abs(x_hi - x_target) ? model.c_min : model.c_max;
}

}  // namespace riscat

#endif  // RISCAT_LOAD_OPTIMIZER_HPP
