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

#ifndef RISCAT_DETAIL_QUADRATURE_HPP
#define RISCAT_DETAIL_QUADRATURE_HPP

#include <cmath>
#include <complex>

#include "riscat/detail/common.hpp"

namespace riscat {
namespace detail {

template <typename T>
struct quad_result {
  std::complex<T> value{};
  T error = T(0);  // accumulated error estimate
  bool converged = true;
};

// Adaptive Simpson for complex-valued integrands. Error control by the
// standard Richardson estimate |S2 - S1| / 15 with a length-proportional
// tolerance budget per subinterval.
template <typename T, typename F>
void adaptive_simpson_rec(const F& f, T a, T b, std::complex<T> fa, std::complex<T> fm,
                          std::complex<T> fb, std::complex<T> whole, T tol, int depth,
                          quad_result<T>& out) {
  const T m = (a + b) / 2;
  const T lm = (a + m) / 2, rm = (m + b) / 2;
  const std::complex<T> flm = f(lm), frm = f(rm);
  const std::complex<T> left = (m - a) / T(6) * (fa + T(4) * flm + fm);
  const std::complex<T> right = (b - m) / T(6) * (fm + T(4) * frm + fb);
  const std::complex<T> delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= T(15) * tol) {
    out.value += left + right + delta / T(15);
    out.error += std::abs(delta) / T(15);
    if (depth <= 0 && std::abs(delta) > T(15) * tol) out.converged = false;
    return;
  }
  adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1, out);
  adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1, out);
}

template <typename T, typename F>
quad_result<T> adaptive_simpson(const F& f, T a, T b, T abs_tol, int max_depth = 40) {
  quad_result<T> out;
  if (a == b) return out;
  const std::complex<T> fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const std::complex<T> whole = (b - a) / T(6) * (fa + T(4) * fm + fb);
  adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, out);
  return out;
}

}  // namespace detail
}  // namespace riscat

#endif  // RISCAT_DETAIL_QUADRATURE_HPP
