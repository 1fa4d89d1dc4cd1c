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
// Bias-network embedding of a unit cell. A real cell is not a bare diode
// soldered to a wire: the patch and bias structure act as a two-port
// between the diode branch and the radiating element, and it is that
// two-port which turns the diode's tiny capacitance swing into a usable
// state change with balanced reflection magnitude. The embedding here is
// the bilinear (Mobius) map of such a two-port,
//
//   Z_port(Z) = (alpha Z + beta) / (gamma Z + 1),
//
// fitted so that the realizable diode states {C_min, mid, C_max} land on a
// constant-resistance segment at the element port:
//
//   Z_port = R_p + j (X_c0 +/- X_sw),   X_c0 = -Im(z_cell),
//
// i.e. the cell resonates at the band center and the two endpoint states
// draw equal-magnitude currents with a symmetric phase split. R_p and X_sw
// follow from one shape parameter g = R_T / X_sw via
//
//   R_T = |z_cell + Z0| * g^2 / (1 + g^2),   R_T = R_p + Re(z_cell),
//
// which pins the mean current of the two endpoint states to the
// matched-load (Z0) current magnitude exactly, the surrogate counterpart
// of a cell with balanced reflection magnitude across its states.

#ifndef RISCAT_CELL_EMBEDDING_HPP
#define RISCAT_CELL_EMBEDDING_HPP

#include <cmath>
#include <complex>

#include "riscat/detail/common.hpp"
#include "riscat/impedance.hpp"
#include "riscat/load_optimizer.hpp"

namespace riscat {

template <typename T = double>
struct cell_embedding {
  std::complex<T> alpha{T(1), T(0)};
  std::complex<T> beta{};
  std::complex<T> gamma{};
  T port_resistance = T(0);  // R_p of the fitted segment
  bool identity = true;      // no embedding: port load equals the diode branch

  std::complex<T> to_port(std::complex<T> z_branch) const {
    if (identity) return z_branch;
    return (alpha * z_branch + beta) / (gamma * z_branch + T(1));
  }
  std::complex<T> to_branch(std::complex<T> z_port) const {
    if (identity) return z_port;
    return (z_port - beta) / (alpha - gamma * z_port);
  }
};

// Fit the embedding for a cell of self-impedance z_cell, terminated in the
// given diode load model at frequency f, against reference impedance z0.
// g sets the structural-to-steered balance: the endpoint states realize
// phases +/- atan(1/g) around cell resonance.
template <typename T>
cell_embedding<T> design_cell_embedding(std::complex<T> z_cell, const load_model<T>& model, T f,
                                        T z0, T g) {
  validate(model);
  detail::require(f > T(0), "design_cell_embedding: frequency must be > 0");
  detail::require(g > T(0), "design_cell_embedding: shape parameter g must be > 0");

  const T d_ref = std::abs(z_cell + z0);
  const T r_total = d_ref * g * g / (T(1) + g * g);
  const T r_p = r_total - std::real(z_cell);
  detail::require(r_p > T(0),
                  "design_cell_embedding: cell resistance too large for a passive embedding");
  const T x_sw = r_total / g;
  const T x_c0 = -std::imag(z_cell);

  const std::complex<T> s_lo = load_impedance_rlc(model.c_min, model, f);
  const std::complex<T> s_hi = load_impedance_rlc(model.c_max, model, f);
  const std::complex<T> s_mid(model.r0, (std::imag(s_lo) + std::imag(s_hi)) / 2);
  const std::complex<T> src[3] = {s_lo, s_mid, s_hi};
  const std::complex<T> tgt[3] = {{r_p, x_c0 + x_sw}, {r_p, x_c0}, {r_p, x_c0 - x_sw}};

  // three point pairs determine the bilinear map: solve the 3x3 linear
  // system alpha s_k + beta - t_k gamma s_k = t_k
  Eigen::Matrix<std::complex<T>, 3, 3> a;
  Eigen::Vector<std::complex<T>, 3> rhs;
  for (int k = 0; k < 3; ++k) {
    a(k, 0) = src[k];
    a(k, 1) = std::complex<T>(T(1), T(0));
    a(k, 2) = -tgt[k] * src[k];
    rhs(k) = tgt[k];
  }
  const Eigen::Vector<std::complex<T>, 3> sol = a.fullPivLu().solve(rhs);

  cell_embedding<T> emb;
  emb.alpha = sol(0);
  emb.beta = sol(1);
  emb.gamma = sol(2);
  emb.port_resistance = r_p;
  emb.identity = false;

  // the diode band must map to a finite monotone segment: the map's pole
  // has to stay off the source segment
  const std::complex<T> pole = -T(1) / emb.gamma;
  const T band_lo = std::min(std::imag(s_lo), std::imag(s_hi));
  const T band_hi = std::max(std::imag(s_lo), std::imag(s_hi));
  const bool pole_on_band = std::abs(std::real(pole) - model.r0) < T(1e-6) &&
                            std::imag(pole) >= band_lo - T(1e-6) &&
                            std::imag(pole) <= band_hi + T(1e-6);
  if (pole_on_band) throw numeric_error("design_cell_embedding: degenerate fit (pole on band)");
  return emb;
}

}  // namespace riscat

#endif  // RISCAT_CELL_EMBEDDING_HPP
