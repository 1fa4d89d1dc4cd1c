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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "riscat/conventional.hpp"

using namespace riscat;
using cd = std::complex<double>;
static const double PI = 3.14159265358979323846;

namespace {

channel_link<double> random_link(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> mag(0.1, 2.0), ph(0.0, 2 * PI);
  channel_link<double> link;
  link.gains.resize(n);
  for (int i = 0; i < n; ++i) link.gains[i] = std::polar(mag(rng), ph(rng));
  return link;
}

double bound(const channel_link<double>& g, const channel_link<double>& h) {
  double s = 0;
  for (Eigen::Index i = 0; i < g.gains.size(); ++i)
    s += std::abs(g.gains[i]) * std::abs(h.gains[i]);
  return s;
}

}  // namespace

TEST_CASE("broadside steering vector is all ones") {
  array_layout<double> a{3, 4, 0.5, 1.0};
  const auto v = steering_vector(a, plane_wave_direction<double>{0, 0});
  REQUIRE(v.size() == 12);
  for (Eigen::Index i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - cd(1, 0)) < 1e-14);
}

TEST_CASE("half-wavelength pair at endfire alternates sign") {
  array_layout<double> a{2, 1, 0.5, 1.0};
  const auto v = steering_vector(a, plane_wave_direction<double>{90, 0});
  CHECK(std::abs(v[0] - cd(1, 0)) < 1e-12);
  CHECK(std::abs(v[1] - cd(-1, 0)) < 1e-12);
}

TEST_CASE("steering vector equals explicit position phase ramps") {
  array_layout<double> a{5, 3, 0.37, 0.011};
  const auto pos = element_positions(a);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ang(-89.0, 89.0);
  for (int trial = 0; trial < 20; ++trial) {
    const plane_wave_direction<double> dir{ang(rng), ang(rng)};
    const auto v = steering_vector(a, dir);
    const auto u = unit_direction(dir);
    const double k = 2 * PI / a.wavelength;
    for (size_t i = 0; i < pos.size(); ++i) {
      const cd expect = std::exp(cd(0, k * pos[i].dot(u)));
      CHECK(std::abs(v[static_cast<Eigen::Index>(i)] - expect) < 1e-12);
    }
  }
}

TEST_CASE("channels are scaled steering vectors") {
  array_layout<double> a{4, 4, 0.5, 1.0};
  SECTION("unit pathloss at broadside gives all ones") {
    const auto [g, h] = build_channels(a, plane_wave_direction<double>{0, 0},
                                       plane_wave_direction<double>{0, 0}, 1.0, 1.0);
    for (Eigen::Index i = 0; i < g.gains.size(); ++i) {
      CHECK(std::abs(g.gains[i] - cd(1, 0)) < 1e-14);
      CHECK(std::abs(h.gains[i] - cd(1, 0)) < 1e-14);
    }
  }
  SECTION("pathloss scales by its square root") {
    const auto [g, h] = build_channels(a, plane_wave_direction<double>{10, -20},
                                       plane_wave_direction<double>{30, 0}, 4.0, 9.0);
    for (Eigen::Index i = 0; i < g.gains.size(); ++i) {
      CHECK(std::abs(g.gains[i]) == Catch::Approx(2.0));
      CHECK(std::abs(h.gains[i]) == Catch::Approx(3.0));
    }
  }
  SECTION("phase ramps follow the direction cosines") {
    const plane_wave_direction<double> aoa{-30, -60}, aod{45, 0};
    const auto [g, h] = build_channels(a, aoa, aod, 1.0, 1.0);
    const auto ca = direction_cosines(aoa);
    const auto cb = direction_cosines(aod);
    // neighbor along z: index 1, neighbor along x: index n_z
    CHECK(std::arg(g.gains[1] / g.gains[0]) == Catch::Approx(2 * PI * 0.5 * ca.u_z));
    CHECK(std::arg(h.gains[4] / h.gains[0]) == Catch::Approx(2 * PI * 0.5 * cb.u_x));
  }
  SECTION("non-positive pathloss is rejected") {
    CHECK_THROWS_AS(build_channels(a, plane_wave_direction<double>{0, 0},
                                   plane_wave_direction<double>{0, 0}, 0.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("received gain reduces to the scalar product") {
  channel_link<double> g, h;
  g.gains.resize(1);
  h.gains.resize(1);
  g.gains[0] = cd(1, 0);
  h.gains[0] = cd(1, 0);
  CHECK(std::abs(received_gain(h, g, phase_configuration<double>{{0.0}}) - cd(1, 0)) < 1e-15);
}

TEST_CASE("received gain matches an independent summation") {
  std::mt19937 rng(11);
  const auto g = random_link(rng, 8);
  const auto h = random_link(rng, 8);
  std::uniform_real_distribution<double> ph(0.0, 2 * PI);
  phase_configuration<double> cfg;
  for (int i = 0; i < 8; ++i) cfg.phases.push_back(ph(rng));
  cd direct{};
  for (int i = 0; i < 8; ++i)
    direct += std::conj(h.gains[i]) * std::exp(cd(0, cfg.phases[i])) * g.gains[i];
  CHECK(std::abs(received_gain(h, g, cfg) - direct) < 1e-13);
}

TEST_CASE("dimension mismatch is rejected") {
  std::mt19937 rng(12);
  const auto g = random_link(rng, 4);
  const auto h = random_link(rng, 5);
  CHECK_THROWS_AS(received_gain(h, g, phase_configuration<double>{{0, 0, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("optimal phases attain the coherent upper bound") {
  std::mt19937 rng(13);
  for (int n : {1, 2, 5, 16, 64}) {
    const auto g = random_link(rng, n);
    const auto h = random_link(rng, n);
    const auto cfg = optimal_phases(g, h);
    const double achieved = std::abs(received_gain(h, g, cfg));
    CHECK(achieved == Catch::Approx(bound(g, h)).epsilon(1e-12));
  }
}

TEST_CASE("single-element optimal phase is the link phase difference") {
  // the aligned-gain invariant |gain| = |g||h| pins the sign: the phase
  // rotates conj(h) g onto the real axis
  channel_link<double> g, h;
  g.gains.resize(1);
  h.gains.resize(1);
  g.gains[0] = std::polar(1.0, PI / 3);
  h.gains[0] = std::polar(1.0, PI / 6);
  const auto cfg = optimal_phases(g, h);
  CHECK(cfg.phases[0] == Catch::Approx(2 * PI - PI / 6));
  CHECK(std::abs(received_gain(h, g, cfg)) == Catch::Approx(1.0));
}

TEST_CASE("identical links need no phase correction") {
  std::mt19937 rng(14);
  const auto g = random_link(rng, 6);
  const auto cfg = optimal_phases(g, g);
  for (double p : cfg.phases) CHECK(std::min(p, 2 * PI - p) < 1e-12);
}

TEST_CASE("optimal phases dominate random draws") {
  std::mt19937 rng(15);
  const auto g = random_link(rng, 6);
  const auto h = random_link(rng, 6);
  const double best = std::abs(received_gain(h, g, optimal_phases(g, h)));
  std::uniform_real_distribution<double> ph(0.0, 2 * PI);
  phase_configuration<double> cfg;
  cfg.phases.resize(6);
  for (int i = 0; i < 100000; ++i) {
    for (auto& p : cfg.phases) p = ph(rng);
    CHECK(std::abs(received_gain(h, g, cfg)) <= best + 1e-9);
  }
}

TEST_CASE("global rotation of g shifts phases without changing the gain") {
  std::mt19937 rng(16);
  const auto g = random_link(rng, 8);
  const auto h = random_link(rng, 8);
  const double alpha = 1.234;
  channel_link<double> g_rot = g;
  for (Eigen::Index i = 0; i < g_rot.gains.size(); ++i)
    g_rot.gains[i] *= std::polar(1.0, alpha);
  const auto base = optimal_phases(g, h);
  const auto rot = optimal_phases(g_rot, h);
  for (size_t i = 0; i < base.phases.size(); ++i) {
    const double diff = std::remainder(rot.phases[i] - base.phases[i] + alpha, 2 * PI);
    CHECK(std::abs(diff) < 1e-12);
  }
  CHECK(std::abs(received_gain(h, g, base)) ==
        Catch::Approx(std::abs(received_gain(h, g_rot, rot))));
}

TEST_CASE("zero channel entries are rejected") {
  channel_link<double> g, h;
  g.gains = cvec<double>::Zero(2);
  h.gains = cvec<double>::Ones(2);
  g.gains[0] = cd(1, 0);
  CHECK_THROWS_AS(optimal_phases(g, h), std::invalid_argument);
  CHECK_THROWS_AS(quantize_1bit(g, h, binary_quantizer::nearest), std::invalid_argument);
}

TEST_CASE("nearest quantizer snaps to the closer binary point") {
  channel_link<double> g, h;
  SECTION("all-positive cascade keeps every state at zero") {
    g.gains = cvec<double>::Ones(5);
    h.gains = cvec<double>::Ones(5);
    const auto cfg = quantize_1bit(g, h, binary_quantizer::nearest);
    for (double p : cfg.phases) CHECK(p == 0.0);
  }
  SECTION("a cascade at 0.6 pi snaps to pi") {
    g.gains.resize(1);
    h.gains.resize(1);
    g.gains[0] = std::polar(1.0, 0.6 * PI);
    h.gains[0] = cd(1, 0);
    const auto cfg = quantize_1bit(g, h, binary_quantizer::nearest);
    CHECK(cfg.phases[0] == PI);
  }
}

TEST_CASE("sweep quantizer matches exhaustive search and dominates nearest") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> size(1, 10);
  std::uniform_real_distribution<double> mag(0.1, 2.0), ph(0.0, 2 * PI);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = size(rng);
    channel_link<double> g, h;
    g.gains.resize(n);
    h.gains.resize(n);
    std::vector<cd> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      g.gains[i] = std::polar(mag(rng), ph(rng));
      h.gains[i] = std::polar(mag(rng), ph(rng));
      c[static_cast<size_t>(i)] = std::conj(h.gains[i]) * g.gains[i];
    }
    const auto sweep = quantize_1bit(g, h, binary_quantizer::sweep);
    const auto nearest = quantize_1bit(g, h, binary_quantizer::nearest);
    const double v_sweep = std::abs(received_gain(h, g, sweep));
    const double v_nearest = std::abs(received_gain(h, g, nearest));
    const double v_exhaustive = oracles::exhaustive_binary_best(c);
    CHECK(v_sweep == Catch::Approx(v_exhaustive).epsilon(1e-12));
    CHECK(v_sweep >= v_nearest - 1e-12);
    for (double p : sweep.phases) CHECK((p == 0.0 || p == PI));
  }
}
