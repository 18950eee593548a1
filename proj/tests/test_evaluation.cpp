// SPDX-License-Identifier: Apache-2.0
//
// broadbeam: power-efficient broad-beam weight design for dual-polarized
// antenna arrays
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "broadbeam/baselines.hpp"
#include "broadbeam/evaluation.hpp"
#include "oracles.hpp"

using namespace broadbeam;

TEST_CASE("user drops are reproducible and sector-shaped") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 1;
  cfg.rng_seed = 99;
  const auto one = drop_ues(cfg);
  const auto two = drop_ues(cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].phi == two[0].phi);
  CHECK(one[0].distance == two[0].distance);
  CHECK(std::abs(one[0].phi) <= cfg.half_width);
  CHECK(one[0].distance >= cfg.r_min);
  CHECK(one[0].distance <= cfg.r_max);
}

TEST_CASE("azimuths average to zero over many drops") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 100'000;
  const auto drops = drop_ues(cfg);
  double mean = 0.0;
  for (const auto& d : drops) mean += d.phi;
  mean /= drops.size();
  CHECK(std::abs(rad2deg(mean)) < 1.0);
}

TEST_CASE("distances follow the area-uniform radial law") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 100'000;
  const auto drops = drop_ues(cfg);
  std::vector<double> d(drops.size());
  for (std::size_t i = 0; i < drops.size(); ++i) d[i] = drops[i].distance;
  std::sort(d.begin(), d.end());
  // Kolmogorov-Smirnov distance against F(d) = (d^2 - rmin^2)/(rmax^2 - rmin^2).
  const double lo2 = cfg.r_min * cfg.r_min;
  const double hi2 = cfg.r_max * cfg.r_max;
  double ks = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double model = (d[i] * d[i] - lo2) / (hi2 - lo2);
    const double emp_hi = static_cast<double>(i + 1) / d.size();
    const double emp_lo = static_cast<double>(i) / d.size();
    ks = std::max({ks, std::abs(model - emp_hi), std::abs(model - emp_lo)});
  }
  CHECK(ks < 0.01);
}

TEST_CASE("link spectral efficiency formula") {
  const double gamma = std::pow(10.0, 5.7);
  CHECK(spectral_efficiency(1.0, 1.0, 1.0, gamma, 2.2) ==
        doctest::Approx(std::log2(1.0 + gamma)).epsilon(1e-12));
  CHECK(spectral_efficiency(1.0, 100.0, 1e-30, gamma, 2.2) ==
        doctest::Approx(0.0).epsilon(1e-9));
  // Doubling the gain adds one bit in the high-SNR regime.
  const double hi = 1e9;
  CHECK(spectral_efficiency(2.0, 50.0, hi, gamma, 2.2) -
            spectral_efficiency(1.0, 50.0, hi, gamma, 2.2) ==
        doctest::Approx(1.0).epsilon(1e-6));
  // Scaling the gain by g is the same as scaling the SNR by g.
  CHECK(spectral_efficiency(3.0, 120.0, 0.25, gamma, 2.2) ==
        doctest::Approx(spectral_efficiency(1.0, 120.0, 0.75, gamma, 2.2))
            .epsilon(1e-12));
}

TEST_CASE("sector mean matches a quadrature oracle for a flat gain") {
  // A single-element pair has gain 1 after normalization (times a flat
  // element), so the mean spectral efficiency depends only on the radial law.
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 100'000;
  cfg.snr_db = RVec(2);
  cfg.snr_db << 0.0, 10.0;
  ElementModel isotropic;
  isotropic.peak_gain_db = 0.0;
  isotropic.floor_db = 1e-12;
  const WeightPair w(CVec::Ones(1), CVec::Ones(1));
  const SeReport report = evaluate_method(w, ArrayGeometry::ula(1), isotropic,
                                          cfg, "single");

  const double gamma = std::pow(10.0, cfg.gamma_db / 10.0);
  const double lo2 = cfg.r_min * cfg.r_min;
  const double hi2 = cfg.r_max * cfg.r_max;
  for (Index s = 0; s < cfg.snr_db.size(); ++s) {
    const double rho = std::pow(10.0, cfg.snr_db[s] / 10.0);
    // Simpson quadrature of log2(1 + rho gamma d^-alpha) with the
    // area-uniform density 2d/(hi2 - lo2) over [r_min, r_max].
    const int n = 2000;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double d = cfg.r_min + (cfg.r_max - cfg.r_min) * k / n;
      const double f = std::log2(1.0 + rho * gamma *
                                           std::pow(d, -cfg.pathloss_exponent)) *
                       2.0 * d / (hi2 - lo2);
      acc += f * ((k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0));
    }
    acc *= (cfg.r_max - cfg.r_min) / n / 3.0;
    CHECK(report.avg_se[s] == doctest::Approx(acc).epsilon(0.005));
  }
}

TEST_CASE("broad beam beats the coherent beam on sector average") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 10'000;
  cfg.snr_db = RVec(1);
  cfg.snr_db << 0.0;
  const ElementModel model;
  const ArrayGeometry g = ArrayGeometry::ula(7);
  const SeReport broad = evaluate_method(oracles::reference_pair_m7(), g,
                                         model, cfg, "broad");
  const SeReport coherent =
      evaluate_method(dft_weights(7, 0.0, g), g, model, cfg, "dft");
  CHECK(broad.avg_se[0] > coherent.avg_se[0]);
}

TEST_CASE("a boresight user prefers the coherent beam") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 1;
  cfg.half_width = 0.0;           // the lone user sits at boresight
  cfg.r_min = 100.0;
  cfg.r_max = 100.0001;
  cfg.snr_db = RVec(1);
  cfg.snr_db << 0.0;
  const ElementModel model;
  const ArrayGeometry g = ArrayGeometry::ula(7);
  const SeReport broad = evaluate_method(oracles::reference_pair_m7(), g,
                                         model, cfg, "broad");
  const SeReport coherent =
      evaluate_method(dft_weights(7, 0.0, g), g, model, cfg, "dft");
  CHECK(coherent.avg_se[0] > broad.avg_se[0]);

  // A single fixed drop reduces to the plain link formula.
  const auto drops = drop_ues(cfg);
  const double gain =
      array_factor_power(eirp_normalize(dft_weights(7, 0.0, g)), g,
                         drops[0].phi, kPi / 2) *
      std::pow(10.0, element_gain_db(model, drops[0].phi) / 10.0);
  const double expected = spectral_efficiency(
      gain, drops[0].distance, 1.0, std::pow(10.0, cfg.gamma_db / 10.0),
      cfg.pathloss_exponent);
  CHECK(coherent.avg_se[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mean spectral efficiency is monotone in the SNR") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 2'000;
  const SeReport r = evaluate_method(oracles::reference_pair_m7(),
                                     ArrayGeometry::ula(7), ElementModel{},
                                     cfg, "ref");
  REQUIRE(r.snr_db.size() == 5);
  for (Index s = 1; s < r.snr_db.size(); ++s) {
    CHECK(r.avg_se[s] >= r.avg_se[s - 1]);
  }
  CHECK(r.method == "ref");
}

TEST_CASE("evaluation is deterministic per seed") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 1'000;
  const SeReport a = evaluate_method(oracles::reference_pair_m7(),
                                     ArrayGeometry::ula(7), ElementModel{},
                                     cfg, "a");
  const SeReport b = evaluate_method(oracles::reference_pair_m7(),
                                     ArrayGeometry::ula(7), ElementModel{},
                                     cfg, "b");
  for (Index s = 0; s < a.snr_db.size(); ++s) {
    CHECK(a.avg_se[s] == b.avg_se[s]);
  }
}

TEST_CASE("two seeds at large drop counts agree within half a percent") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.drops = 100'000;
  cfg.snr_db = RVec(1);
  cfg.snr_db << 10.0;
  const ArrayGeometry g = ArrayGeometry::ula(7);
  cfg.rng_seed = 1;
  const SeReport a = evaluate_method(oracles::reference_pair_m7(), g,
                                     ElementModel{}, cfg, "a");
  cfg.rng_seed = 2;
  const SeReport b = evaluate_method(oracles::reference_pair_m7(), g,
                                     ElementModel{}, cfg, "b");
  CHECK(std::abs(a.avg_se[0] - b.avg_se[0]) / a.avg_se[0] < 0.005);
}

TEST_CASE("sector config validation") {
  SectorConfig cfg = SectorConfig::defaults();
  cfg.r_min = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SectorConfig::defaults();
  cfg.drops = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SectorConfig::defaults();
  cfg.snr_db.resize(0);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
