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

#include "broadbeam/evaluation.hpp"

#include <cmath>
#include <utility>

#include "broadbeam/random.hpp"

namespace broadbeam {

namespace {

// Order-independent reduction; splits recursively instead of accumulating
// left to right.
double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename Weights>
SeReport evaluate(const Weights& weights, const ArrayGeometry& g,
                  const ElementModel& model, const SectorConfig& cfg,
                  std::string label) {
  cfg.validate();
  model.validate();
  const Weights normalized = eirp_normalize(weights);
  const std::vector<UeDrop> drops = drop_ues(cfg);
  const double gamma = std::pow(10.0, cfg.gamma_db / 10.0);

  std::vector<double> gains(drops.size());
  for (std::size_t k = 0; k < drops.size(); ++k) {
    const double af =
        array_factor_power(normalized, g, drops[k].phi, kPi / 2.0);
    const double el =
        std::pow(10.0, element_gain_db(model, drops[k].phi) / 10.0);
    gains[k] = af * el;
  }

  SeReport report;
  report.method = std::move(label);
  report.snr_db = cfg.snr_db;
  report.avg_se.resize(cfg.snr_db.size());
  std::vector<double> samples(drops.size());
  for (Index s = 0; s < cfg.snr_db.size(); ++s) {
    const double rho = std::pow(10.0, cfg.snr_db[s] / 10.0);
    for (std::size_t k = 0; k < drops.size(); ++k) {
      samples[k] = spectral_efficiency(gains[k], drops[k].distance, rho, gamma,
                                       cfg.pathloss_exponent);
    }
    report.avg_se[s] =
        pairwise_sum(samples.data(), samples.size()) / samples.size();
  }
  return report;
}

}  // namespace

SectorConfig SectorConfig::defaults() {
  SectorConfig cfg;
  cfg.snr_db = RVec(5);
  cfg.snr_db << -10.0, 0.0, 10.0, 20.0, 30.0;
  return cfg;
}

void SectorConfig::validate() const {
  if (half_width < 0.0 || half_width > kPi) {
    throw std::invalid_argument("SectorConfig: half_width must be in [0, pi]");
  }
  if (!(r_min > 0.0) || !(r_max > r_min)) {
    throw std::invalid_argument("SectorConfig: need 0 < r_min < r_max");
  }
  if (drops < 1) throw std::invalid_argument("SectorConfig: drops must be >= 1");
  if (!(pathloss_exponent > 0.0)) {
    throw std::invalid_argument("SectorConfig: pathloss exponent must be > 0");
  }
  if (snr_db.size() == 0) {
    throw std::invalid_argument("SectorConfig: snr grid must be non-empty");
  }
}

std::vector<UeDrop> drop_ues(const SectorConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);
  std::vector<UeDrop> drops(config.drops);
  const double r2lo = config.r_min * config.r_min;
  const double r2hi = config.r_max * config.r_max;
  for (auto& drop : drops) {
    drop.phi = rng.uniform(-config.half_width, config.half_width);
    drop.distance = std::sqrt(rng.uniform(r2lo, r2hi));
  }
  return drops;
}

double spectral_efficiency(double g_linear, double distance, double rho_linear,
                           double gamma_linear, double pathloss_exponent) {
  return std::log2(1.0 + rho_linear * gamma_linear * g_linear *
                             std::pow(distance, -pathloss_exponent));
}

SeReport evaluate_method(const WeightPair& weights, const ArrayGeometry& g,
                         const ElementModel& model, const SectorConfig& config,
                         std::string method_label) {
  return evaluate(weights, g, model, config, std::move(method_label));
}

SeReport evaluate_method(const WeightArrayPair& weights,
                         const ArrayGeometry& g, const ElementModel& model,
                         const SectorConfig& config, std::string method_label) {
  return evaluate(weights, g, model, config, std::move(method_label));
}

}  // namespace broadbeam
