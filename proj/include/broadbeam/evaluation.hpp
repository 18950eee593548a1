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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "broadbeam/patterns.hpp"
#include "broadbeam/types.hpp"

namespace broadbeam {

/// Monte-Carlo sector setup: user locations drawn uniformly over the annular
/// sector (azimuth uniform in +-half_width, distance area-uniform between the
/// two radii).
struct SectorConfig {
  double half_width = deg2rad(60.0);  ///< sector half-width, radians
  double r_min = 25.0;                ///< meters
  double r_max = 300.0;               ///< meters
  int drops = 10'000;                 ///< K, number of user locations
  double pathloss_exponent = 2.2;
  double gamma_db = 57.0;             ///< fixed link-budget offset
  RVec snr_db;                        ///< SNR grid in dB (rho = 10^(snr/10))
  std::uint64_t rng_seed = 1;

  static SectorConfig defaults();
  void validate() const;
};

struct UeDrop {
  double phi;       ///< azimuth, radians
  double distance;  ///< meters
};

/// Deterministic per seed. Azimuth uniform in [-half_width, half_width];
/// distance d = sqrt(U[r_min^2, r_max^2]), i.e. area-uniform over the sector.
std::vector<UeDrop> drop_ues(const SectorConfig& config);

/// Link spectral efficiency log2(1 + rho * gamma * g * d^-alpha) in
/// bits/s/Hz. All inputs are linear and must be positive.
double spectral_efficiency(double g_linear, double distance, double rho_linear,
                           double gamma_linear, double pathloss_exponent);

struct SeReport {
  std::string method;
  RVec snr_db;
  RVec avg_se;  ///< bits/s/Hz, one entry per SNR point
};

/// Mean spectral efficiency over the sector drops at each SNR point. The
/// weights are EIRP-normalized internally (total conducted power 1 W minus
/// taper loss) and the gain toward each drop is the total pattern
/// (array factor times element gain) in the horizontal plane. Accumulation
/// uses pairwise summation, so the mean is independent of evaluation order.
SeReport evaluate_method(const WeightPair& weights, const ArrayGeometry& g,
                         const ElementModel& model, const SectorConfig& config,
                         std::string method_label);
SeReport evaluate_method(const WeightArrayPair& weights,
                         const ArrayGeometry& g, const ElementModel& model,
                         const SectorConfig& config, std::string method_label);

}  // namespace broadbeam
