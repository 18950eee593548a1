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
#include <utility>

#include "broadbeam/types.hpp"

namespace broadbeam {

/// Settings for the water-level stochastic search over stacked phase vectors.
///
/// The tolerance is expressed in absolute sum-AACF units; callers working in
/// percent-of-mainlobe convert via eps = pct/100 * 2*N*M before filling it in.
struct MgdaConfig {
  double rain_intensity = 0.0;  ///< V > 0, water-level increment per sweep
  double scale_factor = 0.95;   ///< alpha in (0, 1], step shrink on rejection
  double tolerance = 0.0;       ///< eps > 0, target max sidelobe
  int max_unsuccessful = 20;    ///< d_max, sweeps without acceptance before a jump
  std::uint64_t rng_seed = 1;
  std::int64_t max_iterations = 20'000'000;  ///< budget in objective evaluations
  double step_floor = 1e-7;     ///< delta_min; smaller steps freeze a coordinate
  bool pin_first_phase = false; ///< optional global-phase gauge fix

  /// Defaults for a 1D pair of length m: V = 0.0005*m, eps = 0.02*m.
  static MgdaConfig defaults(Index m);
  /// Defaults for an n x m array pair, with V and eps scaled by n*m.
  static MgdaConfig defaults2d(Index n, Index m);

  void validate() const;  ///< throws std::invalid_argument on bad bounds
};

struct MgdaResult {
  /// Stacked phases in [0, 2*pi): [phi_u; phi_v] for 1D searches, the
  /// column-major vectorizations [vec(phi_U); vec(phi_V)] for 2D searches.
  RVec phases;
  double achieved_sidelobe = 0.0;
  std::int64_t iterations = 0;  ///< objective evaluations (summed over restarts)
  int restarts = 0;             ///< 0-based index of the seed that produced this
  bool converged = false;       ///< achieved_sidelobe <= tolerance
};

/// Search objective: -max_sidelobe of the pair decoded from the stacked
/// phases. Always <= 0; equals 0 iff the decoded pair is exactly
/// complementary. Throws for odd-length input.
double utility(const RVec& stacked_phases);

/// 2D variant; stacked_phases must have length 2*n*m.
double utility(const RVec& stacked_phases, Index n, Index m);

/// Splits a stacked phase vector and materializes the unimodular pair.
std::pair<CVec, CVec> decode_pair(const RVec& stacked_phases);
std::pair<CMat, CMat> decode_array_pair(const RVec& stacked_phases, Index n,
                                        Index m);

/// Single seeded run. Deterministic given the config. When the evaluation
/// budget runs out the best phases found so far are returned with
/// converged = false (no exception).
MgdaResult search(Index m, const MgdaConfig& config);
MgdaResult search2d(Index n, Index m, const MgdaConfig& config);

/// Runs search with seeds config.rng_seed, +1, ... and returns the first
/// converged result, or the best across all restarts.
MgdaResult search_with_restarts(Index m, const MgdaConfig& config,
                                int max_restarts);
MgdaResult search_with_restarts2d(Index n, Index m, const MgdaConfig& config,
                                  int max_restarts);

}  // namespace broadbeam
