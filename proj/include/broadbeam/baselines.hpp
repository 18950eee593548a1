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

#include "broadbeam/patterns.hpp"
#include "broadbeam/types.hpp"

namespace broadbeam {

/// Linear-phase beamformer pointed at azimuth phi0 (radians), applied on both
/// polarizations: w_m = e^{-j (m-1) psi(phi0)} with the horizontal-plane
/// phase shift psi = 2*pi*dy*sin(phi0).
WeightPair dft_weights(Index m, double phi0, const ArrayGeometry& g);

/// Closed-form beam shape of the linear-phase weights,
/// sin(M x) / sin(x) with x = pi*dy*sin(theta)*(sin(phi) - sin(phi0));
/// the removable singularities take the analytic limit (M at x = 0).
double dirichlet_kernel(Index m, double dy, double phi, double phi0,
                        double theta);

/// Polynomial phase-taper broadener parameters.
struct PhaseTaperParams {
  int p = 3;       ///< positive integer exponent
  double c = 24.0; ///< positive scale

  void validate() const;
};

/// Phase-tapered beamformer: the linear-phase weights multiplied entrywise by
/// e^{j f_m} with f_m = |4*pi*c*((2m - M - 1) / (2(M-1)))^p|. Requires M >= 2.
WeightPair phase_taper_weights(Index m, double phi0,
                               const PhaseTaperParams& params,
                               const ArrayGeometry& g);

/// Settings for the amplitude-taper solver.
struct AmplitudeTaperParams {
  double zeta = 0.01;          ///< array-factor tolerance, in [0, 1)
  int max_iterations = 500;    ///< projection iterations per start
  int restarts = 50;           ///< random initializations
  Index grid_size = 181;       ///< azimuth constraint samples over [-90, 90] deg
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct AmplitudeTaperResult {
  WeightPair weights;       ///< same taper on both polarizations, max |w| = 1
  double max_deviation = 0; ///< worst | |w^T a|^2 - M(1 + zeta cos 2 phi) |
  bool converged = false;   ///< max_deviation within the declared band 0.05*M
};

/// Amplitude-tapered beamformer approximating a flat array factor
/// |w^T a(phi)|^2 = M (1 + zeta cos 2 phi) over phi in [-90, 90] deg.
///
/// Solver: alternating projections between the sampled magnitude-constraint
/// set and the least-squares weight fit, restarted from seeded random
/// initializations; among candidates inside the declared band the one with
/// the smallest peak-to-average power ratio is returned, otherwise the
/// closest one with converged = false. Output weights are generally not
/// unimodular.
AmplitudeTaperResult amplitude_taper_weights(Index m,
                                             const AmplitudeTaperParams& params,
                                             const ArrayGeometry& g);

}  // namespace broadbeam
