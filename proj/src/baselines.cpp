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

#include "broadbeam/baselines.hpp"

#include <cmath>
#include <limits>

#include "broadbeam/random.hpp"

namespace broadbeam {

WeightPair dft_weights(Index m, double phi0, const ArrayGeometry& g) {
  if (m < 1) throw std::invalid_argument("dft_weights: m must be >= 1");
  g.validate();
  const double psi0 = phase_shift_y(g.dy, phi0, kPi / 2.0);
  CVec w(m);
  for (Index i = 0; i < m; ++i) w[i] = std::polar(1.0, -psi0 * i);
  return WeightPair(w, w);
}

double dirichlet_kernel(Index m, double dy, double phi, double phi0,
                        double theta) {
  if (m < 1) throw std::invalid_argument("dirichlet_kernel: m must be >= 1");
  const double x =
      kPi * dy * std::sin(theta) * (std::sin(phi) - std::sin(phi0));
  const double den = std::sin(x);
  if (std::abs(den) < 1e-12) {
    // l'Hopital at the grating points; magnitude M, sign per the cosine ratio.
    return static_cast<double>(m) * std::cos(m * x) / std::cos(x);
  }
  return std::sin(m * x) / den;
}

void PhaseTaperParams::validate() const {
  if (p < 1) throw std::invalid_argument("PhaseTaperParams: p must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("PhaseTaperParams: c must be > 0");
}

WeightPair phase_taper_weights(Index m, double phi0,
                               const PhaseTaperParams& params,
                               const ArrayGeometry& g) {
  if (m < 2) {
    throw std::invalid_argument("phase_taper_weights: m must be >= 2");
  }
  params.validate();
  const WeightPair base = dft_weights(m, phi0, g);
  CVec w(m);
  for (Index i = 0; i < m; ++i) {
    const double centered = static_cast<double>(2 * (i + 1) - m - 1) /
                            static_cast<double>(2 * (m - 1));
    const double f =
        std::abs(4.0 * kPi * params.c * std::pow(centered, params.p));
    w[i] = base.a[i] * std::polar(1.0, f);
  }
  return WeightPair(w, w);
}

void AmplitudeTaperParams::validate() const {
  if (zeta < 0.0 || zeta >= 1.0) {
    throw std::invalid_argument("AmplitudeTaperParams: zeta must be in [0, 1)");
  }
  if (max_iterations < 1 || restarts < 1) {
    throw std::invalid_argument(
        "AmplitudeTaperParams: iteration counts must be >= 1");
  }
  if (grid_size < 3) {
    throw std::invalid_argument("AmplitudeTaperParams: grid_size must be >= 3");
  }
}

AmplitudeTaperResult amplitude_taper_weights(Index m,
                                             const AmplitudeTaperParams& params,
                                             const ArrayGeometry& g) {
  if (m < 1) {
    throw std::invalid_argument("amplitude_taper_weights: m must be >= 1");
  }
  params.validate();
  g.validate();

  const Index n_grid = params.grid_size;
  const RVec phi = RVec::LinSpaced(n_grid, -kPi / 2.0, kPi / 2.0);

  // Rows are constraint angles: row g holds a(phi_g)^T.
  CMat steering(n_grid, m);
  RVec target(n_grid);
  for (Index r = 0; r < n_grid; ++r) {
    steering.row(r) =
        steering_vector(m, phase_shift_y(g.dy, phi[r], kPi / 2.0)).transpose();
    target[r] = static_cast<double>(m) *
                (1.0 + params.zeta * std::cos(2.0 * phi[r]));
  }
  const Eigen::ColPivHouseholderQR<CMat> qr(steering);

  Rng rng(params.rng_seed);
  const double band = 0.05 * static_cast<double>(m);

  CVec best_w;
  double best_dev = std::numeric_limits<double>::infinity();
  double best_papr = std::numeric_limits<double>::infinity();
  bool best_in_band = false;

  for (int attempt = 0; attempt < params.restarts; ++attempt) {
    CVec w(m);
    for (Index i = 0; i < m; ++i) w[i] = Complex(rng.normal(), rng.normal());

    for (int it = 0; it < params.max_iterations; ++it) {
      CVec response = steering * w;
      // Project the response onto the magnitude-constraint set, keep phases.
      for (Index r = 0; r < n_grid; ++r) {
        const double mag = std::abs(response[r]);
        const Complex phase =
            mag > 1e-15 ? response[r] / mag : Complex(1.0, 0.0);
        response[r] = std::sqrt(target[r]) * phase;
      }
      w = qr.solve(response);
    }

    const CVec response = steering * w;
    double dev = 0.0;
    for (Index r = 0; r < n_grid; ++r) {
      dev = std::max(dev, std::abs(std::norm(response[r]) - target[r]));
    }
    const double norm2 = w.squaredNorm();
    if (!(norm2 > 0.0)) continue;
    const double papr =
        static_cast<double>(m) * w.cwiseAbs().maxCoeff() *
        w.cwiseAbs().maxCoeff() / norm2;

    const bool in_band = dev <= band;
    const bool better = in_band
                            ? (!best_in_band || papr < best_papr)
                            : (!best_in_band && dev < best_dev);
    if (better) {
      best_w = w;
      best_dev = dev;
      best_papr = papr;
      best_in_band = in_band;
    }
  }

  if (best_w.size() == 0) {
    throw std::runtime_error(
        "amplitude_taper_weights: solver produced no candidate");
  }
  // The constraint set is scale-dependent: rescaling would invalidate
  // max_deviation.

  AmplitudeTaperResult result;
  result.weights = WeightPair(best_w, best_w);
  result.max_deviation = best_dev;
  result.converged = best_in_band;
  return result;
}

}  // namespace broadbeam
