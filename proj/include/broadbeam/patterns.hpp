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

#include "broadbeam/types.hpp"

namespace broadbeam {

/// Rectangular array layout: columns along the y-axis spaced dy wavelengths
/// apart, rows along the z-axis spaced dz apart. rows == 1 describes a
/// horizontal uniform linear array.
struct ArrayGeometry {
  Index columns = 1;  ///< M
  Index rows = 1;     ///< N
  double dy = 0.5;    ///< column spacing in wavelengths
  double dz = 0.5;    ///< row spacing in wavelengths

  static ArrayGeometry ula(Index m, double dy = 0.5);
  static ArrayGeometry ura(Index n, Index m, double dy = 0.5, double dz = 0.5);
  void validate() const;
};

/// Sampled angles; azimuth phi in [-pi, pi], elevation theta measured from
/// the z-axis in [0, pi]. Both sample lists must be strictly increasing.
struct AngleGrid {
  RVec phi;
  RVec theta;

  /// Azimuth cut at a fixed theta (default: the horizontal plane).
  static AngleGrid azimuth_cut(double phi_lo, double phi_hi, double step,
                               double theta = kPi / 2);
  /// Full visible hemisphere, phi in [-90, 90] deg, theta in [0, 180] deg.
  static AngleGrid hemisphere(double step = deg2rad(1.0));
  void validate() const;
};

enum class PatternKind { kArrayFactor, kTotal, kEirp };

/// Sampled power pattern, linear units, theta down the rows and phi across
/// the columns.
struct PatternGrid {
  RVec phi;
  RVec theta;
  RMat values;
  PatternKind kind = PatternKind::kArrayFactor;
};

/// Relative inter-element phase shift along y: 2*pi*dy*sin(theta)*sin(phi).
double phase_shift_y(double dy, double phi, double theta);
/// Relative inter-element phase shift along z: 2*pi*dz*cos(theta).
double phase_shift_z(double dz, double theta);

/// Vandermonde steering vector [1, e^{j psi}, ..., e^{j (m-1) psi}].
CVec steering_vector(Index m, double psi);

/// N x M steering matrix with entry (n, m) = e^{j m psi_y} e^{j n psi_z}
/// (the outer product of the two per-axis steering vectors).
CMat steering_matrix(Index n, Index m, double psi_y, double psi_z);

/// Power-domain array factor |w_a^T a|^2 + |w_b^T a|^2 at one angle.
double array_factor_power(const WeightPair& w, const ArrayGeometry& g,
                          double phi, double theta);
/// Rectangular-array version |tr(W_a^T A)|^2 + |tr(W_b^T A)|^2.
double array_factor_power(const WeightArrayPair& w, const ArrayGeometry& g,
                          double phi, double theta);

PatternGrid array_factor_power(const WeightPair& w, const ArrayGeometry& g,
                               const AngleGrid& grid);
PatternGrid array_factor_power(const WeightArrayPair& w,
                               const ArrayGeometry& g, const AngleGrid& grid);

/// Parabolic single-element power model in dB:
/// peak - min(12 ((phi - pointing)/hpbw)^2, floor). An optional separable
/// elevation term of the same form around theta = 90 deg can be enabled.
struct ElementModel {
  double peak_gain_db = 8.0;
  double pointing = 0.0;     ///< phi_0, radians
  double hpbw = kPi / 2.0;   ///< azimuth half-power beamwidth, radians
  double floor_db = 30.0;    ///< maximum rolloff below peak
  bool separable_elevation = false;
  double elevation_hpbw = kPi / 2.0;

  void validate() const;
};

double element_gain_db(const ElementModel& model, double phi);
double element_gain_db(const ElementModel& model, double phi, double theta);

/// Pattern multiplication: array-factor power times the linear element gain.
PatternGrid total_pattern(const WeightPair& w, const ArrayGeometry& g,
                          const ElementModel& model, const AngleGrid& grid);
PatternGrid total_pattern(const WeightArrayPair& w, const ArrayGeometry& g,
                          const ElementModel& model, const AngleGrid& grid);

/// Scales the weights by 1 / (sqrt(2M) * max |entry across both
/// polarizations|) so the total conducted power is 1 W minus taper loss.
/// Unimodular pairs end up with entry magnitude 1/sqrt(2M).
WeightPair eirp_normalize(const WeightPair& w);
WeightArrayPair eirp_normalize(const WeightArrayPair& w);

/// Half-power beamwidth in degrees of the azimuth cut at the given theta
/// row: the angular width between the two -3 dB crossings around the global
/// peak, linearly interpolated between samples. Throws std::runtime_error
/// when a crossing does not exist within the cut.
double hpbw_degrees(const PatternGrid& pattern, Index theta_index = 0);

/// Max/min ratio in dB over the azimuth region [phi_lo, phi_hi] of the given
/// theta row. Throws std::invalid_argument for an empty region.
double ripple_db(const PatternGrid& pattern, double phi_lo, double phi_hi,
                 Index theta_index = 0);

/// ||w||^2 / (2M * max |w|^2) over both polarizations; 1.0 for unimodular
/// pairs, < 1 whenever the amplitudes are tapered.
double power_utilization(const WeightPair& w);
double power_utilization(const WeightArrayPair& w);

}  // namespace broadbeam
