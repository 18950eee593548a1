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

#include "broadbeam/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace broadbeam {

namespace {

void require_ula_shape(const WeightPair& w, const ArrayGeometry& g,
                       const char* who) {
  if (g.rows != 1 || g.columns != w.size()) {
    throw std::invalid_argument(std::string(who) +
                                ": geometry does not match the weight length");
  }
}

void require_ura_shape(const WeightArrayPair& w, const ArrayGeometry& g,
                       const char* who) {
  if (g.rows != w.rows() || g.columns != w.cols()) {
    throw std::invalid_argument(std::string(who) +
                                ": geometry does not match the weight shape");
  }
}

RVec linspace_closed(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    throw std::invalid_argument("AngleGrid: need step > 0 and hi >= lo");
  }
  const Index n = static_cast<Index>(std::llround((hi - lo) / step)) + 1;
  return RVec::LinSpaced(n, lo, hi);
}

template <typename Weights>
PatternGrid evaluate_grid(const Weights& w, const ArrayGeometry& g,
                          const AngleGrid& grid) {
  grid.validate();
  PatternGrid out;
  out.phi = grid.phi;
  out.theta = grid.theta;
  out.values.resize(grid.theta.size(), grid.phi.size());
  for (Index t = 0; t < grid.theta.size(); ++t) {
    for (Index p = 0; p < grid.phi.size(); ++p) {
      out.values(t, p) = array_factor_power(w, g, grid.phi[p], grid.theta[t]);
    }
  }
  out.kind = PatternKind::kArrayFactor;
  return out;
}

template <typename Weights>
PatternGrid evaluate_total(const Weights& w, const ArrayGeometry& g,
                           const ElementModel& model, const AngleGrid& grid) {
  model.validate();
  PatternGrid out = evaluate_grid(w, g, grid);
  for (Index t = 0; t < out.theta.size(); ++t) {
    for (Index p = 0; p < out.phi.size(); ++p) {
      const double gain_db = element_gain_db(model, out.phi[p], out.theta[t]);
      out.values(t, p) *= std::pow(10.0, gain_db / 10.0);
    }
  }
  out.kind = PatternKind::kTotal;
  return out;
}

double max_abs_weight(const CVec& a, const CVec& b) {
  return std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
}

}  // namespace

ArrayGeometry ArrayGeometry::ula(Index m, double dy) {
  ArrayGeometry g;
  g.columns = m;
  g.rows = 1;
  g.dy = dy;
  g.validate();
  return g;
}

ArrayGeometry ArrayGeometry::ura(Index n, Index m, double dy, double dz) {
  ArrayGeometry g;
  g.columns = m;
  g.rows = n;
  g.dy = dy;
  g.dz = dz;
  g.validate();
  return g;
}

void ArrayGeometry::validate() const {
  if (columns < 1 || rows < 1) {
    throw std::invalid_argument("ArrayGeometry: dimensions must be >= 1");
  }
  if (!(dy > 0.0) || !(dz > 0.0)) {
    throw std::invalid_argument("ArrayGeometry: spacings must be > 0");
  }
}

AngleGrid AngleGrid::azimuth_cut(double phi_lo, double phi_hi, double step,
                                 double theta) {
  AngleGrid g;
  g.phi = linspace_closed(phi_lo, phi_hi, step);
  g.theta = RVec::Constant(1, theta);
  g.validate();
  return g;
}

AngleGrid AngleGrid::hemisphere(double step) {
  AngleGrid g;
  g.phi = linspace_closed(-kPi / 2, kPi / 2, step);
  g.theta = linspace_closed(0.0, kPi, step);
  g.validate();
  return g;
}

void AngleGrid::validate() const {
  if (phi.size() == 0 || theta.size() == 0) {
    throw std::invalid_argument("AngleGrid: grids must be non-empty");
  }
  for (Index i = 1; i < phi.size(); ++i) {
    if (!(phi[i] > phi[i - 1])) {
      throw std::invalid_argument("AngleGrid: phi must be strictly increasing");
    }
  }
  for (Index i = 1; i < theta.size(); ++i) {
    if (!(theta[i] > theta[i - 1])) {
      throw std::invalid_argument(
          "AngleGrid: theta must be strictly increasing");
    }
  }
  if (phi[0] < -kPi - 1e-12 || phi[phi.size() - 1] > kPi + 1e-12) {
    throw std::invalid_argument("AngleGrid: phi must lie within [-pi, pi]");
  }
  if (theta[0] < -1e-12 || theta[theta.size() - 1] > kPi + 1e-12) {
    throw std::invalid_argument("AngleGrid: theta must lie within [0, pi]");
  }
}

double phase_shift_y(double dy, double phi, double theta) {
  return kTwoPi * dy * std::sin(theta) * std::sin(phi);
}

double phase_shift_z(double dz, double theta) {
  return kTwoPi * dz * std::cos(theta);
}

CVec steering_vector(Index m, double psi) {
  if (m < 1) throw std::invalid_argument("steering_vector: m must be >= 1");
  CVec a(m);
  for (Index i = 0; i < m; ++i) a[i] = std::polar(1.0, psi * i);
  return a;
}

CMat steering_matrix(Index n, Index m, double psi_y, double psi_z) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("steering_matrix: dimensions must be >= 1");
  }
  return steering_vector(n, psi_z) * steering_vector(m, psi_y).transpose();
}

double array_factor_power(const WeightPair& w, const ArrayGeometry& g,
                          double phi, double theta) {
  require_ula_shape(w, g, "array_factor_power");
  const CVec a = steering_vector(w.size(), phase_shift_y(g.dy, phi, theta));
  const Complex ra = (w.a.array() * a.array()).sum();
  const Complex rb = (w.b.array() * a.array()).sum();
  return std::norm(ra) + std::norm(rb);
}

double array_factor_power(const WeightArrayPair& w, const ArrayGeometry& g,
                          double phi, double theta) {
  require_ura_shape(w, g, "array_factor_power");
  const CVec ay = steering_vector(w.cols(), phase_shift_y(g.dy, phi, theta));
  const CVec az = steering_vector(w.rows(), phase_shift_z(g.dz, theta));
  // tr(W^T A) with A = az ay^T collapses to az^T W ay.
  const Complex ra = az.transpose() * (w.a * ay);
  const Complex rb = az.transpose() * (w.b * ay);
  return std::norm(ra) + std::norm(rb);
}

PatternGrid array_factor_power(const WeightPair& w, const ArrayGeometry& g,
                               const AngleGrid& grid) {
  return evaluate_grid(w, g, grid);
}

PatternGrid array_factor_power(const WeightArrayPair& w,
                               const ArrayGeometry& g, const AngleGrid& grid) {
  return evaluate_grid(w, g, grid);
}

void ElementModel::validate() const {
  if (!(hpbw > 0.0) || !(elevation_hpbw > 0.0)) {
    throw std::invalid_argument("ElementModel: beamwidths must be > 0");
  }
  if (!(floor_db > 0.0)) {
    throw std::invalid_argument("ElementModel: floor_db must be > 0");
  }
}

double element_gain_db(const ElementModel& model, double phi) {
  const double x = (phi - model.pointing) / model.hpbw;
  return model.peak_gain_db - std::min(12.0 * x * x, model.floor_db);
}

double element_gain_db(const ElementModel& model, double phi, double theta) {
  double gain = element_gain_db(model, phi);
  if (model.separable_elevation) {
    const double z = (theta - kPi / 2.0) / model.elevation_hpbw;
    gain -= std::min(12.0 * z * z, model.floor_db);
  }
  return gain;
}

PatternGrid total_pattern(const WeightPair& w, const ArrayGeometry& g,
                          const ElementModel& model, const AngleGrid& grid) {
  return evaluate_total(w, g, model, grid);
}

PatternGrid total_pattern(const WeightArrayPair& w, const ArrayGeometry& g,
                          const ElementModel& model, const AngleGrid& grid) {
  return evaluate_total(w, g, model, grid);
}

WeightPair eirp_normalize(const WeightPair& w) {
  const double peak = max_abs_weight(w.a, w.b);
  if (!(peak > 0.0)) {
    throw std::invalid_argument("eirp_normalize: weights must not be all zero");
  }
  const double scale =
      1.0 / (std::sqrt(2.0 * static_cast<double>(w.size())) * peak);
  return WeightPair(scale * w.a, scale * w.b);
}

WeightArrayPair eirp_normalize(const WeightArrayPair& w) {
  const double peak =
      std::max(w.a.cwiseAbs().maxCoeff(), w.b.cwiseAbs().maxCoeff());
  if (!(peak > 0.0)) {
    throw std::invalid_argument("eirp_normalize: weights must not be all zero");
  }
  const double scale =
      1.0 / (std::sqrt(2.0 * static_cast<double>(w.size())) * peak);
  return WeightArrayPair(scale * w.a, scale * w.b);
}

double hpbw_degrees(const PatternGrid& pattern, Index theta_index) {
  if (theta_index < 0 || theta_index >= pattern.theta.size()) {
    throw std::invalid_argument("hpbw_degrees: theta_index out of range");
  }
  const auto row = pattern.values.row(theta_index);
  Index peak_idx = 0;
  row.maxCoeff(&peak_idx);
  const double peak = row[peak_idx];
  if (!(peak > 0.0)) {
    throw std::runtime_error("hpbw_degrees: pattern has no positive peak");
  }
  const double threshold = peak * std::pow(10.0, -0.3);  // -3 dB

  auto crossing = [&](int dir) -> double {
    Index i = peak_idx;
    while (true) {
      const Index next = i + dir;
      if (next < 0 || next >= row.size()) {
        throw std::runtime_error(
            "hpbw_degrees: no -3 dB crossing within the cut");
      }
      if (row[next] < threshold) {
        // Linear interpolation in power between samples i and next.
        const double p1 = row[i], p2 = row[next];
        const double x1 = pattern.phi[i], x2 = pattern.phi[next];
        return x1 + (p1 - threshold) / (p1 - p2) * (x2 - x1);
      }
      i = next;
    }
  };

  const double left = crossing(-1);
  const double right = crossing(+1);
  return rad2deg(right - left);
}

double ripple_db(const PatternGrid& pattern, double phi_lo, double phi_hi,
                 Index theta_index) {
  if (theta_index < 0 || theta_index >= pattern.theta.size()) {
    throw std::invalid_argument("ripple_db: theta_index out of range");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool any = false;
  for (Index p = 0; p < pattern.phi.size(); ++p) {
    if (pattern.phi[p] < phi_lo || pattern.phi[p] > phi_hi) continue;
    any = true;
    lo = std::min(lo, pattern.values(theta_index, p));
    hi = std::max(hi, pattern.values(theta_index, p));
  }
  if (!any) {
    throw std::invalid_argument("ripple_db: region contains no grid samples");
  }
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(hi / lo);
}

double power_utilization(const WeightPair& w) {
  const double peak = max_abs_weight(w.a, w.b);
  if (!(peak > 0.0)) {
    throw std::invalid_argument(
        "power_utilization: weights must not be all zero");
  }
  const double energy = w.a.squaredNorm() + w.b.squaredNorm();
  return energy / (2.0 * static_cast<double>(w.size()) * peak * peak);
}

double power_utilization(const WeightArrayPair& w) {
  const double peak =
      std::max(w.a.cwiseAbs().maxCoeff(), w.b.cwiseAbs().maxCoeff());
  if (!(peak > 0.0)) {
    throw std::invalid_argument(
        "power_utilization: weights must not be all zero");
  }
  const double energy = w.a.squaredNorm() + w.b.squaredNorm();
  return energy / (2.0 * static_cast<double>(w.size()) * peak * peak);
}

}  // namespace broadbeam
