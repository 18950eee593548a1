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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace broadbeam {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Numerical tolerance for "exact" complementarity checks. This is a
/// float-noise allowance, distinct from the user-facing epsilon relaxation.
inline constexpr double kGolayTol = 1e-9;

/// Magnitude tolerance for unimodularity checks.
inline constexpr double kUnimodularTol = 1e-12;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Canonicalizes a phase into [0, 2*pi). Throws std::invalid_argument for
/// non-finite input.
inline double wrap_phase(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("wrap_phase: phase must be finite");
  }
  double w = std::fmod(radians, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod rounding can land exactly on 2*pi
  return w;
}

inline RVec wrap_phases(const RVec& phases) {
  return phases.unaryExpr([](double p) { return wrap_phase(p); });
}

inline RMat wrap_phases(const RMat& phases) {
  return phases.unaryExpr([](double p) { return wrap_phase(p); });
}

/// Materializes unimodular weights exp(j*phi) from phases.
inline CVec weights_from_phases(const RVec& phases) {
  CVec w(phases.size());
  for (Index i = 0; i < phases.size(); ++i) {
    if (!std::isfinite(phases[i])) {
      throw std::invalid_argument("weights_from_phases: phase must be finite");
    }
    w[i] = std::polar(1.0, phases[i]);
  }
  return w;
}

inline CMat weights_from_phases(const RMat& phases) {
  CMat w(phases.rows(), phases.cols());
  for (Index c = 0; c < phases.cols(); ++c) {
    for (Index r = 0; r < phases.rows(); ++r) {
      if (!std::isfinite(phases(r, c))) {
        throw std::invalid_argument(
            "weights_from_phases: phase must be finite");
      }
      w(r, c) = std::polar(1.0, phases(r, c));
    }
  }
  return w;
}

inline RVec phases_from_weights(const CVec& w) {
  RVec p(w.size());
  for (Index i = 0; i < w.size(); ++i) p[i] = wrap_phase(std::arg(w[i]));
  return p;
}

inline RMat phases_from_weights(const CMat& w) {
  RMat p(w.rows(), w.cols());
  for (Index c = 0; c < w.cols(); ++c)
    for (Index r = 0; r < w.rows(); ++r)
      p(r, c) = wrap_phase(std::arg(w(r, c)));
  return p;
}

inline bool is_unimodular(const CVec& w, double tol = kUnimodularTol) {
  for (Index i = 0; i < w.size(); ++i) {
    if (std::abs(std::abs(w[i]) - 1.0) > tol) return false;
  }
  return w.size() > 0;
}

inline bool is_unimodular(const CMat& w, double tol = kUnimodularTol) {
  for (Index c = 0; c < w.cols(); ++c)
    for (Index r = 0; r < w.rows(); ++r)
      if (std::abs(std::abs(w(r, c)) - 1.0) > tol) return false;
  return w.size() > 0;
}

/// Dual-polarized excitation weights of a linear array. The two vectors hold
/// the per-polarization weights and must have equal length.
struct WeightPair {
  CVec a;
  CVec b;

  WeightPair() = default;
  WeightPair(CVec a_, CVec b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.size() != b.size()) {
      throw std::invalid_argument(
          "WeightPair: per-polarization vectors must have equal length");
    }
    if (a.size() == 0) {
      throw std::invalid_argument("WeightPair: weights must be non-empty");
    }
  }

  Index size() const { return a.size(); }
};

/// Dual-polarized excitation weights of a rectangular array (rows along z,
/// columns along y). The two matrices must have equal shape.
struct WeightArrayPair {
  CMat a;
  CMat b;

  WeightArrayPair() = default;
  WeightArrayPair(CMat a_, CMat b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      throw std::invalid_argument(
          "WeightArrayPair: per-polarization matrices must have equal shape");
    }
    if (a.size() == 0) {
      throw std::invalid_argument("WeightArrayPair: weights must be non-empty");
    }
  }

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
  Index size() const { return a.size(); }
};

}  // namespace broadbeam
