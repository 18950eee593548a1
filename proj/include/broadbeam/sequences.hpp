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

#include <utility>

#include "broadbeam/types.hpp"

namespace broadbeam {

/// Aperiodic autocorrelation values of a length-M sequence, indexed by lag
/// tau in {-(M-1), ..., M-1}. Conjugate-symmetric: R(-tau) = conj(R(tau));
/// R(0) equals the sequence energy (= M for unimodular sequences).
class Aacf {
 public:
  Aacf() = default;

  /// values must have odd length 2M-1, ordered from lag -(M-1) to M-1.
  explicit Aacf(CVec values) : values_(std::move(values)) {
    if (values_.size() == 0 || values_.size() % 2 == 0) {
      throw std::invalid_argument("Aacf: values must have odd length 2M-1");
    }
  }

  Index max_lag() const { return (values_.size() - 1) / 2; }

  /// Value at lag tau; zero outside (-M, M).
  Complex operator()(Index tau) const {
    if (tau < -max_lag() || tau > max_lag()) return Complex(0.0, 0.0);
    return values_[tau + max_lag()];
  }

  const CVec& values() const { return values_; }

 private:
  CVec values_;
};

/// Two-dimensional aperiodic autocorrelation of an N x M array, indexed by
/// lag pairs (tau_n, tau_m) with |tau_n| < N and |tau_m| < M.
class Aacf2d {
 public:
  Aacf2d() = default;

  /// values must have shape (2N-1) x (2M-1), row lag -(N-1)..N-1 down the
  /// rows and column lag -(M-1)..M-1 across the columns.
  explicit Aacf2d(CMat values) : values_(std::move(values)) {
    if (values_.size() == 0 || values_.rows() % 2 == 0 ||
        values_.cols() % 2 == 0) {
      throw std::invalid_argument(
          "Aacf2d: values must have odd shape (2N-1) x (2M-1)");
    }
  }

  Index max_row_lag() const { return (values_.rows() - 1) / 2; }
  Index max_col_lag() const { return (values_.cols() - 1) / 2; }

  Complex operator()(Index tau_n, Index tau_m) const {
    if (tau_n < -max_row_lag() || tau_n > max_row_lag() ||
        tau_m < -max_col_lag() || tau_m > max_col_lag()) {
      return Complex(0.0, 0.0);
    }
    return values_(tau_n + max_row_lag(), tau_m + max_col_lag());
  }

  const CMat& values() const { return values_; }

 private:
  CMat values_;
};

/// Aperiodic autocorrelation R_u(tau) = sum_m u_m * conj(u_{m+tau}) over the
/// overlapping index range. Throws for empty input.
Aacf aacf(const CVec& u);

/// Two-dimensional aperiodic autocorrelation of an N x M array. Reduces to
/// the 1D function for a single row. Throws for empty input.
Aacf2d aacf2d(const CMat& u);

/// Element-wise sum of the two sequences' AACFs. Shapes must match.
Aacf sum_aacf(const CVec& u, const CVec& v);
Aacf2d sum_aacf2d(const CMat& u, const CMat& v);

/// Largest sum-AACF magnitude over all nonzero lags; 0 when there are no
/// nonzero lags (length-1 / 1x1 inputs).
double max_sidelobe(const CVec& u, const CVec& v);
double max_sidelobe(const CMat& u, const CMat& v);

/// True iff the pair's sum AACF vanishes at every nonzero lag, up to the
/// numerical tolerance tol (not an epsilon relaxation).
bool is_golay_pair(const CVec& u, const CVec& v, double tol = kGolayTol);
bool is_golay_array_pair(const CMat& u, const CMat& v,
                         double tol = kGolayTol);

/// True iff every nonzero-lag sum-AACF magnitude is at most eps.
bool is_eps_complementary(const CVec& u, const CVec& v, double eps);
bool is_eps_complementary(const CMat& u, const CMat& v, double eps);

/// Verified binary complementary kernel pair for lengths 1, 2, 10 and 26.
/// Throws std::domain_error for other lengths, naming the supported set.
std::pair<CVec, CVec> golay_kernel(Index length);

/// True iff m is a length for which a quaternary complementary pair is known
/// to exist: m = 2^(a+f) 3^b 5^c 11^d 13^e with f <= c+e and
/// b+c+d+e <= a+2f+1 over nonnegative integers.
bool is_known_golay_length(Index m);

/// Upper bound on the sum-power-spectrum deviation |S_u + S_v - 2M| implied
/// by a sidelobe level eps: the triangle inequality over the 2(M-1) nonzero
/// lags gives 2(M-1)*eps.
double spectral_ripple_bound(Index m, double eps);

/// Two-dimensional analogue: ((2N-1)(2M-1) - 1) * eps.
double spectral_ripple_bound(Index n, Index m, double eps);

}  // namespace broadbeam
