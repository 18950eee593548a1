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

#include "broadbeam/sequences.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace broadbeam {

namespace {

void require_same_shape(const CVec& u, const CVec& v, const char* who) {
  if (u.size() != v.size()) {
    throw std::invalid_argument(std::string(who) +
                                ": sequences must have equal length");
  }
}

void require_same_shape(const CMat& u, const CMat& v, const char* who) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument(std::string(who) +
                                ": arrays must have equal shape");
  }
}

}  // namespace

Aacf aacf(const CVec& u) {
  const Index m = u.size();
  if (m == 0) throw std::invalid_argument("aacf: sequence must be non-empty");
  CVec r(2 * m - 1);
  // Direct O(M^2) evaluation, bit-deterministic at desk-scale lengths.
  for (Index tau = -(m - 1); tau <= m - 1; ++tau) {
    const Index i0 = std::max<Index>(0, -tau);
    const Index n = m - std::abs(tau);
    r[tau + m - 1] = (u.segment(i0, n).array() *
                      u.segment(i0 + tau, n).array().conjugate())
                         .sum();
  }
  return Aacf(std::move(r));
}

Aacf2d aacf2d(const CMat& u) {
  const Index n = u.rows(), m = u.cols();
  if (u.size() == 0) {
    throw std::invalid_argument("aacf2d: array must be non-empty");
  }
  CMat r(2 * n - 1, 2 * m - 1);
  for (Index tn = -(n - 1); tn <= n - 1; ++tn) {
    const Index r0 = std::max<Index>(0, -tn);
    const Index nr = n - std::abs(tn);
    for (Index tm = -(m - 1); tm <= m - 1; ++tm) {
      const Index c0 = std::max<Index>(0, -tm);
      const Index nc = m - std::abs(tm);
      r(tn + n - 1, tm + m - 1) =
          (u.block(r0, c0, nr, nc).array() *
           u.block(r0 + tn, c0 + tm, nr, nc).array().conjugate())
              .sum();
    }
  }
  return Aacf2d(std::move(r));
}

Aacf sum_aacf(const CVec& u, const CVec& v) {
  require_same_shape(u, v, "sum_aacf");
  return Aacf(aacf(u).values() + aacf(v).values());
}

Aacf2d sum_aacf2d(const CMat& u, const CMat& v) {
  require_same_shape(u, v, "sum_aacf2d");
  return Aacf2d(aacf2d(u).values() + aacf2d(v).values());
}

double max_sidelobe(const CVec& u, const CVec& v) {
  require_same_shape(u, v, "max_sidelobe");
  const Aacf s = sum_aacf(u, v);
  double peak = 0.0;
  for (Index tau = 1; tau <= s.max_lag(); ++tau) {
    peak = std::max(peak, std::abs(s(tau)));
  }
  return peak;
}

double max_sidelobe(const CMat& u, const CMat& v) {
  require_same_shape(u, v, "max_sidelobe");
  const Aacf2d s = sum_aacf2d(u, v);
  double peak = 0.0;
  for (Index tn = -s.max_row_lag(); tn <= s.max_row_lag(); ++tn) {
    for (Index tm = -s.max_col_lag(); tm <= s.max_col_lag(); ++tm) {
      if (tn == 0 && tm == 0) continue;
      peak = std::max(peak, std::abs(s(tn, tm)));
    }
  }
  return peak;
}

bool is_golay_pair(const CVec& u, const CVec& v, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_golay_pair: tol must be >= 0");
  return max_sidelobe(u, v) <= tol;
}

bool is_golay_array_pair(const CMat& u, const CMat& v, double tol) {
  if (tol < 0.0) {
    throw std::invalid_argument("is_golay_array_pair: tol must be >= 0");
  }
  return max_sidelobe(u, v) <= tol;
}

bool is_eps_complementary(const CVec& u, const CVec& v, double eps) {
  if (eps < 0.0) {
    throw std::invalid_argument("is_eps_complementary: eps must be >= 0");
  }
  return max_sidelobe(u, v) <= eps;
}

bool is_eps_complementary(const CMat& u, const CMat& v, double eps) {
  if (eps < 0.0) {
    throw std::invalid_argument("is_eps_complementary: eps must be >= 0");
  }
  return max_sidelobe(u, v) <= eps;
}

std::pair<CVec, CVec> golay_kernel(Index length) {
  // The length-10 and length-26 sign patterns below were found once by an
  // end-paired branch-and-bound search over binary sequences (fixing the
  // outermost entries first prunes on the fully determined high lags) and
  // have exactly zero sum-AACF sidelobes. The test suite re-verifies them
  // against the brute-force autocorrelation oracle.
  static const int k10u[] = {1, -1, 1, -1, -1, -1, 1, 1, -1, -1};
  static const int k10v[] = {1, -1, -1, 1, -1, 1, 1, 1, 1, 1};
  static const int k26u[] = {1, -1, 1,  -1, -1, -1, 1,  1,  -1, -1, -1, -1, -1,
                             -1, -1, 1, 1,  1,  1,  -1, 1,  1,  -1, -1, 1,  -1};
  static const int k26v[] = {1, -1, 1,  -1, -1, -1, 1,  1, -1, -1, -1, -1, 1,
                             -1, 1,  -1, -1, -1, -1, 1,  -1, -1, 1,  1,  -1, 1};

  auto to_cvec = [](const int* signs, Index n) {
    CVec out(n);
    for (Index i = 0; i < n; ++i) out[i] = Complex(signs[i], 0.0);
    return out;
  };

  switch (length) {
    case 1:
      return {CVec::Ones(1), CVec::Ones(1)};
    case 2: {
      CVec u(2), v(2);
      u << 1, 1;
      v << 1, -1;
      return {u, v};
    }
    case 10:
      return {to_cvec(k10u, 10), to_cvec(k10v, 10)};
    case 26:
      return {to_cvec(k26u, 26), to_cvec(k26v, 26)};
    default:
      throw std::domain_error(
          "golay_kernel: no kernel for length " + std::to_string(length) +
          "; supported lengths are 1, 2, 10, 26");
  }
}

bool is_known_golay_length(Index m) {
  if (m < 1) {
    throw std::invalid_argument("is_known_golay_length: m must be >= 1");
  }
  auto strip = [](Index& x, Index p) {
    int k = 0;
    while (x % p == 0) {
      x /= p;
      ++k;
    }
    return k;
  };
  Index x = m;
  const int two = strip(x, 2);
  const int b = strip(x, 3);
  const int c = strip(x, 5);
  const int d = strip(x, 11);
  const int e = strip(x, 13);
  if (x != 1) return false;  // contains a prime outside {2, 3, 5, 11, 13}
  // m = 2^(a+f) 3^b 5^c 11^d 13^e needs a + f = two, f <= c + e and
  // b + c + d + e <= a + 2f + 1 for some nonnegative split (a, f).
  for (int f = 0; f <= std::min(two, c + e); ++f) {
    const int a = two - f;
    if (b + c + d + e <= a + 2 * f + 1) return true;
  }
  return false;
}

double spectral_ripple_bound(Index m, double eps) {
  if (m < 1 || eps < 0.0) {
    throw std::invalid_argument("spectral_ripple_bound: need m >= 1, eps >= 0");
  }
  return 2.0 * static_cast<double>(m - 1) * eps;
}

double spectral_ripple_bound(Index n, Index m, double eps) {
  if (n < 1 || m < 1 || eps < 0.0) {
    throw std::invalid_argument(
        "spectral_ripple_bound: need n, m >= 1, eps >= 0");
  }
  const double lags = static_cast<double>((2 * n - 1) * (2 * m - 1) - 1);
  return lags * eps;
}

}  // namespace broadbeam
