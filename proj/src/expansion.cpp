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

#include "broadbeam/expansion.hpp"

#include <string>

namespace broadbeam {

namespace {

void require_unimodular(const CVec& x, const char* who) {
  if (!is_unimodular(x)) {
    throw std::invalid_argument(std::string(who) +
                                ": weights must be unimodular");
  }
}

void require_unimodular(const CMat& x, const char* who) {
  if (!is_unimodular(x)) {
    throw std::invalid_argument(std::string(who) +
                                ": weights must be unimodular");
  }
}

// Kronecker product with the explicit index convention
// out(l*rows(B)+n, k*cols(B)+m) = A(l,k) * B(n,m).
CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index l = 0; l < a.rows(); ++l) {
    for (Index k = 0; k < a.cols(); ++k) {
      out.block(l * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(l, k) * b;
    }
  }
  return out;
}

CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

}  // namespace

CVec exchange(const CVec& x) { return x.reverse(); }

CMat exchange(const CMat& x) { return x.reverse(); }

WeightPair companion(const WeightPair& proto) {
  require_unimodular(proto.a, "companion");
  require_unimodular(proto.b, "companion");
  return WeightPair(-exchange(proto.b).conjugate(),
                    exchange(proto.a).conjugate());
}

WeightPair expand_ula(const WeightPair& proto, const CVec& u, const CVec& v) {
  if (u.size() != v.size() || u.size() == 0) {
    throw std::invalid_argument(
        "expand_ula: expanders must be non-empty and of equal length");
  }
  require_unimodular(u, "expand_ula");
  require_unimodular(v, "expand_ula");
  require_unimodular(proto.a, "expand_ula");
  require_unimodular(proto.b, "expand_ula");

  const CVec flipped_a = exchange(proto.a).conjugate();
  const CVec flipped_b = exchange(proto.b).conjugate();
  const Index n = u.size(), m = proto.size();

  CVec wa(2 * n * m), wb(2 * n * m);
  wa << kron(u, proto.a), -kron(v, flipped_b);
  wb << kron(u, proto.b), kron(v, flipped_a);
  return WeightPair(std::move(wa), std::move(wb));
}

WeightArrayPair expand_ula_to_ura(const WeightPair& proto, const CVec& u,
                                  const CVec& v, Orientation orientation) {
  if (u.size() != v.size() || u.size() == 0) {
    throw std::invalid_argument(
        "expand_ula_to_ura: expanders must be non-empty and of equal length");
  }
  require_unimodular(u, "expand_ula_to_ura");
  require_unimodular(v, "expand_ula_to_ura");
  require_unimodular(proto.a, "expand_ula_to_ura");
  require_unimodular(proto.b, "expand_ula_to_ura");

  const Index n = u.size(), m = proto.size();
  // u p^T is an outer product; p^H E as a row is the reversed conjugate.
  const CMat top_a = u * proto.a.transpose();
  const CMat top_b = u * proto.b.transpose();
  const CMat bot_a = -(v * exchange(proto.b).conjugate().transpose());
  const CMat bot_b = v * exchange(proto.a).conjugate().transpose();

  CMat wa, wb;
  if (orientation == Orientation::kVertical) {
    wa.resize(2 * n, m);
    wb.resize(2 * n, m);
    wa << top_a, bot_a;
    wb << top_b, bot_b;
  } else {
    wa.resize(n, 2 * m);
    wb.resize(n, 2 * m);
    wa << top_a, bot_a;
    wb << top_b, bot_b;
  }
  return WeightArrayPair(std::move(wa), std::move(wb));
}

WeightArrayPair expand_ura(const WeightArrayPair& proto, const CMat& u,
                           const CMat& v, Orientation orientation) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.size() == 0) {
    throw std::invalid_argument(
        "expand_ura: expanders must be non-empty and of equal shape");
  }
  require_unimodular(u, "expand_ura");
  require_unimodular(v, "expand_ura");
  require_unimodular(proto.a, "expand_ura");
  require_unimodular(proto.b, "expand_ura");

  const CMat flipped_a = exchange(proto.a).conjugate();
  const CMat flipped_b = exchange(proto.b).conjugate();
  const CMat top_a = kron(u, proto.a);
  const CMat top_b = kron(u, proto.b);
  const CMat bot_a = -kron(v, flipped_b);
  const CMat bot_b = kron(v, flipped_a);

  CMat wa, wb;
  if (orientation == Orientation::kVertical) {
    wa.resize(top_a.rows() + bot_a.rows(), top_a.cols());
    wb.resize(wa.rows(), wa.cols());
    wa << top_a, bot_a;
    wb << top_b, bot_b;
  } else {
    wa.resize(top_a.rows(), top_a.cols() + bot_a.cols());
    wb.resize(wa.rows(), wa.cols());
    wa << top_a, bot_a;
    wb << top_b, bot_b;
  }
  return WeightArrayPair(std::move(wa), std::move(wb));
}

double expansion_ripple_bound(double proto_ripple, double expander_ripple,
                              Index n_expander, Index m_proto) {
  if (proto_ripple < 0.0 || expander_ripple < 0.0 || n_expander < 1 ||
      m_proto < 1) {
    throw std::invalid_argument(
        "expansion_ripple_bound: ripples must be >= 0 and sizes >= 1");
  }
  const double n2 = 2.0 * static_cast<double>(n_expander);
  const double m2 = 2.0 * static_cast<double>(m_proto);
  return n2 * proto_ripple + m2 * expander_ripple +
         expander_ripple * proto_ripple;
}

}  // namespace broadbeam
