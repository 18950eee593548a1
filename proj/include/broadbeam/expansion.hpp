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

/// Index-reversed copy (multiplication by the exchange matrix). Applying it
/// twice is the identity.
CVec exchange(const CVec& x);

/// 180-degree rotation of a matrix (exchange applied to rows and columns).
CMat exchange(const CMat& x);

/// Companion weights of a protoarray: c_a = -reverse(conj(proto_b)),
/// c_b = reverse(conj(proto_a)). Appending the protoarray after its companion
/// doubles the array while preserving the total radiation pattern; the two
/// subarrays' fields stay orthogonal at every angle.
WeightPair companion(const WeightPair& proto);

/// Pattern-preserving linear expansion of a length-M protoarray with a
/// length-N expander pair (u, v):
///   w_a = [u (x) p_a; -v (x) reverse(conj(p_b))],
///   w_b = [u (x) p_b;  v (x) reverse(conj(p_a))].
/// Output length 2NM. With complementary expanders the expanded power-domain
/// array factor is 2N times the protoarray's at every angle. Expanders must
/// be unimodular and of equal length but are not required to be
/// complementary; the construction is computed either way.
WeightPair expand_ula(const WeightPair& proto, const CVec& u, const CVec& v);

enum class Orientation { kVertical, kHorizontal };

/// Lifts a length-M protoarray to a rectangular array using a length-N
/// expander pair: vertical gives a 2N x M array
///   W_a = [u p_a^T; -v p_b^H E],  W_b = [u p_b^T; v p_a^H E],
/// horizontal concatenates the same blocks side by side into N x 2M.
WeightArrayPair expand_ula_to_ura(const WeightPair& proto, const CVec& u,
                                  const CVec& v, Orientation orientation);

/// Expands an N x M protoarray with an L x K expander array pair:
///   W_a = [U (x) P_a; -V (x) rot180(conj(P_b))]   (vertical, 2LN x KM)
/// and the horizontal variant concatenates the blocks into LN x 2KM.
WeightArrayPair expand_ura(const WeightArrayPair& proto, const CMat& u,
                           const CMat& v, Orientation orientation);

/// Upper bound on the expanded array-factor deviation from its flat level
/// 2N * 2M, given the protoarray's array-factor ripple bound (absolute,
/// e.g. 2(M-1)*eps) and the expander pair's ripple bound around 2N. From the
/// factorized pattern, (2N + re)(2M + rp) - 4NM = 2N*rp + 2M*re + re*rp.
double expansion_ripple_bound(double proto_ripple, double expander_ripple,
                              Index n_expander, Index m_proto);

}  // namespace broadbeam
