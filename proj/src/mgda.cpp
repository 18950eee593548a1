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

#include "broadbeam/mgda.hpp"

#include <algorithm>
#include <vector>

#include "broadbeam/random.hpp"
#include "broadbeam/sequences.hpp"

namespace broadbeam {

namespace {

// Full state rebuilds are this many commits apart, flushing the rounding
// drift of the incremental sum-AACF updates.
constexpr int kRefreshInterval = 4096;

// Dual-sequence state with incrementally maintained autocorrelations.
//
// Both halves of the stacked phase vector are kept as n x m unimodular
// matrices (n = 1 for the 1D search). Changing a single entry changes the
// 2D AACF of its side at every lag by at most two terms, so a candidate move
// is scored in O(nm) instead of the O((nm)^2) full evaluation.
class PairState {
 public:
  PairState(Index n, Index m)
      : n_(n),
        m_(m),
        u_(CMat::Ones(n, m)),
        v_(CMat::Ones(n, m)),
        sum_(CMat::Zero(2 * n - 1, 2 * m - 1)),
        probe_delta_(CMat::Zero(2 * n - 1, 2 * m - 1)) {}

  // Full rebuild from a stacked phase vector.
  void reset(const RVec& phases) {
    const Index p = n_ * m_;
    u_ = weights_from_phases(
        RMat(Eigen::Map<const RMat>(phases.data(), n_, m_)));
    v_ = weights_from_phases(
        RMat(Eigen::Map<const RMat>(phases.data() + p, n_, m_)));
    rebuild();
  }

  double sidelobe() const { return sidelobe_; }

  // Sidelobe if stacked coordinate k were set to the given phase. Does not
  // commit; the most recent probe can be applied with commit().
  double probe(Index k, double phase) {
    const Index p = n_ * m_;
    probe_side_a_ = k < p;
    const Index local = probe_side_a_ ? k : k - p;
    probe_row_ = local % n_;
    probe_col_ = local / n_;
    const CMat& x = probe_side_a_ ? u_ : v_;
    probe_value_ = std::polar(1.0, phase);
    const Complex delta = probe_value_ - x(probe_row_, probe_col_);

    const Index r = probe_row_, c = probe_col_;
    double peak_sq = 0.0;  // compare squared magnitudes, one sqrt at the end
    for (Index tn = -(n_ - 1); tn <= n_ - 1; ++tn) {
      for (Index tm = -(m_ - 1); tm <= m_ - 1; ++tm) {
        if (tn == 0 && tm == 0) {
          // R(0,0) is the energy, invariant under unimodular moves.
          probe_delta_(n_ - 1, m_ - 1) = Complex(0.0, 0.0);
          continue;
        }
        Complex d(0.0, 0.0);
        if (r + tn >= 0 && r + tn < n_ && c + tm >= 0 && c + tm < m_) {
          d += delta * std::conj(x(r + tn, c + tm));
        }
        if (r - tn >= 0 && r - tn < n_ && c - tm >= 0 && c - tm < m_) {
          d += x(r - tn, c - tm) * std::conj(delta);
        }
        probe_delta_(tn + n_ - 1, tm + m_ - 1) = d;
        peak_sq =
            std::max(peak_sq, std::norm(sum_(tn + n_ - 1, tm + m_ - 1) + d));
      }
    }
    probe_sidelobe_ = std::sqrt(peak_sq);
    return probe_sidelobe_;
  }

  // Applies the last probed move.
  void commit() {
    CMat& x = probe_side_a_ ? u_ : v_;
    x(probe_row_, probe_col_) = probe_value_;
    sum_ += probe_delta_;
    sidelobe_ = probe_sidelobe_;
    if (++commits_since_refresh_ >= kRefreshInterval) rebuild();
  }

 private:
  void rebuild() {
    sum_ = aacf2d(u_).values() + aacf2d(v_).values();
    double peak_sq = 0.0;
    for (Index tn = 0; tn < 2 * n_ - 1; ++tn) {
      for (Index tm = 0; tm < 2 * m_ - 1; ++tm) {
        if (tn == n_ - 1 && tm == m_ - 1) continue;
        peak_sq = std::max(peak_sq, std::norm(sum_(tn, tm)));
      }
    }
    sidelobe_ = std::sqrt(peak_sq);
    commits_since_refresh_ = 0;
  }

  Index n_, m_;
  CMat u_, v_;
  CMat sum_;  // sum AACF over lags (-(n-1)..n-1) x (-(m-1)..m-1)
  double sidelobe_ = 0.0;
  int commits_since_refresh_ = 0;

  CMat probe_delta_;
  Complex probe_value_;
  Index probe_row_ = 0, probe_col_ = 0;
  bool probe_side_a_ = true;
  double probe_sidelobe_ = 0.0;
};

double exact_sidelobe(Index n, Index m, const RVec& phases) {
  const auto [u, v] = decode_array_pair(phases, n, m);
  return max_sidelobe(u, v);
}

MgdaResult run_search(Index n, Index m, const MgdaConfig& cfg) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("search: dimensions must be >= 1");
  }
  cfg.validate();

  const Index pair_len = n * m;
  const Index dim = 2 * pair_len;
  const double eps = cfg.tolerance;

  Rng rng(cfg.rng_seed);
  RVec phases(dim), steps(dim);
  for (Index i = 0; i < dim; ++i) phases[i] = rng.uniform(0.0, kTwoPi);
  for (Index i = 0; i < dim; ++i) steps[i] = rng.uniform(0.0, kTwoPi);
  if (cfg.pin_first_phase) phases[0] = 0.0;

  PairState state(n, m);
  state.reset(phases);
  std::int64_t evals = 1;
  double side = state.sidelobe();

  double best_side = side;
  RVec best_phases = phases;
  double level = -side;  // water level, in utility units
  int unsuccessful = 0;
  std::vector<char> frozen(dim, 0);
  bool budget_hit = false;

  std::vector<Index> order(dim);
  for (Index i = 0; i < dim; ++i) order[i] = i;

  while (side > eps) {
    bool accepted_any = false;
    // Visit the coordinates in a fresh random order each sweep; a fixed
    // visiting order biases which lags get balanced and stalls the descent
    // at larger sizes.
    for (Index i = dim - 1; i > 0; --i) {
      const Index j = static_cast<Index>(rng.uniform(0.0, i + 1.0));
      std::swap(order[i], order[std::min(j, i)]);
    }
    for (Index k = 0; k < dim && side > eps; ++k) {
      const Index i = order[k];
      if (frozen[i]) continue;
      if (cfg.pin_first_phase && i == 0) continue;
      // One forward/backward/shrink cycle per coordinate per sweep; a
      // single shrink round per visit spreads the step-size budget over
      // many sweeps.
      if (evals >= cfg.max_iterations) {
        budget_hit = true;
        break;
      }
      const double forward = phases[i] + steps[i];
      const double side_fwd = state.probe(i, forward);
      ++evals;
      if (-side_fwd >= level) {
        state.commit();
        phases[i] = forward;
        side = side_fwd;
        accepted_any = true;
      } else {
        if (evals >= cfg.max_iterations) {
          budget_hit = true;
          break;
        }
        const double backward = phases[i] - steps[i];
        const double side_bwd = state.probe(i, backward);
        ++evals;
        if (-side_bwd >= level) {
          state.commit();
          phases[i] = backward;
          side = side_bwd;
          accepted_any = true;
        } else {
          steps[i] *= cfg.scale_factor;
          if (steps[i] < cfg.step_floor) {
            frozen[i] = 1;  // frozen until the next jump re-randomizes steps
          }
        }
      }
      if (side < best_side) {
        best_side = side;
        best_phases = phases;
      }
    }
    if (budget_hit) break;

    // Flooding. The rise per sweep caps at (1 - alpha) of the gap to
    // zero: additive rain far from the ceiling, a geometric approach near
    // it, never faster than the step sizes anneal.
    level += std::min(cfg.rain_intensity,
                      (1.0 - cfg.scale_factor) * std::abs(level));

    if (accepted_any) {
      unsuccessful = 0;
    } else {
      ++unsuccessful;
    }

    if (unsuccessful >= cfg.max_unsuccessful && side > eps) {
      // Jump to a new neighborhood with fresh random steps, then reset the
      // water level to the utility at the new point.
      for (Index i = 0; i < dim; ++i) steps[i] = rng.uniform(0.0, kTwoPi);
      for (Index i = 0; i < dim; ++i) {
        phases[i] = wrap_phase(phases[i] + steps[i]);
      }
      if (cfg.pin_first_phase) phases[0] = 0.0;
      if (evals >= cfg.max_iterations) break;
      state.reset(phases);
      ++evals;
      side = state.sidelobe();
      if (side < best_side) {
        best_side = side;
        best_phases = phases;
      }
      level = -side;
      unsuccessful = 0;
      std::fill(frozen.begin(), frozen.end(), 0);
    }
  }

  // The reported level comes from an exact re-evaluation of the returned
  // phases, not the incrementally tracked value.
  RVec out = side <= eps ? phases : best_phases;
  double exact = exact_sidelobe(n, m, out);
  if (side <= eps && exact > eps && best_side < side) {
    out = best_phases;
    exact = exact_sidelobe(n, m, out);
  }

  MgdaResult result;
  result.phases = wrap_phases(out);
  result.achieved_sidelobe = exact;
  result.iterations = evals;
  result.restarts = 0;
  result.converged = exact <= eps;
  return result;
}

MgdaResult run_with_restarts(Index n, Index m, const MgdaConfig& cfg,
                             int max_restarts) {
  if (max_restarts < 1) {
    throw std::invalid_argument("search_with_restarts: need max_restarts >= 1");
  }
  MgdaResult best;
  std::int64_t total_evals = 0;
  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    MgdaConfig c = cfg;
    c.rng_seed = cfg.rng_seed + static_cast<std::uint64_t>(attempt);
    MgdaResult r = run_search(n, m, c);
    total_evals += r.iterations;
    r.restarts = attempt;
    if (attempt == 0 || r.achieved_sidelobe < best.achieved_sidelobe) best = r;
    if (r.converged) {
      best = r;
      break;
    }
  }
  best.iterations = total_evals;
  return best;
}

}  // namespace

MgdaConfig MgdaConfig::defaults(Index m) { return defaults2d(1, m); }

MgdaConfig MgdaConfig::defaults2d(Index n, Index m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("MgdaConfig: dimensions must be >= 1");
  }
  MgdaConfig cfg;
  cfg.rain_intensity = 0.0005 * static_cast<double>(n * m);
  cfg.tolerance = 0.02 * static_cast<double>(n * m);
  return cfg;
}

void MgdaConfig::validate() const {
  if (!(rain_intensity > 0.0)) {
    throw std::invalid_argument("MgdaConfig: rain_intensity must be > 0");
  }
  if (!(scale_factor > 0.0) || scale_factor > 1.0) {
    throw std::invalid_argument("MgdaConfig: scale_factor must be in (0, 1]");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("MgdaConfig: tolerance must be > 0");
  }
  if (max_unsuccessful < 1) {
    throw std::invalid_argument("MgdaConfig: max_unsuccessful must be >= 1");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("MgdaConfig: max_iterations must be >= 1");
  }
  if (!(step_floor > 0.0)) {
    throw std::invalid_argument("MgdaConfig: step_floor must be > 0");
  }
}

double utility(const RVec& stacked_phases) {
  if (stacked_phases.size() == 0 || stacked_phases.size() % 2 != 0) {
    throw std::invalid_argument(
        "utility: stacked phase vector must have even positive length");
  }
  const auto [u, v] = decode_pair(stacked_phases);
  return -max_sidelobe(u, v);
}

double utility(const RVec& stacked_phases, Index n, Index m) {
  const auto [u, v] = decode_array_pair(stacked_phases, n, m);
  return -max_sidelobe(u, v);
}

std::pair<CVec, CVec> decode_pair(const RVec& stacked_phases) {
  if (stacked_phases.size() == 0 || stacked_phases.size() % 2 != 0) {
    throw std::invalid_argument(
        "decode_pair: stacked phase vector must have even positive length");
  }
  const Index m = stacked_phases.size() / 2;
  return {weights_from_phases(RVec(stacked_phases.head(m))),
          weights_from_phases(RVec(stacked_phases.tail(m)))};
}

std::pair<CMat, CMat> decode_array_pair(const RVec& stacked_phases, Index n,
                                        Index m) {
  if (n < 1 || m < 1 || stacked_phases.size() != 2 * n * m) {
    throw std::invalid_argument(
        "decode_array_pair: stacked phase vector must have length 2*n*m");
  }
  const Index p = n * m;
  RMat pu = Eigen::Map<const RMat>(stacked_phases.data(), n, m);
  RMat pv = Eigen::Map<const RMat>(stacked_phases.data() + p, n, m);
  return {weights_from_phases(pu), weights_from_phases(pv)};
}

MgdaResult search(Index m, const MgdaConfig& config) {
  return run_search(1, m, config);
}

MgdaResult search2d(Index n, Index m, const MgdaConfig& config) {
  return run_search(n, m, config);
}

MgdaResult search_with_restarts(Index m, const MgdaConfig& config,
                                int max_restarts) {
  return run_with_restarts(1, m, config, max_restarts);
}

MgdaResult search_with_restarts2d(Index n, Index m, const MgdaConfig& config,
                                  int max_restarts) {
  return run_with_restarts(n, m, config, max_restarts);
}

}  // namespace broadbeam
