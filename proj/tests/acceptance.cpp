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
//
// End-to-end acceptance suite. Each numbered check prints one PASS/FAIL line;
// the process exits with the number of failed checks.

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "broadbeam/baselines.hpp"
#include "broadbeam/evaluation.hpp"
#include "broadbeam/expansion.hpp"
#include "broadbeam/mgda.hpp"
#include "broadbeam/patterns.hpp"
#include "broadbeam/sequences.hpp"
#include "oracles.hpp"

using namespace broadbeam;

namespace {

int g_failures = 0;

class Check {
 public:
  Check(int number, std::string title)
      : number_(number), title_(std::move(title)),
        start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      failed_ = true;
      details_ += (details_.empty() ? "" : "; ") + what;
    }
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  void finish(double budget_seconds = 0.0) {
    const double elapsed = seconds();
    if (budget_seconds > 0.0 && elapsed > budget_seconds) {
      failed_ = true;
      std::ostringstream over;
      over << "runtime " << elapsed << " s exceeds " << budget_seconds << " s";
      details_ += (details_.empty() ? "" : "; ") + over.str();
    }
    if (failed_) ++g_failures;
    std::printf("[%s] %2d: %s (%.2f s)%s%s\n", failed_ ? "FAIL" : "PASS",
                number_, title_.c_str(), elapsed,
                details_.empty() ? "" : " -- ", details_.c_str());
    std::fflush(stdout);
  }

 private:
  int number_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  bool failed_ = false;
  std::string details_;
};

const AngleGrid& cut721() {
  static const AngleGrid grid =
      AngleGrid::azimuth_cut(-kPi / 2, kPi / 2, deg2rad(0.25));
  return grid;
}

// Every complementary pair reachable from the binary kernels by the linear
// expansion, up to the given length.
std::map<Index, WeightPair> kernel_closure(Index max_len) {
  std::map<Index, WeightPair> pool;
  for (Index len : {Index(1), Index(2), Index(10), Index(26)}) {
    const auto [u, v] = golay_kernel(len);
    pool.emplace(len, WeightPair(u, v));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Index> lengths;
    for (const auto& [len, pair] : pool) lengths.push_back(len);
    for (Index expander_len : lengths) {
      for (Index proto_len : lengths) {
        const Index out_len = 2 * expander_len * proto_len;
        if (out_len > max_len || pool.count(out_len)) continue;
        const WeightPair& expander = pool.at(expander_len);
        pool.emplace(out_len, expand_ula(pool.at(proto_len), expander.a,
                                         expander.b));
        grew = true;
      }
    }
  }
  return pool;
}

void check1_kernel_closure(const std::map<Index, WeightPair>& pool) {
  Check check(1, "binary kernels and their expansions are complementary");
  check.require(pool.size() >= 10, "expected at least ten distinct lengths");
  for (const auto& [len, pair] : pool) {
    const double side = max_sidelobe(pair.a, pair.b);
    std::ostringstream what;
    what << "length " << len << " sidelobe " << side;
    check.require(side <= 1e-9, what.str());
  }
  check.finish(1.0);
}

void check2_flatness(const std::map<Index, WeightPair>& pool) {
  Check check(2, "summed beam power of exact pairs is flat at 2M");
  for (const auto& [len, pair] : pool) {
    const ArrayGeometry g = ArrayGeometry::ula(len);
    const PatternGrid af = array_factor_power(pair, g, cut721());
    const double flat = 2.0 * static_cast<double>(len);
    double worst = 0.0;
    for (Index i = 0; i < af.phi.size(); ++i) {
      worst = std::max(worst, std::abs(af.values(0, i) - flat));
    }
    std::ostringstream what;
    what << "length " << len << " deviation " << worst;
    check.require(worst <= 1e-9 * flat, what.str());
  }
  check.finish(5.0);
}

void check3_reference_pair() {
  Check check(3, "printed 7-element phases verify at the 0.2 tolerance");
  const WeightPair ref = oracles::reference_pair_m7();
  const double side = max_sidelobe(ref.a, ref.b);
  check.require(side <= 0.2, "sidelobe above 0.2");
  check.require(is_eps_complementary(ref.a, ref.b, 0.2), "eps check failed");

  const double bound = spectral_ripple_bound(7, side);
  const PatternGrid af =
      array_factor_power(ref, ArrayGeometry::ula(7), cut721());
  double worst = 0.0;
  for (Index i = 0; i < af.phi.size(); ++i) {
    if (std::abs(af.phi[i]) > deg2rad(60.0) + 1e-12) continue;
    worst = std::max(worst, std::abs(af.values(0, i) - 14.0));
  }
  std::ostringstream what;
  what << "ripple " << worst << " exceeds bound " << bound;
  check.require(worst <= bound + 1e-9, what.str());
  check.finish(1.0);
}

void check4_search_convergence() {
  bool all_ok = true;
  for (Index m : {3, 5, 6, 7, 9, 11, 13, 15, 17, 19, 21}) {
    std::ostringstream title;
    title << "search converges at one percent for M = " << m;
    Check check(4, title.str());
    MgdaConfig cfg = MgdaConfig::defaults(m);
    cfg.rng_seed = 1;
    const MgdaResult result = search_with_restarts(m, cfg, 10);
    check.require(result.converged, "did not converge in ten restarts");
    if (result.converged) {
      const auto [u, v] = decode_pair(result.phases);
      check.require(is_eps_complementary(u, v, cfg.tolerance),
                    "independent verification failed");
    }
    check.finish(60.0);
    all_ok = all_ok && result.converged;
  }
  (void)all_ok;
}

void check5_expansion_preservation() {
  Check check(5, "expansion preserves patterns; staged 32x14 stays in bound");
  Rng rng(7105);
  const auto [k2u, k2v] = golay_kernel(2);
  const auto [k10u, k10v] = golay_kernel(10);

  for (int rep = 0; rep < 50; ++rep) {
    WeightPair proto = [&]() {
      if (rep == 0) {
        return WeightPair(k10u, k10v);  // an exact pair among the protos
      }
      if (rep == 1) return oracles::reference_pair_m7();
      const Index m = 1 + static_cast<Index>(rng.uniform(0.0, 12.0));
      return WeightPair(oracles::random_unimodular(rng, m),
                        oracles::random_unimodular(rng, m));
    }();
    const WeightPair out = expand_ula(proto, k2u, k2v);
    const ArrayGeometry gp = ArrayGeometry::ula(proto.size());
    const ArrayGeometry ge = ArrayGeometry::ula(out.size());
    const PatternGrid base = array_factor_power(proto, gp, cut721());
    const PatternGrid big = array_factor_power(out, ge, cut721());
    double worst_rel = 0.0;
    for (Index i = 0; i < base.phi.size(); ++i) {
      const double expected = 4.0 * base.values(0, i);
      worst_rel = std::max(worst_rel, std::abs(big.values(0, i) - expected) /
                                          std::max(1.0, expected));
    }
    std::ostringstream what;
    what << "proto " << proto.size() << " relative deviation " << worst_rel;
    check.require(worst_rel <= 1e-9, what.str());
  }

  // Staged construction: reference design lifted horizontally, then two
  // row-quadrupling vertical expansions with 2x1 complementary expanders.
  const WeightPair ref = oracles::reference_pair_m7();
  CVec u2(2), v2(2);
  u2 << 1, 1;
  v2 << -1, 1;
  WeightArrayPair stage =
      expand_ula_to_ura(ref, u2, v2, Orientation::kHorizontal);
  check.require(stage.rows() == 2 && stage.cols() == 14, "stage 1 not 2x14");
  CMat uu(2, 1), vv(2, 1);
  uu << 1, 1;
  vv << -1, 1;
  stage = expand_ura(stage, uu, vv, Orientation::kVertical);
  stage = expand_ura(stage, uu, vv, Orientation::kVertical);
  std::ostringstream dims;
  dims << "final " << stage.rows() << "x" << stage.cols();
  check.require(stage.rows() == 32 && stage.cols() == 14, dims.str());
  check.require(is_unimodular(stage.a) && is_unimodular(stage.b),
                "expanded weights not unimodular");

  const double side7 = max_sidelobe(ref.a, ref.b);
  const double bound = 64.0 * spectral_ripple_bound(7, side7);
  const double flat = 2.0 * 32.0 * 14.0;
  const ArrayGeometry g = ArrayGeometry::ura(32, 14);
  const AngleGrid hemi = AngleGrid::hemisphere(deg2rad(1.0));
  const PatternGrid af = array_factor_power(stage, g, hemi);
  double worst = 0.0;
  for (Index t = 0; t < af.theta.size(); ++t) {
    for (Index p = 0; p < af.phi.size(); ++p) {
      worst = std::max(worst, std::abs(af.values(t, p) - flat));
    }
  }
  std::ostringstream what;
  what << "hemisphere deviation " << worst << " vs bound " << bound;
  check.require(worst <= bound + 1e-9, what.str());
  check.finish(30.0);
}

void check6_dft_hpbw() {
  Check check(6, "eight-element coherent beam measures 12.5 +- 0.5 degrees");
  const ArrayGeometry g = ArrayGeometry::ula(8, 0.5);
  const WeightPair w = dft_weights(8, 0.0, g);
  const double width = hpbw_degrees(array_factor_power(w, g, cut721()));
  std::ostringstream what;
  what << "measured " << width << " deg";
  check.require(std::abs(width - 12.5) <= 0.5, what.str());
  check.finish(1.0);
}

void check7_phase_taper() {
  Check check(7, "phase-taper broadener value and power utilization");
  // Closed-form first entry for (p, c) = (3, 24) at M = 8.
  const double f1 = std::abs(4.0 * kPi * 24.0 * std::pow(-7.0 / 14.0, 3));
  check.require(std::abs(f1 - 12.0 * kPi) <= 1e-12, "formula value not 12 pi");

  const ArrayGeometry g = ArrayGeometry::ula(8);
  PhaseTaperParams params;
  params.p = 3;
  params.c = 24.0;
  const WeightPair w = phase_taper_weights(8, 0.0, params, g);
  const WeightPair base = dft_weights(8, 0.0, g);
  check.require(std::abs(w.a[0] - base.a[0] * std::polar(1.0, 12.0 * kPi)) <=
                    1e-12,
                "first weight does not carry the 12 pi taper");

  for (int p : {1, 2, 3, 4}) {
    for (double c : {0.5, 8.0, 24.0}) {
      PhaseTaperParams sweep;
      sweep.p = p;
      sweep.c = c;
      const WeightPair ws = phase_taper_weights(8, 0.0, sweep, g);
      check.require(is_unimodular(ws.a, 1e-12) && is_unimodular(ws.b, 1e-12),
                    "sweep output not unimodular");
      check.require(std::abs(power_utilization(ws) - 1.0) <= 1e-12,
                    "sweep power utilization not 1");
    }
  }
  check.finish(1.0);
}

void check8_se_ordering() {
  Check check(8, "broad-beam design yields the best sector spectral efficiency");
  SectorConfig cfg = SectorConfig::defaults();  // K = 10^4, 120 deg, 25-300 m
  const ElementModel model;
  const ArrayGeometry g = ArrayGeometry::ula(7);

  const SeReport proposed = evaluate_method(oracles::reference_pair_m7(), g,
                                            model, cfg, "proposed");
  const SeReport dft =
      evaluate_method(dft_weights(7, 0.0, g), g, model, cfg, "dft");
  PhaseTaperParams pt;
  pt.p = 3;
  pt.c = 24.0;
  const SeReport taper = evaluate_method(phase_taper_weights(7, 0.0, pt, g), g,
                                         model, cfg, "phase-taper");
  AmplitudeTaperParams at;
  at.zeta = 0.01;
  const SeReport amp = evaluate_method(
      amplitude_taper_weights(7, at, g).weights, g, model, cfg, "amp-taper");

  for (Index s = 0; s < cfg.snr_db.size(); ++s) {
    for (const SeReport* other : {&dft, &taper, &amp}) {
      std::ostringstream what;
      what << "at " << cfg.snr_db[s] << " dB proposed " << proposed.avg_se[s]
           << " not above " << other->method << " " << other->avg_se[s];
      check.require(proposed.avg_se[s] > other->avg_se[s], what.str());
    }
  }
  check.finish(30.0);
}

void check9_oracle_equivalence() {
  Check check(9, "autocorrelations match brute-force oracles");
  Rng rng(7109);
  for (int rep = 0; rep < 200; ++rep) {
    const Index m = 1 + static_cast<Index>(rng.uniform(0.0, 32.0));
    const CVec u = oracles::random_unimodular(rng, m);
    const Aacf r = aacf(u);
    for (Index tau = -(m - 1); tau <= m - 1; ++tau) {
      if (std::abs(r(tau) - oracles::aacf_at(u, tau)) > 1e-12) {
        check.require(false, "1D mismatch");
      }
    }
  }
  for (int rep = 0; rep < 200; ++rep) {
    const Index n = 1 + static_cast<Index>(rng.uniform(0.0, 6.0));
    const Index m = 1 + static_cast<Index>(rng.uniform(0.0, 6.0));
    const CMat u = oracles::random_unimodular(rng, n, m);
    const Aacf2d r = aacf2d(u);
    for (Index tn = -(n - 1); tn <= n - 1; ++tn) {
      for (Index tm = -(m - 1); tm <= m - 1; ++tm) {
        if (std::abs(r(tn, tm) - oracles::aacf2d_at(u, tn, tm)) > 1e-12) {
          check.require(false, "2D mismatch");
        }
      }
    }
  }
  check.finish(5.0);
}

void check10_odd_by_odd() {
  Check check(10, "3x3 search reports an honest best effort at three percent");
  MgdaConfig cfg = MgdaConfig::defaults2d(3, 3);
  cfg.tolerance = 0.03 * 18.0;
  cfg.max_iterations = 200'000;
  cfg.rng_seed = 1;
  const MgdaResult result = search2d(3, 3, cfg);
  check.require(result.iterations <= cfg.max_iterations,
                "iteration budget exceeded");
  const auto [u, v] = decode_array_pair(result.phases, 3, 3);
  const double verified = oracles::max_sidelobe_2d(u, v);
  std::ostringstream what;
  what << "reported " << result.achieved_sidelobe << " vs oracle " << verified;
  check.require(std::abs(verified - result.achieved_sidelobe) <=
                    1e-12 * std::max(1.0, verified),
                what.str());
  if (result.converged) {
    check.require(result.achieved_sidelobe <= cfg.tolerance,
                  "converged flag inconsistent with tolerance");
  }
  check.finish();
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  const auto pool = kernel_closure(104);
  check1_kernel_closure(pool);
  check2_flatness(pool);
  check3_reference_pair();
  check4_search_convergence();
  check5_expansion_preservation();
  check6_dft_hpbw();
  check7_phase_taper();
  check8_se_ordering();
  check9_oracle_equivalence();
  check10_odd_by_odd();
  std::printf("%s: %d failure(s)\n", g_failures ? "FAILURE" : "SUCCESS",
              g_failures);
  return g_failures;
}
