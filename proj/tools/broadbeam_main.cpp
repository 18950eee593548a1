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
// Command-line front end: search, verify, expand, pattern, evaluate,
// baseline and recipe subcommands over JSON weight files and CSV reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "broadbeam/baselines.hpp"
#include "broadbeam/evaluation.hpp"
#include "broadbeam/expansion.hpp"
#include "broadbeam/mgda.hpp"
#include "broadbeam/patterns.hpp"
#include "broadbeam/sequences.hpp"
#include "broadbeam/weight_io.hpp"

namespace {

using namespace broadbeam;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;        // verification did not pass
constexpr int kExitUsage = 2;       // bad flags, malformed files, shape errors
constexpr int kExitBestEffort = 3;  // non-converged result, file still written

double stod_full(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) {
    throw std::invalid_argument("cannot parse number: '" + s + "'");
  }
  return v;
}

// Accepts "1", "-0.5", "j", "-j", "2j", "1+j", "0.97-0.25j" ('i' works too).
Complex parse_complex_token(std::string t) {
  std::erase_if(t, [](unsigned char c) { return std::isspace(c); });
  if (t.empty()) throw std::invalid_argument("empty complex token");
  for (auto& c : t) {
    if (c == 'i') c = 'j';
  }
  if (t.find('j') == std::string::npos) return {stod_full(t), 0.0};
  if (t.back() != 'j') {
    throw std::invalid_argument("cannot parse complex token: '" + t + "'");
  }
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return stod_full(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(t)};
  return {stod_full(t.substr(0, split)), imag_of(t.substr(split))};
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

CVec parse_complex_list(const std::string& s) {
  const auto tokens = split_on(s, ',');
  if (tokens.empty()) throw std::invalid_argument("empty complex list");
  CVec v(static_cast<Index>(tokens.size()));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    v[static_cast<Index>(i)] = parse_complex_token(tokens[i]);
  }
  return v;
}

// Rows separated by ';', entries by ',': "1,1;-1,1" is 2 x 2.
CMat parse_complex_matrix(const std::string& s) {
  const auto rows = split_on(s, ';');
  if (rows.empty()) throw std::invalid_argument("empty complex matrix");
  std::vector<CVec> parsed;
  for (const auto& row : rows) parsed.push_back(parse_complex_list(row));
  const Index cols = parsed.front().size();
  CMat m(static_cast<Index>(parsed.size()), cols);
  for (std::size_t r = 0; r < parsed.size(); ++r) {
    if (parsed[r].size() != cols) {
      throw std::invalid_argument("ragged complex matrix: '" + s + "'");
    }
    m.row(static_cast<Index>(r)) = parsed[r].transpose();
  }
  return m;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BROADBEAM_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

RVec parse_snr_grid(const std::string& s) {
  const auto tokens = split_on(s, ',');
  RVec grid(static_cast<Index>(tokens.size()));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    grid[static_cast<Index>(i)] = stod_full(tokens[i]);
  }
  return grid;
}

double mainlobe_of(const WeightFile& file) {
  return 2.0 * static_cast<double>(file.m * file.n);
}

double sidelobe_of(const WeightFile& file) {
  if (is_ura(file)) {
    const WeightArrayPair w = to_weight_array_pair(file);
    return max_sidelobe(w.a, w.b);
  }
  const WeightPair w = to_weight_pair(file);
  return max_sidelobe(w.a, w.b);
}

struct ElementFlags {
  double peak_db = 8.0;
  double hpbw_deg = 90.0;
  double floor_db = 30.0;
  double pointing_deg = 0.0;

  ElementModel model() const {
    ElementModel m;
    m.peak_gain_db = peak_db;
    m.hpbw = deg2rad(hpbw_deg);
    m.floor_db = floor_db;
    m.pointing = deg2rad(pointing_deg);
    m.validate();
    return m;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--element-peak", peak_db, "Element peak gain [dB]");
    cmd->add_option("--element-hpbw", hpbw_deg, "Element HPBW [deg]");
    cmd->add_option("--element-floor", floor_db, "Element rolloff floor [dB]");
    cmd->add_option("--element-pointing", pointing_deg,
                    "Element pointing azimuth [deg]");
  }
};

struct SearchOptions {
  Index m = 0;
  Index n = 1;
  double eps_percent = 1.0;
  std::uint64_t seed = default_seed();
  int restarts = 10;
  std::string out = "weights.json";
  double rain = 0.0;  // 0: derived default
  double alpha = 0.95;
  int dmax = 20;
  std::int64_t max_iter = 20'000'000;
  double step_floor = 1e-7;
  bool pin_first = false;
};

MgdaConfig config_from(const SearchOptions& opt) {
  MgdaConfig cfg = MgdaConfig::defaults2d(opt.n, opt.m);
  cfg.tolerance =
      opt.eps_percent / 100.0 * 2.0 * static_cast<double>(opt.n * opt.m);
  if (opt.rain > 0.0) cfg.rain_intensity = opt.rain;
  cfg.scale_factor = opt.alpha;
  cfg.max_unsuccessful = opt.dmax;
  cfg.max_iterations = opt.max_iter;
  cfg.step_floor = opt.step_floor;
  cfg.pin_first_phase = opt.pin_first;
  cfg.rng_seed = opt.seed;
  return cfg;
}

int run_search(const SearchOptions& opt) {
  const MgdaConfig cfg = config_from(opt);
  const MgdaResult result =
      opt.n > 1 ? search_with_restarts2d(opt.n, opt.m, cfg, opt.restarts)
                : search_with_restarts(opt.m, cfg, opt.restarts);

  WeightFile file;
  if (opt.n > 1) {
    const auto [u, v] = decode_array_pair(result.phases, opt.n, opt.m);
    file = make_weight_file(WeightArrayPair(u, v), {});
  } else {
    const auto [u, v] = decode_pair(result.phases);
    file = make_weight_file(WeightPair(u, v), {});
  }
  std::ostringstream gen;
  gen << "search --m " << opt.m;
  if (opt.n > 1) gen << " --n " << opt.n;
  gen << " --eps-percent " << opt.eps_percent << " --seed " << opt.seed
      << " --restarts " << opt.restarts;
  file.metadata.generator = gen.str();
  file.metadata.seed = opt.seed;
  file.metadata.epsilon = cfg.tolerance;
  write_weight_file(file, opt.out);

  const double mainlobe = mainlobe_of(file);
  std::cout << "dims: " << file.n << " x " << file.m << "\n"
            << "target epsilon: " << cfg.tolerance << " (" << opt.eps_percent
            << "% of mainlobe " << mainlobe << ")\n"
            << "achieved sidelobe: " << result.achieved_sidelobe << " ("
            << 100.0 * result.achieved_sidelobe / mainlobe
            << "% of mainlobe)\n"
            << "converged: " << (result.converged ? "yes" : "no")
            << "  restarts used: " << result.restarts
            << "  evaluations: " << result.iterations << "\n"
            << "wrote " << opt.out << "\n";
  return result.converged ? kExitOk : kExitBestEffort;
}

int run_verify(const std::string& path, double eps_flag) {
  const WeightFile file = read_weight_file(path);
  double eps = eps_flag;
  if (eps < 0.0) {
    eps = file.metadata.epsilon > 0.0 ? file.metadata.epsilon : 1e-9;
  }
  const double sidelobe = sidelobe_of(file);
  const bool pass = sidelobe <= eps;
  const double ripple = is_ura(file)
                            ? spectral_ripple_bound(file.n, file.m, eps)
                            : spectral_ripple_bound(file.m, eps);
  std::cout << "dims: " << file.n << " x " << file.m << "\n"
            << "max sidelobe: " << sidelobe << "\n"
            << "epsilon: " << eps << "\n"
            << "result: " << (pass ? "PASS" : "FAIL") << "\n"
            << "array-factor ripple bound at epsilon: " << ripple << "\n";
  return pass ? kExitOk : kExitFail;
}

struct ExpandOptions {
  std::string proto_path;
  std::string mode;
  std::string expander_u;
  std::string expander_v;
  std::string out = "expanded.json";
};

// The expanded sum AACF obeys the same trilinear bound as the beam ripple:
// scale * eps_proto + 2*elements_proto * s_expander + cross term. With exact
// complementary expanders this is exactly 2N times the protoarray tolerance,
// so a file's verification tolerance stays meaningful across expansions.
double propagate_epsilon(double proto_eps, double expander_sidelobe,
                         Index expander_elements, Index proto_elements) {
  if (proto_eps <= 0.0) return 0.0;
  return expansion_ripple_bound(proto_eps, expander_sidelobe,
                                expander_elements, proto_elements);
}

WeightFile expand_file(const WeightFile& proto_file, const std::string& mode,
                       const std::string& ustr, const std::string& vstr) {
  WeightFile out_file;
  double expander_side = 0.0;
  Index expander_elements = 0;

  if (mode == "ula") {
    const WeightPair proto = to_weight_pair(proto_file);
    const CVec u = parse_complex_list(ustr);
    const CVec v = parse_complex_list(vstr);
    expander_side = max_sidelobe(u, v);
    expander_elements = u.size();
    out_file = make_weight_file(expand_ula(proto, u, v), {});
  } else if (mode == "ula2ura-v" || mode == "ula2ura-h") {
    const WeightPair proto = to_weight_pair(proto_file);
    const CVec u = parse_complex_list(ustr);
    const CVec v = parse_complex_list(vstr);
    const Orientation o = mode == "ula2ura-v" ? Orientation::kVertical
                                              : Orientation::kHorizontal;
    expander_side = max_sidelobe(u, v);
    expander_elements = u.size();
    out_file = make_weight_file(expand_ula_to_ura(proto, u, v, o), {});
  } else if (mode == "ura-v" || mode == "ura-h") {
    const WeightArrayPair proto = to_weight_array_pair_promoting(proto_file);
    const CMat u = parse_complex_matrix(ustr);
    const CMat v = parse_complex_matrix(vstr);
    const Orientation o = mode == "ura-v" ? Orientation::kVertical
                                          : Orientation::kHorizontal;
    expander_side = max_sidelobe(u, v);
    expander_elements = u.size();
    out_file = make_weight_file(expand_ura(proto, u, v, o), {});
  } else {
    throw std::invalid_argument("unknown expand mode: " + mode);
  }

  out_file.metadata.seed = proto_file.metadata.seed;
  out_file.metadata.epsilon =
      propagate_epsilon(proto_file.metadata.epsilon, expander_side,
                        expander_elements, proto_file.m * proto_file.n);
  return out_file;
}

int run_expand(const ExpandOptions& opt) {
  const WeightFile proto_file = read_weight_file(opt.proto_path);
  WeightFile out_file =
      expand_file(proto_file, opt.mode, opt.expander_u, opt.expander_v);
  out_file.metadata.generator = "expand --mode " + opt.mode +
                                " --expander-u \"" + opt.expander_u +
                                "\" --expander-v \"" + opt.expander_v + "\"";
  write_weight_file(out_file, opt.out);
  std::cout << "dims: " << out_file.n << " x " << out_file.m << "\n"
            << "max sidelobe: " << sidelobe_of(out_file) << " (mainlobe "
            << mainlobe_of(out_file) << ")\n";
  if (out_file.metadata.epsilon > 0.0) {
    std::cout << "propagated epsilon: " << out_file.metadata.epsilon << "\n";
  }
  std::cout << "wrote " << opt.out << "\n";
  return kExitOk;
}

struct PatternOptions {
  std::string path;
  double dy = 0.5;
  double dz = 0.5;
  double phi_min_deg = -90.0;
  double phi_max_deg = 90.0;
  double phi_step_deg = 0.25;
  double theta_deg = 90.0;
  double grid_step_deg = 1.0;
  ElementFlags element;
  bool eirp = false;
  double ripple_min_deg = -60.0;
  double ripple_max_deg = 60.0;
  std::string out = "pattern.csv";
};

template <typename Weights>
int emit_pattern(const Weights& weights, const ArrayGeometry& geometry,
                 const AngleGrid& grid, const PatternOptions& opt,
                 Index theta_index) {
  const ElementModel model = opt.element.model();
  const PatternGrid af = array_factor_power(weights, geometry, grid);
  const PatternGrid total = total_pattern(weights, geometry, model, grid);
  PatternGrid eirp_grid;
  if (opt.eirp) {
    eirp_grid = total_pattern(eirp_normalize(weights), geometry, model, grid);
    eirp_grid.kind = PatternKind::kEirp;
  }
  write_pattern_csv(af, total, opt.eirp ? &eirp_grid : nullptr, opt.out);

  std::cout << "power utilization: " << power_utilization(weights) << "\n";
  try {
    std::cout << "total-pattern HPBW: " << hpbw_degrees(total, theta_index)
              << " deg\n";
  } catch (const std::runtime_error&) {
    std::cout << "total-pattern HPBW: not measurable on this cut\n";
  }
  std::cout << "array-factor ripple over [" << opt.ripple_min_deg << ", "
            << opt.ripple_max_deg << "] deg: "
            << ripple_db(af, deg2rad(opt.ripple_min_deg),
                         deg2rad(opt.ripple_max_deg), theta_index)
            << " dB\n"
            << "wrote " << opt.out << "\n";
  return kExitOk;
}

int run_pattern(const PatternOptions& opt) {
  const WeightFile file = read_weight_file(opt.path);
  if (is_ura(file)) {
    const WeightArrayPair w = to_weight_array_pair(file);
    const ArrayGeometry g = ArrayGeometry::ura(file.n, file.m, opt.dy, opt.dz);
    const AngleGrid grid = AngleGrid::hemisphere(deg2rad(opt.grid_step_deg));
    Index theta_index = 0;
    (grid.theta.array() - kPi / 2.0).abs().minCoeff(&theta_index);
    return emit_pattern(w, g, grid, opt, theta_index);
  }
  const WeightPair w = to_weight_pair(file);
  const ArrayGeometry g = ArrayGeometry::ula(file.m, opt.dy);
  const AngleGrid grid = AngleGrid::azimuth_cut(
      deg2rad(opt.phi_min_deg), deg2rad(opt.phi_max_deg),
      deg2rad(opt.phi_step_deg), deg2rad(opt.theta_deg));
  return emit_pattern(w, g, grid, opt, 0);
}

struct EvaluateOptions {
  std::vector<std::string> paths;
  int drops = 10'000;
  std::uint64_t seed = default_seed();
  std::string snr = "-10,0,10,20,30";
  double half_width_deg = 60.0;
  double r_min = 25.0;
  double r_max = 300.0;
  double pathloss = 2.2;
  double gamma_db = 57.0;
  double dy = 0.5;
  double dz = 0.5;
  ElementFlags element;
  std::string out = "se.csv";
};

int run_evaluate(const EvaluateOptions& opt) {
  SectorConfig cfg;
  cfg.half_width = deg2rad(opt.half_width_deg);
  cfg.r_min = opt.r_min;
  cfg.r_max = opt.r_max;
  cfg.drops = opt.drops;
  cfg.pathloss_exponent = opt.pathloss;
  cfg.gamma_db = opt.gamma_db;
  cfg.snr_db = parse_snr_grid(opt.snr);
  cfg.rng_seed = opt.seed;
  const ElementModel model = opt.element.model();

  std::ostringstream csv;
  csv.precision(10);
  csv << "method,snr_db,avg_se_bits_per_hz\n";
  for (const auto& path : opt.paths) {
    const WeightFile file = read_weight_file(path);
    const std::string label = std::filesystem::path(path).stem().string();
    SeReport report;
    if (is_ura(file)) {
      const WeightArrayPair w = to_weight_array_pair(file);
      report =
          evaluate_method(w, ArrayGeometry::ura(file.n, file.m, opt.dy, opt.dz),
                          model, cfg, label);
    } else {
      const WeightPair w = to_weight_pair(file);
      report = evaluate_method(w, ArrayGeometry::ula(file.m, opt.dy), model,
                               cfg, label);
    }
    for (Index s = 0; s < report.snr_db.size(); ++s) {
      csv << report.method << ',' << report.snr_db[s] << ','
          << report.avg_se[s] << "\n";
      std::cout << report.method << "  snr " << report.snr_db[s]
                << " dB  avg SE " << report.avg_se[s] << " bits/s/Hz\n";
    }
  }
  std::ofstream out(opt.out, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + opt.out);
  out << csv.str();
  std::cout << "wrote " << opt.out << "\n";
  return kExitOk;
}

struct BaselineOptions {
  std::string method;
  Index m = 0;
  double phi0_deg = 0.0;
  int p = 3;
  double c = 24.0;
  double zeta = 0.01;
  double dy = 0.5;
  std::uint64_t seed = default_seed();
  std::string out = "baseline.json";
};

int run_baseline(const BaselineOptions& opt) {
  const ArrayGeometry geometry = ArrayGeometry::ula(opt.m, opt.dy);
  WeightFile file;
  bool converged = true;
  std::ostringstream gen;
  gen << "baseline --method " << opt.method << " --m " << opt.m;

  if (opt.method == "dft") {
    file = make_weight_file(
        dft_weights(opt.m, deg2rad(opt.phi0_deg), geometry), {});
    gen << " --phi0 " << opt.phi0_deg;
  } else if (opt.method == "phase-taper") {
    PhaseTaperParams params;
    params.p = opt.p;
    params.c = opt.c;
    file = make_weight_file(
        phase_taper_weights(opt.m, deg2rad(opt.phi0_deg), params, geometry),
        {});
    gen << " --phi0 " << opt.phi0_deg << " --p " << opt.p << " --c " << opt.c;
  } else {
    AmplitudeTaperParams params;
    params.zeta = opt.zeta;
    params.rng_seed = opt.seed;
    const AmplitudeTaperResult result =
        amplitude_taper_weights(opt.m, params, geometry);
    converged = result.converged;
    file = make_weight_file(result.weights, {});
    gen << " --zeta " << opt.zeta << " --seed " << opt.seed;
    std::cout << "constraint deviation: " << result.max_deviation
              << (result.converged ? " (within band)" : " (best effort)")
              << "\n";
  }

  file.metadata.generator = gen.str();
  file.metadata.seed = opt.seed;
  write_weight_file(file, opt.out);
  std::cout << "power utilization: " << power_utilization(to_weight_pair(file))
            << "\n"
            << "wrote " << opt.out << "\n";
  return converged ? kExitOk : kExitBestEffort;
}

// Declarative multi-stage construction: a JSON list of set/load/search/expand
// steps applied to a running weight state.
int run_recipe(const std::string& recipe_path, const std::string& out_path) {
  std::ifstream in(recipe_path);
  if (!in) throw std::runtime_error("cannot open recipe: " + recipe_path);
  nlohmann::json recipe;
  try {
    in >> recipe;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed recipe " + recipe_path + ": " +
                             e.what());
  }
  if (recipe.value("schema_version", 1) != 1 || !recipe.contains("steps")) {
    throw std::runtime_error("recipe must carry schema_version 1 and steps");
  }

  WeightFile state;
  bool have_state = false;
  bool all_converged = true;

  for (const auto& step : recipe.at("steps")) {
    const std::string op = step.at("op").get<std::string>();
    if (op == "set") {
      const Index n = step.value("n", Index(1));
      const Index m = step.at("m").get<Index>();
      RVec pa(n * m), pb(n * m);
      const auto& ja = step.at("phases_a");
      const auto& jb = step.at("phases_b");
      if (static_cast<Index>(ja.size()) != n * m ||
          static_cast<Index>(jb.size()) != n * m) {
        throw std::runtime_error("recipe set: phase list lengths must be n*m");
      }
      for (Index i = 0; i < n * m; ++i) {
        pa[i] = ja[static_cast<std::size_t>(i)].get<double>();
        pb[i] = jb[static_cast<std::size_t>(i)].get<double>();
      }
      if (n > 1) {
        // Row-major phases, matching the weight-file convention.
        CMat wa(n, m), wb(n, m);
        Index i = 0;
        for (Index r = 0; r < n; ++r) {
          for (Index c = 0; c < m; ++c, ++i) {
            wa(r, c) = std::polar(1.0, pa[i]);
            wb(r, c) = std::polar(1.0, pb[i]);
          }
        }
        state = make_weight_file(WeightArrayPair(wa, wb), {});
      } else {
        state = make_weight_file(
            WeightPair(weights_from_phases(pa), weights_from_phases(pb)), {});
      }
    } else if (op == "load") {
      state = read_weight_file(step.at("path").get<std::string>());
    } else if (op == "search") {
      SearchOptions opt;
      opt.m = step.at("m").get<Index>();
      opt.n = step.value("n", Index(1));
      opt.eps_percent = step.value("eps_percent", 1.0);
      opt.seed = step.value("seed", default_seed());
      opt.restarts = step.value("restarts", 10);
      const MgdaConfig cfg = config_from(opt);
      const MgdaResult result =
          opt.n > 1 ? search_with_restarts2d(opt.n, opt.m, cfg, opt.restarts)
                    : search_with_restarts(opt.m, cfg, opt.restarts);
      all_converged = all_converged && result.converged;
      if (opt.n > 1) {
        const auto [u, v] = decode_array_pair(result.phases, opt.n, opt.m);
        state = make_weight_file(WeightArrayPair(u, v), {});
      } else {
        const auto [u, v] = decode_pair(result.phases);
        state = make_weight_file(WeightPair(u, v), {});
      }
      state.metadata.seed = opt.seed;
      state.metadata.epsilon = cfg.tolerance;
    } else if (op == "expand") {
      if (!have_state) {
        throw std::runtime_error("recipe expand: no weights to expand yet");
      }
      state = expand_file(state, step.at("mode").get<std::string>(),
                          step.at("u").get<std::string>(),
                          step.at("v").get<std::string>());
    } else {
      throw std::runtime_error("recipe: unknown op " + op);
    }
    have_state = true;
    std::cout << "step " << op << " -> " << state.n << " x " << state.m
              << " (max sidelobe " << sidelobe_of(state) << ")\n";
  }

  if (!have_state) throw std::runtime_error("recipe produced no weights");
  state.metadata.generator = "recipe " + recipe_path;
  write_weight_file(state, out_path);
  std::cout << "wrote " << out_path << "\n";
  return all_converged ? kExitOk : kExitBestEffort;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "broadbeam: design, verify, expand and evaluate power-efficient "
      "broad-beam weights for dual-polarized antenna arrays"};
  app.require_subcommand(1);
  std::cout.precision(10);

  SearchOptions search_opt;
  auto* search_cmd = app.add_subcommand(
      "search", "Search for an eps-complementary weight pair");
  search_cmd->add_option("--m", search_opt.m, "Columns (sequence length)")
      ->required()
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--n", search_opt.n, "Rows (1 for a ULA)")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--eps-percent", search_opt.eps_percent,
                         "Tolerance as percent of the sum-AACF mainlobe");
  search_cmd->add_option("--seed", search_opt.seed, "RNG seed");
  search_cmd
      ->add_option("--restarts", search_opt.restarts,
                   "Seeded restarts before giving up")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--out", search_opt.out, "Output weight file");
  search_cmd->add_option("--rain", search_opt.rain,
                         "Water-level increment per sweep (0: auto)");
  search_cmd->add_option("--alpha", search_opt.alpha, "Step shrink factor");
  search_cmd->add_option("--dmax", search_opt.dmax,
                         "Unsuccessful sweeps before a jump");
  search_cmd->add_option("--max-iter", search_opt.max_iter,
                         "Objective evaluation budget per restart");
  search_cmd->add_option("--step-floor", search_opt.step_floor,
                         "Freeze threshold for per-coordinate steps");
  search_cmd->add_flag("--pin-first", search_opt.pin_first,
                       "Pin the first phase to zero");

  std::string verify_path;
  double verify_eps = -1.0;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a weight file against a tolerance");
  verify_cmd->add_option("file", verify_path, "Weight file")->required();
  verify_cmd->add_option("--eps", verify_eps,
                         "Tolerance (default: file metadata, else 1e-9)");

  ExpandOptions expand_opt;
  auto* expand_cmd =
      app.add_subcommand("expand", "Expand a protoarray with an expander pair");
  expand_cmd->add_option("file", expand_opt.proto_path, "Protoarray file")
      ->required();
  expand_cmd
      ->add_option("--mode", expand_opt.mode,
                   "ula | ula2ura-v | ula2ura-h | ura-v | ura-h")
      ->required()
      ->check(
          CLI::IsMember({"ula", "ula2ura-v", "ula2ura-h", "ura-v", "ura-h"}));
  expand_cmd
      ->add_option("--expander-u", expand_opt.expander_u,
                   "Expander u, e.g. \"j,1\" or \"1,1;-1,1\"")
      ->required();
  expand_cmd->add_option("--expander-v", expand_opt.expander_v, "Expander v")
      ->required();
  expand_cmd->add_option("--out", expand_opt.out, "Output weight file");

  PatternOptions pattern_opt;
  auto* pattern_cmd = app.add_subcommand(
      "pattern", "Export array-factor / total / EIRP patterns as CSV");
  pattern_cmd->add_option("file", pattern_opt.path, "Weight file")->required();
  pattern_cmd->add_option("--dy", pattern_opt.dy, "Column spacing [lambda]");
  pattern_cmd->add_option("--dz", pattern_opt.dz, "Row spacing [lambda]");
  pattern_cmd->add_option("--phi-min", pattern_opt.phi_min_deg,
                          "Cut start [deg]");
  pattern_cmd->add_option("--phi-max", pattern_opt.phi_max_deg,
                          "Cut stop [deg]");
  pattern_cmd->add_option("--phi-step", pattern_opt.phi_step_deg,
                          "Cut step [deg]");
  pattern_cmd->add_option("--theta", pattern_opt.theta_deg,
                          "Cut elevation [deg] (ULA files)");
  pattern_cmd->add_option("--grid-step", pattern_opt.grid_step_deg,
                          "Hemisphere grid step [deg] (URA files)");
  pattern_cmd->add_flag("--eirp", pattern_opt.eirp,
                        "Add an EIRP column (1 W total conducted power)");
  pattern_cmd->add_option("--ripple-min", pattern_opt.ripple_min_deg,
                          "Ripple report region start [deg]");
  pattern_cmd->add_option("--ripple-max", pattern_opt.ripple_max_deg,
                          "Ripple report region stop [deg]");
  pattern_cmd->add_option("--out", pattern_opt.out, "Output CSV");
  pattern_opt.element.attach(pattern_cmd);

  EvaluateOptions eval_opt;
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Sector Monte-Carlo spectral efficiency of weight files");
  eval_cmd->add_option("files", eval_opt.paths, "Weight files")->required();
  eval_cmd->add_option("--k", eval_opt.drops, "User drops")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval_opt.seed, "RNG seed");
  eval_cmd->add_option("--snr-grid", eval_opt.snr, "SNR grid [dB], comma list");
  eval_cmd->add_option("--half-width", eval_opt.half_width_deg,
                       "Sector half width [deg]");
  eval_cmd->add_option("--rmin", eval_opt.r_min, "Minimum distance [m]");
  eval_cmd->add_option("--rmax", eval_opt.r_max, "Maximum distance [m]");
  eval_cmd->add_option("--pathloss-alpha", eval_opt.pathloss,
                       "Pathloss exponent");
  eval_cmd->add_option("--gamma-db", eval_opt.gamma_db,
                       "Link budget offset [dB]");
  eval_cmd->add_option("--dy", eval_opt.dy, "Column spacing [lambda]");
  eval_cmd->add_option("--dz", eval_opt.dz, "Row spacing [lambda]");
  eval_cmd->add_option("--out", eval_opt.out, "Output CSV");
  eval_opt.element.attach(eval_cmd);

  BaselineOptions base_opt;
  auto* base_cmd = app.add_subcommand("baseline", "Emit a reference beamformer");
  base_cmd
      ->add_option("--method", base_opt.method, "dft | phase-taper | amp-taper")
      ->required()
      ->check(CLI::IsMember({"dft", "phase-taper", "amp-taper"}));
  base_cmd->add_option("--m", base_opt.m, "Elements")
      ->required()
      ->check(CLI::PositiveNumber);
  base_cmd->add_option("--phi0", base_opt.phi0_deg, "Pointing azimuth [deg]");
  base_cmd->add_option("--p", base_opt.p, "Phase-taper exponent");
  base_cmd->add_option("--c", base_opt.c, "Phase-taper scale");
  base_cmd->add_option("--zeta", base_opt.zeta, "Amplitude-taper tolerance");
  base_cmd->add_option("--dy", base_opt.dy, "Column spacing [lambda]");
  base_cmd->add_option("--seed", base_opt.seed, "RNG seed (amp-taper)");
  base_cmd->add_option("--out", base_opt.out, "Output weight file");

  std::string recipe_path;
  std::string recipe_out = "recipe_out.json";
  auto* recipe_cmd =
      app.add_subcommand("recipe", "Run a declarative multi-stage construction");
  recipe_cmd->add_option("file", recipe_path, "Recipe JSON")->required();
  recipe_cmd->add_option("--out", recipe_out, "Output weight file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (search_cmd->parsed()) return run_search(search_opt);
    if (verify_cmd->parsed()) return run_verify(verify_path, verify_eps);
    if (expand_cmd->parsed()) return run_expand(expand_opt);
    if (pattern_cmd->parsed()) return run_pattern(pattern_opt);
    if (eval_cmd->parsed()) return run_evaluate(eval_opt);
    if (base_cmd->parsed()) return run_baseline(base_opt);
    if (recipe_cmd->parsed()) return run_recipe(recipe_path, recipe_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
