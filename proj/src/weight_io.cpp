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

#include "broadbeam/weight_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace broadbeam {

namespace {

using nlohmann::json;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void atomic_write(const std::filesystem::path& p, const std::string& content) {
  const std::filesystem::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    out << content;
    if (!out.good()) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, p);
}

json to_json_list(const RVec& v) {
  json list = json::array();
  for (Index i = 0; i < v.size(); ++i) list.push_back(v[i]);
  return list;
}

RVec from_json_list(const json& list, const char* field) {
  if (!list.is_array()) {
    throw std::runtime_error(std::string("weight file: ") + field +
                             " must be an array");
  }
  RVec v(static_cast<Index>(list.size()));
  Index i = 0;
  for (const auto& item : list) {
    if (!item.is_number()) {
      throw std::runtime_error(std::string("weight file: ") + field +
                               " must contain numbers");
    }
    v[i++] = item.get<double>();
  }
  return v;
}

// Row-major flattening used by the on-disk format.
RVec flatten_row_major(const RMat& grid) {
  RVec flat(grid.size());
  Index i = 0;
  for (Index r = 0; r < grid.rows(); ++r)
    for (Index c = 0; c < grid.cols(); ++c) flat[i++] = grid(r, c);
  return flat;
}

CVec combine(const RVec& phases, const RVec& mags) {
  CVec w(phases.size());
  for (Index i = 0; i < phases.size(); ++i) {
    w[i] = std::polar(mags.size() ? mags[i] : 1.0, phases[i]);
  }
  return w;
}

void split(const CVec& w, RVec& phases, RVec& mags) {
  phases = phases_from_weights(w);
  if (is_unimodular(w)) {
    mags.resize(0);
  } else {
    mags = w.cwiseAbs();
  }
}

}  // namespace

void WeightFile::validate() const {
  if (schema_version != 1) {
    throw std::invalid_argument("WeightFile: unsupported schema_version");
  }
  if (kind != "ula" && kind != "ura") {
    throw std::invalid_argument("WeightFile: kind must be \"ula\" or \"ura\"");
  }
  if (kind == "ula" && n != 1) {
    throw std::invalid_argument("WeightFile: a ULA file must have n == 1");
  }
  if (m < 1 || n < 1) {
    throw std::invalid_argument("WeightFile: dims must be >= 1");
  }
  const Index expected = m * n;
  if (phases_a.size() != expected || phases_b.size() != expected) {
    throw std::invalid_argument(
        "WeightFile: phase list lengths must equal m*n");
  }
  for (const RVec* mags : {&mags_a, &mags_b}) {
    if (mags->size() != 0 && mags->size() != expected) {
      throw std::invalid_argument(
          "WeightFile: magnitude list lengths must equal m*n when present");
    }
  }
  auto all_finite = [](const RVec& v) {
    for (Index i = 0; i < v.size(); ++i)
      if (!std::isfinite(v[i])) return false;
    return true;
  };
  if (!all_finite(phases_a) || !all_finite(phases_b) || !all_finite(mags_a) ||
      !all_finite(mags_b)) {
    throw std::invalid_argument("WeightFile: values must be finite");
  }
}

WeightFile make_weight_file(const WeightPair& w, WeightFileMeta meta) {
  WeightFile file;
  file.kind = "ula";
  file.m = w.size();
  file.n = 1;
  split(w.a, file.phases_a, file.mags_a);
  split(w.b, file.phases_b, file.mags_b);
  file.metadata = std::move(meta);
  file.validate();
  return file;
}

WeightFile make_weight_file(const WeightArrayPair& w, WeightFileMeta meta) {
  WeightFile file;
  file.kind = "ura";
  file.m = w.cols();
  file.n = w.rows();
  // Row-major flatten of phases/magnitudes, matching the on-disk convention.
  file.phases_a = flatten_row_major(phases_from_weights(w.a));
  file.phases_b = flatten_row_major(phases_from_weights(w.b));
  if (!is_unimodular(w.a) || !is_unimodular(w.b)) {
    file.mags_a = flatten_row_major(w.a.cwiseAbs());
    file.mags_b = flatten_row_major(w.b.cwiseAbs());
  }
  file.metadata = std::move(meta);
  file.validate();
  return file;
}

bool is_ura(const WeightFile& file) { return file.kind == "ura"; }

WeightPair to_weight_pair(const WeightFile& file) {
  file.validate();
  if (file.kind != "ula") {
    throw std::invalid_argument("to_weight_pair: file does not describe a ULA");
  }
  return WeightPair(combine(file.phases_a, file.mags_a),
                    combine(file.phases_b, file.mags_b));
}

WeightArrayPair to_weight_array_pair(const WeightFile& file) {
  file.validate();
  if (file.kind != "ura") {
    throw std::invalid_argument(
        "to_weight_array_pair: file does not describe a URA");
  }
  const CVec a = combine(file.phases_a, file.mags_a);
  const CVec b = combine(file.phases_b, file.mags_b);
  CMat ma(file.n, file.m), mb(file.n, file.m);
  Index i = 0;
  for (Index r = 0; r < file.n; ++r) {
    for (Index c = 0; c < file.m; ++c) {
      ma(r, c) = a[i];
      mb(r, c) = b[i];
      ++i;
    }
  }
  return WeightArrayPair(std::move(ma), std::move(mb));
}

WeightArrayPair to_weight_array_pair_promoting(const WeightFile& file) {
  if (is_ura(file)) return to_weight_array_pair(file);
  const WeightPair p = to_weight_pair(file);
  return WeightArrayPair(p.a.transpose(), p.b.transpose());
}

void write_weight_file(const WeightFile& file, const std::filesystem::path& p) {
  file.validate();
  json j;
  j["schema_version"] = file.schema_version;
  j["kind"] = file.kind;
  j["dims"] = {{"m", file.m}, {"n", file.n}};
  j["phases_a"] = to_json_list(file.phases_a);
  j["phases_b"] = to_json_list(file.phases_b);
  if (file.mags_a.size()) {
    j["mags_a"] = to_json_list(file.mags_a);
    j["mags_b"] = to_json_list(file.mags_b);
  }
  j["metadata"] = {
      {"generator", file.metadata.generator},
      {"seed", file.metadata.seed},
      {"epsilon", file.metadata.epsilon},
      {"timestamp", file.metadata.timestamp.empty() ? iso_timestamp()
                                                    : file.metadata.timestamp},
  };
  atomic_write(p, j.dump(2) + "\n");
}

WeightFile read_weight_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open weight file: " + p.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed weight file " + p.string() + ": " +
                             e.what());
  }
  WeightFile file;
  try {
    file.schema_version = j.at("schema_version").get<int>();
    file.kind = j.at("kind").get<std::string>();
    file.m = j.at("dims").at("m").get<Index>();
    file.n = j.at("dims").at("n").get<Index>();
    file.phases_a = from_json_list(j.at("phases_a"), "phases_a");
    file.phases_b = from_json_list(j.at("phases_b"), "phases_b");
    if (j.contains("mags_a") || j.contains("mags_b")) {
      file.mags_a = from_json_list(j.at("mags_a"), "mags_a");
      file.mags_b = from_json_list(j.at("mags_b"), "mags_b");
    }
    if (j.contains("metadata")) {
      const json& meta = j.at("metadata");
      file.metadata.generator = meta.value("generator", std::string{});
      file.metadata.seed = meta.value("seed", std::uint64_t{0});
      file.metadata.epsilon = meta.value("epsilon", 0.0);
      file.metadata.timestamp = meta.value("timestamp", std::string{});
    }
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed weight file " + p.string() + ": " +
                             e.what());
  }
  try {
    file.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("malformed weight file " + p.string() + ": " +
                             e.what());
  }
  return file;
}

void write_pattern_csv(const PatternGrid& array_factor,
                       const PatternGrid& total, const PatternGrid* eirp,
                       const std::filesystem::path& p) {
  auto same_grid = [&](const PatternGrid& other) {
    return other.phi.size() == array_factor.phi.size() &&
           other.theta.size() == array_factor.theta.size();
  };
  if (!same_grid(total) || (eirp && !same_grid(*eirp))) {
    throw std::invalid_argument(
        "write_pattern_csv: patterns must share the same grid");
  }
  auto to_db = [](double v) { return 10.0 * std::log10(std::max(v, 1e-40)); };

  std::ostringstream out;
  out.precision(10);
  out << "phi_deg,theta_deg,af_power_db,total_db";
  if (eirp) out << ",eirp_dbw";
  out << "\n";
  for (Index t = 0; t < array_factor.theta.size(); ++t) {
    for (Index q = 0; q < array_factor.phi.size(); ++q) {
      out << rad2deg(array_factor.phi[q]) << ',' << rad2deg(array_factor.theta[t])
          << ',' << to_db(array_factor.values(t, q)) << ','
          << to_db(total.values(t, q));
      if (eirp) out << ',' << to_db(eirp->values(t, q));
      out << "\n";
    }
  }
  atomic_write(p, out.str());
}

}  // namespace broadbeam
