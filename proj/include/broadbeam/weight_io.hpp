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

#include <cstdint>
#include <filesystem>
#include <string>

#include "broadbeam/patterns.hpp"
#include "broadbeam/types.hpp"

namespace broadbeam {

struct WeightFileMeta {
  std::string generator;  ///< invocation that produced the file
  std::uint64_t seed = 0;
  double epsilon = 0.0;   ///< target sidelobe tolerance, 0 when not applicable
  std::string timestamp;  ///< filled at write time when empty
};

/// On-disk weight description (JSON, schema_version 1). Phases are radians;
/// for rectangular arrays the flat lists scan row-major. Weights with tapered
/// amplitudes additionally carry magnitude lists; when absent the weights are
/// unimodular.
struct WeightFile {
  int schema_version = 1;
  std::string kind;  ///< "ula" or "ura"
  Index m = 0;       ///< columns
  Index n = 1;       ///< rows (1 for a ULA)
  RVec phases_a;
  RVec phases_b;
  RVec mags_a;  ///< empty for unimodular weights
  RVec mags_b;
  WeightFileMeta metadata;

  void validate() const;  ///< throws std::invalid_argument on inconsistency
};

WeightFile make_weight_file(const WeightPair& w, WeightFileMeta meta);
WeightFile make_weight_file(const WeightArrayPair& w, WeightFileMeta meta);

bool is_ura(const WeightFile& file);

/// Reconstructs the weights; throws when the kind does not match.
WeightPair to_weight_pair(const WeightFile& file);
WeightArrayPair to_weight_array_pair(const WeightFile& file);

/// Promotes a ULA file to a 1 x M array pair, used by array expansions.
WeightArrayPair to_weight_array_pair_promoting(const WeightFile& file);

/// Atomic write (temp file + rename). Fills in the timestamp when empty.
void write_weight_file(const WeightFile& file, const std::filesystem::path& p);

/// Throws std::runtime_error with a description for malformed files.
WeightFile read_weight_file(const std::filesystem::path& p);

/// CSV export: one row per (phi, theta) sample with columns
/// phi_deg, theta_deg, af_power_db, total_db and optionally eirp_dbw.
/// All three grids must share the same angle sampling. Written atomically.
void write_pattern_csv(const PatternGrid& array_factor,
                       const PatternGrid& total, const PatternGrid* eirp,
                       const std::filesystem::path& p);

}  // namespace broadbeam
