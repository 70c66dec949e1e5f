// Copyright 2026 The privf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "privf/solver.hpp"

namespace privf {

/// Run configuration: INI-style sections of `key = value` lines, '#'
/// comments. Unknown sections or keys are rejected so that a config cannot
/// silently drift from what the run actually used.
struct RunConfig {
  // [data]
  std::string dataset;
  std::string private_column;
  std::vector<std::string> public_columns;
  // Optional per-column preprocessing.
  std::map<std::string, std::map<std::string, std::string>> recodes;
  std::map<std::string, std::vector<double>> bins;
  std::map<std::string, std::vector<double>> kde_grids;
  std::optional<double> kde_bandwidth;  // unset = cross-validated
  std::map<std::string, std::vector<std::string>> declared_values;

  // [mapping]
  std::string metric = "hamming";  // hamming | l2 | erasure
  std::vector<double> deltas;
  std::size_t quantize_k = 0;  // 0 = no quantization
  double smoothing_alpha = 0.5;

  // [solver]
  SolverOptions solver;

  // [bounds]
  std::vector<long long> bound_ns;
  std::vector<double> bound_epsilons;

  // [synth]
  std::size_t synth_n = 1200;
  std::size_t synth_shows = 50;
  double synth_fraction = 1.0 / 3.0;
  double synth_margin = 0.35;
  double synth_balance = 0.5;

  // [run]
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

RunConfig parse_config(const std::string& path);

}  // namespace privf
