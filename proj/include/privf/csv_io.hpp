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

#include <optional>
#include <string>
#include <vector>

#include "privf/distributions.hpp"
#include "privf/prior_estimation.hpp"
#include "privf/quantizer.hpp"
#include "privf/solver.hpp"

namespace privf {

/// Column-oriented record table read from a headered CSV. Values are taken
/// verbatim as labels; commas, quotes and '|' are not supported inside
/// values.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;
  std::size_t size() const { return rows.size(); }
};

Dataset read_csv(const std::string& path);
void write_csv(const std::string& path, const Dataset& dataset);

/// Join/split of multi-column public symbols ('|' separator).
std::string join_symbol(const std::vector<std::string>& parts);
std::vector<std::string> split_symbol(const std::string& label);

/// (a, b) records: a from the private column, b joining the public columns.
SampleTable make_sample_table(const Dataset& dataset,
                              const std::string& private_column,
                              const std::vector<std::string>& public_columns);

// --- artifact file formats -------------------------------------------------

/// Prior file: header a,b,probability; zero cells omitted.
void write_prior_csv(const std::string& path, const JointDistribution& prior);
JointDistribution read_prior_csv(const std::string& path);

/// Mapping file: header in_symbol,out_symbol,probability; entries below
/// 1e-12 omitted (consumers treat omissions as zero).
void write_mapping_csv(const std::string& path,
                       const ConditionalMapping& map);

/// Reload a mapping against a known input alphabet; the output alphabet is
/// rebuilt from the file (sorted labels). Rows are renormalized within the
/// ingestion tolerance.
ConditionalMapping read_mapping_csv(const std::string& path,
                                    const Alphabet& in_alphabet);

/// Curve file columns: delta_target, achieved_distortion, leakage_bits,
/// map_accuracy, converged. Failed points carry empty numeric fields and
/// converged=failed.
struct CurveRow {
  double delta_target = 0.0;
  double achieved_distortion = 0.0;
  double leakage_bits = 0.0;
  double map_accuracy = 0.0;
  bool converged = false;
  bool failed = false;
};
void write_curve_csv(const std::string& path,
                     const std::vector<CurveRow>& rows);
std::vector<CurveRow> read_curve_csv(const std::string& path);

/// Quantizer files: assignments (symbol, center_index, distance) and
/// centers (center_index, label, coordinates...).
void write_quantizer_csv(const std::string& assignment_path,
                         const std::string& centers_path,
                         const Quantizer& quant);

/// Key = value report, keys written in the given order.
void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>&
                      entries);

std::string format_double(double v);

}  // namespace privf
