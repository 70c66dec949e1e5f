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

#include <memory>
#include <optional>
#include <string>

#include "privf/config.hpp"
#include "privf/csv_io.hpp"
#include "privf/erasure.hpp"
#include "privf/quantizer.hpp"

namespace privf {

/// Everything the commands derive from a config: the ingested dataset, the
/// estimated prior and the distortion structure for the chosen metric.
struct Pipeline {
  Dataset dataset;  // after recoding / binning
  SampleTable samples;
  Alphabet a_alphabet;
  Alphabet b_alphabet;
  std::optional<JointDistribution> prior;
  std::optional<DistortionMatrix> distortion;
  std::vector<std::vector<double>> symbol_points;  // per B symbol
  Metric point_metric = Metric::kHamming;
  std::optional<FeatureSchema> schema;  // erasure only
};

Pipeline build_pipeline(const RunConfig& cfg);

// Each command writes its outputs under cfg.out_dir and returns a process
// exit code (0 = success, possibly with warnings on stderr).
int cmd_estimate(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_evaluate(const RunConfig& cfg, const std::string& mapping_path);
int cmd_bounds(const RunConfig& cfg, const std::string& other_prior_path);
int cmd_synth(const RunConfig& cfg);

}  // namespace privf
