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

#include "privf/config.hpp"

#include <fstream>

#include "privf/errors.hpp"

namespace privf {

namespace {

std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string item;
  for (char c : s) {
    if (c == ',') {
      items.push_back(trim(item));
      item.clear();
    } else {
      item += c;
    }
  }
  item = trim(item);
  if (!item.empty() || !items.empty()) items.push_back(item);
  return items;
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw DataError("config key '" + key + "': cannot parse number '" + v +
                    "'");
  }
}

long long to_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw DataError("config key '" + key + "': cannot parse integer '" + v +
                    "'");
  }
}

std::vector<double> to_doubles(const std::string& v, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(item, key));
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config '" + path + "'");

  RunConfig cfg;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[' && s.back() == ']') {
      section = trim(s.substr(1, s.size() - 2));
      if (section != "data" && section != "mapping" && section != "solver" &&
          section != "bounds" && section != "synth" && section != "run") {
        throw DataError("config '" + path + "' line " +
                        std::to_string(lineno) + ": unknown section [" +
                        section + "]");
      }
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw DataError("config '" + path + "' line " + std::to_string(lineno) +
                      ": expected key = value");
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (section.empty()) {
      throw DataError("config '" + path + "' line " + std::to_string(lineno) +
                      ": key outside any section");
    }

    bool known = false;
    if (section == "data") {
      known = true;
      if (key == "dataset") {
        cfg.dataset = value;
      } else if (key == "private_column") {
        cfg.private_column = value;
      } else if (key == "public_columns") {
        cfg.public_columns = split_list(value);
      } else if (key == "kde_bandwidth") {
        if (value == "cv") {
          cfg.kde_bandwidth.reset();
        } else {
          cfg.kde_bandwidth = to_double(value, key);
        }
      } else if (starts_with(key, "recode_")) {
        std::string col = key.substr(7);
        for (const auto& pair : split_list(value)) {
          auto colon = pair.find(':');
          if (colon == std::string::npos) {
            throw DataError("config key '" + key +
                            "': recode entries look like old:new");
          }
          cfg.recodes[col][trim(pair.substr(0, colon))] =
              trim(pair.substr(colon + 1));
        }
      } else if (starts_with(key, "bin_")) {
        cfg.bins[key.substr(4)] = to_doubles(value, key);
      } else if (starts_with(key, "kde_grid_")) {
        cfg.kde_grids[key.substr(9)] = to_doubles(value, key);
      } else if (starts_with(key, "values_")) {
        cfg.declared_values[key.substr(7)] = split_list(value);
      } else {
        known = false;
      }
    } else if (section == "mapping") {
      known = true;
      if (key == "metric") {
        if (value != "hamming" && value != "l2" && value != "erasure") {
          throw DataError("config: metric must be hamming, l2 or erasure");
        }
        cfg.metric = value;
      } else if (key == "deltas") {
        cfg.deltas = to_doubles(value, key);
      } else if (key == "quantize_k") {
        long long k = to_int(value, key);
        if (k < 0) throw DataError("config: quantize_k must be >= 0");
        cfg.quantize_k = static_cast<std::size_t>(k);
      } else if (key == "smoothing_alpha") {
        cfg.smoothing_alpha = to_double(value, key);
      } else {
        known = false;
      }
    } else if (section == "solver") {
      known = true;
      if (key == "max_iters") {
        cfg.solver.max_iters = static_cast<int>(to_int(value, key));
      } else if (key == "tol") {
        cfg.solver.tol = to_double(value, key);
      } else if (key == "step_rule") {
        if (value == "line_search") {
          cfg.solver.step_rule = StepRule::kLineSearch;
        } else if (value == "diminishing") {
          cfg.solver.step_rule = StepRule::kDiminishing;
        } else {
          throw DataError("config: step_rule must be line_search or "
                          "diminishing");
        }
      } else if (key == "init") {
        if (value == "identity_or_nearest") {
          cfg.solver.init = InitRule::kIdentityOrNearest;
        } else if (value == "uniform") {
          cfg.solver.init = InitRule::kUniform;
        } else {
          throw DataError("config: init must be identity_or_nearest or "
                          "uniform");
        }
      } else {
        known = false;
      }
    } else if (section == "bounds") {
      known = true;
      if (key == "ns") {
        cfg.bound_ns.clear();
        for (const auto& item : split_list(value)) {
          cfg.bound_ns.push_back(to_int(item, key));
        }
      } else if (key == "epsilons") {
        cfg.bound_epsilons = to_doubles(value, key);
      } else {
        known = false;
      }
    } else if (section == "synth") {
      known = true;
      if (key == "n") {
        cfg.synth_n = static_cast<std::size_t>(to_int(value, key));
      } else if (key == "shows") {
        cfg.synth_shows = static_cast<std::size_t>(to_int(value, key));
      } else if (key == "fraction") {
        cfg.synth_fraction = to_double(value, key);
      } else if (key == "margin") {
        cfg.synth_margin = to_double(value, key);
      } else if (key == "balance") {
        cfg.synth_balance = to_double(value, key);
      } else {
        known = false;
      }
    } else if (section == "run") {
      known = true;
      if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(to_int(value, key));
      } else if (key == "out_dir") {
        cfg.out_dir = value;
      } else {
        known = false;
      }
    }
    if (!known) {
      throw DataError("config '" + path + "' line " + std::to_string(lineno) +
                      ": unknown key '" + key + "' in section [" + section +
                      "]");
    }
  }

  for (std::size_t i = 1; i < cfg.deltas.size(); ++i) {
    if (cfg.deltas[i] < cfg.deltas[i - 1]) {
      throw DataError("config: deltas must be nondecreasing");
    }
  }
  return cfg;
}

}  // namespace privf
