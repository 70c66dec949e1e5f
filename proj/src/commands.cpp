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

#include "privf/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "privf/errors.hpp"
#include "privf/evaluate.hpp"
#include "privf/info_measures.hpp"
#include "privf/prior_estimation.hpp"

namespace privf {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

bool parse_numeric(const std::string& s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string bin_label(const std::vector<double>& edges, double v,
                      const std::string& column) {
  if (v < edges.front() || v > edges.back()) {
    throw DataError("value " + std::to_string(v) + " in column '" + column +
                    "' falls outside the declared bin edges");
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (v < edges[i + 1] || i + 2 == edges.size()) {
      return "bin" + std::to_string(i);
    }
  }
  return "bin0";
}

std::vector<std::string> sorted_unique(const std::vector<std::string>& v) {
  std::set<std::string> s(v.begin(), v.end());
  return std::vector<std::string>(s.begin(), s.end());
}

// Recode and bin the raw dataset columns in place.
Dataset preprocess(const RunConfig& cfg) {
  Dataset data = read_csv(cfg.dataset);
  for (const auto& [col, edges] : cfg.bins) {
    if (edges.size() < 2) {
      throw DataError("column '" + col + "' needs at least two bin edges");
    }
    std::size_t idx = data.column_index(col);
    for (auto& row : data.rows) {
      double v;
      if (!parse_numeric(row[idx], v)) {
        throw DataError("cannot bin non-numeric value '" + row[idx] +
                        "' in column '" + col + "'");
      }
      row[idx] = bin_label(edges, v, col);
    }
  }
  for (const auto& [col, mapping] : cfg.recodes) {
    std::size_t idx = data.column_index(col);
    for (auto& row : data.rows) {
      auto it = mapping.find(row[idx]);
      if (it != mapping.end()) row[idx] = it->second;
    }
  }
  return data;
}

std::vector<std::string> column_values(const Dataset& data,
                                       const std::string& column) {
  std::size_t idx = data.column_index(column);
  std::vector<std::string> values;
  values.reserve(data.size());
  for (const auto& row : data.rows) values.push_back(row[idx]);
  return values;
}

Pipeline build_kde_pipeline(const RunConfig& cfg, Dataset data) {
  Pipeline p;
  if (cfg.metric != "l2") {
    throw DataError("kde discretization requires the l2 metric");
  }
  LabeledPoints points;
  KdeGrid grid;
  std::vector<std::size_t> cols;
  for (const auto& name : cfg.public_columns) {
    auto it = cfg.kde_grids.find(name);
    if (it == cfg.kde_grids.end()) {
      throw DataError("kde runs need a kde_grid_" + name + " entry");
    }
    grid.edges.push_back(it->second);
    cols.push_back(data.column_index(name));
  }
  std::size_t a_col = data.column_index(cfg.private_column);
  for (const auto& row : data.rows) {
    std::vector<double> coord(cols.size());
    for (std::size_t d = 0; d < cols.size(); ++d) {
      if (!parse_numeric(row[cols[d]], coord[d])) {
        throw DataError("kde column value '" + row[cols[d]] +
                        "' is not numeric");
      }
    }
    points.coordinates.push_back(std::move(coord));
    points.class_labels.push_back(row[a_col]);
  }
  KdeBandwidth bw = cfg.kde_bandwidth
                        ? KdeBandwidth::fixed(*cfg.kde_bandwidth)
                        : KdeBandwidth::cross_validated();
  p.prior = kde_discretize(points, grid, bw);
  p.a_alphabet = p.prior->row_alphabet();
  p.b_alphabet = p.prior->col_alphabet();

  // Hard-assign each record to its covering cell so record-level commands
  // keep working on KDE runs.
  p.samples.records.reserve(data.size());
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    std::string cell;
    for (std::size_t d = 0; d < grid.edges.size(); ++d) {
      const auto& edges = grid.edges[d];
      double v = points.coordinates[i][d];
      std::size_t bin = 0;
      for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        if (v >= edges[e]) bin = e;
      }
      double center = 0.5 * (edges[bin] + edges[bin + 1]);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.12g", center);
      if (d > 0) cell += '|';
      cell += buf;
    }
    p.samples.records.push_back({points.class_labels[i], cell});
  }

  p.point_metric = Metric::kL2;
  for (std::size_t b = 0; b < p.b_alphabet.size(); ++b) {
    std::vector<double> coord;
    for (const auto& part : split_symbol(p.b_alphabet.label(b))) {
      double v;
      if (!parse_numeric(part, v)) {
        throw DataError("internal: cell label is not numeric");
      }
      coord.push_back(v);
    }
    p.symbol_points.push_back(std::move(coord));
  }
  Matrix cost(p.b_alphabet.size(), p.b_alphabet.size(), 0.0);
  for (std::size_t i = 0; i < p.b_alphabet.size(); ++i) {
    for (std::size_t j = 0; j < p.b_alphabet.size(); ++j) {
      cost(i, j) = metric_distance(Metric::kL2, p.symbol_points[i],
                                   p.symbol_points[j]);
    }
  }
  p.distortion.emplace(p.b_alphabet, p.b_alphabet, std::move(cost));
  p.dataset = std::move(data);
  return p;
}

}  // namespace

Pipeline build_pipeline(const RunConfig& cfg) {
  if (cfg.dataset.empty()) throw DataError("config: data.dataset is required");
  if (cfg.private_column.empty()) {
    throw DataError("config: data.private_column is required");
  }
  if (cfg.public_columns.empty()) {
    throw DataError("config: data.public_columns is required");
  }
  Dataset data = preprocess(cfg);
  if (data.rows.empty()) {
    throw DataError("dataset '" + cfg.dataset + "' has no records");
  }
  if (!cfg.kde_grids.empty()) return build_kde_pipeline(cfg, std::move(data));

  Pipeline p;
  p.samples = make_sample_table(data, cfg.private_column, cfg.public_columns);
  {
    std::vector<std::string> a_values;
    for (const auto& rec : p.samples.records) a_values.push_back(rec.a);
    p.a_alphabet = Alphabet(sorted_unique(a_values));
  }

  if (cfg.metric == "erasure") {
    FeatureSchema schema;
    for (const auto& col : cfg.public_columns) {
      auto declared = cfg.declared_values.find(col);
      std::vector<std::string> values =
          declared != cfg.declared_values.end()
              ? declared->second
              : sorted_unique(column_values(data, col));
      schema.features.push_back({col, std::move(values)});
    }
    DistortionMatrix d = erasure_distortion(schema);
    p.b_alphabet = d.in_alphabet();
    p.schema = std::move(schema);
    p.distortion = std::move(d);
    // Coordinates: per-feature value index (hamming-compatible codes).
    for (std::size_t b = 0; b < p.b_alphabet.size(); ++b) {
      auto parts = split_symbol(p.b_alphabet.label(b));
      std::vector<double> coord(parts.size());
      for (std::size_t f = 0; f < parts.size(); ++f) {
        const auto& values = p.schema->features[f].values;
        auto it = std::find(values.begin(), values.end(), parts[f]);
        coord[f] = static_cast<double>(it - values.begin());
      }
      p.symbol_points.push_back(std::move(coord));
    }
    p.point_metric = Metric::kHamming;
  } else {
    std::vector<std::string> b_values;
    for (const auto& rec : p.samples.records) b_values.push_back(rec.b);
    p.b_alphabet = Alphabet(sorted_unique(b_values));

    if (cfg.metric == "l2") {
      p.point_metric = Metric::kL2;
      for (std::size_t b = 0; b < p.b_alphabet.size(); ++b) {
        std::vector<double> coord;
        for (const auto& part : split_symbol(p.b_alphabet.label(b))) {
          double v;
          if (!parse_numeric(part, v)) {
            throw DataError("l2 metric needs numeric public values, got '" +
                            part + "'");
          }
          coord.push_back(v);
        }
        p.symbol_points.push_back(std::move(coord));
      }
    } else {
      p.point_metric = Metric::kHamming;
      // Per-column codes; hamming counts differing features.
      std::vector<std::map<std::string, double>> codes(
          cfg.public_columns.size());
      for (std::size_t c = 0; c < cfg.public_columns.size(); ++c) {
        auto values = sorted_unique(column_values(data, cfg.public_columns[c]));
        for (std::size_t i = 0; i < values.size(); ++i) {
          codes[c][values[i]] = static_cast<double>(i);
        }
      }
      for (std::size_t b = 0; b < p.b_alphabet.size(); ++b) {
        auto parts = split_symbol(p.b_alphabet.label(b));
        if (parts.size() != codes.size()) {
          throw DataError("symbol arity mismatch in '" +
                          p.b_alphabet.label(b) + "'");
        }
        std::vector<double> coord(parts.size());
        for (std::size_t f = 0; f < parts.size(); ++f) {
          coord[f] = codes[f].at(parts[f]);
        }
        p.symbol_points.push_back(std::move(coord));
      }
    }
    Matrix cost(p.b_alphabet.size(), p.b_alphabet.size(), 0.0);
    for (std::size_t i = 0; i < p.b_alphabet.size(); ++i) {
      for (std::size_t j = 0; j < p.b_alphabet.size(); ++j) {
        cost(i, j) = metric_distance(p.point_metric, p.symbol_points[i],
                                     p.symbol_points[j]);
      }
    }
    p.distortion.emplace(p.b_alphabet, p.b_alphabet, std::move(cost));
  }

  p.prior = smoothed_joint(p.samples, p.a_alphabet, p.b_alphabet,
                           cfg.smoothing_alpha);
  p.dataset = std::move(data);
  return p;
}

int cmd_estimate(const RunConfig& cfg) {
  Pipeline p = build_pipeline(cfg);
  write_prior_csv(out_path(cfg, "prior.csv"), *p.prior);

  double h_a = entropy(p.prior->row_marginal());
  double i_ab = mutual_information(*p.prior);
  std::vector<std::pair<std::string, std::string>> summary{
      {"n_records", std::to_string(p.samples.size())},
      {"a_size", std::to_string(p.a_alphabet.size())},
      {"b_size", std::to_string(p.b_alphabet.size())},
      {"h_a_bits", format_double(h_a)},
      {"i_ab_bits", format_double(i_ab)},
      {"majority_rate", format_double(majority_rate(*p.prior))},
  };
  write_report(out_path(cfg, "estimate_summary.txt"), summary);
  for (const auto& [k, v] : summary) std::cout << k << " = " << v << "\n";
  return 0;
}

namespace {

std::string mapping_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "mapping_%03zu.csv", index);
  return buf;
}

double lifted_end_to_end(const JointDistribution& prior, const Quantizer& q,
                         const ConditionalMapping& lifted) {
  const auto pb = prior.col_marginal();
  double total = 0.0;
  for (std::size_t b = 0; b < q.input_alphabet.size(); ++b) {
    if (pb[b] == 0.0) continue;
    for (std::size_t o = 0; o < q.k(); ++o) {
      double m = lifted(b, o);
      if (m == 0.0) continue;
      total += pb[b] * m * metric_distance(q.metric, q.points[b], q.centers[o]);
    }
  }
  return total;
}

}  // namespace

int cmd_solve(const RunConfig& cfg) {
  if (cfg.deltas.empty()) {
    throw DataError("config: mapping.deltas is required for solve");
  }
  Pipeline p = build_pipeline(cfg);

  std::vector<CurveRow> rows;
  if (cfg.quantize_k == 0) {
    TradeoffCurve curve =
        sweep_curve(*p.prior, *p.distortion, cfg.deltas, cfg.solver);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const auto& pt = curve.points[i];
      CurveRow row;
      row.delta_target = pt.delta_target;
      if (pt.failed) {
        row.failed = true;
        std::cerr << "warning: delta " << pt.delta_target
                  << " failed: " << pt.error << "\n";
      } else {
        row.achieved_distortion = pt.achieved_distortion;
        row.leakage_bits = pt.leakage_bits;
        row.map_accuracy = map_accuracy(*p.prior, *pt.mapping);
        row.converged = pt.converged;
        write_mapping_csv(out_path(cfg, mapping_file_name(i)), *pt.mapping);
      }
      rows.push_back(row);
    }
  } else {
    if (cfg.metric == "erasure") {
      throw DataError("quantization is not supported with the erasure "
                      "metric");
    }
    Quantizer quant =
        cluster(p.b_alphabet, p.symbol_points, p.prior->col_marginal(),
                cfg.quantize_k, p.point_metric, cfg.seed);
    write_quantizer_csv(out_path(cfg, "quantizer.csv"),
                        out_path(cfg, "centers.csv"), quant);
    JointDistribution q_prior = quantized_prior(*p.prior, quant);
    DistortionMatrix d_centers = make_center_distortion(quant);
    TradeoffCurve curve = sweep_curve(q_prior, d_centers, cfg.deltas,
                                      cfg.solver);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const auto& pt = curve.points[i];
      CurveRow row;
      row.delta_target = pt.delta_target;
      if (pt.failed) {
        row.failed = true;
        std::cerr << "warning: delta " << pt.delta_target
                  << " failed: " << pt.error << "\n";
      } else {
        ConditionalMapping lifted = lift_mapping(*pt.mapping, quant);
        row.achieved_distortion = lifted_end_to_end(*p.prior, quant, lifted);
        row.leakage_bits = pt.leakage_bits;
        row.map_accuracy = map_accuracy(*p.prior, lifted);
        row.converged = pt.converged;
        write_mapping_csv(out_path(cfg, mapping_file_name(i)), lifted);
      }
      rows.push_back(row);
    }
  }
  write_curve_csv(out_path(cfg, "curve.csv"), rows);
  std::cout << "wrote " << rows.size() << " curve points to "
            << out_path(cfg, "curve.csv") << "\n";
  return 0;
}

namespace {

// One-hot design matrix over the split symbol parts; numeric columns stay
// scalar. Value order is sorted for determinism.
std::vector<std::vector<double>> design_matrix(
    const std::vector<std::string>& symbols) {
  if (symbols.empty()) return {};
  std::size_t arity = split_symbol(symbols[0]).size();
  std::vector<std::vector<std::string>> parts(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    parts[i] = split_symbol(symbols[i]);
    if (parts[i].size() != arity) {
      throw DataError("inconsistent symbol arity in '" + symbols[i] + "'");
    }
  }
  std::vector<std::vector<double>> features(symbols.size());
  for (std::size_t c = 0; c < arity; ++c) {
    bool numeric = true;
    std::vector<double> numeric_vals(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (!parse_numeric(parts[i][c], numeric_vals[i])) {
        numeric = false;
        break;
      }
    }
    if (numeric) {
      for (std::size_t i = 0; i < symbols.size(); ++i) {
        features[i].push_back(numeric_vals[i]);
      }
    } else {
      std::set<std::string> values;
      for (std::size_t i = 0; i < symbols.size(); ++i) values.insert(parts[i][c]);
      for (const auto& value : values) {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
          features[i].push_back(parts[i][c] == value ? 1.0 : 0.0);
        }
      }
    }
  }
  return features;
}

void write_roc_csv(const std::string& path, const RocCurve& curve) {
  std::vector<std::pair<std::string, std::string>> dummy;
  (void)dummy;
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << "fpr,tpr\n";
  for (const auto& [fpr, tpr] : curve.points) {
    out << format_double(fpr) << ',' << format_double(tpr) << '\n';
  }
}

}  // namespace

int cmd_evaluate(const RunConfig& cfg, const std::string& mapping_path) {
  Pipeline p = build_pipeline(cfg);
  ConditionalMapping mapping = read_mapping_csv(mapping_path, p.b_alphabet);

  double majority = majority_rate(*p.prior);
  double map_before =
      map_accuracy(*p.prior, ConditionalMapping::identity(p.b_alphabet));
  double map_after = map_accuracy(*p.prior, mapping);
  double leak_before = mutual_information(*p.prior);
  double leak_after = leakage(*p.prior, mapping);

  std::vector<std::pair<std::string, std::string>> report{
      {"seed", std::to_string(cfg.seed)},
      {"majority_rate", format_double(majority)},
      {"map_accuracy_before", format_double(map_before)},
      {"map_accuracy_after", format_double(map_after)},
      {"leakage_before_bits", format_double(leak_before)},
      {"leakage_after_bits", format_double(leak_after)},
  };

  if (p.a_alphabet.size() == 2) {
    std::vector<int> labels;
    labels.reserve(p.samples.size());
    std::vector<std::string> before_syms, after_syms;
    for (const auto& rec : p.samples.records) {
      labels.push_back(
          static_cast<int>(p.a_alphabet.index_of(rec.a) == 1 ? 1 : 0));
      before_syms.push_back(rec.b);
    }
    SampleTable distorted = apply_mapping(p.samples, mapping, cfg.seed);
    for (const auto& rec : distorted.records) after_syms.push_back(rec.b);

    LogregOptions lopts;
    auto scores_before = logreg_cv_scores(design_matrix(before_syms), labels,
                                          lopts, cfg.seed);
    auto scores_after = logreg_cv_scores(design_matrix(after_syms), labels,
                                         lopts, cfg.seed + 1);
    RocCurve roc_before = roc(scores_before, labels);
    RocCurve roc_after = roc(scores_after, labels);
    write_roc_csv(out_path(cfg, "roc_before.csv"), roc_before);
    write_roc_csv(out_path(cfg, "roc_after.csv"), roc_after);
    report.emplace_back("auc_before", format_double(roc_before.auc));
    report.emplace_back("auc_after", format_double(roc_after.auc));
  } else {
    report.emplace_back("auc_before", "skipped (non-binary private column)");
    report.emplace_back("auc_after", "skipped (non-binary private column)");
  }

  write_report(out_path(cfg, "evaluate_report.txt"), report);
  for (const auto& [k, v] : report) std::cout << k << " = " << v << "\n";
  return 0;
}

int cmd_bounds(const RunConfig& cfg, const std::string& other_prior_path) {
  Pipeline p = build_pipeline(cfg);
  JointDistribution q = read_prior_csv(other_prior_path);
  if (q.row_alphabet() != p.prior->row_alphabet() ||
      q.col_alphabet() != p.prior->col_alphabet()) {
    throw DataError("prior file '" + other_prior_path +
                    "' is over different alphabets than the estimated prior");
  }
  double delta = cfg.deltas.empty() ? 0.0 : cfg.deltas.front();
  MismatchReport rep = mismatch_bounds(*p.prior, q, *p.distortion, delta);

  write_report(out_path(cfg, "bounds.txt"),
               {{"l1", format_double(rep.l1)},
                {"leakage_bound_bits", format_double(rep.leakage_bound)},
                {"distortion_slack", format_double(rep.distortion_slack)},
                {"distortion_bound", format_double(rep.distortion_bound)},
                {"valid", rep.valid ? "true" : "false"}});

  std::vector<long long> ns = cfg.bound_ns;
  if (ns.empty()) ns = {100, 1000, 10000};
  std::vector<double> epsilons = cfg.bound_epsilons;
  if (epsilons.empty()) epsilons = {0.05, 0.1, 0.2};
  std::ofstream out(out_path(cfg, "sanov.csv"));
  out << "n,epsilon,bound,decreasing\n";
  for (long long n : ns) {
    for (double eps : epsilons) {
      double bound = sample_complexity_bound(n, p.a_alphabet.size(),
                                             p.b_alphabet.size(), eps);
      bool dec = sample_complexity_decreasing_at(n, p.a_alphabet.size(),
                                                 p.b_alphabet.size(), eps);
      out << n << ',' << format_double(eps) << ',' << format_double(bound)
          << ',' << (dec ? "1" : "0") << '\n';
    }
  }
  std::cout << "l1 = " << format_double(rep.l1)
            << ", leakage_bound_bits = " << format_double(rep.leakage_bound)
            << ", valid = " << (rep.valid ? "true" : "false") << "\n";
  return 0;
}

int cmd_synth(const RunConfig& cfg) {
  PoliticsOptions opts;
  opts.n = cfg.synth_n;
  opts.shows = cfg.synth_shows;
  opts.discriminative_fraction = cfg.synth_fraction;
  opts.margin = cfg.synth_margin;
  opts.class_balance = cfg.synth_balance;
  RatingsTable table = synth_politics(opts, cfg.seed);

  Dataset data;
  data.columns.push_back("politics");
  for (std::size_t j = 0; j < opts.shows; ++j) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "show_%02zu", j);
    data.columns.push_back(buf);
  }
  for (std::size_t i = 0; i < table.n(); ++i) {
    std::vector<std::string> row;
    row.push_back(std::to_string(table.affiliation[i]));
    for (std::size_t j = 0; j < opts.shows; ++j) {
      row.push_back(std::to_string(table.likes[i][j]));
    }
    data.rows.push_back(std::move(row));
  }
  std::string path = out_path(cfg, "synthetic.csv");
  write_csv(path, data);
  std::cout << "wrote " << table.n() << " records to " << path << "\n";
  return 0;
}

}  // namespace privf
