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

#include "privf/csv_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "privf/errors.hpp"

namespace privf {

namespace {

std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

void check_label(const std::string& label, const char* what) {
  for (char c : label) {
    if (c == ',' || c == '"' || c == '\n') {
      throw DataError(std::string(what) + " label contains a reserved "
                      "character: '" + label + "'");
    }
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("cannot parse number '" + s + "' in " + context);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::size_t Dataset::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DataError("dataset has no column named '" + name + "'");
}

Dataset read_csv(const std::string& path) {
  auto in = open_input(path);
  Dataset dataset;
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("'" + path + "' is empty; expected a header row");
  }
  dataset.columns = split_line(line, ',');
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_line(line, ',');
    if (fields.size() != dataset.columns.size()) {
      throw DataError("'" + path + "' line " + std::to_string(lineno) +
                      " has " + std::to_string(fields.size()) +
                      " fields, expected " +
                      std::to_string(dataset.columns.size()));
    }
    dataset.rows.push_back(std::move(fields));
  }
  return dataset;
}

void write_csv(const std::string& path, const Dataset& dataset) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < dataset.columns.size(); ++i) {
    if (i > 0) out << ',';
    out << dataset.columns[i];
  }
  out << '\n';
  for (const auto& row : dataset.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

std::string join_symbol(const std::vector<std::string>& parts) {
  std::string label;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].find('|') != std::string::npos) {
      throw DataError("value '" + parts[i] + "' contains the symbol "
                      "separator '|'");
    }
    if (i > 0) label += '|';
    label += parts[i];
  }
  return label;
}

std::vector<std::string> split_symbol(const std::string& label) {
  std::vector<std::string> parts;
  std::string part;
  for (char c : label) {
    if (c == '|') {
      parts.push_back(part);
      part.clear();
    } else {
      part += c;
    }
  }
  parts.push_back(part);
  return parts;
}

SampleTable make_sample_table(const Dataset& dataset,
                              const std::string& private_column,
                              const std::vector<std::string>& public_columns) {
  std::size_t a_col = dataset.column_index(private_column);
  std::vector<std::size_t> b_cols;
  for (const auto& name : public_columns) {
    b_cols.push_back(dataset.column_index(name));
  }
  SampleTable table;
  table.records.reserve(dataset.size());
  std::vector<std::string> parts(b_cols.size());
  for (const auto& row : dataset.rows) {
    for (std::size_t i = 0; i < b_cols.size(); ++i) parts[i] = row[b_cols[i]];
    table.records.push_back({row[a_col], join_symbol(parts)});
  }
  return table;
}

void write_prior_csv(const std::string& path, const JointDistribution& prior) {
  auto out = open_output(path);
  out << "a,b,probability\n";
  for (std::size_t a = 0; a < prior.row_alphabet().size(); ++a) {
    check_label(prior.row_alphabet().label(a), "private");
    for (std::size_t b = 0; b < prior.col_alphabet().size(); ++b) {
      double v = prior(a, b);
      if (v == 0.0) continue;
      check_label(prior.col_alphabet().label(b), "public");
      out << prior.row_alphabet().label(a) << ','
          << prior.col_alphabet().label(b) << ',' << format_double(v) << '\n';
    }
  }
}

JointDistribution read_prior_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || split_line(line, ',') !=
      std::vector<std::string>{"a", "b", "probability"}) {
    throw DataError("'" + path + "': expected header a,b,probability");
  }
  std::map<std::pair<std::string, std::string>, double> cells;
  std::set<std::string> a_labels, b_labels;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_line(line, ',');
    if (fields.size() != 3) {
      throw DataError("'" + path + "' line " + std::to_string(lineno) +
                      ": expected 3 fields");
    }
    double v = parse_double(fields[2], path);
    cells[{fields[0], fields[1]}] += v;
    a_labels.insert(fields[0]);
    b_labels.insert(fields[1]);
  }
  if (cells.empty()) throw DataError("'" + path + "' holds no prior cells");
  Alphabet a_alpha(std::vector<std::string>(a_labels.begin(), a_labels.end()));
  Alphabet b_alpha(std::vector<std::string>(b_labels.begin(), b_labels.end()));
  Matrix mass(a_alpha.size(), b_alpha.size(), 0.0);
  for (const auto& [key, v] : cells) {
    mass(a_alpha.index_of(key.first), b_alpha.index_of(key.second)) = v;
  }
  return JointDistribution::from_external(std::move(a_alpha),
                                          std::move(b_alpha), std::move(mass));
}

void write_mapping_csv(const std::string& path, const ConditionalMapping& map) {
  auto out = open_output(path);
  out << "in_symbol,out_symbol,probability\n";
  for (std::size_t b = 0; b < map.in_alphabet().size(); ++b) {
    check_label(map.in_alphabet().label(b), "input");
    for (std::size_t o = 0; o < map.out_alphabet().size(); ++o) {
      double v = map(b, o);
      if (v < 1e-12) continue;
      check_label(map.out_alphabet().label(o), "output");
      out << map.in_alphabet().label(b) << ',' << map.out_alphabet().label(o)
          << ',' << format_double(v) << '\n';
    }
  }
}

ConditionalMapping read_mapping_csv(const std::string& path,
                                    const Alphabet& in_alphabet) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || split_line(line, ',') !=
      std::vector<std::string>{"in_symbol", "out_symbol", "probability"}) {
    throw DataError("'" + path +
                    "': expected header in_symbol,out_symbol,probability");
  }
  std::map<std::pair<std::string, std::string>, double> cells;
  std::set<std::string> out_labels;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_line(line, ',');
    if (fields.size() != 3) {
      throw DataError("'" + path + "' line " + std::to_string(lineno) +
                      ": expected 3 fields");
    }
    if (!in_alphabet.contains(fields[0])) {
      throw DataError("'" + path + "': input symbol '" + fields[0] +
                      "' is not in the expected alphabet");
    }
    cells[{fields[0], fields[1]}] += parse_double(fields[2], path);
    out_labels.insert(fields[1]);
  }
  if (cells.empty()) throw DataError("'" + path + "' holds no mapping rows");
  Alphabet out_alpha(
      std::vector<std::string>(out_labels.begin(), out_labels.end()));
  Matrix rows(in_alphabet.size(), out_alpha.size(), 0.0);
  for (const auto& [key, v] : cells) {
    rows(in_alphabet.index_of(key.first), out_alpha.index_of(key.second)) = v;
  }
  return ConditionalMapping::from_external(in_alphabet, std::move(out_alpha),
                                           std::move(rows));
}

void write_curve_csv(const std::string& path,
                     const std::vector<CurveRow>& rows) {
  auto out = open_output(path);
  out << "delta_target,achieved_distortion,leakage_bits,map_accuracy,"
         "converged\n";
  for (const auto& row : rows) {
    out << format_double(row.delta_target) << ',';
    if (row.failed) {
      out << ",,,failed\n";
      continue;
    }
    out << format_double(row.achieved_distortion) << ','
        << format_double(row.leakage_bits) << ','
        << format_double(row.map_accuracy) << ','
        << (row.converged ? "1" : "0") << '\n';
  }
}

std::vector<CurveRow> read_curve_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("'" + path + "' is empty");
  }
  std::vector<CurveRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_line(line, ',');
    if (fields.size() != 5) {
      throw DataError("'" + path + "' line " + std::to_string(lineno) +
                      ": expected 5 fields");
    }
    CurveRow row;
    row.delta_target = parse_double(fields[0], path);
    if (fields[4] == "failed") {
      row.failed = true;
    } else {
      row.achieved_distortion = parse_double(fields[1], path);
      row.leakage_bits = parse_double(fields[2], path);
      row.map_accuracy = parse_double(fields[3], path);
      row.converged = fields[4] == "1";
    }
    rows.push_back(row);
  }
  return rows;
}

void write_quantizer_csv(const std::string& assignment_path,
                         const std::string& centers_path,
                         const Quantizer& quant) {
  {
    auto out = open_output(assignment_path);
    out << "symbol,center_index,distance\n";
    for (std::size_t b = 0; b < quant.input_alphabet.size(); ++b) {
      double dist = metric_distance(quant.metric, quant.points[b],
                                    quant.centers[quant.assignment[b]]);
      out << quant.input_alphabet.label(b) << ',' << quant.assignment[b]
          << ',' << format_double(dist) << '\n';
    }
  }
  {
    auto out = open_output(centers_path);
    out << "center_index,label";
    std::size_t dim = quant.centers.empty() ? 0 : quant.centers[0].size();
    for (std::size_t d = 0; d < dim; ++d) out << ",x" << d;
    out << '\n';
    for (std::size_t c = 0; c < quant.k(); ++c) {
      out << c << ',' << quant.center_alphabet.label(c);
      for (double v : quant.centers[c]) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>&
                      entries) {
  auto out = open_output(path);
  for (const auto& [key, value] : entries) {
    out << key << " = " << value << '\n';
  }
}

}  // namespace privf
