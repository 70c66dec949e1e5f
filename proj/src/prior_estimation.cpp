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

#include "privf/prior_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "privf/info_measures.hpp"
#include "privf/rng.hpp"

namespace privf {

namespace {

Matrix count_table(const SampleTable& samples, const Alphabet& a_alphabet,
                   const Alphabet& b_alphabet) {
  Matrix counts(a_alphabet.size(), b_alphabet.size(), 0.0);
  for (const auto& rec : samples.records) {
    counts(a_alphabet.index_of(rec.a), b_alphabet.index_of(rec.b)) += 1.0;
  }
  return counts;
}

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double gaussian_kernel(double u, double h) {
  double z = u / h;
  return kInvSqrt2Pi / h * std::exp(-0.5 * z * z);
}

std::string format_coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

JointDistribution empirical_joint(const SampleTable& samples,
                                  const Alphabet& a_alphabet,
                                  const Alphabet& b_alphabet) {
  if (samples.size() == 0) {
    throw PreconditionError("empirical_joint needs at least one sample");
  }
  Matrix counts = count_table(samples, a_alphabet, b_alphabet);
  double n = static_cast<double>(samples.size());
  for (double& v : counts.data()) v /= n;
  return JointDistribution::from_external(a_alphabet, b_alphabet,
                                          std::move(counts));
}

JointDistribution smoothed_joint(const SampleTable& samples,
                                 const Alphabet& a_alphabet,
                                 const Alphabet& b_alphabet, double alpha) {
  if (alpha < 0.0) {
    throw PreconditionError("smoothing alpha must be nonnegative");
  }
  if (alpha == 0.0) return empirical_joint(samples, a_alphabet, b_alphabet);
  Matrix counts = count_table(samples, a_alphabet, b_alphabet);
  double cells = static_cast<double>(a_alphabet.size() * b_alphabet.size());
  double denom = static_cast<double>(samples.size()) + alpha * cells;
  for (double& v : counts.data()) v = (v + alpha) / denom;
  return JointDistribution::from_external(a_alphabet, b_alphabet,
                                          std::move(counts));
}

std::size_t KdeGrid::cell_count() const {
  std::size_t n = 1;
  for (const auto& e : edges) {
    if (e.size() < 2) return 0;
    n *= e.size() - 1;
  }
  return edges.empty() ? 0 : n;
}

double kde_cross_validate_bandwidth(
    const std::vector<std::vector<double>>& class_points) {
  const std::size_t n = class_points.size();
  if (n < 2) {
    throw PreconditionError(
        "bandwidth cross-validation needs at least 2 points per class");
  }
  const std::size_t dim = class_points[0].size();

  // Scale reference: mean per-dimension standard deviation.
  double sigma = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    double mean = 0.0;
    for (const auto& p : class_points) mean += p[d];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& p : class_points) var += (p[d] - mean) * (p[d] - mean);
    sigma += std::sqrt(var / static_cast<double>(n));
  }
  sigma /= static_cast<double>(dim);
  if (sigma <= 0.0) sigma = 1e-3;

  double best_h = 0.0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < 10; ++j) {
    // 10 log-spaced multipliers covering [10^-1.5, 10^0.5].
    double h = sigma * std::pow(10.0, -1.5 + 2.0 * j / 9.0);
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double dens = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        double prod = 1.0;
        for (std::size_t d = 0; d < dim; ++d) {
          prod *= gaussian_kernel(class_points[i][d] - class_points[k][d], h);
        }
        dens += prod;
      }
      dens /= static_cast<double>(n - 1);
      ll += std::log(std::max(dens, 1e-300));
    }
    if (ll > best_ll + 1e-12) {
      best_ll = ll;
      best_h = h;
    }
  }
  return best_h;
}

JointDistribution kde_discretize(const LabeledPoints& points,
                                 const KdeGrid& grid,
                                 const KdeBandwidth& bandwidth) {
  const std::size_t n = points.class_labels.size();
  if (n == 0 || points.coordinates.size() != n) {
    throw PreconditionError("kde_discretize: empty or inconsistent points");
  }
  const std::size_t dim = grid.dimensions();
  if (dim == 0 || grid.cell_count() == 0) {
    throw PreconditionError("kde_discretize: degenerate grid");
  }
  for (const auto& e : grid.edges) {
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      if (!(e[i] < e[i + 1])) {
        throw PreconditionError("kde_discretize: grid edges must increase");
      }
    }
  }
  for (const auto& c : points.coordinates) {
    if (c.size() != dim) {
      throw PreconditionError("kde_discretize: point dimension mismatch");
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (c[d] < grid.edges[d].front() || c[d] > grid.edges[d].back()) {
        throw PreconditionError("kde_discretize: grid does not cover data");
      }
    }
  }

  // Group points by sorted class label.
  std::map<std::string, std::vector<std::vector<double>>> by_class;
  for (std::size_t i = 0; i < n; ++i) {
    by_class[points.class_labels[i]].push_back(points.coordinates[i]);
  }
  std::vector<std::string> class_labels;
  for (const auto& [label, pts] : by_class) {
    if (pts.size() < 2) {
      throw PreconditionError("kde_discretize: class '" + label +
                              "' has fewer than 2 points");
    }
    class_labels.push_back(label);
  }
  if (!bandwidth.is_cross_validated() && bandwidth.values.size() != 1 &&
      bandwidth.values.size() != class_labels.size()) {
    throw PreconditionError(
        "kde_discretize: bandwidth count must be 1 or one per class");
  }

  // Cell centers in lexicographic order, first dimension most significant.
  std::vector<std::size_t> cells_per_dim(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    cells_per_dim[d] = grid.edges[d].size() - 1;
  }
  const std::size_t n_cells = grid.cell_count();
  std::vector<std::vector<double>> centers(n_cells,
                                           std::vector<double>(dim, 0.0));
  std::vector<std::string> cell_names(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    std::size_t rem = c;
    std::string name;
    for (std::size_t d = dim; d-- > 0;) {
      std::size_t idx = rem % cells_per_dim[d];
      rem /= cells_per_dim[d];
      centers[c][d] = 0.5 * (grid.edges[d][idx] + grid.edges[d][idx + 1]);
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (d > 0) name += '|';
      name += format_coord(centers[c][d]);
    }
    cell_names[c] = name;
  }

  Matrix mass(class_labels.size(), n_cells, 0.0);
  for (std::size_t ci = 0; ci < class_labels.size(); ++ci) {
    const auto& pts = by_class[class_labels[ci]];
    double h;
    if (bandwidth.is_cross_validated()) {
      h = kde_cross_validate_bandwidth(pts);
    } else if (bandwidth.values.size() == 1) {
      h = bandwidth.values[0];
    } else {
      h = bandwidth.values[ci];
    }
    if (!(h > 0.0)) {
      throw PreconditionError("kde_discretize: bandwidth must be positive");
    }
    double class_weight =
        static_cast<double>(pts.size()) / static_cast<double>(n);
    for (std::size_t c = 0; c < n_cells; ++c) {
      double dens = 0.0;
      for (const auto& p : pts) {
        double prod = 1.0;
        for (std::size_t d = 0; d < dim; ++d) {
          prod *= gaussian_kernel(centers[c][d] - p[d], h);
        }
        dens += prod;
      }
      mass(ci, c) = class_weight * dens / static_cast<double>(pts.size());
    }
  }

  double total = mass.total();
  if (!(total > 0.0)) {
    throw PreconditionError("kde_discretize: zero total density on the grid");
  }
  for (double& v : mass.data()) v /= total;
  return JointDistribution(Alphabet(class_labels), Alphabet(cell_names),
                           std::move(mass));
}

double entropy_l1_bound(const std::vector<double>& p,
                        const std::vector<double>& q) {
  double l1 = l1_distance(p, q);
  if (l1 > 0.5) {
    throw NormPreconditionError(
        "entropy_l1_bound requires ||p-q||_1 <= 1/2, got " +
            std::to_string(l1),
        l1);
  }
  if (l1 == 0.0) return 0.0;
  return l1 * std::log2(static_cast<double>(p.size()) / l1);
}

MismatchReport mismatch_bounds(const JointDistribution& p,
                               const JointDistribution& q,
                               const DistortionMatrix& d, double delta) {
  if (p.row_alphabet() != q.row_alphabet() ||
      p.col_alphabet() != q.col_alphabet()) {
    throw AlphabetMismatchError("mismatch_bounds: priors over different "
                                "alphabets");
  }
  MismatchReport report;
  report.l1 = l1_distance(p, q);
  double cells = static_cast<double>(p.row_alphabet().size() *
                                     p.col_alphabet().size());
  report.leakage_bound =
      report.l1 == 0.0 ? 0.0 : 3.0 * report.l1 * std::log2(cells / report.l1);
  report.distortion_slack = d.d_max() * report.l1;
  report.distortion_bound = delta + report.distortion_slack;
  report.valid = report.l1 <= 0.5;
  return report;
}

double sample_complexity_bound(long long n, std::size_t a_size,
                               std::size_t b_size, double eps) {
  if (n < 1) throw PreconditionError("sample_complexity_bound needs n >= 1");
  if (eps < 0.0) {
    throw PreconditionError("sample_complexity_bound needs eps >= 0");
  }
  double cells = static_cast<double>(a_size * b_size);
  double log2_bound = cells * std::log2(static_cast<double>(n) + 1.0) -
                      2.0 * static_cast<double>(n) * eps * eps;
  return std::exp2(log2_bound);
}

bool sample_complexity_decreasing_at(long long n, std::size_t a_size,
                                     std::size_t b_size, double eps) {
  double cells = static_cast<double>(a_size * b_size);
  double dlog2 = cells / ((static_cast<double>(n) + 1.0) * std::log(2.0)) -
                 2.0 * eps * eps;
  return dlog2 < 0.0;
}

SampleTable sample_from_joint(const JointDistribution& p, std::size_t n,
                              std::mt19937_64& rng) {
  // Flatten to a cumulative distribution over cells.
  const std::size_t na = p.row_alphabet().size();
  const std::size_t nb = p.col_alphabet().size();
  std::vector<double> cum(na * nb, 0.0);
  double acc = 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      acc += p(a, b);
      cum[a * nb + b] = acc;
    }
  }
  SampleTable out;
  out.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = uniform01(rng) * acc;
    std::size_t cell =
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
    if (cell >= cum.size()) cell = cum.size() - 1;
    out.records.push_back(
        {p.row_alphabet().label(cell / nb), p.col_alphabet().label(cell % nb)});
  }
  return out;
}

}  // namespace privf
