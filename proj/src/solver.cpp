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

#include "privf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "privf/errors.hpp"
#include "privf/info_measures.hpp"

namespace privf {

namespace {

constexpr double kGradClamp = 1e-12;
constexpr double kZeroInfo = 1e-12;

// ---------------------------------------------------------------------------
// Problem context shared by the solver internals. Everything indexed.
// ---------------------------------------------------------------------------

struct Problem {
  const JointDistribution& prior;
  const DistortionMatrix& d;
  double delta;
  std::size_t na, nb, no;
  std::vector<double> pa;  // p_A
  std::vector<double> w;   // p_B
  std::vector<std::vector<std::size_t>> allowed;  // per-row allowed outputs

  Problem(const JointDistribution& prior_, const DistortionMatrix& d_,
          double delta_)
      : prior(prior_),
        d(d_),
        delta(delta_),
        na(prior_.row_alphabet().size()),
        nb(prior_.col_alphabet().size()),
        no(d_.out_alphabet().size()),
        pa(prior_.row_marginal()),
        w(prior_.col_marginal()) {
    allowed.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t o = 0; o < no; ++o) {
        if (d_.allowed(b, o)) allowed[b].push_back(o);
      }
    }
  }
};

// Output joint T = prior * m and its B_hat marginal.
void output_joint(const Problem& pr, const Matrix& m, Matrix& t,
                  std::vector<double>& t_out) {
  t = Matrix(pr.na, pr.no, 0.0);
  for (std::size_t a = 0; a < pr.na; ++a) {
    for (std::size_t b = 0; b < pr.nb; ++b) {
      double pab = pr.prior(a, b);
      if (pab == 0.0) continue;
      for (std::size_t o = 0; o < pr.no; ++o) t(a, o) += pab * m(b, o);
    }
  }
  t_out.assign(pr.no, 0.0);
  for (std::size_t a = 0; a < pr.na; ++a) {
    for (std::size_t o = 0; o < pr.no; ++o) t_out[o] += t(a, o);
  }
}

double objective_bits(const Problem& pr, const Matrix& m) {
  Matrix t;
  std::vector<double> t_out;
  output_joint(pr, m, t, t_out);
  double j = 0.0;
  for (std::size_t a = 0; a < pr.na; ++a) {
    for (std::size_t o = 0; o < pr.no; ++o) {
      double v = t(a, o);
      if (v > 0.0) j += v * std::log2(v / (pr.pa[a] * t_out[o]));
    }
  }
  return j;
}

void gradient_bits(const Problem& pr, const Matrix& m, Matrix& g) {
  Matrix t;
  std::vector<double> t_out;
  output_joint(pr, m, t, t_out);
  g = Matrix(pr.nb, pr.no, 0.0);
  for (std::size_t b = 0; b < pr.nb; ++b) {
    for (std::size_t o = 0; o < pr.no; ++o) {
      double acc = 0.0;
      double to = std::max(t_out[o], kGradClamp);
      for (std::size_t a = 0; a < pr.na; ++a) {
        double pab = pr.prior(a, b);
        if (pab == 0.0) continue;
        double tao = std::max(t(a, o), kGradClamp);
        acc += pab * std::log2(tao / (pr.pa[a] * to));
      }
      g(b, o) = acc;
    }
  }
}

double mapping_distortion(const Problem& pr, const Matrix& m) {
  double total = 0.0;
  for (std::size_t b = 0; b < pr.nb; ++b) {
    if (pr.w[b] == 0.0) continue;
    for (std::size_t o : pr.allowed[b]) {
      total += pr.w[b] * m(b, o) * pr.d.cost(b, o);
    }
  }
  return total;
}

double min_distortion(const Problem& pr) {
  double total = 0.0;
  for (std::size_t b = 0; b < pr.nb; ++b) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t o : pr.allowed[b]) best = std::min(best, pr.d.cost(b, o));
    total += pr.w[b] * best;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Exact linear subproblem: minimize <g, s> over the product of row
// simplices (restricted to allowed outputs) with sum_b w_b <s_b, d_b> <=
// delta. Per-row winners under a distortion multiplier lambda, bisection on
// lambda, then a fractional blend of the two bracketing vertex solutions so
// the coupling constraint is met exactly.
// ---------------------------------------------------------------------------

struct LinearMinimum {
  Matrix s;
  double distortion = 0.0;
  double objective = 0.0;  // <g, s>
};

void winners_at(const Problem& pr, const Matrix& g, double lambda,
                std::vector<std::size_t>& win, double& dist, double& obj) {
  dist = 0.0;
  obj = 0.0;
  for (std::size_t b = 0; b < pr.nb; ++b) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_o = pr.allowed[b].front();
    for (std::size_t o : pr.allowed[b]) {
      double score = g(b, o) + lambda * pr.w[b] * pr.d.cost(b, o);
      if (score < best - 1e-18) {  // ties keep the lowest output index
        best = score;
        best_o = o;
      }
    }
    win[b] = best_o;
    dist += pr.w[b] * pr.d.cost(b, best_o);
    obj += g(b, best_o);
  }
}

LinearMinimum linear_minimize(const Problem& pr, const Matrix& g) {
  std::vector<std::size_t> win(pr.nb);
  double dist0, obj0;
  winners_at(pr, g, 0.0, win, dist0, obj0);

  LinearMinimum out;
  out.s = Matrix(pr.nb, pr.no, 0.0);
  if (dist0 <= pr.delta + 1e-15) {
    for (std::size_t b = 0; b < pr.nb; ++b) out.s(b, win[b]) = 1.0;
    out.distortion = dist0;
    out.objective = obj0;
    return out;
  }

  // Bracket the critical multiplier.
  double lo = 0.0, hi = 1.0;
  std::vector<std::size_t> win_hi(pr.nb);
  double dist_hi, obj_hi;
  for (int i = 0; i < 200; ++i) {
    winners_at(pr, g, hi, win_hi, dist_hi, obj_hi);
    if (dist_hi <= pr.delta) break;
    lo = hi;
    hi *= 2.0;
  }
  winners_at(pr, g, hi, win_hi, dist_hi, obj_hi);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    std::vector<std::size_t> win_mid(pr.nb);
    double dist_mid, obj_mid;
    winners_at(pr, g, mid, win_mid, dist_mid, obj_mid);
    if (dist_mid <= pr.delta) {
      hi = mid;
      win_hi = win_mid;
      dist_hi = dist_mid;
      obj_hi = obj_mid;
    } else {
      lo = mid;
    }
  }
  // Expensive side (> delta) and cheap side (<= delta) of the breakpoint.
  std::vector<std::size_t> win_lo(pr.nb);
  double dist_lo, obj_lo;
  winners_at(pr, g, lo, win_lo, dist_lo, obj_lo);

  double theta = 0.0;  // weight on the expensive side
  if (dist_lo > dist_hi + 1e-18) {
    theta = (pr.delta - dist_hi) / (dist_lo - dist_hi);
    theta = std::clamp(theta, 0.0, 1.0);
  }
  for (std::size_t b = 0; b < pr.nb; ++b) {
    out.s(b, win_lo[b]) += theta;
    out.s(b, win_hi[b]) += 1.0 - theta;
  }
  out.distortion = theta * dist_lo + (1.0 - theta) * dist_hi;
  out.objective = theta * obj_lo + (1.0 - theta) * obj_hi;
  return out;
}

// ---------------------------------------------------------------------------
// Initial feasible mapping.
// ---------------------------------------------------------------------------

Matrix nearest_output_rows(const Problem& pr) {
  Matrix m(pr.nb, pr.no, 0.0);
  for (std::size_t b = 0; b < pr.nb; ++b) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_o = pr.allowed[b].front();
    for (std::size_t o : pr.allowed[b]) {
      if (pr.d.cost(b, o) < best - 1e-18) {
        best = pr.d.cost(b, o);
        best_o = o;
      }
    }
    m(b, best_o) = 1.0;
  }
  return m;
}

Matrix initial_mapping(const Problem& pr, const SolverOptions& opts) {
  Matrix m(pr.nb, pr.no, 0.0);
  switch (opts.init) {
    case InitRule::kCustom: {
      if (!opts.init_mapping) {
        throw PreconditionError("init = custom requires init_mapping");
      }
      const auto& im = *opts.init_mapping;
      if (im.in_alphabet() != pr.prior.col_alphabet() ||
          im.out_alphabet() != pr.d.out_alphabet()) {
        throw AlphabetMismatchError("custom init mapping alphabet mismatch");
      }
      m = im.rows();
      break;
    }
    case InitRule::kUniform: {
      for (std::size_t b = 0; b < pr.nb; ++b) {
        double v = 1.0 / static_cast<double>(pr.allowed[b].size());
        for (std::size_t o : pr.allowed[b]) m(b, o) = v;
      }
      break;
    }
    case InitRule::kIdentityOrNearest: {
      bool embeds = pr.prior.col_alphabet().subset_of(pr.d.out_alphabet());
      for (std::size_t b = 0; b < pr.nb; ++b) {
        if (embeds) {
          std::size_t same =
              pr.d.out_alphabet().index_of(pr.prior.col_alphabet().label(b));
          if (pr.d.allowed(b, same)) {
            m(b, same) = 1.0;
            continue;
          }
        }
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_o = pr.allowed[b].front();
        for (std::size_t o : pr.allowed[b]) {
          if (pr.d.cost(b, o) < best - 1e-18) {
            best = pr.d.cost(b, o);
            best_o = o;
          }
        }
        m(b, best_o) = 1.0;
      }
      break;
    }
  }
  if (mapping_distortion(pr, m) > pr.delta + 1e-12) {
    // Uniform or custom starts can overshoot the budget; fall back to the
    // cheapest deterministic rows (feasible whenever the problem is).
    m = nearest_output_rows(pr);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Independence polish. The leakage is zero exactly on the polytope
//   { m : T(a,o) = p_A(a) t(o), rows stochastic, support kept, E[d] <= D }.
// The equalities are linear in m, so when Frank-Wolfe ends close to zero we
// look for a point of that polytope with Dykstra alternating projections
// (affine set / nonnegative orthant / distortion half-space). The candidate
// is used only if it passes the solver's own feasibility tolerances and
// actually lowers the objective.
// ---------------------------------------------------------------------------

class AffineProjector {
 public:
  // Constraints over the free (allowed) entries: row sums = 1 and, for all
  // but the last private symbol, sum_b (P(a,b) - p_A(a) w_b) m(b,o) = 0.
  AffineProjector(const Problem& pr,
                  const std::vector<std::pair<std::size_t, std::size_t>>& vars,
                  const std::vector<std::vector<std::size_t>>& vars_of_row,
                  const std::vector<std::vector<std::size_t>>& vars_of_col) {
    n_vars_ = vars.size();
    n_rows_ = pr.nb;
    n_ind_ = (pr.na > 0 ? pr.na - 1 : 0) * pr.no;
    n_cons_ = n_rows_ + n_ind_;
    coef_.resize(n_cons_);
    idx_.resize(n_cons_);
    rhs_.assign(n_cons_, 0.0);
    for (std::size_t b = 0; b < pr.nb; ++b) {
      rhs_[b] = 1.0;
      for (std::size_t k : vars_of_row[b]) {
        idx_[b].push_back(k);
        coef_[b].push_back(1.0);
      }
    }
    std::size_t c = n_rows_;
    for (std::size_t a = 0; a + 1 < pr.na; ++a) {
      for (std::size_t o = 0; o < pr.no; ++o, ++c) {
        for (std::size_t k : vars_of_col[o]) {
          std::size_t b = vars[k].first;
          double w = pr.prior(a, b) - pr.pa[a] * pr.w[b];
          if (w != 0.0) {
            idx_[c].push_back(k);
            coef_[c].push_back(w);
          }
        }
      }
    }
    factorize();
  }

  bool ok() const { return ok_; }

  // x <- x - C^T (C C^T)^-1 (C x - rhs)
  void project(std::vector<double>& x) const {
    std::vector<double> r(n_cons_, 0.0);
    for (std::size_t c = 0; c < n_cons_; ++c) {
      double acc = -rhs_[c];
      for (std::size_t i = 0; i < idx_[c].size(); ++i) {
        acc += coef_[c][i] * x[idx_[c][i]];
      }
      r[c] = acc;
    }
    solve_normal(r);
    for (std::size_t c = 0; c < n_cons_; ++c) {
      for (std::size_t i = 0; i < idx_[c].size(); ++i) {
        x[idx_[c][i]] -= coef_[c][i] * r[c];
      }
    }
  }

 private:
  void factorize() {
    // Dense C C^T with a small jitter; the constraint count stays modest.
    gram_.assign(n_cons_ * n_cons_, 0.0);
    std::vector<double> dense(n_vars_, 0.0);
    for (std::size_t c = 0; c < n_cons_; ++c) {
      std::fill(dense.begin(), dense.end(), 0.0);
      for (std::size_t i = 0; i < idx_[c].size(); ++i) {
        dense[idx_[c][i]] = coef_[c][i];
      }
      for (std::size_t c2 = c; c2 < n_cons_; ++c2) {
        double acc = 0.0;
        for (std::size_t i = 0; i < idx_[c2].size(); ++i) {
          acc += dense[idx_[c2][i]] * coef_[c2][i];
        }
        gram_[c * n_cons_ + c2] = acc;
        gram_[c2 * n_cons_ + c] = acc;
      }
    }
    for (std::size_t c = 0; c < n_cons_; ++c) {
      gram_[c * n_cons_ + c] += 1e-12;
    }
    // In-place Cholesky.
    chol_ = gram_;
    for (std::size_t i = 0; i < n_cons_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double sum = chol_[i * n_cons_ + j];
        for (std::size_t k = 0; k < j; ++k) {
          sum -= chol_[i * n_cons_ + k] * chol_[j * n_cons_ + k];
        }
        if (i == j) {
          if (sum <= 0.0) {
            ok_ = false;
            return;
          }
          chol_[i * n_cons_ + i] = std::sqrt(sum);
        } else {
          chol_[i * n_cons_ + j] = sum / chol_[j * n_cons_ + j];
        }
      }
    }
    ok_ = true;
  }

  void solve_normal(std::vector<double>& r) const {
    for (std::size_t i = 0; i < n_cons_; ++i) {
      double sum = r[i];
      for (std::size_t k = 0; k < i; ++k) sum -= chol_[i * n_cons_ + k] * r[k];
      r[i] = sum / chol_[i * n_cons_ + i];
    }
    for (std::size_t i = n_cons_; i-- > 0;) {
      double sum = r[i];
      for (std::size_t k = i + 1; k < n_cons_; ++k) {
        sum -= chol_[k * n_cons_ + i] * r[k];
      }
      r[i] = sum / chol_[i * n_cons_ + i];
    }
  }

  std::size_t n_vars_ = 0, n_rows_ = 0, n_ind_ = 0, n_cons_ = 0;
  std::vector<std::vector<double>> coef_;
  std::vector<std::vector<std::size_t>> idx_;
  std::vector<double> rhs_;
  std::vector<double> gram_;
  std::vector<double> chol_;
  bool ok_ = false;
};

bool independence_polish(const Problem& pr, const Matrix& start, Matrix& out) {
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  std::vector<std::vector<std::size_t>> vars_of_row(pr.nb);
  std::vector<std::vector<std::size_t>> vars_of_col(pr.no);
  for (std::size_t b = 0; b < pr.nb; ++b) {
    for (std::size_t o : pr.allowed[b]) {
      vars_of_row[b].push_back(vars.size());
      vars_of_col[o].push_back(vars.size());
      vars.emplace_back(b, o);
    }
  }
  if (vars.size() > 100000) return false;  // polish is a desk-scale tool

  AffineProjector affine(pr, vars, vars_of_row, vars_of_col);
  if (!affine.ok()) return false;

  std::vector<double> cost(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    cost[k] = pr.w[vars[k].first] * pr.d.cost(vars[k].first, vars[k].second);
  }
  double cost_norm2 = 0.0;
  for (double c : cost) cost_norm2 += c * c;

  std::vector<double> x(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    x[k] = start(vars[k].first, vars[k].second);
  }

  // Dykstra over {affine} ∩ {x >= 0} ∩ {<cost, x> <= delta}.
  std::vector<double> p_box(vars.size(), 0.0), p_half(vars.size(), 0.0);
  for (int iter = 0; iter < 1500; ++iter) {
    affine.project(x);

    double max_neg = 0.0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      double y = x[k] + p_box[k];
      double proj = std::max(y, 0.0);
      p_box[k] = y - proj;
      x[k] = proj;
      max_neg = std::max(max_neg, -y);
    }

    double viol = 0.0;
    if (cost_norm2 > 0.0) {
      double dot = 0.0;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        x[k] += p_half[k];
        dot += cost[k] * x[k];
      }
      double excess = dot - pr.delta;
      if (excess > 0.0) {
        double scale = excess / cost_norm2;
        for (std::size_t k = 0; k < vars.size(); ++k) {
          double proj = x[k] - scale * cost[k];
          p_half[k] = x[k] - proj;
          x[k] = proj;
        }
        viol = excess;
      } else {
        std::fill(p_half.begin(), p_half.end(), 0.0);
      }
    }

    if (iter > 20 && max_neg < 1e-13 && viol < 1e-13) break;
  }

  out = Matrix(pr.nb, pr.no, 0.0);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    out(vars[k].first, vars[k].second) = std::max(x[k], 0.0);
  }
  for (std::size_t b = 0; b < pr.nb; ++b) {
    double sum = 0.0;
    for (std::size_t o : pr.allowed[b]) sum += out(b, o);
    if (!(sum > 0.5)) return false;
    for (std::size_t o : pr.allowed[b]) out(b, o) /= sum;
  }
  return mapping_distortion(pr, out) <= pr.delta + 1e-9;
}

ConditionalMapping to_mapping(const Problem& pr, Matrix m) {
  // Final hygiene: exact row normalization before constructing the result.
  for (std::size_t b = 0; b < pr.nb; ++b) {
    double sum = 0.0;
    for (std::size_t o = 0; o < pr.no; ++o) sum += m(b, o);
    if (sum > 0.0) {
      for (std::size_t o = 0; o < pr.no; ++o) m(b, o) /= sum;
    }
  }
  BoolMatrix mask = pr.d.allowed_mask();
  return ConditionalMapping(pr.prior.col_alphabet(), pr.d.out_alphabet(),
                            std::move(m), std::move(mask));
}

SolveResult finish(const Problem& pr, Matrix m, int iterations, bool converged,
                   double gap) {
  ConditionalMapping mapping = to_mapping(pr, std::move(m));
  SolveResult res{mapping, leakage(pr.prior, mapping),
                  expected_distortion(pr.prior, mapping, pr.d), iterations,
                  converged, 0.0};
  // The objective is nonnegative, so its value certifies distance to the
  // optimum too; report the tighter of the two bounds.
  res.dual_gap = std::max(0.0, std::min(gap, res.leakage_bits));
  return res;
}

}  // namespace

Matrix leakage_gradient(const JointDistribution& prior,
                        const ConditionalMapping& map) {
  if (prior.col_alphabet() != map.in_alphabet()) {
    throw AlphabetMismatchError(
        "mapping input alphabet does not match the prior's public alphabet");
  }
  // A permissive all-allowed distortion: only alphabets matter here.
  Matrix zero(map.in_alphabet().size(), map.out_alphabet().size(), 0.0);
  DistortionMatrix d(map.in_alphabet(), map.out_alphabet(), std::move(zero));
  Problem pr(prior, d, 0.0);
  Matrix g;
  gradient_bits(pr, map.rows(), g);
  return g;
}

double min_achievable_distortion(const JointDistribution& prior,
                                 const DistortionMatrix& d) {
  Problem pr(prior, d, 0.0);
  return min_distortion(pr);
}

SolveResult solve_privacy_mapping(const JointDistribution& prior,
                                  const DistortionMatrix& d, double delta,
                                  const SolverOptions& opts) {
  if (prior.col_alphabet() != d.in_alphabet()) {
    throw AlphabetMismatchError(
        "distortion input alphabet does not match the prior's public "
        "alphabet");
  }
  if (delta < 0.0) throw PreconditionError("delta must be nonnegative");
  if (opts.max_iters < 1) throw PreconditionError("max_iters must be >= 1");
  if (!(opts.tol > 0.0)) throw PreconditionError("tol must be positive");

  Problem pr(prior, d, delta);

  std::size_t free_vars = 0;
  for (const auto& row : pr.allowed) free_vars += row.size();
  if (free_vars > opts.variable_cap) {
    throw VariableCapError(
        "instance has " + std::to_string(free_vars) +
        " free mapping entries, above the cap of " +
        std::to_string(opts.variable_cap) +
        "; quantize the public alphabet or raise PRIVF_VAR_CAP");
  }

  double dmin = min_distortion(pr);
  if (dmin > delta + 1e-12) {
    throw InfeasibleDeltaError(
        "no mapping meets the distortion budget " + std::to_string(delta) +
            "; minimum achievable is " + std::to_string(dmin),
        dmin);
  }

  const double info_ab = mutual_information(prior);
  const double tol_scaled = opts.tol * std::max(1.0, info_ab);

  // Independent prior: leakage is identically zero, any feasible map is
  // optimal.
  Matrix m = initial_mapping(pr, opts);
  if (info_ab <= kZeroInfo) {
    return finish(pr, std::move(m), 0, true, 0.0);
  }

  // A constant column within budget reaches exact perfect privacy.
  {
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_col = pr.no;
    for (std::size_t o = 0; o < pr.no; ++o) {
      double cost = 0.0;
      bool usable = true;
      for (std::size_t b = 0; b < pr.nb; ++b) {
        if (!pr.d.allowed(b, o)) {
          usable = false;
          break;
        }
        cost += pr.w[b] * pr.d.cost(b, o);
      }
      if (usable && cost < best_cost - 1e-18) {
        best_cost = cost;
        best_col = o;
      }
    }
    if (best_col < pr.no && best_cost <= delta) {
      Matrix cm(pr.nb, pr.no, 0.0);
      for (std::size_t b = 0; b < pr.nb; ++b) cm(b, best_col) = 1.0;
      return finish(pr, std::move(cm), 0, true, 0.0);
    }
  }

  double j = objective_bits(pr, m);
  Matrix best_m = m;
  double best_j = j;
  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iters = 0;
  int stall_streak = 0;

  Matrix g;
  for (int k = 0; k < opts.max_iters; ++k) {
    iters = k + 1;
    gradient_bits(pr, m, g);
    LinearMinimum lin = linear_minimize(pr, g);

    double inner_m = 0.0;
    for (std::size_t b = 0; b < pr.nb; ++b) {
      for (std::size_t o = 0; o < pr.no; ++o) inner_m += g(b, o) * m(b, o);
    }
    gap = inner_m - lin.objective;
    if (gap < 0.0) gap = 0.0;  // rounding only; the subproblem is exact

    if (std::min(gap, j) <= tol_scaled) {
      converged = true;
      break;
    }

    // Direction and step.
    const double j_before = j;
    double step = 2.0 / (static_cast<double>(k) + 2.0);
    if (opts.step_rule == StepRule::kLineSearch) {
      double gamma = 1.0;
      bool accepted = false;
      for (int h = 0; h < 20; ++h) {
        Matrix trial = m;
        for (std::size_t b = 0; b < pr.nb; ++b) {
          for (std::size_t o = 0; o < pr.no; ++o) {
            trial(b, o) += gamma * (lin.s(b, o) - m(b, o));
          }
        }
        double jt = objective_bits(pr, trial);
        if (jt <= j - 0.25 * gamma * gap) {
          m = std::move(trial);
          j = jt;
          accepted = true;
          break;
        }
        gamma *= 0.5;
      }
      if (!accepted) {
        for (std::size_t b = 0; b < pr.nb; ++b) {
          for (std::size_t o = 0; o < pr.no; ++o) {
            m(b, o) += step * (lin.s(b, o) - m(b, o));
          }
        }
        j = objective_bits(pr, m);
      }
    } else {
      for (std::size_t b = 0; b < pr.nb; ++b) {
        for (std::size_t o = 0; o < pr.no; ++o) {
          m(b, o) += step * (lin.s(b, o) - m(b, o));
        }
      }
      j = objective_bits(pr, m);
    }

    if (j < best_j) {
      best_j = j;
      best_m = m;
    }

    double rel_change = std::abs(j_before - j) / std::max(1.0, std::abs(j));
    if (rel_change < opts.tol) {
      if (++stall_streak >= 5) {
        converged = std::min(gap, j) <= tol_scaled;
        break;
      }
    } else {
      stall_streak = 0;
    }
  }

  if (best_j < j) {
    m = best_m;
    j = best_j;
  }

  if (opts.independence_polish && j > kZeroInfo &&
      j <= opts.polish_threshold_bits) {
    Matrix polished;
    if (independence_polish(pr, m, polished)) {
      double jp = objective_bits(pr, polished);
      if (jp < j) {
        m = std::move(polished);
        j = jp;
        if (j <= tol_scaled) converged = true;
      }
    }
  }

  return finish(pr, std::move(m), iters, converged, gap);
}

// ---------------------------------------------------------------------------
// Grid-search reference.
// ---------------------------------------------------------------------------

namespace {

struct RowCandidates {
  // Each candidate: probabilities over all outputs (zeros outside support)
  // and its weighted distortion contribution.
  std::vector<std::vector<double>> rows;
  std::vector<double> dist;
};

void compositions(std::size_t slots, int total,
                  std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (slots == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    current.push_back(v);
    compositions(slots - 1, total - v, current, out);
    current.pop_back();
  }
}

RowCandidates row_candidates(const Problem& pr, std::size_t b, int steps) {
  RowCandidates rc;
  const auto& allowed = pr.allowed[b];
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(allowed.size(), steps, cur, comps);
  rc.rows.reserve(comps.size());
  rc.dist.reserve(comps.size());
  double res = 1.0 / static_cast<double>(steps);
  for (const auto& comp : comps) {
    std::vector<double> row(pr.no, 0.0);
    double dist = 0.0;
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      double v = static_cast<double>(comp[i]) * res;
      row[allowed[i]] = v;
      dist += pr.w[b] * v * pr.d.cost(b, allowed[i]);
    }
    rc.rows.push_back(std::move(row));
    rc.dist.push_back(dist);
  }
  return rc;
}

struct GridSearch {
  const Problem& pr;
  std::vector<RowCandidates> cands;
  std::vector<double> suffix_min_dist;
  double best_j = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_pick;
  std::vector<std::size_t> pick;
  // Per-depth partial output joints, preallocated: the search touches
  // millions of nodes and must not hit the allocator there.
  std::vector<std::vector<double>> t_stack;
  std::vector<double> t_out;

  explicit GridSearch(const Problem& p) : pr(p) {}

  void run() {
    suffix_min_dist.assign(pr.nb + 1, 0.0);
    for (std::size_t b = pr.nb; b-- > 0;) {
      double mn = std::numeric_limits<double>::infinity();
      for (double v : cands[b].dist) mn = std::min(mn, v);
      suffix_min_dist[b] = suffix_min_dist[b + 1] + mn;
    }
    pick.assign(pr.nb, 0);
    t_stack.assign(pr.nb + 1, std::vector<double>(pr.na * pr.no, 0.0));
    t_out.assign(pr.no, 0.0);
    descend(0, 0.0);
  }

  void descend(std::size_t b, double dist) {
    if (b == pr.nb) {
      evaluate(t_stack[b]);
      return;
    }
    const auto& rc = cands[b];
    const auto& t = t_stack[b];
    auto& nt = t_stack[b + 1];
    for (std::size_t i = 0; i < rc.rows.size(); ++i) {
      double nd = dist + rc.dist[i];
      if (nd + suffix_min_dist[b + 1] > pr.delta + 1e-12) continue;
      nt = t;
      for (std::size_t a = 0; a < pr.na; ++a) {
        double pab = pr.prior(a, b);
        if (pab == 0.0) continue;
        for (std::size_t o = 0; o < pr.no; ++o) {
          nt[a * pr.no + o] += pab * rc.rows[i][o];
        }
      }
      pick[b] = i;
      descend(b + 1, nd);
    }
  }

  void evaluate(const std::vector<double>& t) {
    double j = 0.0;
    for (std::size_t o = 0; o < pr.no; ++o) t_out[o] = 0.0;
    for (std::size_t a = 0; a < pr.na; ++a) {
      for (std::size_t o = 0; o < pr.no; ++o) t_out[o] += t[a * pr.no + o];
    }
    for (std::size_t a = 0; a < pr.na; ++a) {
      for (std::size_t o = 0; o < pr.no; ++o) {
        double v = t[a * pr.no + o];
        if (v > 0.0) j += v * std::log2(v / (pr.pa[a] * t_out[o]));
      }
    }
    if (j < best_j - 1e-15) {
      best_j = j;
      best_pick = pick;
    }
  }
};

double enumeration_count(const std::vector<RowCandidates>& cands) {
  double n = 1.0;
  for (const auto& rc : cands) n *= static_cast<double>(rc.rows.size());
  return n;
}

}  // namespace

SolveResult brute_force_oracle(const JointDistribution& prior,
                               const DistortionMatrix& d, double delta,
                               double resolution) {
  if (prior.col_alphabet() != d.in_alphabet()) {
    throw AlphabetMismatchError("oracle: alphabet mismatch");
  }
  const std::size_t nb = prior.col_alphabet().size();
  const std::size_t no = d.out_alphabet().size();
  if (nb * no > 9) {
    throw PreconditionError(
        "brute_force_oracle handles at most 9 mapping entries");
  }
  int steps = 0;
  for (int s : {20, 50, 100}) {
    if (std::abs(resolution - 1.0 / s) < 1e-12) steps = s;
  }
  if (steps == 0) {
    throw PreconditionError("oracle resolution must be 0.05, 0.02 or 0.01");
  }

  Problem pr(prior, d, delta);
  if (min_distortion(pr) > delta + 1e-12) {
    throw InfeasibleDeltaError("oracle: delta below minimum achievable",
                               min_distortion(pr));
  }

  // A feasible constant column is the exact optimum (objective >= 0) and
  // lies on every grid.
  for (std::size_t o = 0; o < no; ++o) {
    double cost = 0.0;
    bool usable = true;
    for (std::size_t b = 0; b < nb; ++b) {
      if (!pr.d.allowed(b, o)) {
        usable = false;
        break;
      }
      cost += pr.w[b] * pr.d.cost(b, o);
    }
    if (usable && cost <= delta) {
      Matrix cm(nb, no, 0.0);
      for (std::size_t b = 0; b < nb; ++b) cm(b, o) = 1.0;
      ConditionalMapping mapping(prior.col_alphabet(), d.out_alphabet(),
                                 std::move(cm), d.allowed_mask());
      return SolveResult{mapping, leakage(prior, mapping),
                         expected_distortion(prior, mapping, d), 0, true, 0.0};
    }
  }

  constexpr double kBudget = 5e7;

  GridSearch fine(pr);
  fine.cands.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    fine.cands[b] = row_candidates(pr, b, steps);
  }

  std::vector<std::size_t> incumbent;
  if (enumeration_count(fine.cands) <= kBudget) {
    fine.run();
    incumbent = fine.best_pick;
  } else {
    // Exact pass on the coarsest grid, then exhaustive refinement boxes at
    // the requested resolution around the incumbent until stable.
    GridSearch coarse(pr);
    coarse.cands.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      coarse.cands[b] = row_candidates(pr, b, 20);
    }
    coarse.run();

    std::vector<std::vector<double>> current(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      current[b] = coarse.cands[b].rows[coarse.best_pick[b]];
    }
    double current_j = coarse.best_j;
    const double radius = 0.05 + resolution + 1e-12;

    for (int pass = 0; pass < 50; ++pass) {
      GridSearch local(pr);
      local.cands.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        RowCandidates filtered;
        const auto& all = fine.cands[b];
        for (std::size_t i = 0; i < all.rows.size(); ++i) {
          double dev = 0.0;
          for (std::size_t o = 0; o < no; ++o) {
            dev = std::max(dev, std::abs(all.rows[i][o] - current[b][o]));
          }
          if (dev <= radius) {
            filtered.rows.push_back(all.rows[i]);
            filtered.dist.push_back(all.dist[i]);
          }
        }
        local.cands[b] = std::move(filtered);
      }
      local.run();
      if (local.best_j < current_j - 1e-12) {
        current_j = local.best_j;
        for (std::size_t b = 0; b < nb; ++b) {
          current[b] = local.cands[b].rows[local.best_pick[b]];
        }
      } else {
        break;
      }
    }

    Matrix m(nb, no, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t o = 0; o < no; ++o) m(b, o) = current[b][o];
    }
    ConditionalMapping mapping(prior.col_alphabet(), d.out_alphabet(),
                               std::move(m), d.allowed_mask());
    return SolveResult{mapping, leakage(prior, mapping),
                       expected_distortion(prior, mapping, d), 0, true, 0.0};
  }

  Matrix m(nb, no, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& row = fine.cands[b].rows[incumbent[b]];
    for (std::size_t o = 0; o < no; ++o) m(b, o) = row[o];
  }
  ConditionalMapping mapping(prior.col_alphabet(), d.out_alphabet(),
                             std::move(m), d.allowed_mask());
  return SolveResult{mapping, leakage(prior, mapping),
                     expected_distortion(prior, mapping, d), 0, true, 0.0};
}

TradeoffCurve sweep_curve(const JointDistribution& prior,
                          const DistortionMatrix& d,
                          const std::vector<double>& deltas,
                          const SolverOptions& opts) {
  if (deltas.empty()) throw PreconditionError("sweep needs at least one delta");
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (deltas[i] < deltas[i - 1]) {
      throw PreconditionError("sweep deltas must be nondecreasing");
    }
  }
  TradeoffCurve curve;
  std::optional<SolveResult> prev;
  for (double delta : deltas) {
    CurvePoint point;
    point.delta_target = delta;
    SolverOptions local = opts;
    if (prev) {
      local.init = InitRule::kCustom;
      local.init_mapping = prev->mapping;
    }
    try {
      SolveResult res = solve_privacy_mapping(prior, d, delta, local);
      // The previous mapping stays feasible as delta grows; never report a
      // regression the sweep itself can avoid.
      if (prev && !prev->mapping.rows().data().empty() &&
          res.leakage_bits > prev->leakage_bits) {
        res.mapping = prev->mapping;
        res.leakage_bits = prev->leakage_bits;
        res.achieved_distortion = prev->achieved_distortion;
        res.converged = prev->converged;
        res.dual_gap = prev->dual_gap;
      }
      point.achieved_distortion = res.achieved_distortion;
      point.leakage_bits = res.leakage_bits;
      point.converged = res.converged;
      point.mapping = res.mapping;
      prev = std::move(res);
    } catch (const Error& e) {
      point.failed = true;
      point.error = e.what();
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

}  // namespace privf
