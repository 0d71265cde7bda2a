/*
 * Copyright 2026 The shapcond Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <limits>

#include "shapcond/error.hpp"
#include "shapcond/log.hpp"
#include "shapcond/regressor.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {
namespace {

constexpr int kGridPoints = 101;
constexpr int kBins = 200;
// Half-width of the tricube window as a fraction of the projection range;
// the full window covers 0.3 of the range.
constexpr double kSpan = 0.3;
constexpr int kMaxNewtonSteps = 20;
constexpr int kMaxSweeps = 50;
constexpr double kRelTol = 1e-5;

double tricube(double u) {
  const double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  const double t = 1.0 - a * a * a;
  return t * t * t;
}

// Local-linear smooth of r against v, tabulated on the term's grid and
// centred to mean zero over the data.
void smooth(const Vector& v, const Vector& r, PprModel::Term& term) {
  const Index n = v.size();
  term.lo = v.minCoeff();
  term.hi = v.maxCoeff();
  term.grid_values = Vector::Zero(kGridPoints);
  const double range = term.hi - term.lo;
  if (!(range > 1e-12)) return;
  const double bin_width = range / kBins;
  std::vector<double> s0(kBins, 0.0), s1(kBins, 0.0), s2(kBins, 0.0), t0(kBins, 0.0), t1(kBins, 0.0);
  for (Index i = 0; i < n; ++i) {
    const int b = std::min(kBins - 1, static_cast<int>((v(i) - term.lo) / bin_width));
    s0[b] += 1.0;
    s1[b] += v(i);
    s2[b] += v(i) * v(i);
    t0[b] += r(i);
    t1[b] += v(i) * r(i);
  }
  const double h = 0.5 * kSpan * range;
  const double step = range / (kGridPoints - 1);
  std::vector<char> missing(kGridPoints, 0);
  for (int g = 0; g < kGridPoints; ++g) {
    const double u = term.lo + g * step;
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, b0 = 0.0, b1 = 0.0;
    const int first = std::max(0, static_cast<int>((u - h - term.lo) / bin_width) - 1);
    const int last = std::min(kBins - 1, static_cast<int>((u + h - term.lo) / bin_width) + 1);
    for (int b = first; b <= last; ++b) {
      if (s0[b] == 0.0) continue;
      const double centre = term.lo + (b + 0.5) * bin_width;
      const double w = tricube((centre - u) / h);
      if (w == 0.0) continue;
      a0 += w * s0[b];
      a1 += w * (s1[b] - u * s0[b]);
      a2 += w * (s2[b] - 2.0 * u * s1[b] + u * u * s0[b]);
      b0 += w * t0[b];
      b1 += w * (t1[b] - u * t0[b]);
    }
    if (a0 <= 0.0) {
      missing[g] = 1;
      continue;
    }
    const double det = a0 * a2 - a1 * a1;
    term.grid_values(g) = det > 1e-10 * a0 * a2 && a0 >= 3.0 ? (a2 * b0 - a1 * b1) / det : b0 / a0;
  }
  // Fill empty windows by interpolating between their neighbours.
  int prev = -1;
  for (int g = 0; g < kGridPoints; ++g) {
    if (missing[g]) continue;
    for (int k = prev + 1; k < g; ++k) {
      term.grid_values(k) = prev < 0 ? term.grid_values(g)
                                     : term.grid_values(prev) + (term.grid_values(g) - term.grid_values(prev)) *
                                                                    (k - prev) / static_cast<double>(g - prev);
    }
    prev = g;
  }
  for (int k = prev + 1; k < kGridPoints && prev >= 0; ++k) term.grid_values(k) = term.grid_values(prev);
  double mean = 0.0;
  for (Index i = 0; i < n; ++i) mean += term.eval(v(i));
  term.grid_values.array() -= mean / static_cast<double>(n);
}

double derivative(const PprModel::Term& term, double v) {
  const double range = term.hi - term.lo;
  if (!(range > 1e-12)) return 0.0;
  const double step = range / (kGridPoints - 1);
  const double pos = std::clamp((v - term.lo) / step, 0.0, static_cast<double>(kGridPoints - 1));
  const int g = std::min(kGridPoints - 2, static_cast<int>(pos));
  auto slope = [&](int k) {
    const int a = std::max(0, k - 1), b = std::min(kGridPoints - 1, k + 1);
    return (term.grid_values(b) - term.grid_values(a)) / ((b - a) * step);
  };
  const double f = pos - g;
  return (1.0 - f) * slope(g) + f * slope(g + 1);
}

struct TermFit {
  PprModel::Term term;
  Vector values;
  double sse = std::numeric_limits<double>::infinity();
};

TermFit fit_direction(const Matrix& x, const Vector& r, const Vector& a) {
  TermFit out;
  out.term.direction = a.normalized();
  const Vector v = x * out.term.direction;
  smooth(v, r, out.term);
  out.values.resize(v.size());
  for (Index i = 0; i < v.size(); ++i) out.values(i) = out.term.eval(v(i));
  out.sse = (r - out.values).squaredNorm();
  return out;
}

// Gauss-Newton refinement of the direction with step halving.
TermFit fit_term(const Matrix& x, const Vector& r, const Vector& start) {
  TermFit best = fit_direction(x, r, start);
  const Index p = x.cols();
  for (int it = 0; it < kMaxNewtonSteps; ++it) {
    const Vector v = x * best.term.direction;
    Vector d(v.size());
    for (Index i = 0; i < v.size(); ++i) d(i) = derivative(best.term, v(i));
    const Matrix dx = d.asDiagonal() * x;
    Eigen::MatrixXd h = dx.transpose() * dx;
    const Vector grad = dx.transpose() * (r - best.values);
    if (!(grad.norm() > 1e-14)) break;
    h.diagonal().array() += 1e-8 * std::max(h.trace() / static_cast<double>(p), 1e-12);
    const Vector delta = h.ldlt().solve(grad);
    double step = 1.0;
    bool improved = false;
    const double before = best.sse;
    for (int halving = 0; halving < 6; ++halving, step *= 0.5) {
      const Vector a = best.term.direction + step * delta;
      if (!(a.norm() > 1e-12) || !a.allFinite()) continue;
      TermFit cand = fit_direction(x, r, a);
      if (cand.sse < best.sse) {
        best = std::move(cand);
        improved = true;
        break;
      }
    }
    if (!improved || (before - best.sse) <= kRelTol * before) break;
  }
  return best;
}

// Initial direction: the best of the least-squares direction and the
// coordinate axes, judged by the error after one smoothing pass.
TermFit start_term(const Matrix& x, const Vector& r, Rng& rng) {
  const Index p = x.cols();
  std::vector<Vector> starts;
  Eigen::MatrixXd xtx = x.transpose() * x;
  xtx.diagonal().array() += 1e-8 * std::max(xtx.trace() / static_cast<double>(p), 1e-12);
  const Vector ls = xtx.ldlt().solve(x.transpose() * r);
  if (ls.allFinite() && ls.norm() > 1e-12) starts.push_back(ls);
  for (Index j = 0; j < p; ++j) starts.push_back(Vector::Unit(p, j));
  TermFit best;
  for (const Vector& s : starts) {
    TermFit cand = fit_direction(x, r, s);
    if (cand.sse < best.sse) best = std::move(cand);
  }
  const double base = r.squaredNorm();
  for (int retry = 0; retry < 3 && !(best.sse < base * (1.0 - 1e-12)); ++retry) {
    Vector a(p);
    for (Index j = 0; j < p; ++j) a(j) = rng.normal();
    TermFit cand = fit_direction(x, r, a);
    if (cand.sse < best.sse) best = std::move(cand);
    if (retry == 2 && !(best.sse < base * (1.0 - 1e-12))) {
      warn("ppr: no direction reduces the residual after 3 random restarts");
    }
  }
  return fit_term(x, r, best.term.direction);
}

}  // namespace

double PprModel::Term::eval(double v) const {
  const double range = hi - lo;
  if (!(range > 1e-12)) return grid_values.size() > 0 ? grid_values(0) : 0.0;
  const double pos = std::clamp((v - lo) / range * (kGridPoints - 1), 0.0, static_cast<double>(kGridPoints - 1));
  const int g = std::min(kGridPoints - 2, static_cast<int>(pos));
  const double f = pos - g;
  return (1.0 - f) * grid_values(g) + f * grid_values(g + 1);
}

std::vector<PprModel> ppr_fit_path(const Matrix& x_raw, const Vector& z, int max_terms) {
  const Index n = x_raw.rows();
  const Index p = x_raw.cols();
  if (n < 2) throw InsufficientDataError("ppr needs at least two rows");
  if (z.size() != n) throw ShapeMismatchError("ppr: response length does not match rows");
  if (max_terms < 0) throw ConfigError("ppr needs a nonnegative number of terms");
  PprModel base;
  base.mean_ = column_means(x_raw);
  base.scale_.resize(p);
  for (Index j = 0; j < p; ++j) {
    const double sd = std::sqrt((x_raw.col(j).array() - base.mean_(j)).square().sum() / static_cast<double>(n - 1));
    base.scale_(j) = sd > 0.0 ? sd : 1.0;
  }
  Matrix x(n, p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) x(i, j) = (x_raw(i, j) - base.mean_(j)) / base.scale_(j);
  }
  base.intercept_ = z.mean();
  const Vector centred = z.array() - base.intercept_;
  base.train_mse_ = centred.squaredNorm() / static_cast<double>(n);

  std::vector<PprModel> path;
  if (max_terms == 0) {
    path.push_back(base);
    return path;
  }
  Rng rng(0x5eedULL + static_cast<std::uint64_t>(n));
  std::vector<Vector> values;
  Vector total = Vector::Zero(n);
  PprModel model = base;
  for (int l = 0; l < max_terms; ++l) {
    TermFit added = start_term(x, centred - total, rng);
    if (added.sse < (centred - total).squaredNorm()) {
      model.terms_.push_back(added.term);
      values.push_back(added.values);
      total += added.values;
    }
    double sse = (centred - total).squaredNorm();
    for (int sweep = 0; sweep < kMaxSweeps && model.terms_.size() > 1; ++sweep) {
      const double before = sse;
      for (std::size_t j = 0; j < model.terms_.size(); ++j) {
        const Vector partial = centred - (total - values[j]);
        const double current = (partial - values[j]).squaredNorm();
        TermFit refit = fit_term(x, partial, model.terms_[j].direction);
        if (refit.sse < current) {
          total += refit.values - values[j];
          values[j] = std::move(refit.values);
          model.terms_[j] = std::move(refit.term);
        }
      }
      sse = (centred - total).squaredNorm();
      if (before - sse <= kRelTol * before) break;
    }
    model.train_mse_ = sse / static_cast<double>(n);
    path.push_back(model);
  }
  return path;
}

PprModel ppr_fit(const Matrix& x, const Vector& z, int num_terms) {
  return ppr_fit_path(x, z, num_terms).back();
}

std::unique_ptr<PprModel> PprModel::fit(const RegressorSpec& spec, const Matrix& x, const Vector& z) {
  spec.validate();
  const int p = static_cast<int>(x.cols());
  if (spec.kind == RegressorKind::kPprFixed) {
    const int l = spec.ppr_terms > 0 ? spec.ppr_terms : p;
    auto model = std::make_unique<PprModel>(ppr_fit(x, z, l));
    model->selection_ = "fixed";
    return model;
  }
  std::vector<int> grid = spec.ppr_grid;
  if (grid.empty()) {
    for (int l = 1; l <= std::min(p, 5); ++l) grid.push_back(l);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const int lmax = grid.back();
  const Index n = x.rows();
  Index cv_n = n;
  std::vector<Index> cv_rows(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) cv_rows[static_cast<std::size_t>(i)] = i;
  if (spec.cv_max_rows > 0 && n > spec.cv_max_rows) {
    const std::vector<int> rank = fold_assignment(n, static_cast<int>(n), spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Index> picked;
    for (Index i = 0; i < n; ++i) {
      if (rank[static_cast<std::size_t>(i)] < spec.cv_max_rows) picked.push_back(i);
    }
    cv_rows = picked;
    cv_n = static_cast<Index>(cv_rows.size());
  }
  const int folds = static_cast<int>(std::min<Index>(spec.folds, cv_n));
  const std::vector<int> fold = fold_assignment(cv_n, folds, spec.seed);
  std::vector<double> sse(static_cast<std::size_t>(lmax + 1), 0.0);
  for (int f = 0; f < folds; ++f) {
    std::vector<Index> train, test;
    for (Index i = 0; i < cv_n; ++i) (fold[static_cast<std::size_t>(i)] == f ? test : train).push_back(cv_rows[static_cast<std::size_t>(i)]);
    if (train.size() < 2 || test.empty()) continue;
    Matrix xt(static_cast<Index>(train.size()), x.cols());
    Vector zt(static_cast<Index>(train.size()));
    for (std::size_t i = 0; i < train.size(); ++i) {
      xt.row(static_cast<Index>(i)) = x.row(train[i]);
      zt(static_cast<Index>(i)) = z(train[i]);
    }
    Matrix xv(static_cast<Index>(test.size()), x.cols());
    Vector zv(static_cast<Index>(test.size()));
    for (std::size_t i = 0; i < test.size(); ++i) {
      xv.row(static_cast<Index>(i)) = x.row(test[i]);
      zv(static_cast<Index>(i)) = z(test[i]);
    }
    const std::vector<PprModel> path = ppr_fit_path(xt, zt, lmax);
    for (int l : grid) {
      if (l == 0) {
        sse[0] += (zv.array() - zt.mean()).square().sum();
        continue;
      }
      sse[static_cast<std::size_t>(l)] += (path[static_cast<std::size_t>(l - 1)].predict(xv) - zv).squaredNorm();
    }
  }
  int best = grid.front();
  for (int l : grid) {
    if (sse[static_cast<std::size_t>(l)] < sse[static_cast<std::size_t>(best)]) best = l;
  }
  auto model = std::make_unique<PprModel>(ppr_fit(x, z, best));
  model->selection_ = "cv";
  return model;
}

Vector PprModel::predict(const Matrix& x) const {
  if (x.cols() != mean_.size()) throw ShapeMismatchError("ppr predict: wrong number of columns");
  Vector out = Vector::Constant(x.rows(), intercept_);
  Vector xs(x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) xs(j) = (x(i, j) - mean_(j)) / scale_(j);
    for (const Term& t : terms_) out(i) += t.eval(xs.dot(t.direction));
  }
  return out;
}

nlohmann::json PprModel::summary() const {
  return {{"kind", selection_ == "fixed" ? "ppr_fixed" : "ppr"},
          {"terms", terms_.size()},
          {"train_mse", train_mse_}};
}

}  // namespace shapcond
