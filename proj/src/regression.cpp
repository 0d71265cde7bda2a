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

#include "shapcond/regression.hpp"

#include <mutex>
#include <sstream>

#include "shapcond/error.hpp"
#include "shapcond/parallel.hpp"

namespace shapcond {
namespace {

std::string coalition_label(Coalition s) {
  std::ostringstream out;
  out << "{";
  const std::vector<int> f = s.features();
  for (std::size_t a = 0; a < f.size(); ++a) out << (a ? "," : "") << f[a] + 1;
  out << "}";
  return out.str();
}

Matrix columns(const Matrix& x, const std::vector<int>& cols) {
  Matrix out(x.rows(), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Index>(c)) = x.col(cols[c]);
  return out;
}

}  // namespace

SeparateModelSet fit_separate(const RegressorSpec& spec, const Matrix& x_train, const Vector& z, int threads) {
  spec.validate();
  const int m = static_cast<int>(x_train.cols());
  if (z.size() != x_train.rows()) throw ShapeMismatchError("fit_separate: response length does not match rows");
  const std::vector<Coalition> coalitions = nontrivial_coalitions(m);
  std::vector<std::unique_ptr<Regressor>> fitted(coalitions.size());
  parallel_for(coalitions.size(), threads, [&](std::size_t c) {
    const Coalition s = coalitions[c];
    RegressorSpec local = spec;
    local.seed = spec.seed ^ (0x9e3779b97f4a7c15ULL * (s.bits() + 1));
    try {
      fitted[c] = fit_regressor(local, columns(x_train, s.features()), z);
    } catch (const NumericalFailureError& e) {
      throw NumericalFailureError("coalition " + coalition_label(s) + ": " + e.what());
    } catch (const Error& e) {
      throw Error("coalition " + coalition_label(s) + ": " + e.what());
    }
  });
  SeparateModelSet out;
  out.num_features = m;
  for (std::size_t c = 0; c < coalitions.size(); ++c) out.models.emplace(coalitions[c].bits(), std::move(fitted[c]));
  return out;
}

Vector augment(const Vector& x, Coalition s) {
  const Index m = x.size();
  Vector out = Vector::Zero(2 * m);
  for (Index j = 0; j < m; ++j) {
    if (s.contains(static_cast<int>(j))) {
      out(j) = x(j);
    } else {
      out(m + j) = 1.0;
    }
  }
  return out;
}

AugmentedDataset build_augmented(const Matrix& x_train, const Vector& z, Index row_cap) {
  const int m = static_cast<int>(x_train.cols());
  if (m < 2 || m > kMaxFeatures) throw InvalidDimensionError("build_augmented needs 2 <= M <= 20");
  if (z.size() != x_train.rows()) throw ShapeMismatchError("build_augmented: response length does not match rows");
  const Index per_row = (Index{1} << m) - 2;
  const Index n = x_train.rows();
  if (n > 0 && per_row > row_cap / n) {
    std::ostringstream msg;
    msg << "augmented data would have " << n * per_row << " rows (N = " << n << ", M = " << m
        << "), above the cap of " << row_cap;
    throw MemoryGuardError(msg.str());
  }
  const std::vector<Coalition> coalitions = nontrivial_coalitions(m);
  AugmentedDataset out;
  out.num_features = m;
  out.x = Matrix::Zero(n * per_row, 2 * m);
  out.z.resize(n * per_row);
  for (Index i = 0; i < n; ++i) {
    for (Index c = 0; c < per_row; ++c) {
      const Index row = i * per_row + c;
      const Coalition s = coalitions[static_cast<std::size_t>(c)];
      for (int j = 0; j < m; ++j) {
        if (s.contains(j)) {
          out.x(row, j) = x_train(i, j);
        } else {
          out.x(row, m + j) = 1.0;
        }
      }
      out.z(row) = z(i);
    }
  }
  return out;
}

SurrogateModel fit_surrogate(const RegressorSpec& spec, const AugmentedDataset& aug) {
  RegressorSpec local = spec;
  if (local.kind == RegressorKind::kPoly || local.kind == RegressorKind::kPolyInter) {
    local.linear_tail = aug.num_features;
  }
  SurrogateModel out;
  out.num_features = aug.num_features;
  out.model = fit_regressor(local, aug.x, aug.z);
  return out;
}

Matrix predict_v(const SeparateModelSet& models, const Matrix& x_star, const Vector& f_star, double phi0) {
  const int m = models.num_features;
  if (x_star.cols() != m || f_star.size() != x_star.rows()) throw ShapeMismatchError("predict_v: shape mismatch");
  const std::vector<Coalition> all = enumerate_coalitions(m);
  Matrix v(static_cast<Index>(all.size()), x_star.rows());
  for (std::size_t c = 0; c < all.size(); ++c) {
    const Coalition s = all[c];
    if (s.empty()) {
      v.row(static_cast<Index>(c)).setConstant(phi0);
    } else if (s == Coalition::full(m)) {
      v.row(static_cast<Index>(c)) = f_star.transpose();
    } else {
      v.row(static_cast<Index>(c)) = models.at(s).predict(columns(x_star, s.features())).transpose();
    }
  }
  return v;
}

Matrix predict_v(const SurrogateModel& model, const Matrix& x_star, const Vector& f_star, double phi0) {
  const int m = model.num_features;
  if (x_star.cols() != m || f_star.size() != x_star.rows()) throw ShapeMismatchError("predict_v: shape mismatch");
  const std::vector<Coalition> all = enumerate_coalitions(m);
  const Index n = x_star.rows();
  Matrix v(static_cast<Index>(all.size()), n);
  Matrix rows(static_cast<Index>(all.size() - 2) * n, 2 * m);
  for (Index i = 0; i < n; ++i) {
    for (std::size_t c = 1; c + 1 < all.size(); ++c) {
      rows.row(i * static_cast<Index>(all.size() - 2) + static_cast<Index>(c - 1)) =
          augment(x_star.row(i).transpose(), all[c]).transpose();
    }
  }
  const Vector pred = model.model->predict(rows);
  for (Index i = 0; i < n; ++i) {
    v(0, i) = phi0;
    v(static_cast<Index>(all.size() - 1), i) = f_star(i);
    for (std::size_t c = 1; c + 1 < all.size(); ++c) {
      v(static_cast<Index>(c), i) = pred(i * static_cast<Index>(all.size() - 2) + static_cast<Index>(c - 1));
    }
  }
  return v;
}

nlohmann::json summarize(const SeparateModelSet& models) {
  nlohmann::json out = nlohmann::json::array();
  for (Coalition s : nontrivial_coalitions(models.num_features)) {
    nlohmann::json entry = models.at(s).summary();
    std::vector<int> members = s.features();
    for (int& j : members) ++j;
    entry["coalition"] = members;
    out.push_back(std::move(entry));
  }
  return out;
}

nlohmann::json summarize(const SurrogateModel& model) { return model.model->summary(); }

}  // namespace shapcond
