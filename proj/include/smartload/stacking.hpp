#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smartload/error.hpp"
#include "smartload/metrics.hpp"

namespace smartload {

/// y ~ intercept + weight_bdtr * b + weight_dfr * d.
struct StackModel {
  double intercept = 0.0;
  double weight_bdtr = 0.0;
  double weight_dfr = 0.0;
  double train_rmse = 0.0;
  bool ridge_applied = false;

  friend bool operator==(const StackModel&, const StackModel&) = default;
};

inline constexpr double kStackMaxCondition = 1e12;
inline constexpr double kStackRidge = 1e-8;

namespace detail {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

inline double norm1(const Mat3& a) {
  double best = 0.0;
  for (int j = 0; j < 3; ++j) {
    double s = std::abs(a[0][j]) + std::abs(a[1][j]) + std::abs(a[2][j]);
    best = std::max(best, s);
  }
  return best;
}

/// 1-norm condition number via the adjugate; infinity when singular.
inline double condition_number(const Mat3& a) {
  Mat3 adj{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    }
  }
  const double det = a[0][0] * adj[0][0] + a[0][1] * adj[1][0] + a[0][2] * adj[2][0];
  if (det == 0.0 || !std::isfinite(det)) return INFINITY;
  Mat3 inv{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) inv[i][j] = adj[i][j] / det;
  }
  return norm1(a) * norm1(inv);
}

/// Gaussian elimination with partial pivoting.
inline std::optional<Vec3> solve3(Mat3 a, Vec3 b) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec3 x{};
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace detail

inline double predict_stack(const StackModel& model, double b, double d) {
  return model.intercept + model.weight_bdtr * b + model.weight_dfr * d;
}

/// Ordinary least squares on {1, b, d} through the 3x3 normal equations, with a
/// small ridge on the two weights when the system is singular or ill-conditioned.
inline StackModel fit_stack(std::span<const double> b, std::span<const double> d, std::span<const double> y) {
  if (b.size() != y.size() || d.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch, "stack inputs must have equal lengths");
  }
  if (y.size() < 3) throw Error(ErrorKind::InsufficientData, "stacking needs at least 3 rows");

  detail::Mat3 a{};
  detail::Vec3 rhs{};
  for (std::size_t i = 0; i < y.size(); ++i) {
    const detail::Vec3 row{1.0, b[i], d[i]};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] += row[r] * row[c];
      rhs[r] += row[r] * y[i];
    }
  }

  StackModel model;
  auto solution = detail::condition_number(a) <= kStackMaxCondition ? detail::solve3(a, rhs) : std::nullopt;
  if (!solution) {
    a[1][1] += kStackRidge;
    a[2][2] += kStackRidge;
    model.ridge_applied = true;
    solution = detail::solve3(a, rhs);
  }
  if (!solution || !std::isfinite((*solution)[0]) || !std::isfinite((*solution)[1]) ||
      !std::isfinite((*solution)[2])) {
    throw Error(ErrorKind::DegenerateSeries, "stack normal equations have no finite solution");
  }
  model.intercept = (*solution)[0];
  model.weight_bdtr = (*solution)[1];
  model.weight_dfr = (*solution)[2];

  std::vector<double> fitted(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) fitted[i] = predict_stack(model, b[i], d[i]);
  model.train_rmse = rmse(y, fitted);
  return model;
}

}  // namespace smartload
