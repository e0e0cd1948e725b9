#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>

#include "smartload/error.hpp"

namespace smartload {

namespace detail {

inline void check_pair(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(y.size()) + " observed vs " +
                                               std::to_string(yhat.size()) + " predicted");
  }
  if (y.empty()) throw Error(ErrorKind::EmptyInput, "no observations");
}

inline double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace detail

inline double mae(std::span<const double> y, std::span<const double> yhat) {
  detail::check_pair(y, yhat);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - yhat[i]);
  return s / static_cast<double>(y.size());
}

inline double rmse(std::span<const double> y, std::span<const double> yhat) {
  detail::check_pair(y, yhat);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - yhat[i]) * (y[i] - yhat[i]);
  return std::sqrt(s / static_cast<double>(y.size()));
}

/// Absolute error relative to the mean predictor.
inline double rae(std::span<const double> y, std::span<const double> yhat) {
  detail::check_pair(y, yhat);
  const double ybar = detail::mean(y);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += std::abs(y[i] - yhat[i]);
    den += std::abs(y[i] - ybar);
  }
  if (!(den > 0.0)) throw Error(ErrorKind::ConstantTarget, "observed values are constant");
  return num / den;
}

/// Squared error relative to the mean predictor.
inline double rse(std::span<const double> y, std::span<const double> yhat) {
  detail::check_pair(y, yhat);
  const double ybar = detail::mean(y);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    den += (y[i] - ybar) * (y[i] - ybar);
  }
  if (!(den > 0.0)) throw Error(ErrorKind::ConstantTarget, "observed values are constant");
  return num / den;
}

inline double cod(std::span<const double> y, std::span<const double> yhat) { return 1.0 - rse(y, yhat); }

/// Explained-variance ratio sum((yhat - ybar)^2) / sum((y - ybar)^2), centred on the
/// observed mean. Equals cod only for least-squares fits with an intercept.
inline double r2_explained(std::span<const double> y, std::span<const double> yhat) {
  detail::check_pair(y, yhat);
  const double ybar = detail::mean(y);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += (yhat[i] - ybar) * (yhat[i] - ybar);
    den += (y[i] - ybar) * (y[i] - ybar);
  }
  if (!(den > 0.0)) throw Error(ErrorKind::ConstantTarget, "observed values are constant");
  return num / den;
}

enum class NrmseNormalizer { mean, range, std };

inline std::string to_string(NrmseNormalizer n) {
  switch (n) {
    case NrmseNormalizer::mean: return "mean";
    case NrmseNormalizer::range: return "range";
    case NrmseNormalizer::std: return "std";
  }
  return "mean";
}

inline NrmseNormalizer parse_nrmse_normalizer(const std::string& name) {
  if (name == "mean") return NrmseNormalizer::mean;
  if (name == "range") return NrmseNormalizer::range;
  if (name == "std") return NrmseNormalizer::std;
  throw Error(ErrorKind::InvalidArgument, "unknown NRMSE normalizer '" + name + "'");
}

/// RMSE divided by the mean, range or population standard deviation of y.
inline double nrmse(std::span<const double> y, std::span<const double> yhat,
                    NrmseNormalizer normalizer = NrmseNormalizer::mean) {
  const double err = rmse(y, yhat);
  double denom = 0.0;
  switch (normalizer) {
    case NrmseNormalizer::mean:
      denom = detail::mean(y);
      break;
    case NrmseNormalizer::range: {
      auto [lo, hi] = std::minmax_element(y.begin(), y.end());
      denom = *hi - *lo;
      break;
    }
    case NrmseNormalizer::std: {
      const double ybar = detail::mean(y);
      double s = 0.0;
      for (double v : y) s += (v - ybar) * (v - ybar);
      denom = std::sqrt(s / static_cast<double>(y.size()));
      break;
    }
  }
  if (denom == 0.0) throw Error(ErrorKind::ZeroNormalizer, to_string(normalizer) + " of observations is zero");
  return err / denom;
}

struct MetricsReport {
  double mae = 0.0;
  double rmse = 0.0;
  double nrmse = 0.0;
  double rae = 0.0;
  double rse = 0.0;
  double r2_explained = 0.0;
  double cod = 0.0;
  std::size_t n = 0;
  NrmseNormalizer normalizer = NrmseNormalizer::mean;
};

inline MetricsReport evaluate_metrics(std::span<const double> y, std::span<const double> yhat,
                                      NrmseNormalizer normalizer = NrmseNormalizer::mean) {
  MetricsReport r;
  r.n = y.size();
  r.normalizer = normalizer;
  r.mae = mae(y, yhat);
  r.rmse = rmse(y, yhat);
  r.nrmse = nrmse(y, yhat, normalizer);
  r.rae = rae(y, yhat);
  r.rse = rse(y, yhat);
  r.cod = 1.0 - r.rse;
  r.r2_explained = r2_explained(y, yhat);
  return r;
}

}  // namespace smartload
