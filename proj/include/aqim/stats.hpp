#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <vector>

#include "aqim/rng.hpp"

namespace aqim {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  std::int64_t n = 0;
};

inline MeanSe mean_and_se(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_and_se: empty sample");
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() == 1) return {mean, 0.0, 1};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd / std::sqrt(n), static_cast<std::int64_t>(xs.size())};
}

/// Standard error of a binomial fraction.
inline double fraction_se(double p, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("fraction_se: need n >= 1");
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against a CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

/// Asymptotic KS critical value at significance level alpha.
inline double ks_critical_value(std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("ks_critical_value: need n >= 1");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need two or more matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_abs_residual =
        std::max(fit.max_abs_residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
  return fit;
}

/// Runs f once per sample, each with its own child stream split off `base`.
/// Results are indexed by sample, so the outcome is identical for any worker
/// count; workers only split the index range.
template <class F>
auto sample_map(std::int64_t n, int workers, const RngStream& base, F&& f)
    -> std::vector<std::invoke_result_t<F&, RngStream&, std::int64_t>> {
  using R = std::invoke_result_t<F&, RngStream&, std::int64_t>;
  if (n < 1) throw std::invalid_argument("sample_map: need n >= 1");
  std::vector<R> out(static_cast<std::size_t>(n));
  const int nw = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  auto run_range = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      RngStream rng = base.split(static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] = f(rng, i);
    }
  };
  if (nw == 1) {
    run_range(0, n);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nw));
  const std::int64_t chunk = (n + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(run_range, lo, hi);
  }
  for (auto& t : pool) t.join();
  return out;
}

/// sample_map specialized to scalar samples.
template <class F>
std::vector<double> sample_values(std::int64_t n, int workers, const RngStream& base, F&& f) {
  return sample_map(n, workers, base, std::forward<F>(f));
}

}  // namespace aqim
