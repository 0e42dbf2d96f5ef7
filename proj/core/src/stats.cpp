#include "chowla/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace chowla {

double normal_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

double ks_distance_normal(std::span<const double> sample, double mean,
                          double variance) {
  if (sample.empty()) return 0.0;
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double cdf = normal_cdf(sorted[i], mean, variance);
    d = std::max(d, static_cast<double>(i + 1) / n - cdf);
    d = std::max(d, cdf - static_cast<double>(i) / n);
  }
  return d;
}

double quantile(std::span<const double> sample, double prob) {
  if (sample.empty()) throw std::invalid_argument("quantile of empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

MeanEstimate estimate_mean(std::span<const double> sample) {
  MeanEstimate out;
  if (sample.empty()) return out;
  double sum = 0.0;
  for (double v : sample) sum += v;
  out.mean = sum / static_cast<double>(sample.size());
  if (sample.size() > 1) {
    out.std_error = std::sqrt(sample_variance(sample) /
                              static_cast<double>(sample.size()));
  }
  return out;
}

double sample_variance(std::span<const double> sample) {
  if (sample.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : sample) mean += v;
  mean /= static_cast<double>(sample.size());
  double ss = 0.0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(sample.size() - 1);
}

CovarianceEstimate estimate_covariance(std::span<const double> a,
                                       std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  CovarianceEstimate out;
  const std::size_t n = a.size();
  if (n < 2) return out;
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  std::vector<double> products(n);
  for (std::size_t i = 0; i < n; ++i) products[i] = (a[i] - ma) * (b[i] - mb);
  double sum = 0.0;
  for (double v : products) sum += v;
  out.covariance = sum / static_cast<double>(n - 1);
  out.std_error = std::sqrt(sample_variance(products) / static_cast<double>(n));
  return out;
}

void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  const std::int64_t workers =
      std::max<std::int64_t>(1, std::min<std::int64_t>(threads, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::int64_t begin = count * w / workers;
      const std::int64_t end = count * (w + 1) / workers;
      try {
        for (std::int64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace chowla
