#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace chowla {

// CDF of N(mean, variance) via std::erfc.
double normal_cdf(double x, double mean = 0.0, double variance = 1.0);

// sup |F_n - F| of the sample against N(mean, variance).
double ks_distance_normal(std::span<const double> sample, double mean,
                          double variance);

// Linear-interpolation quantile (R type 7). The sample need not be sorted.
double quantile(std::span<const double> sample, double prob);

struct MeanEstimate {
  double mean = 0.0;
  // Standard error of the mean.
  double std_error = 0.0;
};

MeanEstimate estimate_mean(std::span<const double> sample);

// Unbiased sample variance.
double sample_variance(std::span<const double> sample);

struct CovarianceEstimate {
  double covariance = 0.0;
  // Standard error from the spread of centered products.
  double std_error = 0.0;
};

CovarianceEstimate estimate_covariance(std::span<const double> a,
                                       std::span<const double> b);

// Runs body(i) for i in [0, count) on up to `threads` workers with a static
// contiguous partition. Results must be written to per-index slots.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace chowla
