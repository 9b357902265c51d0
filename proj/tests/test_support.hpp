#pragma once

#include "scorestab/distributions.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace scorestab::testing {

inline double normal_pdf(double x, double mu = 0.0) {
  return std::exp(-0.5 * (x - mu) * (x - mu)) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline GriddedDensity normal_density(double mu, Eigen::Index points = 4001) {
  return GriddedDensity::from_function(-8.0, 8.0, points, [mu](double s) { return normal_pdf(s, mu); });
}

/// Random strictly positive masses over `buckets` buckets.
inline BucketedDistribution random_distribution(std::mt19937_64& rng, Eigen::Index buckets) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Eigen::VectorXd m(buckets);
  for (Eigen::Index i = 0; i < buckets; ++i) m[i] = u(rng);
  return BucketedDistribution::from_counts(m);
}

/// Merges bucket i with bucket i + 1.
inline BucketedDistribution merge_adjacent(const BucketedDistribution& d, Eigen::Index i) {
  Eigen::VectorXd m(d.size() - 1);
  for (Eigen::Index k = 0, j = 0; k < d.size(); ++k) {
    if (k == i + 1) continue;
    m[j++] = k == i ? d[i] + d[i + 1] : d[k];
  }
  return BucketedDistribution::from_counts(m);
}

}  // namespace scorestab::testing
