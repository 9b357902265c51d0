#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scorestab {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Yearly rating composition: rows are ratings (best to worst), columns years.
struct RatingCountTable {
  std::vector<std::string> ratings;
  std::vector<int> years;
  CountMatrix counts;
};

struct YearPairMetrics {
  int year_from = 0;
  int year_to = 0;
  double psi = 0.0;
  double ks = 0.0;
  std::optional<double> q;  // absent when psi == 0
};

struct ScatterSummary {
  std::vector<YearPairMetrics> points;
  std::optional<double> median_q;
  std::optional<double> iqr_q;
  /// median_q within the broad band [0.25, 0.55] around 2/5.
  bool near_two_fifths = false;
};

inline constexpr double kTwoFifthsBandLo = 0.25;
inline constexpr double kTwoFifthsBandHi = 0.55;
inline constexpr double kDefaultCountSmoothing = 0.5;

/// CSV with header `rating,<year>,<year>,...` and non-negative integer cells.
RatingCountTable parse_count_table(std::string_view csv);

/// PSI/KS between consecutive year columns. `smoothing_counts`, when given,
/// is added to every cell before normalizing.
std::vector<YearPairMetrics> yearly_metric_series(const RatingCountTable& table,
                                                  std::optional<double> smoothing_counts = std::nullopt);

ScatterSummary linkage_scatter(std::span<const YearPairMetrics> series);

/// Pairs N(0,1) -> N(mu,1) on a [-8, 8] grid, one per shift, via the
/// continuous metrics. Years are the pair index.
std::vector<YearPairMetrics> gaussian_shift_series(std::span<const double> shifts);

/// Linear-interpolation quantile of unsorted values, p in [0, 1].
double quantile(std::vector<double> values, double p);

}  // namespace scorestab
