#pragma once

#include "scorestab/harmonic.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace scorestab {

enum class Label { good, bad };

struct ScoredRecord {
  double score = 0.0;
  Label label = Label::good;
};

/// Scores ordered worst (low) to best (high), each tagged good or bad.
class LabeledScoreSample {
 public:
  LabeledScoreSample() = default;
  explicit LabeledScoreSample(std::vector<ScoredRecord> records);
  LabeledScoreSample(std::span<const double> bad_scores, std::span<const double> good_scores);

  const std::vector<ScoredRecord>& records() const noexcept { return records_; }
  std::size_t n_good() const noexcept { return n_good_; }
  std::size_t n_bad() const noexcept { return n_bad_; }

 private:
  std::vector<ScoredRecord> records_;
  std::size_t n_good_ = 0;
  std::size_t n_bad_ = 0;
};

struct RocPoint {
  double fp_rate = 0.0;  // goods scoring at or below the threshold
  double tp_rate = 0.0;  // bads scoring at or below the threshold
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auroc = 0.5;
  double gini = 0.0;
};

struct GiniEstimate {
  double gini = 0.0;
  double sigma = 0.0;
  std::size_t n_good = 0;
  std::size_t n_bad = 0;
};

/// Rank-construction ROC. Tied good/bad scores form diagonal segments, so
/// auroc = P(bad < good) + P(bad == good) / 2.
RocCurve empirical_roc(const LabeledScoreSample& sample);

/// Mann-Whitney AUROC without materializing the curve.
double auroc(std::span<const double> bad_scores, std::span<const double> good_scores);

/// Asymptotic standard deviation of the Gini index (Hanley-McNeil form in G).
/// Negative gini is clamped to 0 with a logged warning.
double gini_sigma(double gini, std::size_t n_good, std::size_t n_bad);

/// Hanley-McNeil standard error of the AUROC `area`, with the bad class as
/// the "abnormal" group (Q1 = A/(2-A) weighted by n_bad - 1).
double hanley_mcneil_se(double area, std::size_t n_good, std::size_t n_bad);

GiniEstimate gini_estimate(const LabeledScoreSample& sample);

}  // namespace scorestab
