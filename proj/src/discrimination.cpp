#include "scorestab/discrimination.hpp"

#include "scorestab/error.hpp"
#include "scorestab/log.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scorestab {
namespace {

void require_counts(std::size_t n_good, std::size_t n_bad) {
  if (n_good < 1 || n_bad < 1)
    fail(ErrorKind::DegenerateSample, "need at least one good and one bad observation");
}

}  // namespace

LabeledScoreSample::LabeledScoreSample(std::vector<ScoredRecord> records)
    : records_(std::move(records)) {
  for (const auto& r : records_) {
    if (!std::isfinite(r.score)) fail(ErrorKind::OutOfRange, "scores must be finite");
    (r.label == Label::good ? n_good_ : n_bad_) += 1;
  }
}

LabeledScoreSample::LabeledScoreSample(std::span<const double> bad_scores,
                                       std::span<const double> good_scores) {
  std::vector<ScoredRecord> records;
  records.reserve(bad_scores.size() + good_scores.size());
  for (double s : bad_scores) records.push_back({s, Label::bad});
  for (double s : good_scores) records.push_back({s, Label::good});
  *this = LabeledScoreSample(std::move(records));
}

RocCurve empirical_roc(const LabeledScoreSample& sample) {
  require_counts(sample.n_good(), sample.n_bad());
  std::vector<ScoredRecord> sorted = sample.records();
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredRecord& a, const ScoredRecord& b) { return a.score < b.score; });

  const double ng = static_cast<double>(sample.n_good());
  const double nb = static_cast<double>(sample.n_bad());
  RocCurve roc;
  roc.points.push_back({0.0, 0.0});

  // Each good in a tie group pairs with every bad strictly below plus half
  // the bads in its own group.
  std::size_t goods_below = 0;
  std::size_t bads_below = 0;
  long double correct_pairs_x2 = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    std::size_t g = 0;
    std::size_t b = 0;
    while (j < sorted.size() && sorted[j].score == sorted[i].score) {
      (sorted[j].label == Label::good ? g : b) += 1;
      ++j;
    }
    correct_pairs_x2 += static_cast<long double>(g) * (2.0L * bads_below + b);
    goods_below += g;
    bads_below += b;
    roc.points.push_back({static_cast<double>(goods_below) / ng,
                          static_cast<double>(bads_below) / nb});
    i = j;
  }
  roc.points.back() = {1.0, 1.0};
  roc.auroc = static_cast<double>(correct_pairs_x2 / (2.0L * ng * nb));
  roc.gini = 2.0 * roc.auroc - 1.0;
  return roc;
}

double auroc(std::span<const double> bad_scores, std::span<const double> good_scores) {
  require_counts(good_scores.size(), bad_scores.size());
  std::vector<double> bads(bad_scores.begin(), bad_scores.end());
  std::vector<double> goods(good_scores.begin(), good_scores.end());
  std::sort(bads.begin(), bads.end());
  std::sort(goods.begin(), goods.end());
  long double correct_x2 = 0;
  std::size_t below = 0;
  std::size_t upto = 0;
  for (double g : goods) {
    while (below < bads.size() && bads[below] < g) ++below;
    if (upto < below) upto = below;
    while (upto < bads.size() && bads[upto] <= g) ++upto;
    correct_x2 += 2.0L * below + (upto - below);
  }
  return static_cast<double>(correct_x2 / (2.0L * bads.size() * goods.size()));
}

double gini_sigma(double gini, std::size_t n_good, std::size_t n_bad) {
  require_counts(n_good, n_bad);
  if (!(gini >= -1.0 && gini <= 1.0)) fail(ErrorKind::OutOfRange, "gini must lie in [-1, 1]");
  if (gini < 0.0) {
    std::ostringstream msg;
    msg << "gini " << gini << " < 0; sigma evaluated at gini = 0";
    log::warn(msg.str());
    gini = 0.0;
  }
  const double g1 = gini + 1.0;
  const double nb = static_cast<double>(n_bad);
  const double ng = static_cast<double>(n_good);
  const double numerator = 1.0 - gini * gini + (nb - 1.0) * (4.0 * g1 / (3.0 - gini) - g1 * g1) +
                           (ng - 1.0) * (4.0 * g1 * g1 / (3.0 + gini) - g1 * g1);
  return std::sqrt(std::max(numerator, 0.0) / (nb * ng));
}

double hanley_mcneil_se(double area, std::size_t n_good, std::size_t n_bad) {
  require_counts(n_good, n_bad);
  if (!(area >= 0.0 && area <= 1.0)) fail(ErrorKind::OutOfRange, "area must lie in [0, 1]");
  const double q1 = area / (2.0 - area);
  const double q2 = 2.0 * area * area / (1.0 + area);
  const double a2 = area * area;
  const double nb = static_cast<double>(n_bad);
  const double ng = static_cast<double>(n_good);
  const double var = (area * (1.0 - area) + (nb - 1.0) * (q1 - a2) + (ng - 1.0) * (q2 - a2)) / (nb * ng);
  return std::sqrt(std::max(var, 0.0));
}

GiniEstimate gini_estimate(const LabeledScoreSample& sample) {
  const auto roc = empirical_roc(sample);
  return {roc.gini, gini_sigma(roc.gini, sample.n_good(), sample.n_bad()), sample.n_good(),
          sample.n_bad()};
}

}  // namespace scorestab
