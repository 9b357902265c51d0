#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace scorestab {

inline constexpr double kMassTolerance = 1e-9;
inline constexpr double kDensityTolerance = 1e-6;
inline constexpr double kDefaultMassSmoothing = 1e-6;
inline constexpr double kPsiRedThreshold = 0.25;
inline constexpr double kPsiAmberThreshold = 0.10;
inline constexpr Eigen::Index kMinGridPoints = 16;

/// Probability masses over ordered score buckets, worst to best.
class BucketedDistribution {
 public:
  explicit BucketedDistribution(Eigen::VectorXd masses,
                                std::vector<std::string> labels = {});

  /// Normalizes non-negative counts (or any weights) to unit mass.
  static BucketedDistribution from_counts(const Eigen::VectorXd& counts,
                                          std::vector<std::string> labels = {});

  /// Adds `epsilon` to every mass and renormalizes. Opt-in: PSI on small
  /// buckets moves materially under smoothing.
  BucketedDistribution smoothed(double epsilon = kDefaultMassSmoothing) const;

  const Eigen::VectorXd& masses() const noexcept { return masses_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  Eigen::Index size() const noexcept { return masses_.size(); }
  double operator[](Eigen::Index i) const { return masses_[i]; }

  /// F_i = sum of masses up to and including bucket i.
  Eigen::VectorXd cumulative() const;

 private:
  Eigen::VectorXd masses_;
  std::vector<std::string> labels_;
};

/// Density sampled on a uniform grid [lo, hi].
class GriddedDensity {
 public:
  GriddedDensity(double grid_lo, double grid_hi, Eigen::VectorXd values);

  static GriddedDensity from_function(double grid_lo, double grid_hi,
                                      Eigen::Index points,
                                      const std::function<double(double)>& density);

  double grid_lo() const noexcept { return lo_; }
  double grid_hi() const noexcept { return hi_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  double step() const noexcept { return (hi_ - lo_) / static_cast<double>(values_.size() - 1); }
  double score(Eigen::Index i) const noexcept { return lo_ + step() * static_cast<double>(i); }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  bool same_grid(const GriddedDensity& other) const noexcept;

 private:
  double lo_;
  double hi_;
  Eigen::VectorXd values_;
};

/// Composite trapezoid rule on a uniform grid.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::DenseBase<Derived>& y,
                                   typename Derived::Scalar step) {
  const auto n = y.size();
  if (n < 2) return typename Derived::Scalar(0);
  return step * (y.sum() - (y(0) + y(n - 1)) / 2);
}

/// Running trapezoid integral; element i is the integral from the first
/// grid point to grid point i.
Eigen::VectorXd cumulative_trapezoid(const Eigen::VectorXd& y, double step);

struct DiscreteKs {
  double ks = 0.0;
  Eigen::Index argmax = 0;
};

struct ContinuousKs {
  double ks = 0.0;
  double argmax_score = 0.0;
};

enum class PsiZone { green, amber, red };

std::string_view to_string(PsiZone zone) noexcept;
PsiZone psi_zone(double psi) noexcept;

struct StabilityReport {
  double psi = 0.0;
  double ks = 0.0;
  Eigen::Index ks_argmax = 0;
  PsiZone zone = PsiZone::green;
};

double psi_discrete(const BucketedDistribution& base, const BucketedDistribution& fresh);
DiscreteKs ks_discrete(const BucketedDistribution& base, const BucketedDistribution& fresh);
double psi_continuous(const GriddedDensity& base, const GriddedDensity& fresh);
ContinuousKs ks_continuous(const GriddedDensity& base, const GriddedDensity& fresh);
StabilityReport stability_report(const BucketedDistribution& base,
                                 const BucketedDistribution& fresh);

}  // namespace scorestab
