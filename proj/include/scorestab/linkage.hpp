#pragma once

// KS <-> PSI linkage for small perturbations f_lambda = f (1 + lambda delta):
// KS ~ lambda * int_{-inf}^{x0} f delta, PSI ~ lambda^2 * int f delta^2, so
// KS / sqrt(PSI) -> Q = int^{x0} f delta / sqrt(int f delta^2).

#include "scorestab/distributions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scorestab {

class PerturbationModel {
 public:
  PerturbationModel(GriddedDensity base, Eigen::VectorXd direction, double lambda);

  const GriddedDensity& base() const noexcept { return base_; }
  const Eigen::VectorXd& direction() const noexcept { return direction_; }
  double lambda() const noexcept { return lambda_; }

 private:
  GriddedDensity base_;
  Eigen::VectorXd direction_;
  double lambda_;
};

struct SignCrossing {
  double x0 = 0.0;
  /// Integral of f * delta from grid_lo up to x0.
  double lower_integral = 0.0;
};

/// Finds the single + to - sign change of the direction.
SignCrossing locate_crossing(const GriddedDensity& base, const Eigen::VectorXd& direction);

double q_factor_theoretical(const PerturbationModel& model);

GriddedDensity perturbed_density(const PerturbationModel& model);

struct LinkageReport {
  double ks = 0.0;
  double psi = 0.0;
  double q_empirical = 0.0;
  std::optional<double> q_theoretical;
  std::optional<double> lambda;
  /// Set when q_empirical > 1; the value is reported unclamped.
  bool q_above_one = false;
};

LinkageReport q_factor_empirical(const BucketedDistribution& base, const BucketedDistribution& fresh);
LinkageReport q_factor_empirical(const GriddedDensity& base, const GriddedDensity& fresh);

/// Empirical Q of base vs perturbed density, alongside the theoretical Q.
LinkageReport q_factor_linkage(const PerturbationModel& model);

double predict_ks(double psi, double q_factor);

}  // namespace scorestab
