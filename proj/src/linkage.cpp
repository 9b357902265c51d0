#include "scorestab/linkage.hpp"

#include "scorestab/error.hpp"
#include "scorestab/log.hpp"

#include <cmath>
#include <sstream>

namespace scorestab {
namespace {

LinkageReport make_report(double ks, double psi) {
  if (!(psi > 0.0))
    fail(ErrorKind::DegenerateIdentical, "PSI is zero; Q = KS / sqrt(PSI) is undefined");
  LinkageReport r;
  r.ks = ks;
  r.psi = psi;
  r.q_empirical = ks / std::sqrt(psi);
  if (r.q_empirical > 1.0) {
    r.q_above_one = true;
    log::warn("empirical Q exceeds 1; perturbation model likely violated");
  }
  return r;
}

}  // namespace

PerturbationModel::PerturbationModel(GriddedDensity base, Eigen::VectorXd direction, double lambda)
    : base_(std::move(base)), direction_(std::move(direction)), lambda_(lambda) {
  if (direction_.size() != base_.size())
    fail(ErrorKind::GridMismatch, "direction is not sampled on the density grid");
  if (!direction_.allFinite()) fail(ErrorKind::OutOfRange, "direction must be finite");
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) fail(ErrorKind::OutOfRange, "lambda must be non-negative");
  const double drift = trapezoid(base_.values().cwiseProduct(direction_), base_.step());
  if (std::abs(drift) > kDensityTolerance) {
    std::ostringstream msg;
    msg << "int f*delta = " << drift << " is not zero; the perturbation does not preserve mass";
    fail(ErrorKind::OutOfRange, msg.str());
  }
}

SignCrossing locate_crossing(const GriddedDensity& base, const Eigen::VectorXd& direction) {
  const Eigen::Index n = direction.size();
  Eigen::Index last_positive = -1;
  Eigen::Index first_negative = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = direction[i];
    if (d > 0.0) {
      if (first_negative >= 0)
        fail(ErrorKind::MultiCrossing, "direction changes sign more than once");
      last_positive = i;
    } else if (d < 0.0) {
      if (last_positive < 0)
        fail(ErrorKind::NoSignChange, "direction must be positive below its crossing point");
      if (first_negative < 0) first_negative = i;
    }
  }
  if (last_positive < 0 || first_negative < 0)
    fail(ErrorKind::NoSignChange, "direction does not change sign on the grid");

  const Eigen::VectorXd weighted = base.values().cwiseProduct(direction);
  const double h = base.step();
  SignCrossing c;
  if (first_negative == last_positive + 1) {
    // Linear interpolation inside the straddling cell; f*delta vanishes at x0.
    const double dp = direction[last_positive];
    const double dn = direction[first_negative];
    const double frac = dp / (dp - dn);
    c.x0 = base.score(last_positive) + frac * h;
    c.lower_integral = trapezoid(weighted.head(last_positive + 1), h) + frac * h * weighted[last_positive] / 2;
  } else {
    // Exact zeros between the last positive and first negative point.
    const Eigen::Index zero = last_positive + 1;
    c.x0 = base.score(zero);
    c.lower_integral = trapezoid(weighted.head(zero + 1), h);
  }
  return c;
}

double q_factor_theoretical(const PerturbationModel& model) {
  const auto& f = model.base().values();
  const auto& d = model.direction();
  const double spread = trapezoid(f.cwiseProduct(d.cwiseAbs2()), model.base().step());
  if (!(spread > 0.0)) fail(ErrorKind::ZeroDenominator, "int f*delta^2 is zero");
  const auto crossing = locate_crossing(model.base(), d);
  return crossing.lower_integral / std::sqrt(spread);
}

GriddedDensity perturbed_density(const PerturbationModel& model) {
  const Eigen::ArrayXd factor = 1.0 + model.lambda() * model.direction().array();
  if ((factor <= 0.0).any()) {
    std::ostringstream msg;
    msg << "1 + lambda*delta <= 0 somewhere on the grid (lambda = " << model.lambda() << ")";
    fail(ErrorKind::NegativeDensity, msg.str());
  }
  const auto& base = model.base();
  return GriddedDensity(base.grid_lo(), base.grid_hi(), (base.values().array() * factor).matrix());
}

LinkageReport q_factor_empirical(const BucketedDistribution& base, const BucketedDistribution& fresh) {
  return make_report(ks_discrete(base, fresh).ks, psi_discrete(base, fresh));
}

LinkageReport q_factor_empirical(const GriddedDensity& base, const GriddedDensity& fresh) {
  return make_report(ks_continuous(base, fresh).ks, psi_continuous(base, fresh));
}

LinkageReport q_factor_linkage(const PerturbationModel& model) {
  auto r = q_factor_empirical(model.base(), perturbed_density(model));
  r.q_theoretical = q_factor_theoretical(model);
  r.lambda = model.lambda();
  return r;
}

double predict_ks(double psi, double q_factor) {
  if (!(psi >= 0.0) || !std::isfinite(psi)) fail(ErrorKind::OutOfRange, "psi must be non-negative");
  if (!(q_factor > 0.0 && q_factor <= 1.0)) fail(ErrorKind::OutOfRange, "q must lie in (0, 1]");
  return q_factor * std::sqrt(psi);
}

}  // namespace scorestab
