#include "scorestab/distributions.hpp"

#include "scorestab/error.hpp"

#include <cmath>
#include <sstream>

namespace scorestab {
namespace {

void require_same_buckets(const BucketedDistribution& a, const BucketedDistribution& b) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << "bucket count mismatch: " << a.size() << " vs " << b.size();
    fail(ErrorKind::BucketMismatch, msg.str());
  }
}

void require_same_grid(const GriddedDensity& a, const GriddedDensity& b) {
  if (!a.same_grid(b)) fail(ErrorKind::GridMismatch, "densities are sampled on different grids");
}

}  // namespace

BucketedDistribution::BucketedDistribution(Eigen::VectorXd masses,
                                           std::vector<std::string> labels)
    : masses_(std::move(masses)), labels_(std::move(labels)) {
  if (masses_.size() < 2)
    fail(ErrorKind::InvalidDistribution, "a bucketed distribution needs at least 2 buckets");
  if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != masses_.size())
    fail(ErrorKind::InvalidDistribution, "label count differs from bucket count");
  for (Eigen::Index i = 0; i < masses_.size(); ++i) {
    if (!std::isfinite(masses_[i]) || masses_[i] < 0.0) {
      std::ostringstream msg;
      msg << "bucket " << i << " has invalid mass " << masses_[i];
      fail(ErrorKind::InvalidDistribution, msg.str());
    }
  }
  const double total = masses_.sum();
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "masses sum to " << total << ", expected 1";
    fail(ErrorKind::InvalidDistribution, msg.str());
  }
}

BucketedDistribution BucketedDistribution::from_counts(const Eigen::VectorXd& counts,
                                                       std::vector<std::string> labels) {
  if ((counts.array() < 0.0).any() || !counts.allFinite())
    fail(ErrorKind::InvalidDistribution, "counts must be finite and non-negative");
  const double total = counts.sum();
  if (!(total > 0.0)) fail(ErrorKind::InvalidDistribution, "counts sum to zero");
  return BucketedDistribution(counts / total, std::move(labels));
}

BucketedDistribution BucketedDistribution::smoothed(double epsilon) const {
  if (!(epsilon >= 0.0)) fail(ErrorKind::OutOfRange, "smoothing epsilon must be non-negative");
  Eigen::VectorXd m = masses_.array() + epsilon;
  return BucketedDistribution(m / m.sum(), labels_);
}

Eigen::VectorXd BucketedDistribution::cumulative() const {
  Eigen::VectorXd c(masses_.size());
  double running = 0.0;
  for (Eigen::Index i = 0; i < masses_.size(); ++i) {
    running += masses_[i];
    c[i] = running;
  }
  return c;
}

GriddedDensity::GriddedDensity(double grid_lo, double grid_hi, Eigen::VectorXd values)
    : lo_(grid_lo), hi_(grid_hi), values_(std::move(values)) {
  if (!(grid_hi > grid_lo)) fail(ErrorKind::InvalidDistribution, "grid_hi must exceed grid_lo");
  if (values_.size() < kMinGridPoints)
    fail(ErrorKind::InvalidDistribution, "a gridded density needs at least 16 points");
  if (!values_.allFinite() || (values_.array() < 0.0).any())
    fail(ErrorKind::InvalidDistribution, "density values must be finite and non-negative");
  const double integral = trapezoid(values_, step());
  if (std::abs(integral - 1.0) > kDensityTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "density integrates to " << integral << ", expected 1";
    fail(ErrorKind::InvalidDistribution, msg.str());
  }
}

GriddedDensity GriddedDensity::from_function(double grid_lo, double grid_hi, Eigen::Index points,
                                             const std::function<double(double)>& density) {
  if (points < 2) fail(ErrorKind::InvalidDistribution, "grid needs at least 2 points");
  const double h = (grid_hi - grid_lo) / static_cast<double>(points - 1);
  Eigen::VectorXd v(points);
  for (Eigen::Index i = 0; i < points; ++i) v[i] = density(grid_lo + h * static_cast<double>(i));
  return GriddedDensity(grid_lo, grid_hi, std::move(v));
}

bool GriddedDensity::same_grid(const GriddedDensity& other) const noexcept {
  if (size() != other.size()) return false;
  const double tol = 1e-9 * (hi_ - lo_);
  return std::abs(lo_ - other.lo_) <= tol && std::abs(hi_ - other.hi_) <= tol;
}

Eigen::VectorXd cumulative_trapezoid(const Eigen::VectorXd& y, double step) {
  Eigen::VectorXd out(y.size());
  if (y.size() == 0) return out;
  out[0] = 0.0;
  for (Eigen::Index i = 1; i < y.size(); ++i) out[i] = out[i - 1] + step * (y[i - 1] + y[i]) / 2;
  return out;
}

std::string_view to_string(PsiZone zone) noexcept {
  switch (zone) {
    case PsiZone::green: return "green";
    case PsiZone::amber: return "amber";
    case PsiZone::red: return "red";
  }
  return "green";
}

PsiZone psi_zone(double psi) noexcept {
  if (psi > kPsiRedThreshold) return PsiZone::red;
  if (psi > kPsiAmberThreshold) return PsiZone::amber;
  return PsiZone::green;
}

double psi_discrete(const BucketedDistribution& base, const BucketedDistribution& fresh) {
  require_same_buckets(base, fresh);
  // (p - q) * (ln p - ln q) flips both signs under swap, so the sum is
  // bit-identical for either argument order.
  double psi = 0.0;
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    const double p = base[i];
    const double q = fresh[i];
    if (p == 0.0 && q == 0.0) continue;
    if (p == 0.0 || q == 0.0) {
      std::ostringstream msg;
      msg << "bucket " << i << " has zero mass on one side only";
      if (!base.labels().empty()) msg << " (" << base.labels()[static_cast<std::size_t>(i)] << ")";
      msg << "; smooth or merge buckets first";
      fail(ErrorKind::ZeroBucket, msg.str());
    }
    psi += (p - q) * (std::log(p) - std::log(q));
  }
  return psi;
}

DiscreteKs ks_discrete(const BucketedDistribution& base, const BucketedDistribution& fresh) {
  require_same_buckets(base, fresh);
  DiscreteKs out;
  double fb = 0.0;
  double fn = 0.0;
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    fb += base[i];
    fn += fresh[i];
    const double d = std::abs(fb - fn);
    if (d > out.ks) {
      out.ks = d;
      out.argmax = i;
    }
  }
  out.ks = std::min(out.ks, 1.0);
  return out;
}

double psi_continuous(const GriddedDensity& base, const GriddedDensity& fresh) {
  require_same_grid(base, fresh);
  const auto& f = base.values();
  const auto& g = fresh.values();
  if ((f.array() <= 0.0).any() || (g.array() <= 0.0).any())
    fail(ErrorKind::NonPositiveDensity, "continuous PSI needs strictly positive densities");
  const Eigen::ArrayXd integrand = (f - g).array() * (f.array().log() - g.array().log());
  return trapezoid(integrand, base.step());
}

ContinuousKs ks_continuous(const GriddedDensity& base, const GriddedDensity& fresh) {
  require_same_grid(base, fresh);
  const Eigen::VectorXd diff = base.values() - fresh.values();
  const Eigen::VectorXd cum = cumulative_trapezoid(diff, base.step());
  ContinuousKs out;
  out.argmax_score = base.grid_lo();
  for (Eigen::Index i = 0; i < cum.size(); ++i) {
    const double d = std::abs(cum[i]);
    if (d > out.ks) {
      out.ks = d;
      out.argmax_score = base.score(i);
    }
  }
  out.ks = std::min(out.ks, 1.0);
  return out;
}

StabilityReport stability_report(const BucketedDistribution& base,
                                 const BucketedDistribution& fresh) {
  StabilityReport r;
  r.psi = psi_discrete(base, fresh);
  const auto ks = ks_discrete(base, fresh);
  r.ks = ks.ks;
  r.ks_argmax = ks.argmax;
  r.zone = psi_zone(r.psi);
  return r;
}

}  // namespace scorestab
