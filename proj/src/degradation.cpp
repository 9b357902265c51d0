#include "scorestab/degradation.hpp"

#include "scorestab/log.hpp"

#include <cmath>
#include <sstream>

namespace scorestab {

ShiftOptimum delta_beta_max(double beta, double shift) {
  detail::require_positive_beta(beta);
  detail::require_shift(shift);
  const double margin = validity_margin(beta, shift);
  if (!(margin > 0.0)) {
    std::ostringstream msg;
    msg << "(1 - Delta)^2 - 4 beta Delta = " << margin << " <= 0 for beta = " << beta
        << ", Delta = " << shift;
    fail(ErrorKind::OutOfValidityRegion, msg.str());
  }
  return {(1.0 + shift) / 2.0, 4.0 * beta * shift * (1.0 + beta) / margin};
}

double g_low_exact_family(double beta, double shift) {
  return gini_of_beta(beta + delta_beta_max(beta, shift).delta_max);
}

double g_low_first_order(double gini, double shift) {
  if (!(gini > 0.0 && gini < 1.0)) fail(ErrorKind::OutOfRange, "gini must lie in (0, 1)");
  detail::require_shift(shift);
  return gini - shift * omega_exact(beta_of_gini(gini));
}

double gini_error_practical(double gini, double shift) {
  if (!(gini >= 0.0 && gini <= 1.0)) fail(ErrorKind::OutOfRange, "gini must lie in [0, 1]");
  if (!(shift >= 0.0) || !std::isfinite(shift)) fail(ErrorKind::OutOfRange, "shift must be non-negative");
  return shift * kPracticalScale * (1.0 - std::pow(gini, kPracticalExponent));
}

double delta_from_psi(double psi, double q_factor) {
  if (!(psi >= 0.0) || !std::isfinite(psi)) fail(ErrorKind::OutOfRange, "psi must be non-negative");
  if (!(q_factor > 0.0 && q_factor <= 1.0)) fail(ErrorKind::OutOfRange, "q must lie in (0, 1]");
  return q_factor * std::sqrt(psi);
}

DegradationResult degrade(const ShiftScenario& scenario) {
  DegradationResult r;
  if (scenario.gini.has_value() == scenario.beta.has_value())
    fail(ErrorKind::OutOfRange, "scenario needs exactly one of gini or beta");
  if (scenario.psi.has_value() != scenario.q_factor.has_value())
    fail(ErrorKind::OutOfRange, "psi and q must be given together");
  if (!scenario.delta && !scenario.psi)
    fail(ErrorKind::OutOfRange, "scenario needs delta or (psi, q)");

  if (scenario.gini) {
    r.g_original = *scenario.gini;
    r.beta = beta_of_gini(r.g_original);
  } else {
    r.beta = *scenario.beta;
    r.g_original = gini_of_beta(r.beta);
  }

  if (scenario.delta) {
    r.shift = *scenario.delta;
    if (scenario.psi) {
      const double implied = delta_from_psi(*scenario.psi, *scenario.q_factor);
      if (std::abs(implied - r.shift) > 1e-12) {
        std::ostringstream msg;
        msg << "delta " << r.shift << " disagrees with q*sqrt(psi) = " << implied << "; using delta";
        r.warnings.push_back(msg.str());
        log::warn(msg.str());
      }
    }
  } else {
    r.shift = delta_from_psi(*scenario.psi, *scenario.q_factor);
  }
  detail::require_shift(r.shift);

  const auto opt = delta_beta_max(r.beta, r.shift);
  r.x_star = opt.x_star;
  r.delta_param = opt.delta_max;
  r.g_low_exact_family = r.shift == 0.0 ? r.g_original : gini_of_beta(r.beta + opt.delta_max);
  r.g_low_first_order = r.g_original - r.shift * omega_exact(r.beta);
  r.delta_g_practical = gini_error_practical(r.g_original, r.shift);
  return r;
}

}  // namespace scorestab
