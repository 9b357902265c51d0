#pragma once

// Effective Gini under an adverse score shift of KS-size `shift` (Delta).
//
// A cutoff at good-rejection level x keeps rejecting bads at roc_beta(x - Delta)
// after the shift. The harmonic curve through that point has parameter
// beta + delta(x). delta(x) is stationary at x* = (1 + Delta) / 2, where it
// takes its smallest value over the validity interval; that value is
// delta_beta(Delta) = 4 beta Delta (1 + beta) / ((1 - Delta)^2 - 4 beta Delta).

#include "scorestab/harmonic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scorestab {

inline constexpr double kPracticalScale = 1.3;
inline constexpr double kPracticalExponent = 2.2;

namespace detail {

template <typename Scalar>
void require_shift(Scalar shift) {
  if (!(shift >= Scalar(0) && shift < Scalar(1))) fail(ErrorKind::OutOfRange, "shift must lie in [0, 1)");
}

}  // namespace detail

/// (1 - Delta)^2 - 4 beta Delta; the conservative construction needs it > 0.
template <typename Scalar>
Scalar validity_margin(Scalar beta, Scalar shift) {
  return (Scalar(1) - shift) * (Scalar(1) - shift) - Scalar(4) * beta * shift;
}

template <typename Scalar>
bool in_validity_region(Scalar beta, Scalar shift) {
  return beta > Scalar(0) && shift >= Scalar(0) && shift < Scalar(1) && validity_margin(beta, shift) > Scalar(0);
}

/// Unique delta solving roc_beta(x - Delta) = roc_{beta + delta}(x).
template <typename Scalar>
Scalar delta_of_x(Scalar x, Scalar beta, Scalar shift) {
  detail::require_positive_beta(beta);
  detail::require_shift(shift);
  const Scalar denom = x * (Scalar(1) + shift) - x * x - shift * (Scalar(1) + beta);
  if (shift == Scalar(0)) return Scalar(0);
  if (!(denom > Scalar(0)))
    fail(ErrorKind::OutOfValidityRegion, "no matching harmonic curve at this cutoff (denominator <= 0)");
  return beta * shift * (Scalar(1) + beta) / denom;
}

/// Residual of roc_beta(x - Delta) = roc_{beta + delta}(x).
template <typename Scalar>
Scalar shift_equation_residual(Scalar x, Scalar beta, Scalar shift, Scalar delta) {
  const Scalar lhs = (Scalar(1) + beta) * (x - shift) / (x - shift + beta);
  const Scalar rhs = (Scalar(1) + beta + delta) * x / (x + beta + delta);
  return lhs - rhs;
}

struct ShiftOptimum {
  double x_star = 0.5;
  double delta_max = 0.0;
};

ShiftOptimum delta_beta_max(double beta, double shift);

/// G(beta + delta_beta(Delta)).
double g_low_exact_family(double beta, double shift);

/// G - Delta * Omega(beta(G)).
double g_low_first_order(double gini, double shift);

/// Delta * 1.3 * (1 - G^2.2).
double gini_error_practical(double gini, double shift);

/// Delta = Q * sqrt(PSI).
double delta_from_psi(double psi, double q_factor);

struct ShiftScenario {
  std::optional<double> gini;
  std::optional<double> beta;
  std::optional<double> delta;
  std::optional<double> psi;
  std::optional<double> q_factor;
};

struct DegradationResult {
  double g_original = 0.0;
  double beta = 0.0;
  double shift = 0.0;
  double g_low_first_order = 0.0;
  double g_low_exact_family = 0.0;
  double delta_g_practical = 0.0;
  double x_star = 0.5;
  double delta_param = 0.0;
  std::vector<std::string> warnings;
};

DegradationResult degrade(const ShiftScenario& scenario);

}  // namespace scorestab
