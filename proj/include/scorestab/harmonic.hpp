#pragma once

// One-parameter harmonic ROC family roc_beta(x) = (1 + beta) x / (x + beta)
// and its closed forms. Everything here is templated on the scalar so the
// same expressions can be evaluated in long double for oracle checks.

#include "scorestab/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace scorestab {

inline constexpr double kOmegaApproxScale = 1.323;
inline constexpr double kOmegaApproxExponent = 2.204;
inline constexpr double kBetaBracketLo = 1e-12;
inline constexpr double kBetaBracketHi = 1e12;

namespace detail {

// Above this beta the closed forms cancel badly; use the 1/beta series.
inline constexpr double kSeriesBeta = 4.0;

template <typename Scalar>
void require_positive_beta(Scalar beta) {
  if (!(beta > Scalar(0)) || !std::isfinite(static_cast<double>(beta)))
    fail(ErrorKind::OutOfRange, "beta must be a positive finite number");
}

}  // namespace detail

struct HarmonicRocParam {
  double beta = 1.0;
};

template <typename Scalar>
Scalar roc_beta(Scalar beta, Scalar x) {
  detail::require_positive_beta(beta);
  if (!(x >= Scalar(0) && x <= Scalar(1))) fail(ErrorKind::OutOfRange, "x must lie in [0, 1]");
  return (Scalar(1) + beta) * x / (x + beta);
}

/// Inverse of roc_beta in x.
template <typename Scalar>
Scalar roc_beta_inverse(Scalar beta, Scalar y) {
  detail::require_positive_beta(beta);
  if (!(y >= Scalar(0) && y <= Scalar(1))) fail(ErrorKind::OutOfRange, "y must lie in [0, 1]");
  return beta * y / (Scalar(1) + beta - y);
}

/// G(beta) = 2 (1 + beta)(1 - beta ln(1 + 1/beta)) - 1.
template <typename Scalar>
Scalar gini_of_beta(Scalar beta) {
  using std::log1p;
  detail::require_positive_beta(beta);
  if (beta <= Scalar(detail::kSeriesBeta)) {
    return Scalar(2) * (Scalar(1) + beta) * (Scalar(1) - beta * log1p(Scalar(1) / beta)) - Scalar(1);
  }
  // G = sum_{k>=1} 2 (-1)^{k+1} u^k / ((k+1)(k+2)), u = 1/beta
  const Scalar u = Scalar(1) / beta;
  Scalar sum = 0;
  Scalar power = u;
  for (int k = 1; k < 200; ++k) {
    const Scalar term = Scalar(2) * power / Scalar((k + 1) * (k + 2));
    sum += (k % 2 == 1) ? term : -term;
    if (term < std::numeric_limits<Scalar>::epsilon() * sum) break;
    power *= u;
  }
  return sum;
}

/// dG/dbeta = 4 - 2 (1 + 2 beta) ln(1 + 1/beta).
template <typename Scalar>
Scalar gini_slope(Scalar beta) {
  using std::log1p;
  detail::require_positive_beta(beta);
  return Scalar(4) - Scalar(2) * (Scalar(1) + Scalar(2) * beta) * log1p(Scalar(1) / beta);
}

/// Omega(beta) = 8 beta (1 + beta)((1 + 2 beta) ln(1 + 1/beta) - 2): first-order
/// Gini loss per unit of KS shift. Tends to 0 as beta -> 0, 4/3 as beta -> inf.
template <typename Scalar>
Scalar omega_exact(Scalar beta) {
  using std::log1p;
  detail::require_positive_beta(beta);
  if (beta <= Scalar(detail::kSeriesBeta)) {
    return Scalar(8) * beta * (Scalar(1) + beta) *
           ((Scalar(1) + Scalar(2) * beta) * log1p(Scalar(1) / beta) - Scalar(2));
  }
  // Omega = 8 (1 + u) sum_{m>=0} (-1)^m (m+1) u^m / ((m+2)(m+3))
  const Scalar u = Scalar(1) / beta;
  Scalar sum = 0;
  Scalar power = 1;
  for (int m = 0; m < 200; ++m) {
    const Scalar term = Scalar(m + 1) * power / Scalar((m + 2) * (m + 3));
    sum += (m % 2 == 0) ? term : -term;
    if (term < std::numeric_limits<Scalar>::epsilon() * sum) break;
    power *= u;
  }
  return Scalar(8) * (Scalar(1) + u) * sum;
}

/// Closed-form fit omega_A(G) = 1.323 (1 - G^2.204).
template <typename Scalar>
Scalar omega_approx(Scalar gini, Scalar scale = Scalar(kOmegaApproxScale),
                    Scalar exponent = Scalar(kOmegaApproxExponent)) {
  using std::pow;
  if (!(gini >= Scalar(0) && gini <= Scalar(1))) fail(ErrorKind::OutOfRange, "gini must lie in [0, 1]");
  return scale * (Scalar(1) - pow(gini, exponent));
}

/// Inverts the strictly decreasing G(beta) by bisection in log(beta).
template <typename Scalar>
Scalar beta_of_gini(Scalar gini) {
  using std::exp;
  using std::log;
  if (!(gini > Scalar(0) && gini < Scalar(1))) fail(ErrorKind::OutOfRange, "gini must lie in (0, 1)");
  Scalar lo = log(Scalar(kBetaBracketLo));
  Scalar hi = log(Scalar(kBetaBracketHi));
  if (gini >= gini_of_beta(exp(lo))) return exp(lo);
  if (gini <= gini_of_beta(exp(hi))) return exp(hi);
  for (int it = 0; it < 200; ++it) {
    const Scalar mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    if (gini_of_beta(exp(mid)) > gini) lo = mid;
    else hi = mid;
  }
  return exp((lo + hi) / 2);
}

}  // namespace scorestab
