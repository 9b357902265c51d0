#pragma once

// Brute-force and Monte-Carlo checks of the analytic degradation chain.
// Every result is a pure function of its parameters and seed.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace scorestab {

/// mt19937_64 with a portable 53-bit mapping onto [0, 1).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent per-trial seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Goods ~ Uniform(0,1); bads have CDF roc_beta(s), so the population ROC
/// (goods rejected, bads rejected) is exactly roc_beta.
struct SimulatedPopulation {
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> good_scores;
  std::vector<double> bad_scores;

  std::size_t n_good() const noexcept { return good_scores.size(); }
  std::size_t n_bad() const noexcept { return bad_scores.size(); }
  double empirical_gini() const;
};

SimulatedPopulation sample_population(double beta, std::size_t n_good, std::size_t n_bad,
                                      std::uint64_t seed);

enum class ShiftSign { adverse, favorable };

struct EffectiveGini {
  double bad_rejection_before = 0.0;
  double bad_rejection_after = 0.0;
  double matched_beta = 0.0;
  double matched_low_gini = 0.0;
  /// Binomial standard error of bad_rejection_after pushed through the match.
  double standard_error = 0.0;
};

/// Shifts every score by +shift (adverse: a fixed cutoff now rejects fewer
/// bads) and finds the harmonic curve through (cutoff, bads rejected after).
EffectiveGini mc_effective_gini(const SimulatedPopulation& pop, double shift, double cutoff,
                                ShiftSign sign = ShiftSign::adverse);

/// Harmonic beta with roc_beta(x) = y, by bisection in log(beta).
/// Returns +inf when y <= x and 0 when y >= 1.
double match_beta_through(double x, double y);

struct RemainderScan {
  double beta = 0.0;
  std::vector<double> deltas;
  std::vector<double> exact;
  std::vector<double> first_order;
  std::vector<double> errors;
  double fitted_c = 0.0;
  /// Least-squares slope of log|error| against log(delta), positive deltas only.
  double slope = 0.0;
  bool quadratic = false;
};

RemainderScan remainder_scan(double beta, std::span<const double> deltas);

struct OmegaRefit {
  double omega0 = 0.0;
  double gamma = 0.0;
  double max_dev = 0.0;
  /// Max |omega_approx(G) - Omega(beta(G))| for the published constants.
  double published_max_dev = 0.0;
  double published_argmax_gini = 0.0;
  /// Omega as beta -> inf (G -> 0).
  double exact_limit_at_zero = 0.0;
  bool published_within_band = false;
  std::size_t points = 0;
};

OmegaRefit refit_omega_approx(double grid_step);

struct SigmaCheck {
  double empirical_sd = 0.0;
  double formula_sd = 0.0;
  double ratio = 0.0;
  double mean_gini = 0.0;
  std::size_t trials = 0;
};

SigmaCheck mc_sigma_check(double beta, std::size_t n_good, std::size_t n_bad, std::size_t n_trials,
                          std::uint64_t seed);

struct StationaryScan {
  double beta = 0.0;
  double shift = 0.0;
  double delta_closed_form = 0.0;
  double scan_min = 0.0;
  double scan_argmin = 0.0;
  double scan_max = 0.0;
  double scan_argmax = 0.0;
};

/// Evaluates delta_of_x on x = shift + k * step over the validity interval.
StationaryScan scan_delta_over_cutoffs(double beta, double shift, double step);

struct SampleSizePoint {
  std::size_t n = 0;
  double sigma = 0.0;
  double delta_g = 0.0;
};

std::vector<SampleSizePoint> sample_size_contrast(double gini, double shift,
                                                  std::span<const std::size_t> sizes);

struct OracleCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct ValidationReport {
  std::uint64_t seed = 0;
  bool quick = false;
  std::vector<OracleCheck> checks;
  bool all_passed() const;
};

ValidationReport run_validation(std::uint64_t seed, bool quick);

}  // namespace scorestab
