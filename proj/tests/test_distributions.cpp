#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scorestab/distributions.hpp"
#include "scorestab/error.hpp"
#include "test_support.hpp"

#include <limits>

using namespace scorestab;
using scorestab::testing::merge_adjacent;
using scorestab::testing::normal_cdf;
using scorestab::testing::normal_density;
using scorestab::testing::random_distribution;

namespace {

BucketedDistribution two(double a, double b) { return BucketedDistribution(Eigen::Vector2d(a, b)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected scorestab::Error");
  return ErrorKind::OutOfRange;
}

}  // namespace

TEST_CASE("bucketed distribution validation") {
  CHECK_NOTHROW(two(0.5, 0.5));
  CHECK(kind_of([] { two(0.5, 0.6); }) == ErrorKind::InvalidDistribution);
  CHECK(kind_of([] { two(-0.1, 1.1); }) == ErrorKind::InvalidDistribution);
  CHECK(kind_of([] { BucketedDistribution(Eigen::VectorXd::Ones(1)); }) == ErrorKind::InvalidDistribution);

  const auto d = BucketedDistribution::from_counts(Eigen::Vector3d(1, 2, 7));
  CHECK(d[2] == doctest::Approx(0.7));
  CHECK(d.cumulative()[1] == doctest::Approx(0.3));
}

TEST_CASE("psi_discrete") {
  CHECK(psi_discrete(two(0.5, 0.5), two(0.5, 0.5)) == 0.0);
  CHECK(psi_discrete(two(0.5, 0.5), two(0.6, 0.4)) == doctest::Approx(0.040546510810816436).epsilon(1e-12));
  CHECK(psi_discrete(two(0.6, 0.4), two(0.5, 0.5)) == psi_discrete(two(0.5, 0.5), two(0.6, 0.4)));

  SUBCASE("errors") {
    CHECK(kind_of([] { psi_discrete(two(0.5, 0.5), BucketedDistribution(Eigen::Vector3d(0.2, 0.3, 0.5))); }) ==
          ErrorKind::BucketMismatch);
    CHECK(kind_of([] { psi_discrete(two(1.0, 0.0), two(0.5, 0.5)); }) == ErrorKind::ZeroBucket);
  }

  SUBCASE("buckets empty on both sides contribute nothing") {
    const BucketedDistribution a(Eigen::Vector3d(0.5, 0.0, 0.5));
    const BucketedDistribution b(Eigen::Vector3d(0.6, 0.0, 0.4));
    CHECK(psi_discrete(a, b) == doctest::Approx(0.040546510810816436).epsilon(1e-12));
  }

  SUBCASE("opt-in smoothing removes one-sided zeros") {
    const auto a = two(1.0, 0.0).smoothed();
    const auto b = two(0.5, 0.5).smoothed();
    CHECK(psi_discrete(a, b) > 0.0);
    CHECK(a.masses().sum() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("psi properties on random pairs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index k = 2 + trial % 12;
    const auto p = random_distribution(rng, k);
    const auto q = random_distribution(rng, k);
    const double pq = psi_discrete(p, q);
    REQUIRE(pq == psi_discrete(q, p));
    REQUIRE(pq >= 0.0);
    REQUIRE(pq > 0.0);
    REQUIRE(psi_discrete(p, p) == 0.0);
  }
}

TEST_CASE("ks_discrete") {
  const auto ks = ks_discrete(two(0.5, 0.5), two(0.6, 0.4));
  CHECK(std::abs(ks.ks - 0.1) <= 4 * std::numeric_limits<double>::epsilon());
  CHECK(ks.argmax == 0);
  CHECK(ks_discrete(two(0.3, 0.7), two(0.3, 0.7)).ks == 0.0);

  const double eps = 1e-9;
  Eigen::VectorXd lowmass = Eigen::VectorXd::Constant(5, eps);
  lowmass[0] = 1.0 - 4 * eps;
  Eigen::VectorXd highmass = Eigen::VectorXd::Constant(5, eps);
  highmass[4] = 1.0 - 4 * eps;
  CHECK(ks_discrete(BucketedDistribution(lowmass), BucketedDistribution(highmass)).ks ==
        doctest::Approx(1.0).epsilon(1e-8));

  SUBCASE("ties resolve to the lowest bucket") {
    const BucketedDistribution a(Eigen::Vector4d(0.2, 0.3, 0.3, 0.2));
    const BucketedDistribution b(Eigen::Vector4d(0.3, 0.2, 0.4, 0.1));
    // |dF| = 0.1, 0.0, 0.1, 0
    CHECK(ks_discrete(a, b).argmax == 0);
  }
}

TEST_CASE("ks coarsening property") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index k = 3 + trial % 10;
    const auto p = random_distribution(rng, k);
    const auto q = random_distribution(rng, k);
    const auto full = ks_discrete(p, q);
    REQUIRE(full.ks >= 0.0);
    REQUIRE(full.ks <= 1.0);
    for (Eigen::Index i = 0; i + 1 < k; ++i) {
      const double merged = ks_discrete(merge_adjacent(p, i), merge_adjacent(q, i)).ks;
      REQUIRE(merged <= full.ks + 1e-15);
      if (i > full.argmax) REQUIRE(merged == doctest::Approx(full.ks).epsilon(1e-12));
    }
  }
}

TEST_CASE("gridded density validation") {
  CHECK_NOTHROW(normal_density(0.0));
  CHECK(kind_of([] { GriddedDensity(0.0, 1.0, Eigen::VectorXd::Ones(8)); }) == ErrorKind::InvalidDistribution);
  CHECK(kind_of([] { GriddedDensity(0.0, 1.0, Eigen::VectorXd::Constant(32, 2.0)); }) ==
        ErrorKind::InvalidDistribution);
  CHECK(kind_of([] { GriddedDensity(1.0, 1.0, Eigen::VectorXd::Ones(32)); }) == ErrorKind::InvalidDistribution);
}

TEST_CASE("psi_continuous against the unit-normal identity PSI = mu^2") {
  const auto f = normal_density(0.0);
  CHECK(std::abs(psi_continuous(f, f)) <= 1e-12);
  CHECK(psi_continuous(f, normal_density(0.1)) == doctest::Approx(0.01).epsilon(1e-4 / 0.01));
  CHECK(std::abs(psi_continuous(f, normal_density(0.1)) - 0.01) <= 1e-4);
  CHECK(std::abs(psi_continuous(f, normal_density(0.5)) - 0.25) <= 1e-3);

  CHECK(kind_of([&] { psi_continuous(f, normal_density(0.0, 2001)); }) == ErrorKind::GridMismatch);
  const auto uniform = GriddedDensity(-8.0, 8.0, [] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(4001);
    v.segment(1500, 1000).setConstant(0.25);
    return v;
  }());
  CHECK(kind_of([&] { psi_continuous(f, uniform); }) == ErrorKind::NonPositiveDensity);
}

TEST_CASE("ks_continuous against 2 Phi(mu/2) - 1") {
  const auto f = normal_density(0.0);
  const auto near = ks_continuous(f, normal_density(0.1));
  CHECK(std::abs(near.ks - (2 * normal_cdf(0.05) - 1)) <= 1e-6);
  CHECK(std::abs(near.argmax_score - 0.05) <= 0.004);
  const auto far = ks_continuous(f, normal_density(1.0));
  CHECK(std::abs(far.ks - 0.38292492254802624) <= 1e-6);
  CHECK(std::abs(far.argmax_score - 0.5) <= 0.004);
  CHECK(ks_continuous(f, f).ks == 0.0);
}

TEST_CASE("psi_continuous of a piecewise-constant pair converges to psi_discrete") {
  const Eigen::VectorXd p = (Eigen::VectorXd(5) << 0.1, 0.25, 0.3, 0.2, 0.15).finished();
  const Eigen::VectorXd q = (Eigen::VectorXd(5) << 0.15, 0.2, 0.25, 0.25, 0.15).finished();
  const double discrete = psi_discrete(BucketedDistribution(p), BucketedDistribution(q));

  // Step densities on [0, 1], five equal-width buckets, renormalized on the grid.
  const auto step_density = [](const Eigen::VectorXd& m, Eigen::Index n) {
    const double h = 1.0 / static_cast<double>(n - 1);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto bucket = std::min<Eigen::Index>(static_cast<Eigen::Index>(5.0 * h * static_cast<double>(i)), 4);
      v[i] = 5.0 * m[bucket];
    }
    v /= trapezoid(v, h);
    return GriddedDensity(0.0, 1.0, v);
  };
  const auto rel_err = [&](Eigen::Index n) {
    return std::abs(psi_continuous(step_density(p, n), step_density(q, n)) - discrete) / discrete;
  };
  const double coarse = rel_err(1000);
  const double fine = rel_err(10000);
  CHECK(fine < 1e-3);
  CHECK(fine < coarse);
}

TEST_CASE("stability_report") {
  const auto r = stability_report(two(0.5, 0.5), two(0.6, 0.4));
  CHECK(r.psi == doctest::Approx(0.0405465).epsilon(1e-6));
  CHECK(r.ks == doctest::Approx(0.1));
  CHECK(r.zone == PsiZone::green);

  const auto same = stability_report(two(0.5, 0.5), two(0.5, 0.5));
  CHECK(same.psi == 0.0);
  CHECK(same.ks == 0.0);
  CHECK(same.zone == PsiZone::green);

  const auto red = stability_report(two(0.9, 0.1), two(0.1, 0.9));
  CHECK(red.psi == doctest::Approx(1.6 * std::log(9.0)).epsilon(1e-12));
  CHECK(red.zone == PsiZone::red);

  CHECK(psi_zone(0.25) == PsiZone::amber);
  CHECK(psi_zone(0.2500001) == PsiZone::red);
  CHECK(psi_zone(0.1) == PsiZone::green);
}
