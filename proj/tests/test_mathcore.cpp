#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "acl/mc.hpp"
#include "acl/rng.hpp"
#include "acl/samplers.hpp"
#include "acl/special.hpp"
#include "test_oracles.hpp"

using namespace acl;

TEST_CASE("unit ball volume: closed cases and recurrence oracle") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(unit_ball_volume(2) == doctest::Approx(3.14159265358979324).epsilon(1e-15));
  CHECK(unit_ball_volume(3) ==
        doctest::Approx(4.0 * 3.14159265358979324 / 3.0).epsilon(1e-15));
  for (int d = 1; d <= 200; ++d) {
    const long double ref = oracles::ball_volume_recurrence(d);
    const double got = unit_ball_volume(d);
    CHECK(std::fabs(got - static_cast<double>(ref)) <=
          1e-12 * static_cast<double>(ref));
  }
  CHECK_THROWS_AS(unit_ball_volume(0), std::domain_error);
  CHECK_THROWS_AS(unit_ball_volume(-3), std::domain_error);
}

TEST_CASE("psi values and convexity") {
  CHECK(psi(1.0) == 0.0);
  CHECK(psi(std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-15));
  // high-precision value of sqrt(6) - 1 - log(6)/2
  CHECK(psi(std::sqrt(6.0)) ==
        doctest::Approx(0.55361000816915060).epsilon(1e-14));
  CHECK_THROWS_AS(psi(0.0), std::domain_error);
  CHECK_THROWS_AS(psi(-1.0), std::domain_error);
  RngStream rng(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.01 + 5.0 * rng.next_double();
    const double y = x + 5.0 * rng.next_double();
    CHECK(psi(0.5 * (x + y)) <= 0.5 * (psi(x) + psi(y)) + 1e-12);
  }
}

TEST_CASE("sphere samples sit on the sphere for every d <= 100") {
  RngStream rng(11, 0);
  for (int d = 1; d <= 100; ++d) {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      worst = std::max(worst, std::fabs(norm(sample_sphere(d, rng)) - 1.0));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("sphere d=1 is a fair coin on {-1, +1}") {
  RngStream rng(12, 0);
  const std::size_t n = 100000;
  std::size_t plus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = sample_sphere(1, rng);
    REQUIRE(std::fabs(std::fabs(x[0]) - 1.0) <= 1e-15);
    if (x[0] > 0.0) ++plus;
  }
  const double prop = static_cast<double>(plus) / n;
  CHECK(std::fabs(prop - 0.5) < 0.01);
}

TEST_CASE("sphere d=3: coordinate symmetry and second moment") {
  RngStream rng(13, 0);
  const std::size_t n = 1000000;
  double s[3] = {0, 0, 0};
  double s2 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = sample_sphere(3, rng);
    for (int k = 0; k < 3; ++k) s[k] += x[k];
    const double q = x[0] * x[0];
    s2 += q;
    s4 += q * q;
  }
  for (int k = 0; k < 3; ++k) CHECK(std::fabs(s[k] / n) < 4e-3);
  const double mean = s2 / n;
  const double var = s4 / n - mean * mean;
  const double se = std::sqrt(var / n);
  CHECK(std::fabs(mean - 1.0 / 3.0) <= 3.0 * se);
}

TEST_CASE("ball samplers: radial law r^d and equality in law") {
  const std::size_t n = 100000;
  for (int d : {1, 2, 3, 5, 10}) {
    RngStream rng(100 + d, 0);
    std::vector<double> radii(n);
    for (auto& r : radii) r = norm(sample_ball_gaussian(d, rng));
    const double ks = oracles::ks_statistic(
        radii, [d](double r) { return std::pow(std::min(std::max(r, 0.0), 1.0), d); });
    CHECK(ks < oracles::ks_critical_1pct(n));
    for (double r : radii) REQUIRE(r <= 1.0 + 1e-15);
  }
  // Archimedes projection: same radial law, checked directly and against the
  // Gaussian-route sampler (two-sample, radius and first coordinate)
  for (int d : {1, 2, 3}) {
    RngStream rng(200 + d, 0);
    std::vector<double> ra(n), rg(n), ca(n), cg(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = sample_ball_archimedes(d, rng);
      const Point g = sample_ball_gaussian(d, rng);
      ra[i] = norm(a);
      rg[i] = norm(g);
      ca[i] = a[0];
      cg[i] = g[0];
    }
    const double ks_arch = oracles::ks_statistic(
        ra, [d](double r) { return std::pow(std::min(std::max(r, 0.0), 1.0), d); });
    CHECK(ks_arch < oracles::ks_critical_1pct(n));
    CHECK(oracles::ks_statistic_2sample(ra, rg) <
          oracles::ks_critical_1pct_2sample(n, n));
    CHECK(oracles::ks_statistic_2sample(ca, cg) <
          oracles::ks_critical_1pct_2sample(n, n));
  }
}

TEST_CASE("ball first-coordinate second moment is 1/(d+2)") {
  for (int d : {1, 2, 3, 7}) {
    RngStream rng(300 + d, 0);
    const McEstimate est = mc_mean(
        [](const Point& x) { return x[0] * x[0]; },
        [d](RngStream& r) { return sample_ball_gaussian(d, r); }, 200000, rng);
    CHECK(std::fabs(est.mean - 1.0 / (d + 2)) <= 3.0 * est.se);
  }
}

TEST_CASE("mc_mean basics") {
  RngStream rng(77, 0);
  SUBCASE("constant integrand has zero stderr") {
    const McEstimate est = mc_mean([](const Point&) { return 1.0; },
                                   [](RngStream& r) { return sample_sphere(2, r); },
                                   10000, rng);
    CHECK(est.mean == 1.0);
    CHECK(est.se == 0.0);
    CHECK(est.n == 10000);
  }
  SUBCASE("sphere first coordinate averages to zero") {
    const McEstimate est = mc_mean([](const Point& x) { return x[0]; },
                                   [](RngStream& r) { return sample_sphere(2, r); },
                                   1000000, rng);
    CHECK(std::fabs(est.mean) <= 3.0 * est.se);
  }
  SUBCASE("mean square radius of the 3-ball is 3/5") {
    const McEstimate est = mc_mean(
        [](const Point& x) { return squared_norm(x); },
        [](RngStream& r) { return sample_ball_gaussian(3, r); }, 1000000, rng);
    CHECK(std::fabs(est.mean - 0.6) <= 3.0 * est.se);
  }
  SUBCASE("deterministic given seed and chunking, any thread count") {
    auto run = [&](int threads) {
      return mc_mean([](const Point& x) { return x[0] * x[0]; },
                     [](RngStream& r) { return sample_sphere(3, r); }, 300000,
                     RngStream(500, 2), threads);
    };
    const McEstimate a = run(1), b = run(1), c = run(4);
    CHECK(a.mean == b.mean);
    CHECK(a.se == b.se);
    CHECK(a.mean == c.mean);
    CHECK(a.se == c.se);
  }
  SUBCASE("non-finite integrand aborts with the sample index") {
    CHECK_THROWS_WITH_AS(
        mc_mean([](const Point& x) { return 1.0 / (x[0] - x[0]); },
                [](RngStream& r) { return sample_sphere(1, r); }, 100,
                RngStream(1, 0)),
        doctest::Contains("sample"), std::runtime_error);
  }
  SUBCASE("n < 2 rejected") {
    CHECK_THROWS_AS(mc_mean([](const Point&) { return 1.0; },
                            [](RngStream& r) { return sample_sphere(1, r); }, 1,
                            rng),
                    std::domain_error);
  }
}

TEST_CASE("adaptive simpson sanity") {
  const double v = adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}
