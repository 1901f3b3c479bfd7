#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "acl/density.hpp"
#include "acl/special.hpp"
#include "test_oracles.hpp"

using namespace acl;
using namespace acl::density;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("coefficient vectors normalize, drop zeros, reject empties") {
  const auto c = CoefficientVector::from({3.0, 0.0, 4.0});
  CHECK(c.size() == 2);
  CHECK(c.zeros_dropped);
  CHECK(c.scale_applied == doctest::Approx(5.0));
  double s2 = 0.0;
  for (double v : c.a) s2 += v * v;
  CHECK(s2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(CoefficientVector::from({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(CoefficientVector::from({}), std::domain_error);
  const auto eq = CoefficientVector::equal(4);
  CHECK(eq.a[0] == doctest::Approx(0.5));
}

TEST_CASE("spherical sum samples") {
  RngStream rng(41, 0);
  SUBCASE("single term lies on the unit sphere of R^{d+2}") {
    const auto c = CoefficientVector::equal(1);
    for (int d : {1, 2, 3}) {
      const Point x = spherical_sum_sample(c, d, rng);
      CHECK(x.size() == static_cast<std::size_t>(d + 2));
      CHECK(std::fabs(norm(x) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("unit second moment for any coefficients") {
    const auto c = CoefficientVector::from({0.3, -1.2, 0.8, 2.0});
    const McEstimate est = mc_mean(
        [](const Point& x) { return squared_norm(x); },
        [&](RngStream& r) { return spherical_sum_sample(c, 2, r); }, 400000,
        rng);
    CHECK(std::fabs(est.mean - 1.0) <= 3.0 * est.se);
  }
  SUBCASE("two equal terms: squared norm stays in [0, 2]") {
    const auto c = CoefficientVector::equal(2);
    for (int i = 0; i < 20000; ++i) {
      const double q = squared_norm(spherical_sum_sample(c, 1, rng));
      REQUIRE(q >= -1e-12);
      REQUIRE(q <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("density_at: degenerate and oracle-backed values") {
  SUBCASE("single term gives the uniform ball density exactly") {
    const auto c = CoefficientVector::equal(1);
    const auto est = density_at(c, 2, {0.5, 0.0}, 10000, RngStream(42, 0));
    CHECK(est.value.mean == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(est.value.se < 1e-15);  // ulp jitter of the normalized draw only
  }
  SUBCASE("two equal terms in d = 1 match the triangle") {
    const auto c = CoefficientVector::equal(2);
    const auto at0 = density_at(c, 1, {0.0}, 200000, RngStream(43, 0));
    // plain and clipped estimators both reported at the origin
    CHECK(at0.clipped.has_value());
    CHECK(std::fabs(at0.value.mean - 1.0 / std::sqrt(2.0)) <=
          3.0 * at0.value.se);
    const auto at1 = density_at(c, 1, {1.0}, 200000, RngStream(44, 0));
    CHECK(std::fabs(at1.value.mean - (std::sqrt(2.0) - 1.0) / 2.0) <=
          3.0 * at1.value.se);
    CHECK(!at1.clipped.has_value());
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(density_at(CoefficientVector::equal(2), 2, {0.0}, 100,
                               RngStream(1, 0)),
                    std::domain_error);
  }
}

TEST_CASE("exact 1-D density oracle") {
  SUBCASE("single coefficient: constant 1/2 on [-1, 1]") {
    const auto pw = exact_density_1d(CoefficientVector::equal(1));
    CHECK(pw.evaluate(0.3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pw.support_min() == doctest::Approx(-1.0));
    CHECK(pw.support_max() == doctest::Approx(1.0));
  }
  SUBCASE("two equal coefficients: triangle with peak 1/sqrt 2") {
    const auto pw = exact_density_1d(CoefficientVector::equal(2));
    CHECK(pw.evaluate(0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(pw.support_max() == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("three equal coefficients against the quadrature oracle") {
    const auto pw = exact_density_1d(CoefficientVector::equal(3));
    const double a = 1.0 / std::sqrt(3.0);
    for (double x : {0.0, 0.5, 1.2}) {
      CHECK(std::fabs(pw.evaluate(x) -
                      oracles::cf_density_uniform_sum({a, a, a}, x)) < 1e-8);
    }
  }
  SUBCASE("permutation and sign invariance, bit-exact") {
    const auto p1 = exact_density_1d(CoefficientVector::from({0.2, -0.5, 1.0}));
    const auto p2 = exact_density_1d(CoefficientVector::from({1.0, 0.5, -0.2}));
    REQUIRE(p1.breakpoints().size() == p2.breakpoints().size());
    for (std::size_t i = 0; i < p1.breakpoints().size(); ++i)
      CHECK(p1.breakpoints()[i] == p2.breakpoints()[i]);
    for (std::size_t i = 0; i < p1.pieces().size(); ++i) {
      const auto& c1 = p1.pieces()[i].coeffs();
      const auto& c2 = p2.pieces()[i].coeffs();
      REQUIRE(c1.size() == c2.size());
      for (std::size_t k = 0; k < c1.size(); ++k) CHECK(c1[k] == c2[k]);
    }
  }
  SUBCASE("integrates to one") {
    RngStream rng(51, 0);
    const auto c = CoefficientVector::random(8, rng);
    CHECK(std::fabs(exact_density_1d(c).mass() - 1.0) < 1e-10);
  }
  SUBCASE("term cap") {
    CHECK_THROWS_AS(exact_density_1d(CoefficientVector::equal(31)),
                    std::domain_error);
  }
}

TEST_CASE("cube sections") {
  SUBCASE("axis-aligned slice of the unit square") {
    CHECK(section_volume_cube({1.0, 0.0}, 0.0) == doctest::Approx(1.0));
    CHECK(section_volume_cube({1.0, 0.0}, 0.5) == doctest::Approx(1.0));
    CHECK(section_volume_cube({0.0, 1.0}, 0.6) == 0.0);
  }
  SUBCASE("diagonal of the unit square has length sqrt 2 at the center") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(section_volume_cube({r, r}, 0.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("main-diagonal hexagon of the unit cube, with quadrature check") {
    const double r = 1.0 / std::sqrt(3.0);
    const double got = section_volume_cube({r, r, r}, 0.0);
    CHECK(got == doctest::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-12));
    // independent route: CF inversion for sum of three U[-1/2,1/2] scaled by r
    const double ref = oracles::cf_density_uniform_sum({r / 2, r / 2, r / 2}, 0.0);
    CHECK(std::fabs(got - ref) < 1e-8);
  }
  SUBCASE("non-unit direction rejected") {
    CHECK_THROWS_AS(section_volume_cube({1.0, 1.0}, 0.0), std::domain_error);
  }
}

TEST_CASE("square sections against the trapezoid closed form") {
  // chord length of the unit square at distance s along theta: the density
  // of theta_1 W_1 + theta_2 W_2 is a trapezoid with half-widths
  // h_i = |theta_i|/2, flat at 1/(2 h1) and sloping to zero at h1 + h2
  auto chord = [](double t1, double t2, double s) {
    double h1 = std::fabs(t1) / 2.0, h2 = std::fabs(t2) / 2.0;
    if (h1 < h2) std::swap(h1, h2);
    const double a = std::fabs(s);
    if (a <= h1 - h2) return 0.5 / h1;
    if (a < h1 + h2) return (h1 + h2 - a) / (4.0 * h1 * h2);
    return 0.0;
  };
  RngStream rng(55, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const double phi = 1.5707963267948966 * rng.next_double();
    const double t1 = std::cos(phi), t2 = std::sin(phi);
    if (t1 == 0.0 || t2 == 0.0) continue;
    // central section of the square equals 1/max|theta_i|
    CHECK(section_volume_cube({t1, t2}, 0.0) ==
          doctest::Approx(1.0 / std::max(t1, t2)).epsilon(1e-12));
    for (int k = 0; k < 5; ++k) {
      const double s = 0.55 * rng.next_double();
      CHECK(section_volume_cube({t1, t2}, s) ==
            doctest::Approx(chord(t1, t2, s)).epsilon(1e-11));
    }
  }
}

TEST_CASE("norm tail bound") {
  CHECK(norm_tail_bound(1, 1.0 + 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(norm_tail_bound(1, 2.0) ==
        doctest::Approx(8.0 * std::exp(-4.5)).epsilon(1e-14));
  const double cube_of = std::pow(2.0 * std::exp(-1.5), 3.0);
  CHECK(norm_tail_bound(1, 2.0) == doctest::Approx(cube_of).epsilon(1e-13));
  CHECK(norm_tail_bound(1, 2.0) < 0.09);
  CHECK_THROWS_AS(norm_tail_bound(1, 1.0), std::domain_error);
  CHECK_THROWS_AS(norm_tail_bound(2, 0.5), std::domain_error);
}

TEST_CASE("density floor constants") {
  CHECK(density_floor_constant(1) == doctest::Approx(1.0 / 400.0).epsilon(1e-14));
  CHECK(density_floor_constant(2) ==
        doctest::Approx(1.0 / (400.0 * kPi)).epsilon(1e-14));
  CHECK(density_floor_constant_1d_sharp() ==
        doctest::Approx(0.21148313826926949).epsilon(1e-14));
}

TEST_CASE("unit norm lower bound estimates") {
  SUBCASE("single term: probability one exactly") {
    const auto est = unit_norm_lower(CoefficientVector::equal(1), 3, 10000,
                                     RngStream(61, 0));
    CHECK(est.mean == 1.0);
    CHECK(est.se == 0.0);
  }
  SUBCASE("two equal terms in d = 1: probability 1/2") {
    const auto est = unit_norm_lower(CoefficientVector::equal(2), 1, 400000,
                                     RngStream(62, 0));
    CHECK(std::fabs(est.mean - 0.5) <= 3.0 * est.se);
  }
  SUBCASE("twenty equal terms in d = 3 stay above 0.1") {
    const auto est = unit_norm_lower(CoefficientVector::equal(20), 3, 200000,
                                     RngStream(63, 0));
    CHECK(est.mean >= 0.1 - 3.0 * est.se);
  }
  SUBCASE("tails sit below the bound") {
    const auto c = CoefficientVector::equal(5);
    for (double t : {1.5, 2.0}) {
      const auto est = norm_tail_estimate(c, 2, t, 200000, RngStream(64, 0));
      CHECK(est.mean <= norm_tail_bound(2, t) + 3.0 * est.se);
    }
  }
}

TEST_CASE("density floor verifier") {
  SUBCASE("single term: every estimate is exactly 1/w_d") {
    std::vector<Point> grid;
    for (int k = 0; k < 5; ++k)
      grid.push_back({0.19 * k, 0.0});
    const auto rep = verify_density_floor(CoefficientVector::equal(1), 2, grid,
                                          5000, RngStream(71, 0));
    CHECK(rep.pass);
    for (const auto& pt : rep.points)
      CHECK(pt.estimate.value.mean == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  }
  SUBCASE("d = 1 estimates agree with the exact oracle") {
    RngStream seed(72, 0);
    const auto c = CoefficientVector::random(5, seed);
    const auto oracle = exact_density_1d(c);
    std::vector<Point> grid;
    for (int k = 0; k < 20; ++k) grid.push_back({(k + 1) / 21.0});
    const auto rep =
        verify_density_floor(c, 1, grid, 200000, RngStream(73, 0));
    CHECK(rep.pass);
    int miss3 = 0;
    for (const auto& pt : rep.points) {
      const double exact = oracle.evaluate(pt.radius);
      const double gap = std::fabs(pt.estimate.value.mean - exact);
      if (gap > 3.0 * pt.estimate.value.se) ++miss3;
      CHECK(gap <= 5.0 * pt.estimate.value.se);
    }
    CHECK(miss3 <= 1);
  }
  SUBCASE("d = 2 with ten equal terms passes with a wide margin") {
    std::vector<Point> grid;
    for (int k = 0; k < 20; ++k) grid.push_back({k / 20.0, 0.0});
    const auto rep = verify_density_floor(CoefficientVector::equal(10), 2, grid,
                                          200000, RngStream(74, 0));
    CHECK(rep.pass);
    CHECK(rep.min_estimate >= 10.0 * rep.floor);
  }
  SUBCASE("wrong-dimension grid points rejected") {
    CHECK_THROWS_AS(
        verify_density_floor(CoefficientVector::equal(2), 2, {{0.5}}, 5000,
                             RngStream(77, 0)),
        std::domain_error);
  }
  SUBCASE("boundary points are excluded, outside points rejected") {
    const std::vector<Point> grid = {{1.0, 0.0}, {0.5, 0.0}};
    const auto rep = verify_density_floor(CoefficientVector::equal(2), 2, grid,
                                          5000, RngStream(75, 0));
    CHECK(rep.skipped_boundary_points == 1);
    CHECK(rep.points.size() == 1);
    CHECK_THROWS_AS(
        verify_density_floor(CoefficientVector::equal(2), 2, {{1.5, 0.0}}, 5000,
                             RngStream(76, 0)),
        std::domain_error);
  }
}

TEST_CASE("density symmetry and monotonicity in |x|") {
  const auto c = CoefficientVector::equal(4);
  const auto norms1 = spherical_sum_norms(c, 2, 200000, RngStream(81, 0));
  const auto norms2 = spherical_sum_norms(c, 2, 200000, RngStream(81, 1));
  // same radius from independent streams: symmetry in direction is built in,
  // so equal-norm points must agree within combined error
  const auto e1 = density_at_radius(norms1, 2, 0.6);
  const auto e2 = density_at_radius(norms2, 2, 0.6);
  const double comb = std::sqrt(e1.value.se * e1.value.se + e2.value.se * e2.value.se);
  CHECK(std::fabs(e1.value.mean - e2.value.mean) <= 3.0 * comb);
  // monotone nonincreasing in the radius
  double prev = 1e300;
  double prev_se = 0.0;
  for (double r : {0.0, 0.25, 0.5, 0.75, 0.95}) {
    const auto e = density_at_radius(norms1, 2, r);
    const double comb2 = 3.0 * std::sqrt(e.value.se * e.value.se + prev_se * prev_se);
    CHECK(e.value.mean <= prev + comb2);
    prev = e.value.mean;
    prev_se = e.value.se;
  }
}

TEST_CASE("density mass over the radial grid is about one") {
  const auto c = CoefficientVector::equal(3);
  const int d = 2;
  const auto norms = spherical_sum_norms(c, d, 400000, RngStream(82, 0));
  const double rmax = c.abs_sum();
  const int grid_n = 200;
  double mass = 0.0;
  double prev_val = 0.0, prev_r = 0.0;
  for (int k = 0; k <= grid_n; ++k) {
    const double r = rmax * k / grid_n;
    const double pd = density_at_radius(norms, d, r).value.mean;
    const double shell = d * unit_ball_volume(d) * std::pow(r, d - 1);
    const double prev_shell = d * unit_ball_volume(d) * std::pow(prev_r, d - 1);
    if (k > 0) mass += 0.5 * (pd * shell + prev_val * prev_shell) * (r - prev_r);
    prev_val = pd;
    prev_r = r;
  }
  CHECK(std::fabs(mass - 1.0) < 0.02);
}

TEST_CASE("radial identity between sphere and ball sums") {
  SUBCASE("single term is exact") {
    const auto rep = verify_radial_identity(CoefficientVector::equal(1), 3,
                                            {0.25, 0.5, 0.9}, 100000,
                                            RngStream(91, 0));
    CHECK(rep.pass);
    for (const auto& pt : rep.points)
      CHECK(pt.rhs.mean == doctest::Approx(std::pow(pt.r, 3)).epsilon(1e-12));
  }
  SUBCASE("d = 1, two equal terms, exact oracle on the left side") {
    const auto c = CoefficientVector::equal(2);
    const auto oracle = exact_density_1d(c);
    const auto rep = verify_radial_identity(c, 1, {0.25, 0.5, 1.0}, 200000,
                                            RngStream(92, 0));
    CHECK(rep.pass);
    for (const auto& pt : rep.points) {
      const double exact_cdf = oracle.cdf(pt.r) - oracle.cdf(-pt.r);
      CHECK(std::fabs(pt.lhs.mean - exact_cdf) <= 3.5 * pt.lhs.se);
      CHECK(std::fabs(pt.rhs.mean - exact_cdf) <= 3.5 * pt.rhs.se);
    }
  }
  SUBCASE("d = 3 with four random terms") {
    RngStream seed(93, 0);
    const auto c = CoefficientVector::random(4, seed);
    const auto rep = verify_radial_identity(c, 3, {0.25, 0.5, 1.0}, 200000,
                                            RngStream(94, 0));
    CHECK(rep.pass);
  }
  SUBCASE("radii outside the support are rejected") {
    CHECK_THROWS_AS(verify_radial_identity(CoefficientVector::equal(1), 1,
                                           {1.5}, 1000, RngStream(95, 0)),
                    std::domain_error);
  }
}
