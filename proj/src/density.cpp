#include "acl/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "acl/special.hpp"

namespace acl::density {

namespace {

constexpr double kClipLevel = 1e6;
constexpr std::size_t kOracleMaxTerms = 30;

}  // namespace

CoefficientVector CoefficientVector::from(std::vector<double> raw) {
  CoefficientVector out;
  for (double v : raw) {
    if (v == 0.0) {
      out.zeros_dropped = true;
      continue;
    }
    if (!std::isfinite(v))
      throw std::domain_error("CoefficientVector: entries must be finite");
    out.a.push_back(v);
  }
  if (out.a.empty())
    throw std::domain_error("CoefficientVector: needs a nonzero entry");
  double s2 = 0.0;
  for (double v : out.a) s2 += v * v;
  out.scale_applied = std::sqrt(s2);
  for (double& v : out.a) v /= out.scale_applied;
  return out;
}

CoefficientVector CoefficientVector::equal(std::size_t n) {
  if (n == 0) throw std::domain_error("CoefficientVector: n must be >= 1");
  return from(std::vector<double>(n, 1.0));
}

CoefficientVector CoefficientVector::random(std::size_t n, RngStream rng) {
  if (n == 0) throw std::domain_error("CoefficientVector: n must be >= 1");
  std::vector<double> raw(n);
  for (auto& v : raw) {
    do {
      v = rng.next_normal();
    } while (v == 0.0);
  }
  return from(std::move(raw));
}

double CoefficientVector::abs_sum() const {
  double s = 0.0;
  for (double v : a) s += std::fabs(v);
  return s;
}

Point spherical_sum_sample(const CoefficientVector& coeffs, int d,
                           RngStream& rng) {
  if (d < 1) throw std::domain_error("spherical_sum_sample: d must be >= 1");
  Point sum(static_cast<std::size_t>(d + 2), 0.0);
  for (double aj : coeffs.a) {
    const Point xi = sample_sphere(d + 2, rng);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += aj * xi[k];
  }
  return sum;
}

namespace {

template <typename DrawNorm>
std::vector<double> norm_batch(std::size_t n, const RngStream& rng, int threads,
                               DrawNorm&& draw) {
  std::vector<double> out(n);
  detail::for_each_chunk(n, threads,
                         [&](std::size_t c, std::size_t offset, std::size_t count) {
                           RngStream sub = rng.substream(c);
                           for (std::size_t i = 0; i < count; ++i)
                             out[offset + i] = draw(sub);
                         });
  return out;
}

}  // namespace

std::vector<double> spherical_sum_norms(const CoefficientVector& coeffs, int d,
                                        std::size_t n, const RngStream& rng,
                                        int threads) {
  return norm_batch(n, rng, threads, [&](RngStream& sub) {
    return norm(spherical_sum_sample(coeffs, d, sub));
  });
}

std::vector<double> ball_sum_norms(const CoefficientVector& coeffs, int d,
                                   std::size_t n, const RngStream& rng,
                                   int threads) {
  return norm_batch(n, rng, threads, [&](RngStream& sub) {
    Point sum(static_cast<std::size_t>(d), 0.0);
    for (double aj : coeffs.a) {
      const Point u = sample_ball_gaussian(d, sub);
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += aj * u[k];
    }
    return norm(sum);
  });
}

DensityEstimate density_at_radius(const std::vector<double>& norms, int d,
                                  double radius) {
  if (radius < 0.0) throw std::domain_error("density_at_radius: radius < 0");
  const double inv_omega = std::exp(-log_unit_ball_volume(d));
  DensityEstimate out;
  const auto n = norms.size();
  // two-pass mean/variance; exact for the degenerate single-term law
  auto estimate = [&](double clip) {
    detail::KahanSum s;
    auto weight = [&](double v) {
      double w = 0.0;
      if (v > radius) w = inv_omega * std::pow(v, -static_cast<double>(d));
      return std::min(w, clip);
    };
    for (double v : norms) s.add(weight(v));
    McEstimate e;
    e.n = n;
    e.mean = s.value() / static_cast<double>(n);
    if (n > 1) {
      detail::KahanSum dev2;
      for (double v : norms) {
        const double delta = weight(v) - e.mean;
        dev2.add(delta * delta);
      }
      e.se = std::sqrt(dev2.value() / static_cast<double>(n - 1) /
                       static_cast<double>(n));
    }
    return e;
  };
  out.value = estimate(std::numeric_limits<double>::infinity());
  out.high_relative_error =
      out.value.mean > 0.0 && out.value.se > 0.1 * out.value.mean;
  if (radius == 0.0) {
    out.clipped = estimate(kClipLevel);
    const double gap = std::fabs(out.value.mean - out.clipped->mean);
    const double comb =
        3.0 * std::sqrt(out.value.se * out.value.se +
                        out.clipped->se * out.clipped->se);
    out.clipped_disagrees = gap > std::max(comb, 1e-12);
  }
  return out;
}

DensityEstimate density_at(const CoefficientVector& coeffs, int d,
                           const Point& x, std::size_t n, const RngStream& rng,
                           int threads) {
  if (static_cast<int>(x.size()) != d)
    throw std::domain_error("density_at: point dimension mismatch");
  const auto norms = spherical_sum_norms(coeffs, d, n, rng, threads);
  return density_at_radius(norms, d, norm(x));
}

PiecewisePolynomial exact_density_1d(const CoefficientVector& coeffs) {
  if (coeffs.size() > kOracleMaxTerms)
    throw std::domain_error("exact_density_1d: n capped at 30");
  std::vector<double> h;
  h.reserve(coeffs.size());
  for (double aj : coeffs.a) h.push_back(std::fabs(aj));
  std::sort(h.begin(), h.end(), std::greater<double>());
  PiecewisePolynomial out = PiecewisePolynomial::uniform_box(h[0]);
  for (std::size_t j = 1; j < h.size(); ++j)
    out = convolve(out, PiecewisePolynomial::uniform_box(h[j]));
  return out;
}

double section_volume_cube(const std::vector<double>& theta, double s) {
  double s2 = 0.0;
  for (double v : theta) s2 += v * v;
  if (std::fabs(std::sqrt(s2) - 1.0) > 1e-10)
    throw std::domain_error("section_volume_cube: theta must be a unit vector");
  std::vector<double> half;
  for (double v : theta)
    if (v != 0.0) half.push_back(0.5 * std::fabs(v));
  // density of sum_j theta_j W_j, W_j uniform on [-1/2, 1/2]
  std::sort(half.begin(), half.end(), std::greater<double>());
  PiecewisePolynomial pw = PiecewisePolynomial::uniform_box(half[0]);
  for (std::size_t j = 1; j < half.size(); ++j)
    pw = convolve(pw, PiecewisePolynomial::uniform_box(half[j]));
  return std::max(0.0, pw.evaluate(s));
}

double norm_tail_bound(int d, double t) {
  if (!(t > 1.0)) throw std::domain_error("norm_tail_bound: t must be > 1");
  const double k = static_cast<double>(d + 2);
  return std::pow(t, k) * std::exp(0.5 * k * (1.0 - t * t));
}

double density_floor_constant(int d) {
  return std::exp(-std::log(100.0) - static_cast<double>(d) * std::log(2.0) -
                  log_unit_ball_volume(d));
}

double density_floor_constant_1d_sharp() {
  const double s6 = std::sqrt(6.0);
  return s6 * std::exp(-s6);
}

namespace {

// The threshold carries a 1e-12 slack: |sum a_j xi_j| equals the threshold
// exactly in the degenerate single-term case and normalization roundoff
// must not split that atom.
McEstimate indicator_mean(const std::vector<double>& values, double threshold) {
  double s = 0.0;
  for (double v : values)
    if (v >= threshold - 1e-12) s += 1.0;
  McEstimate e;
  e.n = values.size();
  e.mean = s / static_cast<double>(e.n);
  if (e.n > 1) {
    const double var = e.mean * (1.0 - e.mean) * static_cast<double>(e.n) /
                       static_cast<double>(e.n - 1);
    e.se = std::sqrt(var / static_cast<double>(e.n));
  }
  return e;
}

}  // namespace

McEstimate unit_norm_lower(const CoefficientVector& coeffs, int d,
                           std::size_t n, const RngStream& rng, int threads) {
  return indicator_mean(spherical_sum_norms(coeffs, d, n, rng, threads), 1.0);
}

McEstimate norm_tail_estimate(const CoefficientVector& coeffs, int d, double t,
                              std::size_t n, const RngStream& rng,
                              int threads) {
  return indicator_mean(spherical_sum_norms(coeffs, d, n, rng, threads), t);
}

FloorReport verify_density_floor(const CoefficientVector& coeffs, int d,
                                 const std::vector<Point>& grid, std::size_t n,
                                 const RngStream& rng, int threads) {
  FloorReport report;
  report.floor = density_floor_constant(d);
  std::vector<double> radii;
  for (const Point& x : grid) {
    if (static_cast<int>(x.size()) != d)
      throw std::domain_error("verify_density_floor: point dimension mismatch");
    const double r = norm(x);
    if (r > 1.0 + 1e-12)
      throw std::domain_error("verify_density_floor: grid point outside ball");
    if (r >= 1.0) {  // the boundary is excluded (degenerate for n = 1)
      ++report.skipped_boundary_points;
      continue;
    }
    radii.push_back(r);
  }
  const auto norms = spherical_sum_norms(coeffs, d, n, rng, threads);
  report.pass = true;
  report.min_estimate = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    FloorPoint pt;
    pt.radius = r;
    pt.estimate = density_at_radius(norms, d, r);
    pt.pass = pt.estimate.value.mean >= report.floor - 3.0 * pt.estimate.value.se;
    report.min_estimate = std::min(report.min_estimate, pt.estimate.value.mean);
    report.pass = report.pass && pt.pass;
    report.points.push_back(std::move(pt));
  }
  return report;
}

RadialIdentityReport verify_radial_identity(const CoefficientVector& coeffs,
                                            int d,
                                            const std::vector<double>& r_grid,
                                            std::size_t n, const RngStream& rng,
                                            int threads) {
  for (double r : r_grid)
    if (!(r > 0.0 && r < coeffs.abs_sum()))
      throw std::domain_error(
          "verify_radial_identity: radii must lie in (0, sum |a_j|)");
  const auto sphere_norms =
      spherical_sum_norms(coeffs, d, n, rng.substream(0), threads);
  const auto ball_norms = ball_sum_norms(coeffs, d, n, rng.substream(1), threads);

  RadialIdentityReport report;
  report.pass = true;
  for (double r : r_grid) {
    RadialIdentityPoint pt;
    pt.r = r;
    // LHS: empirical CDF of the ball-sum norm
    {
      double s = 0.0;
      for (double v : ball_norms)
        if (v <= r) s += 1.0;
      pt.lhs.n = ball_norms.size();
      pt.lhs.mean = s / static_cast<double>(pt.lhs.n);
      const double var = pt.lhs.mean * (1.0 - pt.lhs.mean) *
                         static_cast<double>(pt.lhs.n) /
                         static_cast<double>(pt.lhs.n - 1);
      pt.lhs.se = std::sqrt(var / static_cast<double>(pt.lhs.n));
    }
    // RHS: E[min(r/S, 1)^d] over sphere-sum norms
    {
      detail::KahanSum s, s2;
      for (double v : sphere_norms) {
        const double w = std::pow(std::min(r / v, 1.0), static_cast<double>(d));
        s.add(w);
        s2.add(w * w);
      }
      pt.rhs.n = sphere_norms.size();
      pt.rhs.mean = s.value() / static_cast<double>(pt.rhs.n);
      double var = (s2.value() -
                    static_cast<double>(pt.rhs.n) * pt.rhs.mean * pt.rhs.mean) /
                   static_cast<double>(pt.rhs.n - 1);
      if (var < 0.0) var = 0.0;
      pt.rhs.se = std::sqrt(var / static_cast<double>(pt.rhs.n));
    }
    const double comb = std::sqrt(pt.lhs.se * pt.lhs.se + pt.rhs.se * pt.rhs.se);
    const double sigmas =
        comb > 0.0 ? std::fabs(pt.lhs.mean - pt.rhs.mean) / comb : 0.0;
    pt.pass = std::fabs(pt.lhs.mean - pt.rhs.mean) <= 3.0 * comb;
    report.max_discrepancy_sigmas = std::max(report.max_discrepancy_sigmas, sigmas);
    report.pass = report.pass && pt.pass;
    report.points.push_back(pt);
  }
  return report;
}

}  // namespace acl::density
