#include "acl/convexbody.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "acl/density.hpp"
#include "acl/samplers.hpp"
#include "acl/special.hpp"

namespace acl::convexbody {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

void validate(const DoubleConeParams& p) {
  if (p.d < 1) throw std::domain_error("DoubleConeParams: d must be >= 1");
  if (!(p.lambda1 > 0.0) || !(p.lambda2 > 0.0))
    throw std::domain_error("DoubleConeParams: lambdas must be positive");
}

double log_cone_volume(const DoubleConeParams& p) {
  validate(p);
  const double d = static_cast<double>(p.d);
  return std::log(2.0) + std::log(d) + log_unit_ball_volume(p.d) +
         d * std::log(p.lambda1) + std::log(p.lambda2) - std::log(d + 1.0);
}

double cone_volume(const DoubleConeParams& p) {
  return std::exp(log_cone_volume(p));
}

IsotropicCone isotropic_cone(int d) {
  if (d < 1) throw std::domain_error("isotropic_cone: d must be >= 1");
  const double dd = static_cast<double>(d);
  IsotropicCone c;
  c.d = d;
  c.log_L = (1.0 / (2.0 * (dd + 1.0))) *
            ((dd + 2.0) * std::log(dd + 1.0) - std::log(2.0) -
             (dd + 1.0) * std::log((dd + 3.0) * (dd + 2.0)) -
             2.0 * log_unit_ball_volume(d));
  c.log_lambda1 =
      c.log_L + 0.5 * (std::log(dd + 2.0) + std::log(dd + 3.0) - std::log(dd + 1.0));
  c.log_lambda2 = c.log_L +
                  0.5 * (std::log(dd + 2.0) + std::log(dd + 3.0) - std::log(2.0)) -
                  std::log(dd);
  c.L = std::exp(c.log_L);
  c.lambda1 = std::exp(c.log_lambda1);
  c.lambda2 = std::exp(c.log_lambda2);
  return c;
}

double cone_section_volume(const DoubleConeParams& p, double t) {
  validate(p);
  const double d = static_cast<double>(p.d);
  const double half_height = p.lambda2 * d;
  const double at = std::fabs(t);
  if (at >= half_height) return 0.0;
  const double log_vol = log_unit_ball_volume(p.d) + d * std::log(p.lambda1) +
                         d * std::log1p(-at / half_height);
  return std::exp(log_vol);
}

SecondMoments cone_second_moments(const DoubleConeParams& p) {
  validate(p);
  const double d = static_cast<double>(p.d);
  SecondMoments m;
  m.axial = 2.0 * p.lambda2 * p.lambda2 * d * d / ((d + 2.0) * (d + 3.0));
  m.transverse = p.lambda1 * p.lambda1 * (d + 1.0) / ((d + 2.0) * (d + 3.0));
  return m;
}

Point sample_cone_rejection(const DoubleConeParams& p, RngStream& rng) {
  validate(p);
  const double half_height = p.lambda2 * static_cast<double>(p.d);
  while (true) {
    Point x(static_cast<std::size_t>(p.d) + 1);
    for (std::size_t k = 0; k + 1 < x.size(); ++k)
      x[k] = p.lambda1 * (2.0 * rng.next_double() - 1.0);
    x.back() = half_height * (2.0 * rng.next_double() - 1.0);
    double s2 = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) s2 += x[k] * x[k];
    const double rad = p.lambda1 * (1.0 - std::fabs(x.back()) / half_height);
    if (s2 <= rad * rad) return x;
  }
}

SecondMomentsMc cone_second_moments_mc(const DoubleConeParams& p, std::size_t n,
                                       const RngStream& rng, int threads) {
  auto sampler = [&p](RngStream& sub) { return sample_cone_rejection(p, sub); };
  SecondMomentsMc out;
  out.axial = mc_mean([](const Point& x) { return x.back() * x.back(); },
                      sampler, n, rng.substream(0), threads);
  out.transverse = mc_mean([](const Point& x) { return x[0] * x[0]; }, sampler,
                           n, rng.substream(1), threads);
  return out;
}

EdgeSectionValue cone_edge_section_value(int d) {
  const IsotropicCone c = isotropic_cone(d);
  const double dd = static_cast<double>(d);
  EdgeSectionValue out;
  const double ratio = std::exp(c.log_L - c.log_lambda2) * kSqrt3 / dd;
  if (ratio >= 1.0) {
    out.beyond_apex = true;
    out.value = 0.0;
    return out;
  }
  // L vol_d(K ∩ {t = L sqrt 3}) = sqrt((d+1)^2 / (2(d+2)(d+3))) (1 - ratio)^d
  const double log_prefactor =
      std::log(dd + 1.0) - 0.5 * (std::log(2.0) + std::log(dd + 2.0) + std::log(dd + 3.0));
  out.value = std::exp(log_prefactor + dd * std::log1p(-ratio));
  return out;
}

double edge_section_limit() {
  return std::exp(-std::sqrt(6.0)) / std::sqrt(2.0);
}

double noncentral_lower_bound(double L_K) {
  if (!(L_K > 0.0))
    throw std::domain_error("noncentral_lower_bound: L_K must be positive");
  return edge_section_limit() / L_K;
}

CubeSectionReport verify_cube_sections(int d, std::size_t n_directions,
                                       RngStream rng) {
  if (d < 2 || d > 30)
    throw std::domain_error("verify_cube_sections: d must lie in [2, 30]");
  CubeSectionReport report;
  report.bound = density::density_floor_constant_1d_sharp() - 1e-9;
  report.min_volume = std::numeric_limits<double>::infinity();
  report.pass = true;
  const double distances[] = {0.0, 0.25, 0.5};
  for (std::size_t i = 0; i < n_directions; ++i) {
    const Point theta = sample_sphere(d, rng);
    for (double s : distances) {
      const double vol = density::section_volume_cube(theta, s);
      report.min_volume = std::min(report.min_volume, vol);
      ++report.sections;
      if (vol < report.bound) report.pass = false;
    }
  }
  return report;
}

}  // namespace acl::convexbody
