#pragma once

#include <cstddef>
#include <vector>

#include "acl/mc.hpp"
#include "acl/rng.hpp"
#include "acl/samplers.hpp"

namespace acl::convexbody {

// Double cone in R^{d+1}:
//   K = { (x, t) : |t| <= lambda2 * d,  |x| <= lambda1 (1 - |t|/(lambda2 d)) }.
struct DoubleConeParams {
  int d = 1;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
};

void validate(const DoubleConeParams& p);

// vol(K) = 2 d w_d lambda1^d lambda2 / (d+1); log-space inside.
double log_cone_volume(const DoubleConeParams& p);
double cone_volume(const DoubleConeParams& p);

// Parameters putting the double cone in isotropic position with unit volume.
struct IsotropicCone {
  int d = 1;
  double lambda1 = 0.0, lambda2 = 0.0, L = 0.0;
  double log_lambda1 = 0.0, log_lambda2 = 0.0, log_L = 0.0;

  DoubleConeParams params() const { return {d, lambda1, lambda2}; }
};

IsotropicCone isotropic_cone(int d);

// vol_d(K ∩ {t}) = w_d lambda1^d (1 - |t|/(lambda2 d))^d for |t| <= lambda2 d.
double cone_section_volume(const DoubleConeParams& p, double t);

// Per-unit-volume second moments of the double cone:
//   axial      E t^2   = 2 lambda2^2 d^2 / ((d+2)(d+3))
//   transverse E x_i^2 = lambda1^2 (d+1) / ((d+2)(d+3))
// (Beta-integral reduction; gated by the rejection-sampling oracle below.)
struct SecondMoments {
  double axial = 0.0;
  double transverse = 0.0;
};
SecondMoments cone_second_moments(const DoubleConeParams& p);

// Rejection sampling inside K from the bounding box; practical for d <= 3.
Point sample_cone_rejection(const DoubleConeParams& p, RngStream& rng);
struct SecondMomentsMc {
  McEstimate axial;
  McEstimate transverse;
};
SecondMomentsMc cone_second_moments_mc(const DoubleConeParams& p, std::size_t n,
                                       const RngStream& rng, int threads = 1);

// L * vol_d(K ∩ {t = L sqrt 3}) for the isotropic cone: the noncentral
// section value at the effective-support edge. Decreases toward
// (1/sqrt 2) e^{-sqrt 6} as d grows.
struct EdgeSectionValue {
  double value = 0.0;
  bool beyond_apex = false;  // L sqrt 3 > lambda2 d (value forced to 0)
};
EdgeSectionValue cone_edge_section_value(int d);

// The d -> infinity limit (1/sqrt 2) e^{-sqrt 6} of the edge section value.
double edge_section_limit();

// Lower bound (1/L_K) (1/sqrt 2) e^{-sqrt 6} for sections of a symmetric
// isotropic convex body with isotropic constant L_K, at distance <= L_K sqrt 3.
double noncentral_lower_bound(double L_K);

struct CubeSectionReport {
  std::size_t sections = 0;
  double min_volume = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// Exact sections of the unit cube [-1/2, 1/2]^d at distances {0, 1/4, 1/2}
// along random directions; every volume must reach sqrt(6) e^{-sqrt 6} - 1e-9.
CubeSectionReport verify_cube_sections(int d, std::size_t n_directions,
                                       RngStream rng);

}  // namespace acl::convexbody
