#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "acl/mc.hpp"
#include "acl/piecewise.hpp"
#include "acl/rng.hpp"
#include "acl/samplers.hpp"

namespace acl::density {

// Weights a_1..a_n for the sum  sum_j a_j U_j, normalized so that
// sum a_j^2 = 1. Zero entries are dropped (recorded in zeros_dropped).
struct CoefficientVector {
  std::vector<double> a;
  double scale_applied = 1.0;  // the input was divided by this factor
  bool zeros_dropped = false;

  static CoefficientVector from(std::vector<double> raw);
  static CoefficientVector equal(std::size_t n);
  // n random nonzero coefficients, normalized; deterministic in rng.
  static CoefficientVector random(std::size_t n, RngStream rng);

  std::size_t size() const { return a.size(); }
  double abs_sum() const;
};

// One draw of  sum_j a_j xi_j  with the xi_j i.i.d. uniform on the sphere
// S^{d+1} in R^{d+2}; the result lives in R^{d+2}.
Point spherical_sum_sample(const CoefficientVector& coeffs, int d,
                           RngStream& rng);

// n draws of |sum_j a_j xi_j|, chunk-deterministic in rng.
std::vector<double> spherical_sum_norms(const CoefficientVector& coeffs, int d,
                                        std::size_t n, const RngStream& rng,
                                        int threads = 1);

// n draws of |sum_j a_j U_j| with U_j uniform on B_2^d.
std::vector<double> ball_sum_norms(const CoefficientVector& coeffs, int d,
                                   std::size_t n, const RngStream& rng,
                                   int threads = 1);

struct DensityEstimate {
  McEstimate value;
  bool high_relative_error = false;      // se > 10% of the mean
  std::optional<McEstimate> clipped;     // reported at the origin only
  bool clipped_disagrees = false;
};

// Monte Carlo estimate of the density of sum_j a_j U_j at x via
// p(x) = (1/w_d) E[ |X|^{-d} 1{|X| > |x|} ],  X = sum_j a_j xi_j.
DensityEstimate density_at(const CoefficientVector& coeffs, int d,
                           const Point& x, std::size_t n, const RngStream& rng,
                           int threads = 1);

// Same estimator evaluated from a precomputed batch of |X| samples, so one
// batch serves a whole grid of radii.
DensityEstimate density_at_radius(const std::vector<double>& norms, int d,
                                  double radius);

// Exact density of sum_j a_j U_j with U_j uniform on [-1, 1], by iterated
// exact convolution. Coefficients are canonicalized (sorted |a_j|), so the
// representation is invariant under permutation and sign changes. n <= 30.
PiecewisePolynomial exact_density_1d(const CoefficientVector& coeffs);

// Volume of the hyperplane section [-1/2, 1/2]^d ∩ {<x, theta> = s},
// computed exactly as the density at s of sum_j theta_j W_j with W_j uniform
// on [-1/2, 1/2]. Zero coordinates of theta are dropped exactly.
double section_volume_cube(const std::vector<double>& theta, double s);

// Tail bound t^{d+2} exp((d+2)(1 - t^2)/2) for |sum a_j xi_j|, valid t > 1.
double norm_tail_bound(int d, double t);

// Uniform lower bound 1/(100 * 2^d * w_d) on the density over the unit ball.
double density_floor_constant(int d);
// Sharp replacement in dimension one: sqrt(6) e^{-sqrt(6)}.
double density_floor_constant_1d_sharp();

// P(|sum a_j xi_j| >= 1); the anti-concentration side of the norm bounds.
McEstimate unit_norm_lower(const CoefficientVector& coeffs, int d,
                           std::size_t n, const RngStream& rng,
                           int threads = 1);

// P(|sum a_j xi_j| >= t) for comparison against norm_tail_bound.
McEstimate norm_tail_estimate(const CoefficientVector& coeffs, int d, double t,
                              std::size_t n, const RngStream& rng,
                              int threads = 1);

struct FloorPoint {
  double radius = 0.0;
  DensityEstimate estimate;
  bool pass = false;  // value >= floor - 3 se
};

struct FloorReport {
  double floor = 0.0;
  std::vector<FloorPoint> points;
  std::size_t skipped_boundary_points = 0;  // |x| == 1 exactly, excluded
  double min_estimate = 0.0;
  bool pass = false;
};

// Checks the density lower bound over a grid of points inside the closed
// unit ball (points with |x| = 1 exactly are excluded and counted).
FloorReport verify_density_floor(const CoefficientVector& coeffs, int d,
                                 const std::vector<Point>& grid, std::size_t n,
                                 const RngStream& rng, int threads = 1);

struct RadialIdentityPoint {
  double r = 0.0;
  McEstimate lhs;  // empirical CDF of |sum a_j U_j| at r
  McEstimate rhs;  // E[min(r/S, 1)^d] from |sum a_j xi_j| samples
  bool pass = false;
};

struct RadialIdentityReport {
  std::vector<RadialIdentityPoint> points;
  double max_discrepancy_sigmas = 0.0;
  bool pass = false;
};

// Radial identity between the norm laws of the ball sum and the sphere sum:
// P(|sum a_j U_j| <= r) = E[min(r/|sum a_j xi_j|, 1)^d].
RadialIdentityReport verify_radial_identity(const CoefficientVector& coeffs,
                                            int d,
                                            const std::vector<double>& r_grid,
                                            std::size_t n, const RngStream& rng,
                                            int threads = 1);

}  // namespace acl::density
