#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "acl/mc.hpp"
#include "acl/piecewise.hpp"
#include "acl/rng.hpp"
#include "acl/samplers.hpp"

namespace acl::entropy {

// Densities with exact entropy functionals. Point masses sit at the origin
// and only participate in convolution-then-evaluate flows.
struct TractableDensity {
  enum class Kind { UniformBall, PointMass, Piecewise1D, Gaussian };

  Kind kind = Kind::PointMass;
  int d = 1;
  double radius = 1.0;            // UniformBall
  PiecewisePolynomial pw;         // Piecewise1D (d == 1)
  std::vector<double> cov;        // Gaussian, d*d row-major, PSD

  static TractableDensity uniform_ball(int d, double radius);
  static TractableDensity point_mass(int d);
  static TractableDensity piecewise_1d(PiecewisePolynomial pw);
  static TractableDensity gaussian(int d, std::vector<double> cov);

  bool has_density() const { return kind != Kind::PointMass; }
};

// Sum  S = sum_j X_j  with smoothing weights lambda_j, sum lambda_j^2 = 1.
struct SumInstance {
  int d = 1;
  std::vector<TractableDensity> components;
  std::vector<double> lambdas;
};

void validate(const SumInstance& inst);

// sup of the density (the maximum functional M).
double max_functional(const TractableDensity& x);

// Renyi entropy power N_p = e^{2 h_p / d}, p in (1, +inf]; p = +inf gives
// M^{-2/d}. Point masses are unsupported.
double renyi_power(const TractableDensity& x, double p);

// Concentration/maximum identity: Q_X(lambda) = lambda^d w_d M(X + lambda U).
// Errors out when the product exceeds 1 + 1e-9 (a broken M estimate).
double q_from_m(double lambda, double m_smoothed, int d);

// N_inf(X + lambda U) = w_d^{2/d} lambda^2 Q_X(lambda)^{-2/d}.
double ninf_from_q(double lambda, double q, int d);

// Subadditivity constant for Renyi entropy powers of independent sums:
// e^{-1} p^{1/(p-1)}; for p = +inf with d >= 1 given, the dimensional
// constant Gamma(d/2+1)^{2/d} / (d/2+1). d == 0 means "no dimension."
double renyi_epi_constant(double p, int d = 0);

// Constant C_{p,d} in N_p(S + U_0) >= (1/C_{p,d}) sum N_p(X_j + lambda_j U_j):
// exact proof value e (100 2^d)^{2p/(d(p-1))} and the stated bound
// e 2^{(2p/(p-1))(d+7)/d}; exact < stated always.
struct SmoothingConstants {
  double exact = 0.0;
  double stated = 0.0;
};
SmoothingConstants renyi_superadditivity_constants(double p, int d);

struct SuperadditivityReport {
  double lhs = 0.0;      // N_p(S + U_0)
  double rhs = 0.0;      // (1/C) sum_j N_p(X_j + lambda_j U_j)
  double rhs_sum = 0.0;  // sum before dividing by C
  double constant = 0.0;
  bool pass = false;
};

// Both sides of the smoothed-sum superadditivity inequality on exact kinds.
SuperadditivityReport verify_renyi_superadditivity(const SumInstance& inst,
                                                   double p);

struct ConcentrationReport {
  double lhs = 0.0;      // Q_S(lambda), exact or MC lower estimate
  double lhs_se = 0.0;   // 0 when exact
  bool lhs_exact = true;
  double rhs = 0.0;      // the multivariate anti-concentration bound
  bool pass = false;
};

// Q_S(lambda) against
// (2 lambda + 1)^d e^{d/2} 2^{d+7} (sum lambda_j^2 Q_{X_j}(lambda_j)^{-2/d})^{-d/2}
// for normalized lambdas and lambda >= 1.
ConcentrationReport verify_concentration_upper(const SumInstance& inst,
                                               double lambda, std::size_t n,
                                               const RngStream& rng,
                                               int threads = 1);

// Exact Q_X(lambda) for point-mass, uniform-ball and 1-D piecewise kinds.
double exact_concentration(const TractableDensity& x, double lambda);

// Lower estimate of Q_X(lambda) = sup_x P(|X - x| <= lambda): candidate
// centers {0} + 32 samples + mean-shift refinement of the best candidate.
// This estimates the supremum from below, which can only ever make the
// upper-bound checks more demanding.
McEstimate concentration_function(
    const std::function<Point(RngStream&)>& sampler, int d, double lambda,
    std::size_t n, const RngStream& rng);

// Two-sided bounds c^d w_d lambda^d / det(lambda^2/(d+2) I + sum Cov)^{1/2}
// (and the same with C) for the concentration function of a sum of
// independent log-concave vectors. c and C are configurable model constants.
std::pair<double, double> logconcave_concentration_bounds(
    const std::vector<std::vector<double>>& cov_list, double lambda, int d,
    double c, double C);

// Isotropic constant of the uniform density on the unit-volume ball:
// kappa_d = w_d^{-1/d} / sqrt(d+2); always >= 1/12.
double kappa_d(int d);

}  // namespace acl::entropy
