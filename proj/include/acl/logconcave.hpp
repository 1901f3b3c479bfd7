#pragma once

#include <vector>

namespace acl::logconcave {

// Parameters of the extremal even log-concave family
//   f(x) = c ( 1_{[0,a]}(|x|) + e^{-(|x|-a)} 1_{(a, a+b]}(|x|) ),
// with unit exponential rate (fixed by scale invariance) and c = 1/(2A)
// chosen so the density integrates to one. b = +infinity selects the pure
// exponential tail and is handled symbolically throughout.
struct ExtremalParams {
  double a = 0.0;
  double b = 0.0;  // may be +infinity

  bool infinite_tail() const;
};

void validate(const ExtremalParams& p);  // a,b >= 0, not both zero

// A = a + 1 - e^{-b}; the density normalizer is c = 1/(2A).
double norm_factor(const ExtremalParams& p);

// I(a,b) = integral_0^b (x+a)^2 e^{-x} dx, in closed form.
double tail_moment(const ExtremalParams& p);

// B = sqrt((a^3 + 3 I)/A) = sigma * sqrt(3); the edge of the effective
// support of the family member.
double edge_radius(const ExtremalParams& p);

double sigma(const ExtremalParams& p);  // standard deviation, B/sqrt(3)

// Density value f(x) of the family member (even in x).
double density_value(const ExtremalParams& p, double x);

// sigma f(sigma sqrt(3)) = (B / (2 sqrt(3) A)) e^{a - B}.
double edge_value(const ExtremalParams& p);

// Slack of the edge inequality in log form:
// h = e^{-b} + psi(A) + psi(sqrt 6) - psi(B); h >= 0 iff
// edge_value >= (1/sqrt 2) e^{-sqrt 6}.
double edge_slack(const ExtremalParams& p);

// sigma f(sigma t0); the scaled density at a fraction t0/sqrt(3) of the
// effective support edge.
double scaled_density_at(const ExtremalParams& p, double t0);

// a + b >= B for every finite-b member (the effective support contains
// [-sigma sqrt 3, sigma sqrt 3]).
bool effective_support_ok(const ExtremalParams& p);

struct MinimizeResult {
  ExtremalParams argmin;
  double value = 0.0;
  bool attained = true;  // true when the reported argmin realizes the value
};

// Global minimum of edge_value over a >= 0, b in [0, +infinity]. The
// infinite-tail branch is searched symbolically alongside the finite grid.
MinimizeResult minimize_edge_value();

// Minimum of scaled_density_at(., t0) over the family, 0 <= t0 <= sqrt(3).
MinimizeResult min_scaled_density_at(double t0);

struct GridCheck {
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  // most negative slack observed
  bool pass = false;
};

// B >= A (hence B >= a and B >= 1 - e^{-b}) over a parameter grid.
GridCheck verify_edge_dominates(const std::vector<double>& a_grid,
                                const std::vector<double>& b_grid);

// b -> edge_slack(a, b) is nonincreasing along an increasing b grid.
GridCheck verify_slack_monotone(double a, const std::vector<double>& b_grid);

// Limit slack h(a, +infinity) >= 0 with equality only at a = 0; the limit
// expression psi(x) + psi(sqrt 6) - psi(sqrt(x^2 + 3 + 2/x)) has positive
// forward differences for x > 1.
GridCheck verify_slack_limit(const std::vector<double>& a_grid);

}  // namespace acl::logconcave
