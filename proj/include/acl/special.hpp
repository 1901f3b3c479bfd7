#pragma once

#include <functional>

namespace acl {

// log of the volume of the unit Euclidean ball in R^d, d >= 1.
// Kept in log space so d ~ 1000 studies do not overflow/underflow.
double log_unit_ball_volume(int d);

// pi^{d/2} / Gamma(d/2 + 1); relative error <= 1e-12 for d <= 200.
double unit_ball_volume(int d);

// psi(x) = x - 1 - log x for x > 0; nonnegative, zero only at x = 1.
double psi(double x);

// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace acl
