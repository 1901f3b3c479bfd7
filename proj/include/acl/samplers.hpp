#pragma once

#include <vector>

#include "acl/rng.hpp"

namespace acl {

// A point in R^d. Dimension is fixed by construction site; entries finite.
using Point = std::vector<double>;

double norm(const Point& x);
double squared_norm(const Point& x);

// Uniform point on the unit sphere S^{d-1} in R^d (|result| = 1).
Point sample_sphere(int d, RngStream& rng);

// Uniform point on the closed unit ball B_2^d: normalized Gaussian direction
// scaled by U^{1/d}.
Point sample_ball_gaussian(int d, RngStream& rng);

// Uniform point on B_2^d obtained by projecting a uniform point on
// S^{d+1} in R^{d+2} onto its first d coordinates.
Point sample_ball_archimedes(int d, RngStream& rng);

}  // namespace acl
