#include "acl/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace acl {

double squared_norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double norm(const Point& x) { return std::sqrt(squared_norm(x)); }

Point sample_sphere(int d, RngStream& rng) {
  if (d < 1) throw std::domain_error("sample_sphere: d must be >= 1");
  Point x(static_cast<std::size_t>(d));
  while (true) {
    double s = 0.0;
    for (auto& v : x) {
      v = rng.next_normal();
      s += v * v;
    }
    if (s > 1e-300) {
      const double inv = 1.0 / std::sqrt(s);
      for (auto& v : x) v *= inv;
      return x;
    }
  }
}

Point sample_ball_gaussian(int d, RngStream& rng) {
  if (d < 1) throw std::domain_error("sample_ball_gaussian: d must be >= 1");
  Point x = sample_sphere(d, rng);
  const double r =
      std::pow(rng.next_double(), 1.0 / static_cast<double>(d));
  for (auto& v : x) v *= r;
  return x;
}

Point sample_ball_archimedes(int d, RngStream& rng) {
  if (d < 1) throw std::domain_error("sample_ball_archimedes: d must be >= 1");
  Point x = sample_sphere(d + 2, rng);
  x.resize(static_cast<std::size_t>(d));
  return x;
}

}  // namespace acl
