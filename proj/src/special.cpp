#include "acl/special.hpp"

#include <cmath>
#include <stdexcept>

namespace acl {

double log_unit_ball_volume(int d) {
  if (d < 1) throw std::domain_error("log_unit_ball_volume: d must be >= 1");
  const double half_d = 0.5 * static_cast<double>(d);
  return half_d * std::log(3.141592653589793238462643383279502884) -
         std::lgamma(half_d + 1.0);
}

double unit_ball_volume(int d) { return std::exp(log_unit_ball_volume(d)); }

double psi(double x) {
  if (!(x > 0.0)) throw std::domain_error("psi: x must be positive");
  return x - 1.0 - std::log(x);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace acl
