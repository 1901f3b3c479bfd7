#include "acl/logconcave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "acl/special.hpp"

namespace acl::logconcave {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

// (a, u) coordinates with u = 1 - e^{-b} in [0, 1]; u = 1 is the
// infinite-tail branch. Keeps the minimizer's corner at finite coordinates.
ExtremalParams from_exp_coords(double a, double u) {
  ExtremalParams p;
  p.a = std::max(a, 0.0);
  if (u >= 1.0)
    p.b = std::numeric_limits<double>::infinity();
  else
    p.b = -std::log1p(-std::max(u, 0.0));
  return p;
}

}  // namespace

bool ExtremalParams::infinite_tail() const { return std::isinf(b); }

void validate(const ExtremalParams& p) {
  if (!(p.a >= 0.0) || !(p.b >= 0.0))
    throw std::domain_error("ExtremalParams: a, b must be nonnegative");
  if (p.a == 0.0 && p.b == 0.0)
    throw std::domain_error("ExtremalParams: a and b cannot both vanish");
}

double norm_factor(const ExtremalParams& p) {
  validate(p);
  if (p.infinite_tail()) return p.a + 1.0;
  return p.a + 1.0 - std::exp(-p.b);
}

double tail_moment(const ExtremalParams& p) {
  validate(p);
  const double lead = p.a * p.a + 2.0 * p.a + 2.0;
  if (p.infinite_tail()) return lead;
  const double ab = p.a + p.b;
  return lead - std::exp(-p.b) * (ab * ab + 2.0 * ab + 2.0);
}

double edge_radius(const ExtremalParams& p) {
  const double A = norm_factor(p);
  return std::sqrt((p.a * p.a * p.a + 3.0 * tail_moment(p)) / A);
}

double sigma(const ExtremalParams& p) { return edge_radius(p) / kSqrt3; }

double density_value(const ExtremalParams& p, double x) {
  const double c = 0.5 / norm_factor(p);
  const double r = std::fabs(x);
  if (r <= p.a) return c;
  if (p.infinite_tail() || r <= p.a + p.b) return c * std::exp(p.a - r);
  return 0.0;
}

double edge_value(const ExtremalParams& p) {
  const double A = norm_factor(p);
  const double B = edge_radius(p);
  return B / (2.0 * kSqrt3 * A) * std::exp(p.a - B);
}

double edge_slack(const ExtremalParams& p) {
  const double A = norm_factor(p);
  const double B = edge_radius(p);
  if (!(B > 0.0)) throw std::domain_error("edge_slack: undefined at (0, 0)");
  const double eb = p.infinite_tail() ? 0.0 : std::exp(-p.b);
  return eb + psi(A) + psi(kSqrt6) - psi(B);
}

double scaled_density_at(const ExtremalParams& p, double t0) {
  if (!(t0 >= 0.0 && t0 <= kSqrt3 + 1e-12))
    throw std::domain_error("scaled_density_at: t0 must lie in [0, sqrt 3]");
  const double s = sigma(p);
  return s * density_value(p, s * t0);
}

bool effective_support_ok(const ExtremalParams& p) {
  validate(p);
  if (p.infinite_tail()) return true;
  return p.a + p.b >= edge_radius(p) - 1e-12;
}

namespace {

// Nelder-Mead on the (a, u) box [0, a_max] x [0, 1]; small, derivative-free,
// robust at the boundary where the minimizers live.
template <typename F>
void nelder_mead_2d(F&& f, double a_max, std::array<double, 2>& best_x,
                    double& best_f) {
  using Vec = std::array<double, 2>;
  auto clamp = [&](Vec v) {
    v[0] = std::clamp(v[0], 0.0, a_max);
    v[1] = std::clamp(v[1], 0.0, 1.0);
    return v;
  };
  std::array<Vec, 3> xs = {clamp(best_x),
                           clamp({best_x[0] + 0.05 * a_max, best_x[1]}),
                           clamp({best_x[0], best_x[1] - 0.05})};
  if (xs[1] == xs[0]) xs[1] = clamp({best_x[0] - 0.05 * a_max, best_x[1]});
  if (xs[2] == xs[0]) xs[2] = clamp({best_x[0], best_x[1] + 0.05});
  std::array<double, 3> fs = {f(xs[0]), f(xs[1]), f(xs[2])};
  for (int it = 0; it < 400; ++it) {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return fs[i] < fs[j]; });
    const Vec &xl = xs[idx[0]], &xh = xs[idx[2]];
    const double fl = fs[idx[0]], fm = fs[idx[1]], fh = fs[idx[2]];
    if (std::fabs(fh - fl) < 1e-15 * (1.0 + std::fabs(fl))) break;
    const Vec cen = {0.5 * (xs[idx[0]][0] + xs[idx[1]][0]),
                     0.5 * (xs[idx[0]][1] + xs[idx[1]][1])};
    auto blend = [&](double t) {
      return clamp({cen[0] + t * (cen[0] - xh[0]), cen[1] + t * (cen[1] - xh[1])});
    };
    Vec xr = blend(1.0);
    double fr = f(xr);
    if (fr < fl) {
      Vec xe = blend(2.0);
      double fe = f(xe);
      if (fe < fr) {
        xs[idx[2]] = xe;
        fs[idx[2]] = fe;
      } else {
        xs[idx[2]] = xr;
        fs[idx[2]] = fr;
      }
    } else if (fr < fm) {
      xs[idx[2]] = xr;
      fs[idx[2]] = fr;
    } else {
      Vec xc = blend(fr < fh ? 0.5 : -0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fh)) {
        xs[idx[2]] = xc;
        fs[idx[2]] = fc;
      } else {  // shrink toward the best vertex
        for (int k = 0; k < 3; ++k) {
          if (k == idx[0]) continue;
          xs[k] = clamp({0.5 * (xs[k][0] + xl[0]), 0.5 * (xs[k][1] + xl[1])});
          fs[k] = f(xs[k]);
        }
      }
    }
  }
  for (int k = 0; k < 3; ++k) {
    if (fs[k] < best_f) {
      best_f = fs[k];
      best_x = xs[k];
    }
  }
}

template <typename F>
MinimizeResult minimize_over_family(F&& objective) {
  constexpr double kAMax = 10.0;
  constexpr int kGrid = 200;
  auto eval = [&](const std::array<double, 2>& x) {
    const ExtremalParams p = from_exp_coords(x[0], x[1]);
    if (p.a == 0.0 && p.b == 0.0) return std::numeric_limits<double>::infinity();
    return objective(p);
  };
  std::array<double, 2> best_x = {0.0, 0.0};
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double a = kAMax * static_cast<double>(i) / kGrid;
    for (int j = 0; j <= kGrid; ++j) {
      const double u = static_cast<double>(j) / kGrid;  // j == kGrid: b = inf
      const std::array<double, 2> x = {a, u};
      const double v = eval(x);
      if (v < best_f) {
        best_f = v;
        best_x = x;
      }
    }
  }
  nelder_mead_2d(eval, kAMax, best_x, best_f);
  MinimizeResult out;
  out.argmin = from_exp_coords(best_x[0], best_x[1]);
  out.value = best_f;
  out.attained = std::isfinite(best_f);
  if (!out.attained)
    throw std::runtime_error("minimize_over_family: optimizer failed to converge");
  return out;
}

}  // namespace

MinimizeResult minimize_edge_value() {
  return minimize_over_family([](const ExtremalParams& p) { return edge_value(p); });
}

MinimizeResult min_scaled_density_at(double t0) {
  if (!(t0 >= 0.0 && t0 <= kSqrt3 + 1e-12))
    throw std::domain_error("min_scaled_density_at: t0 must lie in [0, sqrt 3]");
  return minimize_over_family([t0](const ExtremalParams& p) {
    const double v = scaled_density_at(p, t0);
    // zero values sit beyond the support edge; treat as infeasible boundary
    return v > 0.0 ? v : std::numeric_limits<double>::infinity();
  });
}

GridCheck verify_edge_dominates(const std::vector<double>& a_grid,
                                const std::vector<double>& b_grid) {
  GridCheck check;
  check.worst_margin = std::numeric_limits<double>::infinity();
  for (double a : a_grid) {
    for (double b : b_grid) {
      const ExtremalParams p{a, b};
      const double A = norm_factor(p);
      const double B = edge_radius(p);
      const double eb = p.infinite_tail() ? 0.0 : std::exp(-p.b);
      const double margin =
          std::min({B - A, B - p.a, B - (1.0 - eb)});
      check.worst_margin = std::min(check.worst_margin, margin);
      ++check.evaluated;
      if (margin < -1e-12) ++check.failures;
    }
  }
  check.pass = check.failures == 0;
  return check;
}

GridCheck verify_slack_monotone(double a, const std::vector<double>& b_grid) {
  if (!(a > 0.0))
    throw std::domain_error("verify_slack_monotone: a must be positive");
  GridCheck check;
  check.worst_margin = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::infinity();
  for (double b : b_grid) {
    const double h = edge_slack({a, b});
    const double margin = prev - h;  // must be >= -1e-10
    if (std::isfinite(prev)) {
      check.worst_margin = std::min(check.worst_margin, margin);
      ++check.evaluated;
      if (margin < -1e-10) ++check.failures;
    }
    prev = h;
  }
  check.pass = check.failures == 0;
  return check;
}

GridCheck verify_slack_limit(const std::vector<double>& a_grid) {
  GridCheck check;
  check.worst_margin = std::numeric_limits<double>::infinity();
  const double inf = std::numeric_limits<double>::infinity();
  for (double a : a_grid) {
    const double h = edge_slack({a, inf});
    ++check.evaluated;
    if (a >= 1e-6) {
      check.worst_margin = std::min(check.worst_margin, h);
      if (!(h > 0.0)) ++check.failures;
    } else {
      check.worst_margin = std::min(check.worst_margin, h);
      if (h < -1e-15) ++check.failures;
    }
  }
  // forward differences of the x-form of the limit slack, x = a + 1 > 1
  auto limit_slack = [](double x) {
    return psi(x) + psi(kSqrt6) - psi(std::sqrt(x * x + 3.0 + 2.0 / x));
  };
  double prev = limit_slack(1.0);
  for (int k = 1; k <= 400; ++k) {
    const double x = 1.0 + 9.0 * static_cast<double>(k) / 400.0;
    const double cur = limit_slack(x);
    ++check.evaluated;
    if (!(cur > prev)) ++check.failures;
    prev = cur;
  }
  check.pass = check.failures == 0;
  return check;
}

}  // namespace acl::logconcave
