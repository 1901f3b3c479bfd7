#include "acl/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "acl/special.hpp"

namespace acl::entropy {

namespace {

const double kE = std::exp(1.0);

bool is_inf_order(double p) { return std::isinf(p); }

void require_order(double p) {
  if (!(p > 1.0))
    throw std::domain_error("Renyi order p must be greater than 1");
}

// Symmetric eigenvalues by cyclic Jacobi; d stays small here.
std::vector<double> symmetric_eigenvalues(std::vector<double> m, int d) {
  auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i * d + j)]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        if (at(i, j) == 0.0) continue;
        const double theta = 0.5 * (at(j, j) - at(i, i)) / at(i, j);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double mik = at(i, k), mjk = at(j, k);
          at(i, k) = c * mik - s * mjk;
          at(j, k) = s * mik + c * mjk;
        }
        for (int k = 0; k < d; ++k) {
          const double mki = at(k, i), mkj = at(k, j);
          at(k, i) = c * mki - s * mkj;
          at(k, j) = s * mki + c * mkj;
        }
      }
    }
  }
  std::vector<double> eig(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) eig[static_cast<std::size_t>(i)] = at(i, i);
  return eig;
}

void require_psd(const std::vector<double>& cov, int d, const char* where) {
  if (cov.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
    throw std::domain_error(std::string(where) + ": covariance size mismatch");
  double scale = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double a = cov[static_cast<std::size_t>(i * d + j)];
      const double b = cov[static_cast<std::size_t>(j * d + i)];
      scale = std::max(scale, std::fabs(a));
      if (std::fabs(a - b) > 1e-10 * std::max(1.0, scale))
        throw std::domain_error(std::string(where) + ": covariance not symmetric");
    }
  const auto eig = symmetric_eigenvalues(cov, d);
  for (double e : eig)
    if (e < -1e-10 * std::max(1.0, scale))
      throw std::domain_error(std::string(where) + ": covariance not PSD");
}

// Cholesky factor (lower) of a positive definite matrix; throws otherwise.
std::vector<double> cholesky(std::vector<double> m, int d, const char* where) {
  auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i * d + j)]; };
  for (int j = 0; j < d; ++j) {
    for (int i = j; i < d; ++i) {
      double s = at(i, j);
      for (int k = 0; k < j; ++k) s -= at(i, k) * at(j, k);
      if (i == j) {
        if (!(s > 0.0))
          throw std::domain_error(std::string(where) + ": matrix not positive definite");
        at(j, j) = std::sqrt(s);
      } else {
        at(i, j) = s / at(j, j);
      }
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) at(i, j) = 0.0;
  return m;
}

double log_det_psd(const std::vector<double>& m, int d, const char* where) {
  const auto chol = cholesky(m, d, where);
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    s += std::log(chol[static_cast<std::size_t>(i * d + i)]);
  return 2.0 * s;
}

}  // namespace

TractableDensity TractableDensity::uniform_ball(int d, double radius) {
  if (d < 1 || !(radius > 0.0))
    throw std::domain_error("uniform_ball: need d >= 1 and radius > 0");
  TractableDensity x;
  x.kind = Kind::UniformBall;
  x.d = d;
  x.radius = radius;
  return x;
}

TractableDensity TractableDensity::point_mass(int d) {
  if (d < 1) throw std::domain_error("point_mass: need d >= 1");
  TractableDensity x;
  x.kind = Kind::PointMass;
  x.d = d;
  return x;
}

TractableDensity TractableDensity::piecewise_1d(PiecewisePolynomial pw) {
  if (pw.empty()) throw std::domain_error("piecewise_1d: empty density");
  TractableDensity x;
  x.kind = Kind::Piecewise1D;
  x.d = 1;
  x.pw = std::move(pw);
  return x;
}

TractableDensity TractableDensity::gaussian(int d, std::vector<double> cov) {
  if (d < 1) throw std::domain_error("gaussian: need d >= 1");
  require_psd(cov, d, "gaussian");
  TractableDensity x;
  x.kind = Kind::Gaussian;
  x.d = d;
  x.cov = std::move(cov);
  return x;
}

void validate(const SumInstance& inst) {
  if (inst.components.empty())
    throw std::domain_error("SumInstance: needs at least one component");
  if (inst.components.size() != inst.lambdas.size())
    throw std::domain_error("SumInstance: components/lambdas size mismatch");
  double s2 = 0.0;
  for (double l : inst.lambdas) {
    if (!(l > 0.0))
      throw std::domain_error("SumInstance: lambdas must be positive");
    s2 += l * l;
  }
  if (std::fabs(s2 - 1.0) > 1e-12)
    throw std::domain_error("SumInstance: sum of lambda_j^2 must equal 1");
  for (const auto& c : inst.components)
    if (c.d != inst.d)
      throw std::domain_error("SumInstance: component dimension mismatch");
}

double max_functional(const TractableDensity& x) {
  switch (x.kind) {
    case TractableDensity::Kind::UniformBall:
      return std::exp(-log_unit_ball_volume(x.d) -
                      static_cast<double>(x.d) * std::log(x.radius));
    case TractableDensity::Kind::Piecewise1D:
      return x.pw.sup();
    case TractableDensity::Kind::Gaussian: {
      const double logdet = log_det_psd(x.cov, x.d, "max_functional");
      return std::exp(-0.5 * (static_cast<double>(x.d) *
                                  std::log(2.0 * 3.141592653589793) +
                              logdet));
    }
    case TractableDensity::Kind::PointMass:
      break;
  }
  throw std::domain_error("max_functional: unsupported kind (point mass)");
}

double renyi_power(const TractableDensity& x, double p) {
  require_order(p);
  const double dd = static_cast<double>(x.d);
  switch (x.kind) {
    case TractableDensity::Kind::UniformBall: {
      // flat density: h_p independent of p
      const double log_vol =
          log_unit_ball_volume(x.d) + dd * std::log(x.radius);
      return std::exp(2.0 * log_vol / dd);
    }
    case TractableDensity::Kind::Gaussian: {
      const double logdet = log_det_psd(x.cov, x.d, "renyi_power");
      const double rate = is_inf_order(p) ? 0.0 : std::log(p) / (p - 1.0);
      return 2.0 * 3.141592653589793 * std::exp(logdet / dd + rate);
    }
    case TractableDensity::Kind::Piecewise1D: {
      if (is_inf_order(p)) {
        const double m = x.pw.sup();
        return 1.0 / (m * m);
      }
      const double integral = x.pw.power_integral(p);
      return std::exp(2.0 / (1.0 - p) * std::log(integral));
    }
    case TractableDensity::Kind::PointMass:
      break;
  }
  throw std::domain_error("renyi_power: unsupported kind (point mass)");
}

double q_from_m(double lambda, double m_smoothed, int d) {
  if (!(lambda > 0.0) || !(m_smoothed > 0.0))
    throw std::domain_error("q_from_m: inputs must be positive");
  const double q = std::exp(static_cast<double>(d) * std::log(lambda) +
                            log_unit_ball_volume(d)) *
                   m_smoothed;
  if (q > 1.0 + 1e-9)
    throw std::runtime_error("q_from_m: lambda^d w_d M exceeds 1; inconsistent M");
  return std::min(q, 1.0);
}

double ninf_from_q(double lambda, double q, int d) {
  if (!(q > 0.0 && q <= 1.0 + 1e-12))
    throw std::domain_error("ninf_from_q: Q must lie in (0, 1]");
  const double dd = static_cast<double>(d);
  return std::exp(2.0 * log_unit_ball_volume(d) / dd) * lambda * lambda *
         std::pow(q, -2.0 / dd);
}

double renyi_epi_constant(double p, int d) {
  require_order(p);
  if (is_inf_order(p)) {
    if (d <= 0) return 1.0 / kE;
    if (d < 2)
      throw std::domain_error(
          "renyi_epi_constant: the dimensional sup-order constant needs d >= 2");
    const double half = 0.5 * static_cast<double>(d);
    return std::exp(std::lgamma(half + 1.0) / half) / (half + 1.0);
  }
  return std::exp(std::log(p) / (p - 1.0)) / kE;
}

SmoothingConstants renyi_superadditivity_constants(double p, int d) {
  require_order(p);
  if (d < 1)
    throw std::domain_error("renyi_superadditivity_constants: d must be >= 1");
  const double dd = static_cast<double>(d);
  const double p_factor = is_inf_order(p) ? 1.0 : p / (p - 1.0);
  const double alpha = 2.0 * p_factor / dd;
  SmoothingConstants c;
  c.exact = std::exp(1.0 + alpha * (std::log(100.0) + dd * std::log(2.0)));
  c.stated = std::exp(1.0 + 2.0 * p_factor * (dd + 7.0) / dd * std::log(2.0));
  return c;
}

namespace {

// Density of X + lambda U for 1-D exact kinds (U uniform on [-1, 1]).
PiecewisePolynomial smoothed_density_1d(const TractableDensity& x,
                                        double lambda) {
  const PiecewisePolynomial ball = PiecewisePolynomial::uniform_box(lambda);
  switch (x.kind) {
    case TractableDensity::Kind::PointMass:
      return ball;
    case TractableDensity::Kind::UniformBall:
      return convolve(PiecewisePolynomial::uniform_box(x.radius), ball);
    case TractableDensity::Kind::Piecewise1D:
      return convolve(x.pw, ball);
    default:
      throw std::domain_error(
          "verify_renyi_superadditivity: unsupported component kind");
  }
}

}  // namespace

SuperadditivityReport verify_renyi_superadditivity(const SumInstance& inst,
                                                   double p) {
  validate(inst);
  require_order(p);
  const double dd = static_cast<double>(inst.d);
  SuperadditivityReport report;
  report.constant = renyi_superadditivity_constants(p, inst.d).stated;

  const bool all_point_masses =
      std::all_of(inst.components.begin(), inst.components.end(),
                  [](const TractableDensity& c) { return !c.has_density(); });

  if (all_point_masses) {
    // S is deterministic: N_p(S + U_0) = N_p(U_0), any dimension.
    report.lhs = std::exp(2.0 * log_unit_ball_volume(inst.d) / dd);
    report.rhs_sum = 0.0;
    for (double l : inst.lambdas)
      report.rhs_sum +=
          std::exp(2.0 * log_unit_ball_volume(inst.d) / dd) * l * l;
  } else {
    if (inst.d != 1)
      throw std::domain_error(
          "verify_renyi_superadditivity: mixed kinds supported only in d = 1");
    PiecewisePolynomial sum_density;
    bool have = false;
    for (const auto& c : inst.components) {
      if (!c.has_density()) continue;  // point mass at 0 shifts by nothing
      PiecewisePolynomial piece =
          c.kind == TractableDensity::Kind::UniformBall
              ? PiecewisePolynomial::uniform_box(c.radius)
              : c.pw;
      if (c.kind == TractableDensity::Kind::Gaussian)
        throw std::domain_error(
            "verify_renyi_superadditivity: gaussian components unsupported");
      sum_density = have ? convolve(sum_density, piece) : piece;
      have = true;
    }
    const PiecewisePolynomial lhs_density =
        convolve(sum_density, PiecewisePolynomial::uniform_box(1.0));
    report.lhs = renyi_power(TractableDensity::piecewise_1d(lhs_density), p);
    report.rhs_sum = 0.0;
    for (std::size_t j = 0; j < inst.components.size(); ++j) {
      const auto smoothed =
          smoothed_density_1d(inst.components[j], inst.lambdas[j]);
      report.rhs_sum +=
          renyi_power(TractableDensity::piecewise_1d(smoothed), p);
    }
  }
  report.rhs = report.rhs_sum / report.constant;
  report.pass = report.lhs >= report.rhs - 1e-10;
  return report;
}

double exact_concentration(const TractableDensity& x, double lambda) {
  if (!(lambda > 0.0))
    throw std::domain_error("exact_concentration: lambda must be positive");
  switch (x.kind) {
    case TractableDensity::Kind::PointMass:
      return 1.0;
    case TractableDensity::Kind::UniformBall: {
      if (lambda >= x.radius) return 1.0;
      return std::exp(static_cast<double>(x.d) *
                      (std::log(lambda) - std::log(x.radius)));
    }
    case TractableDensity::Kind::Piecewise1D:
      return sup_window_probability(x.pw, lambda);
    case TractableDensity::Kind::Gaussian:
      break;
  }
  throw std::domain_error("exact_concentration: no exact value for this kind");
}

namespace {

Point sample_component(const TractableDensity& x, RngStream& rng,
                       const std::vector<double>* chol) {
  switch (x.kind) {
    case TractableDensity::Kind::PointMass:
      return Point(static_cast<std::size_t>(x.d), 0.0);
    case TractableDensity::Kind::UniformBall: {
      Point u = sample_ball_gaussian(x.d, rng);
      for (auto& v : u) v *= x.radius;
      return u;
    }
    case TractableDensity::Kind::Piecewise1D: {
      double q = rng.next_double();
      if (q <= 0.0) q = 0x1.0p-53;
      return Point{x.pw.inverse_cdf(q)};
    }
    case TractableDensity::Kind::Gaussian: {
      Point z(static_cast<std::size_t>(x.d));
      for (auto& v : z) v = rng.next_normal();
      Point out(static_cast<std::size_t>(x.d), 0.0);
      for (int i = 0; i < x.d; ++i)
        for (int j = 0; j <= i; ++j)
          out[static_cast<std::size_t>(i)] +=
              (*chol)[static_cast<std::size_t>(i * x.d + j)] *
              z[static_cast<std::size_t>(j)];
      return out;
    }
  }
  throw std::logic_error("sample_component: unreachable");
}

}  // namespace

McEstimate concentration_function(
    const std::function<Point(RngStream&)>& sampler, int d, double lambda,
    std::size_t n, const RngStream& rng) {
  if (!(lambda > 0.0))
    throw std::domain_error("concentration_function: lambda must be positive");
  if (n < 2) throw std::domain_error("concentration_function: n must be >= 2");
  std::vector<double> samples(n * static_cast<std::size_t>(d));
  detail::for_each_chunk(
      n, 1, [&](std::size_t c, std::size_t offset, std::size_t count) {
        RngStream sub = rng.substream(c);
        for (std::size_t i = 0; i < count; ++i) {
          const Point x = sampler(sub);
          if (static_cast<int>(x.size()) != d)
            throw std::domain_error("concentration_function: dimension mismatch");
          std::copy(x.begin(), x.end(),
                    samples.begin() +
                        static_cast<std::ptrdiff_t>((offset + i) * d));
        }
      });

  const double lam2 = lambda * lambda;
  auto count_within = [&](const std::vector<double>& center) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = samples.data() + i * static_cast<std::size_t>(d);
      for (int k = 0; k < d; ++k) {
        const double delta = row[k] - center[static_cast<std::size_t>(k)];
        s += delta * delta;
      }
      if (s <= lam2) ++hits;
    }
    return hits;
  };

  std::vector<std::vector<double>> candidates;
  candidates.emplace_back(static_cast<std::size_t>(d), 0.0);
  for (std::size_t i = 0; i < std::min<std::size_t>(32, n); ++i) {
    candidates.emplace_back(
        samples.begin() + static_cast<std::ptrdiff_t>(i * d),
        samples.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }
  std::size_t best_hits = 0;
  std::vector<double> best = candidates.front();
  for (const auto& c : candidates) {
    const std::size_t hits = count_within(c);
    if (hits > best_hits) {
      best_hits = hits;
      best = c;
    }
  }
  // local mean-shift refinement of the best candidate
  for (int iter = 0; iter < 3; ++iter) {
    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = samples.data() + i * static_cast<std::size_t>(d);
      for (int k = 0; k < d; ++k) {
        const double delta = row[k] - best[static_cast<std::size_t>(k)];
        s += delta * delta;
      }
      if (s <= lam2) {
        ++inside;
        for (int k = 0; k < d; ++k) mean[static_cast<std::size_t>(k)] += row[k];
      }
    }
    if (inside == 0) break;
    for (auto& v : mean) v /= static_cast<double>(inside);
    const std::size_t hits = count_within(mean);
    if (hits > best_hits) {
      best_hits = hits;
      best = mean;
    } else {
      break;
    }
  }
  McEstimate est;
  est.n = n;
  est.mean = static_cast<double>(best_hits) / static_cast<double>(n);
  const double var = est.mean * (1.0 - est.mean) * static_cast<double>(n) /
                     static_cast<double>(n - 1);
  est.se = std::sqrt(var / static_cast<double>(n));
  return est;
}

ConcentrationReport verify_concentration_upper(const SumInstance& inst,
                                               double lambda, std::size_t n,
                                               const RngStream& rng,
                                               int threads) {
  validate(inst);
  (void)threads;
  if (!(lambda >= 1.0))
    throw std::domain_error(
        "verify_concentration_upper: lambda must be >= (sum lambda_j^2)^{1/2} = 1");
  const double dd = static_cast<double>(inst.d);
  ConcentrationReport report;

  // RHS: Q_j exactly where possible, MC lower estimates otherwise (a lower
  // estimate only makes the bound smaller, never easier).
  double sum_term = 0.0;
  for (std::size_t j = 0; j < inst.components.size(); ++j) {
    const auto& c = inst.components[j];
    double qj;
    if (c.kind == TractableDensity::Kind::Gaussian) {
      std::vector<double> chol = cholesky(c.cov, c.d, "verify_concentration_upper");
      qj = concentration_function(
               [&](RngStream& sub) { return sample_component(c, sub, &chol); },
               inst.d, inst.lambdas[j], std::min<std::size_t>(n, 200000),
               rng.substream(1000 + j))
               .mean;
    } else {
      qj = exact_concentration(c, inst.lambdas[j]);
    }
    sum_term += inst.lambdas[j] * inst.lambdas[j] * std::pow(qj, -2.0 / dd);
  }
  report.rhs = std::exp(dd * std::log(2.0 * lambda + 1.0) + 0.5 * dd +
                        (dd + 7.0) * std::log(2.0) - 0.5 * dd * std::log(sum_term));

  // LHS: exact in d = 1 for exact kinds, exact for deterministic sums,
  // otherwise an MC lower estimate.
  const bool all_point_masses =
      std::all_of(inst.components.begin(), inst.components.end(),
                  [](const TractableDensity& c) { return !c.has_density(); });
  const bool exact_1d =
      inst.d == 1 &&
      std::all_of(inst.components.begin(), inst.components.end(),
                  [](const TractableDensity& c) {
                    return c.kind != TractableDensity::Kind::Gaussian;
                  });
  if (all_point_masses) {
    report.lhs = 1.0;
  } else if (exact_1d) {
    PiecewisePolynomial sum_density;
    bool have = false;
    for (const auto& c : inst.components) {
      if (!c.has_density()) continue;
      PiecewisePolynomial piece =
          c.kind == TractableDensity::Kind::UniformBall
              ? PiecewisePolynomial::uniform_box(c.radius)
              : c.pw;
      sum_density = have ? convolve(sum_density, piece) : piece;
      have = true;
    }
    report.lhs = sup_window_probability(sum_density, lambda);
  } else {
    std::vector<std::vector<double>> chols(inst.components.size());
    for (std::size_t j = 0; j < inst.components.size(); ++j)
      if (inst.components[j].kind == TractableDensity::Kind::Gaussian)
        chols[j] = cholesky(inst.components[j].cov, inst.d,
                            "verify_concentration_upper");
    auto sum_sampler = [&](RngStream& sub) {
      Point s(static_cast<std::size_t>(inst.d), 0.0);
      for (std::size_t j = 0; j < inst.components.size(); ++j) {
        const Point xj = sample_component(inst.components[j], sub, &chols[j]);
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += xj[k];
      }
      return s;
    };
    const McEstimate q =
        concentration_function(sum_sampler, inst.d, lambda, n, rng.substream(1));
    report.lhs = q.mean;
    report.lhs_se = q.se;
    report.lhs_exact = false;
  }
  report.pass = report.lhs <= report.rhs + 3.0 * report.lhs_se;
  return report;
}

std::pair<double, double> logconcave_concentration_bounds(
    const std::vector<std::vector<double>>& cov_list, double lambda, int d,
    double c, double C) {
  if (!(lambda > 0.0))
    throw std::domain_error(
        "logconcave_concentration_bounds: lambda must be positive");
  if (!(c > 0.0 && C > 0.0))
    throw std::domain_error(
        "logconcave_concentration_bounds: constants must be positive");
  std::vector<double> total(static_cast<std::size_t>(d) *
                                static_cast<std::size_t>(d),
                            0.0);
  const double diag = lambda * lambda / static_cast<double>(d + 2);
  for (int i = 0; i < d; ++i)
    total[static_cast<std::size_t>(i * d + i)] = diag;
  for (const auto& cov : cov_list) {
    require_psd(cov, d, "logconcave_concentration_bounds");
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += cov[k];
  }
  const double logdet = log_det_psd(total, d, "logconcave_concentration_bounds");
  const double dd = static_cast<double>(d);
  const double base =
      log_unit_ball_volume(d) + dd * std::log(lambda) - 0.5 * logdet;
  return {std::exp(dd * std::log(c) + base), std::exp(dd * std::log(C) + base)};
}

double kappa_d(int d) {
  if (d < 1) throw std::domain_error("kappa_d: d must be >= 1");
  const double dd = static_cast<double>(d);
  return std::exp(-log_unit_ball_volume(d) / dd) / std::sqrt(dd + 2.0);
}

}  // namespace acl::entropy
