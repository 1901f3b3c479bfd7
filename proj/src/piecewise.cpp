#include "acl/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acl/special.hpp"

namespace acl {

namespace {

constexpr double kBreakpointMergeTol = 1e-14;
constexpr int kMaxPascal = 128;

// Pascal triangle, built once; degrees stay small (n is capped upstream).
double binom(int n, int k) {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t;
    t.reserve(kMaxPascal + 1);
    t.push_back({1.0});
    for (int row = 1; row <= kMaxPascal; ++row) {
      const auto& prev = t.back();
      std::vector<double> r(static_cast<std::size_t>(row) + 1, 1.0);
      for (std::size_t i = 1; i + 1 < r.size(); ++i) r[i] = prev[i - 1] + prev[i];
      t.push_back(std::move(r));
    }
    return t;
  }();
  if (n > kMaxPascal)
    throw std::domain_error("binom: polynomial degree limit exceeded");
  if (k < 0 || k > n) return 0.0;
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::constant(double c) {
  return Polynomial(std::vector<double>{c});
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::eval(double u) const {
  double r = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * u + c_[i];
  return r;
}

int Polynomial::degree() const { return static_cast<int>(c_.size()) - 1; }

Polynomial Polynomial::shifted(double s) const {
  if (c_.empty() || s == 0.0) return *this;
  const int n = degree();
  std::vector<double> out(c_.size(), 0.0);
  std::vector<double> s_pow(c_.size(), 1.0);
  for (std::size_t p = 1; p < s_pow.size(); ++p) s_pow[p] = s_pow[p - 1] * s;
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= k; ++j) {
      out[static_cast<std::size_t>(j)] +=
          c_[static_cast<std::size_t>(k)] * binom(k, j) *
          s_pow[static_cast<std::size_t>(k - j)];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<double> out(c_.size() + 1, 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k)
    out[k + 1] = c_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> out(c_.size() - 1, 0.0);
  for (std::size_t k = 1; k < c_.size(); ++k)
    out[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(double k) const {
  std::vector<double> out = c_;
  for (auto& v : out) v *= k;
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) {
  a += b;
  return a;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + b.scaled(-1.0);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(out));
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<Polynomial> pieces)
    : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (bp_.size() != pieces_.size() + 1 || pieces_.empty())
    throw std::invalid_argument("PiecewisePolynomial: size mismatch");
  for (std::size_t i = 0; i + 1 < bp_.size(); ++i)
    if (!(bp_[i] < bp_[i + 1]))
      throw std::invalid_argument(
          "PiecewisePolynomial: breakpoints must be strictly increasing");
  finalize();
}

PiecewisePolynomial PiecewisePolynomial::box(double lo, double hi,
                                             double value) {
  return PiecewisePolynomial({lo, hi}, {Polynomial::constant(value)});
}

PiecewisePolynomial PiecewisePolynomial::uniform_box(double halfwidth) {
  if (!(halfwidth > 0.0))
    throw std::domain_error("uniform_box: halfwidth must be positive");
  return box(-halfwidth, halfwidth, 0.5 / halfwidth);
}

void PiecewisePolynomial::finalize() {
  prefix_mass_.assign(pieces_.size() + 1, 0.0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double w = bp_[i + 1] - bp_[i];
    prefix_mass_[i + 1] = prefix_mass_[i] + pieces_[i].antiderivative().eval(w);
  }
}

double PiecewisePolynomial::evaluate(double x) const {
  if (pieces_.empty() || x < bp_.front() || x > bp_.back()) return 0.0;
  // Piece index: last i with bp_[i] <= x, clamped so x == support_max uses
  // the final piece (left limit).
  auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - bp_.begin());
  if (i == 0) return 0.0;
  i -= 1;
  if (i >= pieces_.size()) i = pieces_.size() - 1;
  return pieces_[i].eval(x - bp_[i]);
}

double PiecewisePolynomial::mass() const {
  return pieces_.empty() ? 0.0 : prefix_mass_.back();
}

double PiecewisePolynomial::cdf(double x) const {
  if (pieces_.empty() || x <= bp_.front()) return 0.0;
  if (x >= bp_.back()) return prefix_mass_.back();
  auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - bp_.begin()) - 1;
  if (i >= pieces_.size()) i = pieces_.size() - 1;
  return prefix_mass_[i] + pieces_[i].antiderivative().eval(x - bp_[i]);
}

double PiecewisePolynomial::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    // integral of (u + b) f(u) du over the piece, u local
    const double w = bp_[i + 1] - bp_[i];
    const Polynomial u({0.0, 1.0});
    const Polynomial integrand = (u + Polynomial::constant(bp_[i])) * pieces_[i];
    m += integrand.antiderivative().eval(w);
  }
  return m;
}

double PiecewisePolynomial::second_moment() const {
  double m = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double w = bp_[i + 1] - bp_[i];
    const Polynomial xg({bp_[i], 1.0});  // x = u + b_i
    const Polynomial integrand = xg * xg * pieces_[i];
    m += integrand.antiderivative().eval(w);
  }
  return m;
}

namespace {

// Max of polynomial p over [0, w]: endpoints plus derivative sign changes
// located by scan + bisection.
void piece_max(const Polynomial& p, double w, double base, double& best,
               double& best_arg) {
  auto consider = [&](double u) {
    const double v = p.eval(u);
    if (v > best) {
      best = v;
      best_arg = base + u;
    }
  };
  consider(0.0);
  consider(w);
  const Polynomial dp = p.derivative();
  if (dp.degree() <= 0) return;  // constant or monotone piece
  constexpr int kScan = 33;
  double prev_u = 0.0;
  double prev_d = dp.eval(0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double u = w * static_cast<double>(k) / kScan;
    const double dv = dp.eval(u);
    if ((prev_d > 0.0 && dv < 0.0) || (prev_d < 0.0 && dv > 0.0) ||
        prev_d == 0.0) {
      double lo = prev_u, hi = u, flo = prev_d;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = dp.eval(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      consider(0.5 * (lo + hi));
    }
    prev_u = u;
    prev_d = dv;
  }
}

}  // namespace

double PiecewisePolynomial::sup() const {
  double best = 0.0, arg = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    piece_max(pieces_[i], bp_[i + 1] - bp_[i], bp_[i], best, arg);
  return best;
}

double PiecewisePolynomial::sup_arg() const {
  double best = 0.0, arg = bp_.empty() ? 0.0 : bp_.front();
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    piece_max(pieces_[i], bp_[i + 1] - bp_[i], bp_[i], best, arg);
  return arg;
}

double PiecewisePolynomial::power_integral(double p) const {
  if (!(p > 0.0)) throw std::domain_error("power_integral: p must be > 0");
  double total = 0.0;
  const bool integer_p = p == std::floor(p) && p <= 16.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double w = bp_[i + 1] - bp_[i];
    if (integer_p) {
      Polynomial pow = Polynomial::constant(1.0);
      for (int k = 0; k < static_cast<int>(p); ++k) pow = pow * pieces_[i];
      total += pow.antiderivative().eval(w);
    } else {
      const Polynomial& piece = pieces_[i];
      total += adaptive_simpson(
          [&](double u) {
            const double v = piece.eval(u);
            return v > 0.0 ? std::pow(v, p) : 0.0;
          },
          0.0, w, 1e-12);
    }
  }
  return total;
}

double PiecewisePolynomial::inverse_cdf(double q) const {
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("inverse_cdf: q must lie in (0,1)");
  const double target = q * mass();
  double lo = support_min(), hi = support_max();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double PiecewisePolynomial::max_interior_jump() const {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const double left = pieces_[i].eval(bp_[i + 1] - bp_[i]);
    const double right = pieces_[i + 1].eval(0.0);
    worst = std::max(worst, std::fabs(left - right));
  }
  return worst;
}

PiecewisePolynomial PiecewisePolynomial::assemble(
    std::vector<Contribution> contribs) {
  if (contribs.size() > (std::size_t{1} << 22))
    throw std::domain_error("convolve: piecewise representation too large");
  std::vector<double> cuts;
  cuts.reserve(contribs.size() * 2);
  for (const auto& c : contribs) {
    cuts.push_back(c.lo);
    cuts.push_back(c.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> grid;
  std::size_t merged = 0;
  for (double c : cuts) {
    if (!grid.empty() && c - grid.back() < kBreakpointMergeTol) {
      ++merged;
      continue;
    }
    grid.push_back(c);
  }
  if (grid.size() < 2)
    throw std::invalid_argument("assemble: degenerate support");

  std::vector<Polynomial> pieces(grid.size() - 1);
  for (const auto& c : contribs) {
    // cells whose midpoint falls inside [lo, hi]
    const auto first =
        std::lower_bound(grid.begin(), grid.end(), c.lo - kBreakpointMergeTol);
    for (auto it = first; it + 1 != grid.end() && *it < c.hi - kBreakpointMergeTol;
         ++it) {
      const std::size_t cell = static_cast<std::size_t>(it - grid.begin());
      const double mid = 0.5 * (grid[cell] + grid[cell + 1]);
      if (mid < c.lo || mid > c.hi) continue;
      pieces[cell] += c.poly.shifted(grid[cell] - c.lo);
    }
  }
  PiecewisePolynomial out(std::move(grid), std::move(pieces));
  out.merged_ = merged;
  return out;
}

namespace {

// Convolution of two canonical pieces p on [0, wf] and q on [0, wg].
// A(tau; y) = antiderivative in tau of p(tau) q(y - tau) is a polynomial in
// tau whose coefficients are polynomials in y; the three sub-intervals of
// [0, wf + wg] substitute constant or linear-in-y limits into it.
struct PieceConv {
  std::vector<Polynomial> s;  // A(tau; y) = sum_t s[t](y) * tau^{t+1}

  PieceConv(const Polynomial& p, const Polynomial& q) {
    const auto& pc = p.coeffs();
    const auto& qc = q.coeffs();
    if (pc.empty() || qc.empty()) return;  // zero piece, no contribution
    // q(y - tau) = sum_m Qm(y) tau^m,
    // Qm(y) = (-1)^m sum_{k >= m} q_k C(k, m) y^{k-m}
    std::vector<Polynomial> Q(qc.size());
    for (std::size_t m = 0; m < qc.size(); ++m) {
      std::vector<double> coef(qc.size() - m, 0.0);
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      for (std::size_t k = m; k < qc.size(); ++k)
        coef[k - m] = sign * qc[k] *
                      binom(static_cast<int>(k), static_cast<int>(m));
      Q[m] = Polynomial(std::move(coef));
    }
    // R_t(y) = sum_{j + m = t} p_j Q_m(y); s[t] = R_t / (t + 1)
    const std::size_t deg_t = pc.size() + qc.size() - 1;
    s.assign(deg_t, Polynomial{});
    for (std::size_t j = 0; j < pc.size(); ++j)
      for (std::size_t m = 0; m < qc.size(); ++m)
        s[j + m] += Q[m].scaled(pc[j]);
    for (std::size_t t = 0; t < s.size(); ++t)
      s[t] = s[t].scaled(1.0 / static_cast<double>(t + 1));
  }

  // A evaluated at tau = const c: polynomial in y.
  Polynomial at_const(double c) const {
    Polynomial out;
    double cp = c;
    for (std::size_t t = 0; t < s.size(); ++t) {
      cp *= (t == 0) ? 1.0 : c;  // cp = c^{t+1}
      out += s[t].scaled(cp);
    }
    return out;
  }

  // A evaluated at tau = y + shift: polynomial in y.
  Polynomial at_linear(double shift) const {
    Polynomial out;
    Polynomial lin({shift, 1.0});
    Polynomial lin_pow = lin;  // (y + shift)^{t+1}
    for (std::size_t t = 0; t < s.size(); ++t) {
      out += s[t] * lin_pow;
      lin_pow = lin_pow * lin;
    }
    return out;
  }
};

}  // namespace

PiecewisePolynomial convolve(const PiecewisePolynomial& f,
                             const PiecewisePolynomial& g) {
  if (f.empty() || g.empty())
    throw std::invalid_argument("convolve: empty operand");
  std::vector<PiecewisePolynomial::Contribution> contribs;
  for (std::size_t i = 0; i < f.pieces_.size(); ++i) {
    const double wf = f.bp_[i + 1] - f.bp_[i];
    if (f.pieces_[i].degree() < 0) continue;
    for (std::size_t j = 0; j < g.pieces_.size(); ++j) {
      const double wg = g.bp_[j + 1] - g.bp_[j];
      if (g.pieces_[j].degree() < 0) continue;
      const double base = f.bp_[i] + g.bp_[j];
      const PieceConv conv(f.pieces_[i], g.pieces_[j]);
      const double w1 = std::min(wf, wg);
      const double w2 = std::max(wf, wg);
      // [0, w1]: tau in [0, y]
      if (w1 > 0.0) {
        Polynomial p1 = conv.at_linear(0.0);
        contribs.push_back({base, base + w1, p1});
      }
      // [w1, w2]
      if (w2 > w1) {
        Polynomial p2 = (wf <= wg)
                            ? conv.at_const(wf)                      // tau in [0, wf]
                            : conv.at_linear(0.0) - conv.at_linear(-wg);  // [y-wg, y]
        contribs.push_back({base + w1, base + w2, p2.shifted(w1)});
      }
      // [w2, wf + wg]: tau in [y - wg, wf]
      {
        Polynomial p3 = conv.at_const(wf) - conv.at_linear(-wg);
        contribs.push_back({base + w2, base + wf + wg, p3.shifted(w2)});
      }
    }
  }
  return PiecewisePolynomial::assemble(std::move(contribs));
}

PiecewisePolynomial PiecewisePolynomial::convolve_box(double halfwidth) const {
  if (!(halfwidth > 0.0))
    throw std::domain_error("convolve_box: halfwidth must be positive");
  if (empty()) throw std::invalid_argument("convolve_box: empty operand");
  const double h = halfwidth;
  const double inv = 0.5 / h;
  // Antiderivative pieces, local to bp_[k], including the running prefix.
  std::vector<Polynomial> F(pieces_.size());
  for (std::size_t k = 0; k < pieces_.size(); ++k)
    F[k] = pieces_[k].antiderivative() + Polynomial::constant(prefix_mass_[k]);

  std::vector<double> cuts;
  for (double b : bp_) {
    cuts.push_back(b - h);
    cuts.push_back(b + h);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> grid;
  std::size_t merged = 0;
  for (double c : cuts) {
    if (!grid.empty() && c - grid.back() < kBreakpointMergeTol) {
      ++merged;
      continue;
    }
    grid.push_back(c);
  }

  // Symbolic F(x + off) on a cell starting at cell_lo, as a polynomial in
  // x - cell_lo.
  auto F_at = [&](double cell_lo, double cell_mid, double off) -> Polynomial {
    const double probe = cell_mid + off;
    if (probe <= bp_.front()) return Polynomial{};
    if (probe >= bp_.back()) return Polynomial::constant(prefix_mass_.back());
    auto it = std::upper_bound(bp_.begin(), bp_.end(), probe);
    std::size_t k = static_cast<std::size_t>(it - bp_.begin()) - 1;
    if (k >= pieces_.size()) k = pieces_.size() - 1;
    // u = (x + off) - bp_[k] = (x - cell_lo) + (cell_lo + off - bp_[k])
    return F[k].shifted(cell_lo + off - bp_[k]);
  };

  std::vector<Polynomial> out_pieces;
  std::vector<double> out_bp;
  for (std::size_t c = 0; c + 1 < grid.size(); ++c) {
    const double lo = grid[c];
    const double mid = 0.5 * (grid[c] + grid[c + 1]);
    Polynomial piece =
        (F_at(lo, mid, h) - F_at(lo, mid, -h)).scaled(inv);
    out_bp.push_back(lo);
    out_pieces.push_back(std::move(piece));
  }
  out_bp.push_back(grid.back());
  PiecewisePolynomial out(std::move(out_bp), std::move(out_pieces));
  out.merged_ = merged;
  return out;
}

double sup_window_probability(const PiecewisePolynomial& f, double lambda) {
  if (!(lambda > 0.0))
    throw std::domain_error("sup_window_probability: lambda must be positive");
  auto window = [&](double x) { return f.cdf(x + lambda) - f.cdf(x - lambda); };
  std::vector<double> cand;
  for (double b : f.breakpoints()) {
    cand.push_back(b - lambda);
    cand.push_back(b + lambda);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  double best = 0.0;
  for (double x : cand) best = std::max(best, window(x));
  // refine inside each cell: the window derivative f(x+l) - f(x-l) is
  // piecewise polynomial, so scan + golden-section on the bracketed cell
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
    double a = cand[i], b = cand[i + 1];
    if (!(b > a)) continue;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = window(x1), f2 = window(x2);
    for (int it = 0; it < 120; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = window(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = window(x1);
      }
    }
    best = std::max(best, std::max(f1, f2));
  }
  return best;
}

}  // namespace acl
