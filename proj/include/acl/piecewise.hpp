#pragma once

#include <cstddef>
#include <vector>

namespace acl {

// Dense power-basis polynomial in a local variable u.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  static Polynomial constant(double c);

  double eval(double u) const;
  int degree() const;  // -1 for the zero polynomial
  const std::vector<double>& coeffs() const { return c_; }

  Polynomial shifted(double s) const;  // u -> P(u + s), Taylor shift
  Polynomial antiderivative() const;   // constant term 0
  Polynomial derivative() const;
  Polynomial scaled(double k) const;

  Polynomial& operator+=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<double> c_;
};

// Compactly supported piecewise polynomial on the real line. Piece i lives
// on [breakpoints[i], breakpoints[i+1]] and is expressed in the local
// variable x - breakpoints[i] (local bases keep high-degree convolutions
// well conditioned). The function is identically zero outside
// [breakpoints.front(), breakpoints.back()].
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(std::vector<double> breakpoints,
                      std::vector<Polynomial> pieces);

  // Constant `value` on [lo, hi].
  static PiecewisePolynomial box(double lo, double hi, double value);
  // Uniform density on [-h, h].
  static PiecewisePolynomial uniform_box(double halfwidth);

  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  double support_min() const { return bp_.front(); }
  double support_max() const { return bp_.back(); }

  // Value at x; at interior breakpoints the pieces agree up to roundoff for
  // continuous functions, at the right support edge the left limit is used.
  double evaluate(double x) const;

  double mass() const;        // integral over the support
  double cdf(double x) const; // integral over (-inf, x]
  double mean() const;
  double second_moment() const;

  double sup() const;                   // max over the support
  double sup_arg() const;               // a maximizer
  double power_integral(double p) const;  // integral of f^p (f clamped >= 0)
  double inverse_cdf(double q) const;     // for sampling, q in (0,1)

  // Largest |left limit - right limit| over interior breakpoints.
  double max_interior_jump() const;

  // Breakpoint collisions (|difference| < 1e-14) merged while assembling.
  std::size_t merged_breakpoints() const { return merged_; }

  // Exact convolution; closed on this representation.
  friend PiecewisePolynomial convolve(const PiecewisePolynomial& f,
                                      const PiecewisePolynomial& g);

  // (f * uniform_box(h))(x) = (F(x+h) - F(x-h)) / (2h) via the exact
  // antiderivative. Algebraically identical to convolve(f, uniform_box(h));
  // kept as an independent route.
  PiecewisePolynomial convolve_box(double halfwidth) const;

 private:
  struct Contribution {
    double lo;
    double hi;
    Polynomial poly;  // local to lo
  };
  static PiecewisePolynomial assemble(std::vector<Contribution> contribs);
  void finalize();  // prefix masses

  std::vector<double> bp_;
  std::vector<Polynomial> pieces_;
  std::vector<double> prefix_mass_;
  std::size_t merged_ = 0;
};

// sup_x (F(x + lambda) - F(x - lambda)) computed directly from the CDF by
// candidate scan plus local refinement (independent of the convolution
// route).
double sup_window_probability(const PiecewisePolynomial& f, double lambda);

}  // namespace acl
