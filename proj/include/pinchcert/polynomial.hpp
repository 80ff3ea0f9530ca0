#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "pinchcert/rational.hpp"

namespace pinchcert {

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first.  The coefficient vector is trimmed so the leading
/// coefficient is nonzero; the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  /// a + b x
  static Polynomial linear(const Rational& a, const Rational& b) { return Polynomial({a, b}); }
  static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; the zero polynomial reports 0 (check is_zero()).
  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(int i) const;
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  /// Horner evaluation.
  Rational operator()(const Rational& x) const;
  /// Sum of c_i x^i with explicit powers; slower, kept as a second route.
  Rational eval_naive(const Rational& x) const;
  /// Sign of p(x), computed on integers after clearing denominators.
  int sign_at(const Rational& x) const;

  Polynomial derivative() const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  Polynomial pow(unsigned n) const;

  /// Euclidean division; throws on a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);
  /// Monic gcd (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);
  /// p / gcd(p, p'): same distinct roots, all simple.
  Polynomial squarefree_part() const;
  /// Positive rational multiple with coprime integer coefficients.
  Polynomial primitive() const;
  /// Divides out (x - r) as many times as it divides p; returns the quotient
  /// and the multiplicity.
  std::pair<Polynomial, int> deflate(const Rational& r) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

enum class PolyOp { add, sub, mul };

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, PolyOp op);
inline Rational poly_eval(const Polynomial& p, const Rational& x) { return p(x); }
inline Polynomial poly_derivative(const Polynomial& p) { return p.derivative(); }

}  // namespace pinchcert
