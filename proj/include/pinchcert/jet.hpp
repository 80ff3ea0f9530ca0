#pragma once

#include <vector>

namespace pinchcert {

/// Truncated Taylor polynomial in two variables (u, v): all monomials
/// u^i v^j with i + j <= order.  Arithmetic is exact up to floating rounding,
/// so derivatives come out without differencing error.
class Jet {
 public:
  explicit Jet(int order = 0, double value = 0.0);
  /// value + (u or v); which = 0 for u, 1 for v.
  static Jet variable(int order, double value, int which);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int i, int j) const;
  /// d^{i+j} / du^i dv^j at the expansion point.
  double derivative(int i, int j) const;
  /// Partial derivative as a jet of one lower order.
  Jet partial(int which) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double k);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(Jet a, double k) { return a *= k; }
  friend Jet operator*(double k, Jet a) { return a *= k; }
  friend Jet operator*(const Jet& a, const Jet& b);

  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);

 private:
  static int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }
  int order_;
  std::vector<double> c_;
};

}  // namespace pinchcert
