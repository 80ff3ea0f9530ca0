#include "pinchcert/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pinchcert {

namespace {
double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}
}  // namespace

Jet::Jet(int order, double value) : order_(order), c_((order + 1) * (order + 2) / 2, 0.0) {
  if (order < 0) throw std::invalid_argument("Jet: negative order");
  c_[0] = value;
}

Jet Jet::variable(int order, double value, int which) {
  Jet j(order, value);
  if (order >= 1) j.c_[which == 0 ? index(1, 0) : index(0, 1)] = 1.0;
  return j;
}

double Jet::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return 0.0;
  return c_[index(i, j)];
}

double Jet::derivative(int i, int j) const { return coeff(i, j) * factorial(i) * factorial(j); }

Jet Jet::partial(int which) const {
  Jet out(std::max(order_ - 1, 0));
  for (int d = 0; d < order_; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      out.c_[index(i, j)] = which == 0 ? (i + 1) * coeff(i + 1, j) : (j + 1) * coeff(i, j + 1);
    }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ < order_) {
    order_ = o.order_;
    c_.resize(o.c_.size());
  }
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ < order_) {
    order_ = o.order_;
    c_.resize(o.c_.size());
  }
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double k) {
  for (auto& v : c_) v *= k;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = std::min(a.order_, b.order_);
  Jet out(n);
  for (int d1 = 0; d1 <= n; ++d1)
    for (int j1 = 0; j1 <= d1; ++j1) {
      const double x = a.c_[Jet::index(d1 - j1, j1)];
      if (x == 0.0) continue;
      for (int d2 = 0; d1 + d2 <= n; ++d2)
        for (int j2 = 0; j2 <= d2; ++j2)
          out.c_[Jet::index(d1 - j1 + d2 - j2, j1 + j2)] += x * b.c_[Jet::index(d2 - j2, j2)];
    }
  return out;
}

namespace {
// Even and odd parts of the series with nilpotent eps: cos(eps) and sin(eps).
void sincos_eps(const Jet& eps, Jet& c, Jet& s) {
  const int n = eps.order();
  c = Jet(n, 1.0);
  s = Jet(n, 0.0);
  Jet power(n, 1.0);
  for (int k = 1; k <= n; ++k) {
    power = power * eps;
    const double f = 1.0 / std::tgamma(k + 1.0);
    switch (k % 4) {
      case 1: s += power * f; break;
      case 2: c -= power * f; break;
      case 3: s -= power * f; break;
      case 0: c += power * f; break;
    }
  }
}
}  // namespace

Jet sin(const Jet& a) {
  Jet eps = a - Jet(a.order(), a.value());
  Jet c, s;
  sincos_eps(eps, c, s);
  return std::sin(a.value()) * c + std::cos(a.value()) * s;
}

Jet cos(const Jet& a) {
  Jet eps = a - Jet(a.order(), a.value());
  Jet c, s;
  sincos_eps(eps, c, s);
  return std::cos(a.value()) * c - std::sin(a.value()) * s;
}

}  // namespace pinchcert
