#include "pinchcert/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace pinchcert {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
  mpq_class acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x.raw();
    acc += it->raw();
  }
  return Rational(std::move(acc));
}

Rational Polynomial::eval_naive(const Rational& x) const {
  Rational acc(0);
  for (size_t i = 0; i < coeffs_.size(); ++i) acc += coeffs_[i] * x.pow(static_cast<unsigned>(i));
  return acc;
}

int Polynomial::sign_at(const Rational& x) const {
  if (coeffs_.empty()) return 0;
  // d^n p(n/d) = sum c_i n^i d^(n-i); scale coefficients to integers first.
  const mpz_class& num = x.raw().get_num();
  const mpz_class& den = x.raw().get_den();
  mpz_class lcm_den(1);
  for (const auto& c : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.raw().get_den_mpz_t());
  mpz_class acc(0), dpow(1);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    // Horner on the homogenised form: acc = acc * n + c_i * d^k.
    mpz_class ci = it->raw().get_num() * (lcm_den / it->raw().get_den());
    acc = acc * num + ci * dpow;
    dpow *= den;
  }
  return sgn(acc);
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> out;
  for (size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (coeffs_.empty() || o.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& v : coeffs_) v *= c;
  trim();
  return *this;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial r = constant(Rational(1));
  for (unsigned i = 0; i < n; ++i) r *= *this;
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("Polynomial: division by the zero polynomial");
  std::vector<Rational> rem = num.coeffs_;
  const int dd = den.degree();
  if (num.is_zero() || num.degree() < dd) return {Polynomial(), num};
  std::vector<Rational> quot(static_cast<size_t>(num.degree() - dd + 1));
  const Rational lead_inv = den.leading().reciprocal();
  for (int k = num.degree(); k >= dd; --k) {
    const Rational q = rem[static_cast<size_t>(k)] * lead_inv;
    quot[static_cast<size_t>(k - dd)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(k - dd + j)] -= q * den.coeffs_[static_cast<size_t>(j)];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * a.leading().reciprocal();
}

Polynomial Polynomial::squarefree_part() const {
  if (is_zero() || degree() == 0) return *this;
  Polynomial g = gcd(*this, derivative());
  return divmod(*this, g).first;
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  mpz_class lcm_den(1), g(0);
  for (const auto& c : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.raw().get_den_mpz_t());
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    mpz_class v = c.raw().get_num() * (lcm_den / c.raw().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.emplace_back(mpq_class(v));
  }
  for (auto& c : out) c = Rational(mpq_class(c.raw().get_num() / g));
  return Polynomial(std::move(out));
}

std::pair<Polynomial, int> Polynomial::deflate(const Rational& r) const {
  if (is_zero()) throw std::domain_error("Polynomial: cannot deflate the zero polynomial");
  Polynomial p = *this;
  int mult = 0;
  const Polynomial factor = linear(-r, Rational(1));
  while (p.degree() > 0 && p(r).is_zero()) {
    p = divmod(p, factor).first;
    ++mult;
  }
  return {p, mult};
}

std::string Polynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = a == Rational(1);
    if (!unit || i == 0) os << (a.is_integer() ? a.numerator_string() : "(" + a.to_string() + ")");
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, PolyOp op) {
  switch (op) {
    case PolyOp::add: return p + q;
    case PolyOp::sub: return p - q;
    case PolyOp::mul: return p * q;
  }
  throw std::invalid_argument("poly_arith: unknown op");
}

}  // namespace pinchcert
