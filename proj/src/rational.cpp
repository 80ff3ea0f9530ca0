#include "pinchcert/rational.hpp"

#include <cctype>
#include <sstream>

namespace pinchcert {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::pow10(int exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent >= 0 ? Rational(mpq_class(p)) : Rational(mpq_class(mpz_class(1), p));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("Rational: malformed number '" + std::string(whole) + "'");
  mpz_class v(std::string(s), 10);
  return neg ? mpz_class(-v) : v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("Rational: empty string");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::domain_error("Rational: zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(num, den));
  }

  std::string_view mantissa = text;
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    mpz_class ex = parse_integer(text.substr(e + 1), text);
    if (!ex.fits_sint_p() || ::abs(ex) > 4096) throw std::invalid_argument("Rational: exponent out of range");
    exponent = static_cast<int>(ex.get_si());
  }

  bool neg = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    neg = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("Rational: malformed decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<int>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw std::invalid_argument("Rational: malformed number '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  mpz_class m(digits, 10);
  if (neg) m = -m;
  return Rational(mpq_class(m)) * pow10(exponent - frac_digits);
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  // mpf keeps the approximation independent of double's 17-digit limit.
  mpf_class f(value_, 256);
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, static_cast<size_t>(digits));
  if (mant.empty() || mant == "0") return "0";
  bool neg = mant.front() == '-';
  if (neg) mant.erase(0, 1);
  std::ostringstream os;
  if (neg) os << '-';
  if (exp > 0 && exp <= digits) {
    if (static_cast<size_t>(exp) >= mant.size()) {
      os << mant << std::string(static_cast<size_t>(exp) - mant.size(), '0');
    } else {
      os << mant.substr(0, static_cast<size_t>(exp)) << '.' << mant.substr(static_cast<size_t>(exp));
    }
  } else if (exp <= 0 && exp > -6) {
    os << "0." << std::string(static_cast<size_t>(-exp), '0') << mant;
  } else {
    os << mant.substr(0, 1);
    if (mant.size() > 1) os << '.' << mant.substr(1);
    os << 'e' << (exp - 1);
  }
  return os.str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(unsigned exponent) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(mpq_class(n, d));
}

Rational Rational::floor_to(const Rational& quantum) const {
  if (quantum.sign() <= 0) throw std::domain_error("Rational: quantum must be positive");
  mpq_class q = value_ / quantum.value_;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(mpq_class(f)) * quantum;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

}  // namespace pinchcert
