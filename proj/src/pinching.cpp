#include "pinchcert/pinching.hpp"

#include <cmath>

#include "pinchcert/errors.hpp"

namespace pinchcert::bounds {

namespace {

const Rational kFiveThirds(5, 3);
const Rational kNineFifths(9, 5);

Polynomial lin(const Rational& a, const Rational& b) { return Polynomial::linear(a, b); }

Rational sq(const Rational& v) { return v * v; }

}  // namespace

void check_t(const Rational& t, const char* where) {
  if (t.sign() <= 0 || t > Rational(1, 2))
    throw DomainError(std::string(where) + ": t must lie in (0, 1/2], got " + t.to_string());
}

void check_in_pinching_interval(const Rational& x, const char* name, const char* where) {
  if (x < kFiveThirds || x > kNineFifths)
    throw DomainError(std::string(where) + ": " + name + " must lie in [5/3, 9/5], got " + x.to_string());
}

CalabiValue calabi_value(int s) {
  if (s < 1) throw DomainError("calabi_value: s must be >= 1");
  const long n = s;
  CalabiValue v;
  v.s = s;
  v.K = Rational(2, n * (n + 1));
  v.S = Rational(2 * (n - 1) * (n + 2), n * (n + 1));
  v.ambient_dim = 2 * s;
  return v;
}

Polynomial theta1() {
  const Polynomial x = Polynomial::x();
  Polynomial first = x * lin(-4, 3) * lin(-9, 5);
  Polynomial inner = lin(Rational(151, 60), Rational(11, 4));
  Polynomial second = Rational(5, 36) * lin(-5, 3) * inner * inner;
  return first + second;
}

Rational theta1_factored(const Rational& x) {
  return x * (3 * x - 4) * (5 * x - 9) +
         Rational(5, 36) * (3 * x - 5) * sq(Rational(11, 4) * x + Rational(151, 60));
}

Polynomial theta2(const Rational& t) {
  check_t(t, "theta2");
  const Polynomial x = Polynomial::x();
  const Rational lead = 40 * t * (2 * t - 1);
  const Rational c = sq(Rational(9, 5) * t + Rational(36, 5));
  return lead * x * lin(-4, 3) * lin(-5, 3) + c * lin(9, -5);
}

Rational theta2_factored(const Rational& x, const Rational& t) {
  return 40 * t * (2 * t - 1) * x * (3 * x - 4) * (3 * x - 5) +
         sq(Rational(9, 5) * t + Rational(36, 5)) * (9 - 5 * x);
}

Polynomial gap_numerator() {
  return Rational(12) * Polynomial::x() * lin(9, -5) * lin(-4, 3);
}

Polynomial gap_denominator() {
  const Polynomial x = Polynomial::x();
  Polynomial inner = lin(Rational(-9, 20), Rational(19, 4));
  return Rational(60) * x * lin(-4, 3) + Rational(5) * inner * inner;
}

Rational gap_lower_bound(const Rational& s_min) {
  check_in_pinching_interval(s_min, "S_min", "gap_lower_bound");
  return gap_numerator()(s_min) / gap_denominator()(s_min);
}

double LegacyBound::approx() const {
  return rational_part.to_double() + std::sqrt(radicand.to_double()) / 108.0;
}

LegacyBound legacy_gap_bound(const Rational& s_min) {
  check_in_pinching_interval(s_min, "S_min", "legacy_gap_bound");
  const Rational lin_part = 134 - 114 * s_min;
  const Rational radicand = sq(lin_part) + 864 * (3 * s_min - 5) * (9 - 5 * s_min);
  if (radicand.sign() < 0) throw DomainError("legacy_gap_bound: negative radicand");
  return {lin_part / 108, radicand};
}

int compare(const LegacyBound& bound, const Rational& q) {
  // bound - q = (sqrt(F) - d) / 108 with d = 108 (q - rational_part).
  const Rational d = 108 * (q - bound.rational_part);
  if (d.sign() < 0) return 1;
  const Rational diff = bound.radicand - d * d;
  return diff.sign();
}

Rational smax_threshold(const Rational& w) {
  check_in_pinching_interval(w, "w", "smax_threshold");
  const Rational inner = sq(Rational(19, 4) * w - Rational(9, 20));
  const Rational num = 108 * w * (3 * w - 4) + 5 * w * inner;
  const Rational den = 60 * w * (3 * w - 4) + 5 * inner;
  return num / den;
}

Rational left_certificate_half(const Rational& x, const Rational& w) {
  return x * (3 * x - 4) * (3 * x - 5) * (5 * x - 9) +
         Rational(5, 4) * sq(w - x) * sq(Rational(11, 4) * x + Rational(19, 4) * w - Rational(27, 5));
}

namespace {

void check_left_domain(const Rational& x, const Rational& w, const Rational& t, const char* where) {
  check_t(t, where);
  check_in_pinching_interval(w, "w", where);
  check_in_pinching_interval(x, "x", where);
  if (x < w) throw DomainError(std::string(where) + ": requires w <= x");
}

// g(S) = a (w + S) + 36/5 - 2x - 126t/5 with a = (2 + 15t)/2.
Rational slope(const Rational& t) { return (2 + 15 * t) / 2; }

}  // namespace

Rational left_certificate(const Rational& x, const Rational& w, const Rational& t) {
  check_left_domain(x, w, t, "left_certificate");
  const Rational a = slope(t);
  const Rational offset = Rational(36, 5) - 2 * x - Rational(126, 5) * t;
  const Rational g_end = a * (w + x) + offset;
  const Rational g_low = a * (w + kFiveThirds) + offset;
  const Rational sup = max(sq(g_end), Rational(3, 5) * x * sq(g_low));
  return x * (3 * x - 4) * (3 * x - 5) * (5 * x - 9) + 5 * sq(w - x) / (16 * t * (1 - t)) * sup;
}

LeftPieces left_certificate_pieces(const Rational& w, const Rational& t) {
  check_t(t, "left_certificate_pieces");
  check_in_pinching_interval(w, "w", "left_certificate_pieces");
  const Polynomial x = Polynomial::x();
  const Rational a = slope(t);
  const Rational k = Rational(5) / (16 * t * (1 - t));
  const Polynomial base = x * lin(-4, 3) * lin(-5, 3) * lin(-9, 5);
  const Polynomial gap_sq = lin(w, -1).pow(2);
  // offset(x) = 36/5 - 126t/5 - 2x
  const Rational c0 = Rational(36, 5) - Rational(126, 5) * t;
  const Polynomial g_end = lin(a * w + c0, a - 2);
  const Polynomial g_low = lin(a * (w + kFiveThirds) + c0, Rational(-2));
  LeftPieces out;
  out.at_smax = base + k * gap_sq * g_end * g_end;
  out.at_lower = base + k * gap_sq * (Rational(3, 5) * x) * g_low * g_low;
  return out;
}

nlohmann::json to_json(const ThresholdReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) params[k] = to_json(v);
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : r.certificates) certs.push_back(pinchcert::to_json(c));
  nlohmann::json j = {{"name", r.name}, {"parameters", params}, {"certificates", certs}, {"conclusion", r.conclusion}};
  j["root_enclosure"] = r.root_enclosure ? pinchcert::to_json(*r.root_enclosure) : nlohmann::json(nullptr);
  return j;
}

}  // namespace pinchcert::bounds
