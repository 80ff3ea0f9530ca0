#include <doctest.h>

#include <random>

#include "pinchcert/errors.hpp"
#include "pinchcert/pinching.hpp"
#include "pinchcert/sturm.hpp"

using namespace pinchcert;
using namespace pinchcert::bounds;

namespace {
Rational q(const char* s) { return Rational::parse(s); }

Rational random_in(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long den) {
  std::uniform_int_distribution<long> k(0, den);
  return lo + (hi - lo) * Rational(k(rng), den);
}
}  // namespace

TEST_SUITE("pinching_bounds") {

TEST_CASE("calabi_value examples") {
  auto c1 = calabi_value(1);
  CHECK(c1.S == Rational(0));
  CHECK(c1.K == Rational(1));
  auto c3 = calabi_value(3);
  CHECK(c3.S == Rational(5, 3));
  CHECK(c3.K == Rational(1, 6));
  CHECK(c3.ambient_dim == 6);
  auto c4 = calabi_value(4);
  CHECK(c4.S == Rational(9, 5));
  CHECK(c4.K == Rational(1, 10));
  CHECK(calabi_value(2).S == Rational(4, 3));
  CHECK_THROWS_AS(calabi_value(0), DomainError);
}

TEST_CASE("calabi values: Gauss relation and monotonicity for s = 1..50") {
  for (int s = 1; s <= 50; ++s) {
    auto c = calabi_value(s);
    CHECK(Rational(2) * c.K + c.S == Rational(2));
    CHECK(c.S == Rational(2 * (s - 1) * (s + 2), s * (s + 1)));
    CHECK(c.S < Rational(4));
    if (s > 1) CHECK(calabi_value(s - 1).S < c.S);
  }
}

TEST_CASE("theta1 examples") {
  const auto th = theta1();
  CHECK(th(Rational(5, 3)) == Rational(-10, 9));
  CHECK(th(q("1.7075")).sign() < 0);
  CHECK(th(q("1.7076")).sign() > 0);
  // expanded coefficients from an independent expansion
  CHECK(th == Polynomial({q("-22801/5184"), q("83597/2880"), q("-2975/64"), q("3485/192")}));
}

TEST_CASE("theta2 examples") {
  const auto th = theta2(Rational(1, 4));
  CHECK(th(q("1.7852")).sign() > 0);
  CHECK(th(q("1.7853")).sign() < 0);
  CHECK(th == Polynomial({q("210681/400"), q("-31409/80"), q("135"), q("-45")}));
  // t = 1/2 leaves only the second term
  const auto half = theta2(Rational(1, 2));
  const Rational c = (Rational(9, 10) + Rational(36, 5)).pow(2);
  for (auto x : {Rational(0), Rational(5, 3), Rational(7, 4), Rational(-3, 2)}) CHECK(half(x) == c * (9 - 5 * x));
  CHECK_THROWS_AS(theta2(Rational(0)), DomainError);
  CHECK_THROWS_AS(theta2(Rational(3, 4)), DomainError);
}

TEST_CASE("theta2 at t = 1/8 has its root near 1.787932") {
  auto e = isolate_root(theta2(Rational(1, 8)), IntervalQ(Rational(5, 3), Rational(9, 5)), Rational::pow10(-9));
  CHECK(e.enclosure.inside_open(q("1.787932211"), q("1.787932212")));
}

TEST_CASE("gap function polynomials") {
  CHECK(gap_numerator() == Polynomial({Rational(0), Rational(-432), Rational(564), Rational(-180)}));
  CHECK(gap_denominator() == Polynomial({q("81/80"), q("-2091/8"), q("4685/16")}));
  CHECK(gap_denominator() == Polynomial({q("1.0125"), q("-261.375"), q("292.8125")}));
}

TEST_CASE("gap_lower_bound examples") {
  CHECK(gap_lower_bound(Rational(9, 5)) == Rational(0));
  CHECK(gap_lower_bound(Rational(5, 3)) == Rational(150, 4261));
  const auto y = gap_lower_bound(q("1.7853"));
  CHECK(y == Rational(47445490092LL, 10392441085625LL));
  CHECK(y > q("0.004565"));
  CHECK(q("0.004565") > Rational(1, 220));
  CHECK(gap_lower_bound(Rational(7, 4)) == Rational(8400, 563641));
  CHECK_THROWS_AS(gap_lower_bound(Rational(3, 2)), DomainError);
  CHECK_THROWS_AS(gap_lower_bound(Rational(2)), DomainError);
}

TEST_CASE("legacy_gap_bound examples") {
  auto b53 = legacy_gap_bound(Rational(5, 3));
  CHECK(b53.radicand == Rational(3136));
  CHECK(b53.radicand == Rational(56 * 56));
  CHECK(compare(b53, Rational(0)) == 0);
  auto b95 = legacy_gap_bound(Rational(9, 5));
  CHECK(b95.radicand == Rational(126736, 25));
  CHECK(compare(b95, Rational(0)) == 0);
  auto b74 = legacy_gap_bound(Rational(7, 4));
  CHECK(b74.radicand == Rational(17377, 4));
  CHECK(b74.approx() == doctest::Approx(0.0038049).epsilon(1e-4));
  // the newer bound is larger at 7/4
  CHECK(compare(b74, gap_lower_bound(Rational(7, 4))) < 0);
}

TEST_CASE("legacy compare is exact around the true value") {
  auto b = legacy_gap_bound(Rational(7, 4));
  CHECK(compare(b, q("0.0038")) > 0);
  CHECK(compare(b, q("0.0039")) < 0);
}

TEST_CASE("smax_threshold examples") {
  CHECK(smax_threshold(Rational(5, 3)) == Rational(5, 3) + Rational(150, 4261));
  CHECK(smax_threshold(Rational(9, 5)) == Rational(9, 5));
  std::mt19937_64 rng(20260);
  for (int i = 0; i < 100; ++i) {
    const Rational w = random_in(rng, s_lower(), s_upper(), 1000003);
    CHECK(smax_threshold(w) - w - gap_lower_bound(w) == Rational(0));
  }
}

TEST_CASE("left_certificate examples") {
  const Rational w(5, 3), t(1, 2);
  CHECK(left_certificate(q("1.7075"), w, t).sign() < 0);
  CHECK(left_certificate(q("1.7076"), w, t).sign() > 0);
  CHECK(left_certificate(Rational(9, 5), Rational(9, 5), t) == Rational(0));
  // at t = 1/2 the general form is the explicit one
  for (auto x : {q("1.68"), q("1.7"), q("1.75"), q("1.79")})
    for (auto ww : {Rational(5, 3), q("1.68"), q("1.7")})
      if (ww <= x) CHECK(left_certificate(x, ww, t) == left_certificate_half(x, ww));
  CHECK_THROWS_AS(left_certificate(q("1.7"), q("1.75"), t), DomainError);
  CHECK_THROWS_AS(left_certificate(q("1.7"), w, Rational(0)), DomainError);
}

TEST_CASE("left_certificate_half divided by (3x-5) is a positive multiple of theta1") {
  // x(3x-4)(3x-5)(5x-9) + 5/4 (5/3-x)^2 (...)^2 = (3x-5) x ... ; the ratio is constant in sign
  for (auto x : {q("1.68"), q("1.7"), q("1.7075"), q("1.7076"), q("1.75"), q("1.79")}) {
    const Rational c = left_certificate_half(x, Rational(5, 3));
    CHECK(c.sign() == theta1()(x).sign());
  }
}

TEST_CASE("left_certificate_pieces: certificate is the pointwise max") {
  for (auto t : {Rational(1, 4), Rational(3, 8), Rational(1, 2), Rational(99, 200)}) {
    for (auto w : {Rational(5, 3), q("1.7"), q("1.75")}) {
      auto pcs = left_certificate_pieces(w, t);
      for (auto x : {q("1.76"), q("1.78"), Rational(9, 5)}) {
        CHECK(left_certificate(x, w, t) == max(pcs.at_smax(x), pcs.at_lower(x)));
      }
    }
  }
}

TEST_CASE("theta1 expanded equals the factored form at 20 random points") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Rational x = random_in(rng, Rational(-3), Rational(3), 9973);
    CHECK(theta1()(x) == theta1_factored(x));
    const Rational t = random_in(rng, Rational(1, 100), Rational(1, 2), 997);
    CHECK(theta2(t)(x) == theta2_factored(x, t));
  }
}

TEST_CASE("gap bound positivity certificates") {
  const IntervalQ dom(s_lower(), s_upper());
  CHECK(replay(certify_sign_on_interval(gap_denominator(), dom, Sign::positive)));
  // N has a root at 9/5; positivity holds strictly left of it
  CHECK(replay(certify_sign_on_interval(gap_numerator(), IntervalQ(s_lower(), q("1.7999")), Sign::positive)));
  CHECK(gap_numerator()(s_upper()) == Rational(0));
}

TEST_CASE("gap bound is strictly decreasing on 50 exact pairs") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    Rational a = random_in(rng, s_lower(), s_upper(), 100000);
    Rational b = random_in(rng, s_lower(), s_upper(), 100000);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    CHECK(gap_lower_bound(a) > gap_lower_bound(b));
  }
}

TEST_CASE("threshold report json") {
  ThresholdReport r;
  r.name = "demo";
  r.root_enclosure = IntervalQ(Rational(1), Rational(2));
  r.parameters["t"] = Rational(1, 4);
  auto j = to_json(r);
  CHECK(j["name"] == "demo");
  CHECK(j.contains("parameters"));
}

}  // TEST_SUITE
