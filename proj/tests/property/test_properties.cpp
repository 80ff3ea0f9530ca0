#include <doctest.h>

#include <cmath>
#include <random>

#include "pinchcert/calabi.hpp"
#include "pinchcert/errors.hpp"
#include "pinchcert/param_search.hpp"
#include "pinchcert/pinching.hpp"
#include "pinchcert/shrinker.hpp"
#include "pinchcert/sturm.hpp"
#include "property_support.hpp"

using namespace pinchcert;

TEST_SUITE("properties") {

TEST_CASE("Horner and naive evaluation agree exactly") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing_support::random_polynomial(rng, 8, 9);
    const Rational x(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
    CHECK(p(x) == p.eval_naive(x));
  }
}

TEST_CASE("rational invariants: canonical form after every operation") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    Rational a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 999) + 1);
    Rational b(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 999) + 1);
    for (const Rational& r : {a + b, a - b, a * b, b.is_zero() ? a : a / b, a.pow(3)}) {
      CHECK(r.raw().get_den() > 0);
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), r.raw().get_num().get_mpz_t(), r.raw().get_den().get_mpz_t());
      CHECK(g == 1);
    }
  }
}

TEST_CASE("count_roots agrees with the brute-force oracle on 200 random polynomials") {
  std::mt19937_64 rng(20261016);
  int checked = 0, with_roots = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = testing_support::random_polynomial(rng, 6, 5);
    if (p.is_zero()) continue;
    const Rational lo(static_cast<long>(rng() % 9) - 6, static_cast<long>(rng() % 3) + 1);
    const Rational hi = lo + Rational(static_cast<long>(rng() % 12) + 1, static_cast<long>(rng() % 3) + 1);
    const int oracle = testing_support::brute_force_root_count(p, lo, hi);
    const auto rc = count_roots(p, IntervalQ(lo, hi));
    INFO("p = ", p.to_string(), " on [", lo.to_string(), ", ", hi.to_string(), "]");
    CHECK(rc.count == oracle);
    CHECK(replay(rc.certificate));
    ++checked;
    with_roots += oracle > 0;
  }
  CHECK(checked == 200);
  CHECK(with_roots > 50);
}

TEST_CASE("constructed polynomials with repeated rational roots") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    // prod (x - r_k)^{m_k} * (x^2 + 1)
    Polynomial p({Rational(1), Rational(0), Rational(1)});
    std::vector<Rational> roots;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) {
      Rational r(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 4) + 1);
      if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
      roots.push_back(r);
      const int m = 1 + static_cast<int>(rng() % 3);
      for (int e = 0; e < m; ++e) p *= Polynomial({-r, Rational(1)});
    }
    const Rational lo(-7, 2), hi(7, 2);
    int inside = 0;
    for (const auto& r : roots) inside += lo < r && r < hi;
    CHECK(count_roots(p, IntervalQ(lo, hi)).count == inside);
    CHECK(testing_support::brute_force_root_count(p, lo, hi) == inside);
  }
}

TEST_CASE("isolate_root endpoints always carry strictly opposite signs") {
  std::mt19937_64 rng(3);
  int done = 0;
  for (int i = 0; i < 400 && done < 100; ++i) {
    const auto p = testing_support::random_polynomial(rng, 5, 5);
    const Rational lo(static_cast<long>(rng() % 7) - 4), hi = lo + Rational(static_cast<long>(rng() % 4) + 1);
    if (p.is_zero() || count_roots(p, IntervalQ(lo, hi)).count != 1) continue;
    if (p.sign_at(lo) != 0 && p.sign_at(lo) == p.sign_at(hi)) {
      CHECK_THROWS_AS(isolate_root(p, IntervalQ(lo, hi), Rational(1, 100)), PreconditionError);
      continue;
    }
    const Rational width(1, static_cast<long>(rng() % 5000) + 2);
    auto e = isolate_root(p, IntervalQ(lo, hi), width);
    CHECK(p(e.enclosure.lo()) * p(e.enclosure.hi()) < Rational(0));
    CHECK(e.enclosure.width() <= width);
    CHECK(replay(e.certificate));
    ++done;
  }
  CHECK(done == 100);
}

TEST_CASE("certificate replay and JSON round trip on random sign claims") {
  std::mt19937_64 rng(4);
  int done = 0;
  for (int i = 0; i < 300; ++i) {
    const auto p = testing_support::random_polynomial(rng, 5, 5);
    const Rational lo(static_cast<long>(rng() % 7) - 3, 2), hi = lo + Rational(1, 3);
    for (Sign s : {Sign::positive, Sign::negative}) {
      try {
        auto c = certify_sign_on_interval(p, IntervalQ(lo, hi), s);
        CHECK(replay(c));
        auto back = certificate_from_json(nlohmann::json::parse(to_json(c).dump()));
        CHECK(replay(back));
        CHECK(to_json(back).dump() == to_json(c).dump());
        CHECK(back.evidence == c.evidence);
        ++done;
      } catch (const SignClaimError& e) {
        // witness really violates the claim
        CHECK(p(e.point()) == e.value());
        CHECK((s == Sign::positive ? e.value().sign() <= 0 : e.value().sign() >= 0));
      }
    }
  }
  CHECK(done > 50);
}

TEST_CASE("gap monotonicity follows from the certificate on 50 pairs") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    Rational a = bounds::s_lower() + Rational(2, 15) * Rational(static_cast<long>(rng() % 10000), 10000);
    Rational b = a + Rational(static_cast<long>(rng() % 100) + 1, 1000000);
    if (b > bounds::s_upper()) continue;
    CHECK(bounds::gap_lower_bound(a) > bounds::gap_lower_bound(b));
  }
}

TEST_CASE("optimizer dominance: grid refinement never worsens the incumbent") {
  search::SweepConfig c;
  c.t_grid = {Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 2)};
  c.w_grid = {Rational(5, 3), Rational(17, 10)};
  c.refinement_rounds = 0;
  auto base = search::optimize(search::Side::left, c, 2);
  c.refinement_rounds = 2;
  auto refined = search::optimize(search::Side::left, c, 2);
  search::SweepPoint b{base.best_t, base.best_w, base.threshold, false};
  search::SweepPoint r{refined.best_t, refined.best_w, refined.threshold, false};
  CHECK_FALSE(search::better(search::Side::left, b, r));
  // superset grid dominates
  search::SweepConfig wide = c;
  wide.refinement_rounds = 0;
  wide.t_grid.insert(wide.t_grid.begin() + 3, Rational(7, 16));
  auto w = search::optimize(search::Side::left, wide, 2);
  CHECK_FALSE(search::better(search::Side::left, b, {w.best_t, w.best_w, w.threshold, false}));
}

TEST_CASE("optimizer reproducibility") {
  search::SweepConfig c = search::default_sweep_config(search::Side::right);
  c.refinement_rounds = 2;
  auto a = search::to_json(search::optimize(search::Side::right, c, 1), true).dump();
  auto b = search::to_json(search::optimize(search::Side::right, c, 3), true).dump();
  CHECK(a == b);
}

TEST_CASE("shrinker: scale consistency and round trip") {
  for (int s = 1; s <= 10; ++s) {
    const auto v = bounds::calabi_value(s);
    const auto x = shrinker::spherical_to_shrinker(v.S);
    CHECK(4 * x == v.S);
  }
  CHECK(4 * shrinker::case3a_upper() == bounds::published_left_pinch());
  CHECK(4 * shrinker::case3b_lower() == bounds::published_right_pinch());
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    Rational lo(static_cast<long>(rng() % 600), 1000), hi = lo + Rational(static_cast<long>(rng() % 50), 1000);
    shrinker::ShrinkerPinchData d{lo, hi, (rng() & 1) != 0, (rng() & 1) != 0};
    auto back = shrinker::pinch_data_from_json(nlohmann::json::parse(shrinker::to_json(d).dump()));
    CHECK(shrinker::to_json(shrinker::classify(back)) == shrinker::to_json(shrinker::classify(d)));
  }
}

TEST_CASE("shrinker: shrinking the data range never loses a decided model") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    Rational lo(static_cast<long>(rng() % 500), 1000), hi = lo + Rational(static_cast<long>(rng() % 40), 1000);
    auto outer = shrinker::classify({lo, hi, true, true});
    using V = shrinker::Verdict;
    if (outer.verdict != V::round_sphere && outer.verdict != V::veronese && outer.verdict != V::calabi_s3 &&
        outer.verdict != V::calabi_s4)
      continue;
    for (const auto& m : outer.candidates) CHECK(m == outer.verdict);
    // any sub-range still containing the model keeps the verdict
    auto inner = shrinker::classify({max(lo, hi - (hi - lo) / 2), hi, true, true});
    if (!inner.candidates.empty()) CHECK(inner.verdict == outer.verdict);
  }
}

TEST_CASE("|Phi| = 1 and the s = 3 first form equals 6 times the round metric") {
  for (int s = 1; s <= 6; ++s) {
    auto imm = calabi::build_calabi_immersion(s);
    for (const auto& p : calabi::sample_points(100, 12)) CHECK(std::abs(imm(p).norm() - 1) < 1e-12);
  }
  auto imm = calabi::build_calabi_immersion(3);
  for (const auto& p : calabi::sample_points(50, 13)) {
    auto ff = calabi::fundamental_forms(imm, p);
    CHECK((ff.first_form - 6 * calabi::round_metric(ff.frame.coords)).norm() < 1e-8);
  }
}

TEST_CASE("S and tr A agree to 1e-9 at every sample") {
  for (int s = 1; s <= 4; ++s) {
    calabi::ScanOptions opt;
    opt.derivatives = false;
    auto scan = calabi::geometry_scan(calabi::build_calabi_immersion(s), 100, 21, opt);
    for (const auto& ps : scan.samples) CHECK(std::abs(ps.S - ps.trace_A) < 1e-9);
  }
}

TEST_CASE("rotation invariance of scan scalars to 1e-9") {
  for (int s = 1; s <= 4; ++s) {
    auto imm = calabi::build_calabi_immersion(s);
    auto rot = imm.rotated(calabi::random_rotation(imm.ambient_dim, 100 + s));
    auto a = calabi::geometry_scan(imm, 60, 31);
    auto b = calabi::geometry_scan(rot, 60, 31);
    double worst = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      const auto &x = a.samples[i], &y = b.samples[i];
      for (double d : {x.S - y.S, x.A_norm_sq - y.A_norm_sq, x.rho_perp - y.rho_perp, x.H_norm_sq - y.H_norm_sq,
                       x.K - y.K, *x.B1 - *y.B1})
        worst = std::max(worst, std::abs(d));
    }
    INFO("s = ", s, " worst = ", worst);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("jet and stencil scalars agree to 1e-8") {
  for (int s = 1; s <= 4; ++s) {
    auto imm = calabi::build_calabi_immersion(s);
    for (const auto& p : calabi::sample_points(40, 41)) {
      auto a = calabi::point_scalars(calabi::fundamental_forms(imm, p));
      auto b = calabi::point_scalars(calabi::fundamental_forms_jet(imm, p));
      CHECK(std::abs(a.S - b.S) < 1e-8);
      CHECK(std::abs(a.rho_perp - b.rho_perp) < 1e-8);
      CHECK(std::abs(a.A_norm_sq - b.A_norm_sq) < 1e-8);
      CHECK(std::abs(a.ab - b.ab) < 1e-8);
    }
  }
}

TEST_CASE("homogeneity: scan scalars are constant over the sphere") {
  for (int s = 1; s <= 4; ++s) {
    calabi::ScanOptions opt;
    opt.derivatives = false;
    auto j = calabi::summary_json(calabi::geometry_scan(calabi::build_calabi_immersion(s), 200, 51, opt));
    for (const char* key : {"S", "K", "rho_perp", "A_norm_sq"}) {
      INFO("s = ", s, " ", key);
      CHECK(j[key]["stddev"].get<double>() < 1e-7);
    }
  }
}

TEST_CASE("step halving: identity residuals (i)-(vi) converge with factor >= 3") {
  const auto rows = testing_support::step_halving_rows();
  REQUIRE(!rows.empty());
  for (const auto& r : rows) {
    INFO("s = ", r.s, " id ", r.id, ": r(h) = ", r.coarse, ", r(h/2) = ", r.fine);
    CHECK(r.pass);
  }
}

}  // TEST_SUITE
