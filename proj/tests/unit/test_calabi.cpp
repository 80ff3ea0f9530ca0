#include <doctest.h>

#include <cmath>
#include <random>

#include "pinchcert/calabi.hpp"
#include "pinchcert/errors.hpp"
#include "pinchcert/harmonics.hpp"
#include "pinchcert/jet.hpp"
#include "pinchcert/pinching.hpp"

using namespace pinchcert;
using namespace pinchcert::calabi;

namespace {
double S_of(int s) { return bounds::calabi_value(s).S.to_double(); }
double K_of(int s) { return bounds::calabi_value(s).K.to_double(); }

Eigen::Vector3d unit(double x, double y, double z) { return Eigen::Vector3d(x, y, z).normalized(); }
}  // namespace

TEST_SUITE("calabi_lab") {

TEST_CASE("jets: products, derivatives and trig") {
  const int n = 4;
  Jet u = Jet::variable(n, 0.3, 0), v = Jet::variable(n, -0.2, 1);
  Jet f = u * u * v;  // f = u^2 v
  CHECK(f.value() == doctest::Approx(0.09 * -0.2));
  CHECK(f.derivative(1, 0) == doctest::Approx(2 * 0.3 * -0.2));
  CHECK(f.derivative(2, 1) == doctest::Approx(2.0));
  CHECK(f.derivative(0, 1) == doctest::Approx(0.09));
  Jet s = sin(u), c = cos(u);
  Jet one = s * s + c * c;
  CHECK(one.value() == doctest::Approx(1.0));
  for (int i = 1; i <= n; ++i) CHECK(std::abs(one.derivative(i, 0)) < 1e-14);
  CHECK(s.derivative(3, 0) == doctest::Approx(-std::cos(0.3)));
  CHECK(c.derivative(4, 0) == doctest::Approx(std::cos(0.3)));
  CHECK(f.partial(0).derivative(0, 0) == doctest::Approx(f.derivative(1, 0)));
}

TEST_CASE("harmonic basis: sum of squares and degree") {
  for (int s = 1; s <= 6; ++s) {
    RealHarmonicBasis b(s);
    CHECK(b.size() == 2 * s + 1);
    CHECK(b.order_of(0) == 0);
    CHECK(b.normalization() == doctest::Approx(std::sqrt(4 * M_PI / (2 * s + 1))));
    std::mt19937_64 rng(s);
    for (int i = 0; i < 20; ++i) {
      Eigen::Vector3d p(uniform01(rng) - 0.5, uniform01(rng) - 0.5, uniform01(rng) - 0.5);
      p.normalize();
      CHECK(b.evaluate(p).squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("harmonic basis: degree one is the identity up to order") {
  RealHarmonicBasis b(1);
  Eigen::Vector3d p = unit(0.2, -0.5, 0.7);
  auto v = b.evaluate(p);
  CHECK(std::abs(std::abs(v(0)) - std::abs(p.z())) < 1e-15);
  CHECK(std::abs(v.squaredNorm() - 1) < 1e-15);
}

TEST_CASE("immersion: unit length, dimension, domain") {
  for (int s = 1; s <= 6; ++s) {
    auto imm = build_calabi_immersion(s);
    CHECK(imm.ambient_dim == 2 * s + 1);
    for (const auto& p : sample_points(50, 3)) CHECK(std::abs(imm(p).norm() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(build_calabi_immersion(0), DomainError);
  CHECK_THROWS_AS(build_calabi_immersion(7), DomainError);
}

TEST_CASE("immersion is even for even s and odd for odd s") {
  Eigen::Vector3d p = unit(0.3, 0.4, -0.2);
  for (int s = 1; s <= 4; ++s) {
    auto imm = build_calabi_immersion(s);
    const double sign = s % 2 ? -1.0 : 1.0;
    CHECK((imm(-p) - sign * imm(p)).norm() < 1e-13);
  }
}

TEST_CASE("random rotations are orthogonal with determinant one") {
  for (int n : {3, 5, 7, 9}) {
    auto R = random_rotation(n, 11);
    CHECK((R.transpose() * R - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-13);
    CHECK(R.determinant() == doctest::Approx(1.0));
    CHECK((random_rotation(n, 11) - R).norm() == 0.0);
  }
}

TEST_CASE("uniform01 stays in the open unit interval and is reproducible") {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = uniform01(a);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    CHECK(x == uniform01(b));
  }
}

TEST_CASE("charts round trip and choose by distance from the z poles") {
  CHECK(choose_chart(unit(0, 0, 1)) == Chart::polar_x);
  CHECK(choose_chart(unit(1, 0, 0)) == Chart::polar_z);
  for (const auto& p : sample_points(200, 9)) {
    const auto c = choose_chart(p);
    const auto uv = chart_coords(c, p);
    CHECK((chart_point(c, uv) - p).norm() < 1e-13);
    CHECK(std::sin(uv(0)) > 0.3);
  }
  auto g = round_metric(Eigen::Vector2d(0.7, 0.1));
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == doctest::Approx(std::sin(0.7) * std::sin(0.7)));
  CHECK(to_string(Chart::polar_x) == "polar_x");
}

TEST_CASE("frames are orthonormal and complete") {
  for (int s = 2; s <= 4; ++s) {
    auto imm = build_calabi_immersion(s);
    for (const auto& p : sample_points(10, 2)) {
      auto ff = fundamental_forms(imm, p);
      const auto& fr = ff.frame;
      const int N = imm.ambient_dim;
      Eigen::MatrixXd E(N, N);
      E << fr.position, fr.tangent, fr.normal;
      CHECK((E.transpose() * E - Eigen::MatrixXd::Identity(N, N)).norm() < 1e-10);
      CHECK(static_cast<int>(ff.h.size()) == N - 3);
      CHECK(static_cast<int>(fr.normal_columns.size()) == N - 3);
    }
  }
}

TEST_CASE("induced metric is (S(s) scaled) round: s(s+1)/2 times the unit sphere") {
  for (int s = 1; s <= 4; ++s) {
    auto imm = build_calabi_immersion(s);
    const double lambda = 1.0 / K_of(s);
    for (const auto& p : sample_points(10, 4)) {
      auto ff = fundamental_forms_jet(imm, p);
      const auto g0 = round_metric(ff.frame.coords);
      CHECK((ff.first_form - lambda * g0).norm() < 1e-10);
    }
  }
}

TEST_CASE("second fundamental form: symmetric and traceless") {
  auto imm = build_calabi_immersion(3);
  for (const auto& p : sample_points(10, 5)) {
    auto ff = fundamental_forms_jet(imm, p);
    for (const auto& h : ff.h) {
      CHECK(std::abs(h(0, 1) - h(1, 0)) < 1e-12);
      CHECK(std::abs(h.trace()) < 1e-10);
    }
  }
}

TEST_CASE("jet and stencil routes agree") {
  for (int s = 2; s <= 4; ++s) {
    auto imm = build_calabi_immersion(s);
    for (const auto& p : sample_points(8, 6)) {
      const auto a = point_scalars(fundamental_forms(imm, p));
      const auto b = point_scalars(fundamental_forms_jet(imm, p));
      CHECK(std::abs(a.S - b.S) < 1e-8);
      CHECK(std::abs(a.A_norm_sq - b.A_norm_sq) < 1e-8);
      CHECK(std::abs(a.rho_perp - b.rho_perp) < 1e-8);
      CHECK(std::abs(induced_curvature(imm, p) - induced_curvature_jet(imm, p)) < 1e-6);
    }
  }
}

TEST_CASE("point scalars match the model values") {
  for (int s = 1; s <= 4; ++s) {
    auto imm = build_calabi_immersion(s);
    const double S = S_of(s);
    for (const auto& p : sample_points(6, 8)) {
      auto ps = point_scalars(fundamental_forms_jet(imm, p));
      CHECK(ps.S == doctest::Approx(S).epsilon(1e-10));
      CHECK(ps.trace_A == doctest::Approx(ps.S).epsilon(1e-10));
      CHECK(std::abs(ps.H_norm_sq) < 1e-14);
      CHECK(ps.A_norm_sq == doctest::Approx(S * S / 2).epsilon(1e-9));
      CHECK(ps.rho_perp == doctest::Approx(S * S).epsilon(1e-9));
      CHECK(std::abs(ps.ab) < 1e-10);
      CHECK(ps.a_sq == doctest::Approx(S / 4).epsilon(1e-9));
      CHECK(induced_curvature_jet(imm, p) == doctest::Approx(K_of(s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("covariant derivative: B1 matches S(3S-4)/2") {
  for (int s = 2; s <= 4; ++s) {
    auto imm = build_calabi_immersion(s);
    const double S = S_of(s);
    for (const auto& p : sample_points(5, 10)) {
      auto cd = covariant_derivative_h(imm, p, 1e-3);
      CHECK(cd.B1 == doctest::Approx(S * (3 * S - 4) / 2).epsilon(1e-6));
    }
  }
  auto imm = build_calabi_immersion(3);
  CHECK_THROWS_AS(covariant_derivative_h(imm, unit(1, 0, 0), 0.1), DomainError);
  CHECK_THROWS_AS(covariant_derivative_h(imm, unit(1, 0, 0), 1e-6), DomainError);
}

TEST_CASE("sample_points: unit vectors, seeded") {
  auto a = sample_points(100, 1), b = sample_points(100, 1), c = sample_points(100, 2);
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].norm() - 1) < 1e-14);
    CHECK(a[i] == b[i]);
  }
  CHECK(a[0] != c[0]);
}

TEST_CASE("geometry scan and identity report") {
  auto imm = build_calabi_immersion(3);
  auto scan = geometry_scan(imm, 40, 1);
  CHECK(scan.samples.size() == 40);
  CHECK(scan.s == 3);
  auto rep = verify_identities(scan);
  CHECK(rep.all_pass());
  CHECK(rep.rows.size() == 7);
  auto j = summary_json(scan);
  CHECK(j.contains("S"));
  const auto csv = to_csv(scan);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
  CHECK_THROWS_AS(geometry_scan(imm, 0, 1), DomainError);
  ScanOptions no_deriv;
  no_deriv.derivatives = false;
  auto rep2 = verify_identities(geometry_scan(imm, 10, 1, no_deriv));
  bool vii_absent = false;
  for (const auto& r : rep2.rows)
    if (r.id == "vii") vii_absent = !r.present;
  CHECK(vii_absent);
  CHECK(rep2.all_pass());
}

TEST_CASE("scan reproducibility and thread independence") {
  auto imm = build_calabi_immersion(4);
  ScanOptions one, four;
  one.threads = 1;
  four.threads = 4;
  auto a = geometry_scan(imm, 30, 7, one), b = geometry_scan(imm, 30, 7, four);
  CHECK(to_csv(a) == to_csv(b));
}

TEST_CASE("identity report flags a wrong model value") {
  auto imm = build_calabi_immersion(2);
  auto scan = geometry_scan(imm, 10, 1);
  scan.s = 3;  // lie about the degree: (ii) must fail
  auto rep = verify_identities(scan);
  CHECK_FALSE(rep.all_pass());
}

}  // TEST_SUITE
