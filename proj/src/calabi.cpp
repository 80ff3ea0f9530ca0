#include "pinchcert/calabi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "pinchcert/errors.hpp"
#include "pinchcert/parallel.hpp"
#include "pinchcert/pinching.hpp"

namespace pinchcert::calabi {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

Eigen::VectorXd Immersion::operator()(const Vector3d& p) const { return rotation * basis.evaluate(p); }

Immersion Immersion::rotated(const MatrixXd& R) const {
  if (R.rows() != ambient_dim || R.cols() != ambient_dim) throw DomainError("Immersion::rotated: size mismatch");
  Immersion out = *this;
  out.rotation = R * rotation;
  return out;
}

Immersion build_calabi_immersion(int s) {
  if (s < 1 || s > 6) throw DomainError("build_calabi_immersion: s must lie in [1, 6]");
  Immersion imm;
  imm.s = s;
  imm.ambient_dim = 2 * s + 1;
  imm.basis = RealHarmonicBasis(s);
  imm.normalization = imm.basis.normalization();
  imm.rotation = MatrixXd::Identity(imm.ambient_dim, imm.ambient_dim);
  return imm;
}

double uniform01(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

MatrixXd random_rotation(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u1 = uniform01(rng), u2 = uniform01(rng);
      g(i, j) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

std::string to_string(Chart c) { return c == Chart::polar_z ? "polar_z" : "polar_x"; }

Chart choose_chart(const Vector3d& p) { return std::abs(p.z()) <= std::cos(0.5) ? Chart::polar_z : Chart::polar_x; }

Vector2d chart_coords(Chart c, const Vector3d& p) {
  const Vector3d q = p.normalized();
  if (c == Chart::polar_z) return {std::acos(std::clamp(q.z(), -1.0, 1.0)), std::atan2(q.y(), q.x())};
  return {std::acos(std::clamp(q.x(), -1.0, 1.0)), std::atan2(q.z(), q.y())};
}

namespace {

template <typename T>
std::array<T, 3> chart_map(Chart c, const T& u, const T& v) {
  using std::cos;
  using std::sin;
  const T su = sin(u), cu = cos(u), sv = sin(v), cv = cos(v);
  if (c == Chart::polar_z) return {su * cv, su * sv, cu};
  return {cu, su * cv, su * sv};
}

}  // namespace

Vector3d chart_point(Chart c, const Vector2d& uv) {
  const auto p = chart_map(c, uv[0], uv[1]);
  return {p[0], p[1], p[2]};
}

Matrix2d round_metric(const Vector2d& uv) {
  Matrix2d g = Matrix2d::Zero();
  g(0, 0) = 1.0;
  g(1, 1) = std::sin(uv[0]) * std::sin(uv[0]);
  return g;
}

namespace {

// Ambient derivatives at a chart point.
struct Derivs {
  VectorXd f, fu, fv, fuu, fuv, fvv;
};

// 4th-order central stencils for offsets -2, -1, 1, 2, as integer numerators
// over 12 (first and second) or 144 (mixed).
constexpr int kOff[4] = {-2, -1, 1, 2};
constexpr int kD1[4] = {1, -8, 8, -1};
constexpr int kD2[4] = {-1, 16, 16, -1};
constexpr int kD2Center = -30;

template <typename R, typename F>
R first_derivative(F&& f, double h) {
  R acc = f(kOff[0]) * static_cast<double>(kD1[0]);
  for (int k = 1; k < 4; ++k) acc += f(kOff[k]) * static_cast<double>(kD1[k]);
  return acc / (12 * h);
}

template <typename R, typename F>
R second_derivative(F&& f, const R& center, double h) {
  R acc = center * static_cast<double>(kD2Center);
  for (int k = 0; k < 4; ++k) acc += f(kOff[k]) * static_cast<double>(kD2[k]);
  return acc / (12 * h * h);
}

template <typename R, typename F>
R mixed_derivative(F&& f, double hu, double hv) {
  R acc = f(kOff[0], kOff[0]) * static_cast<double>(kD1[0] * kD1[0]);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a || b) acc += f(kOff[a], kOff[b]) * static_cast<double>(kD1[a] * kD1[b]);
  return acc / (144 * hu * hv);
}

// h components as a vector space, for differencing.
struct HList {
  std::vector<Matrix2d> items;
  HList operator*(double k) const {
    HList o = *this;
    for (auto& m : o.items) m *= k;
    return o;
  }
  HList operator/(double k) const { return *this * (1.0 / k); }
  HList& operator+=(const HList& o) {
    for (std::size_t i = 0; i < items.size(); ++i) items[i] += o.items[i];
    return *this;
  }
};

// Stencil nodes are evaluated and combined in long double, which keeps the
// O(eps / h^2) rounding of the second differences far below the truncation
// error at the default step.
using VectorXl = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

VectorXl phi_ext(const Immersion& imm, Chart c, long double u, long double v) {
  const auto p = chart_map(c, u, v);
  const auto comps = imm.evaluate_generic(p[0], p[1], p[2]);
  VectorXl out(static_cast<Eigen::Index>(comps.size()));
  for (std::size_t k = 0; k < comps.size(); ++k) out[static_cast<Eigen::Index>(k)] = comps[k];
  return out;
}

Derivs stencil_derivs(const Immersion& imm, Chart c, const Vector2d& uv, double step) {
  const long double u = uv[0], v = uv[1], h = step;
  auto at = [&](int a, int b) { return phi_ext(imm, c, u + a * h, v + b * h); };
  const VectorXl f = at(0, 0);
  VectorXl fu = VectorXl::Zero(f.size()), fv = fu, fuu = f * static_cast<long double>(kD2Center), fvv = fuu, fuv = fu;
  for (int k = 0; k < 4; ++k) {
    const VectorXl pu = at(kOff[k], 0), pv = at(0, kOff[k]);
    fu += pu * static_cast<long double>(kD1[k]);
    fv += pv * static_cast<long double>(kD1[k]);
    fuu += pu * static_cast<long double>(kD2[k]);
    fvv += pv * static_cast<long double>(kD2[k]);
    for (int j = 0; j < 4; ++j) fuv += at(kOff[k], kOff[j]) * static_cast<long double>(kD1[k] * kD1[j]);
  }
  Derivs d;
  d.f = f.cast<double>();
  d.fu = (fu / (12 * h)).cast<double>();
  d.fv = (fv / (12 * h)).cast<double>();
  d.fuu = (fuu / (12 * h * h)).cast<double>();
  d.fvv = (fvv / (12 * h * h)).cast<double>();
  d.fuv = (fuv / (144 * h * h)).cast<double>();
  return d;
}

std::vector<Jet> jet_phi(const Immersion& imm, Chart c, const Vector2d& uv, int order) {
  const Jet u = Jet::variable(order, uv[0], 0);
  const Jet v = Jet::variable(order, uv[1], 1);
  const auto p = chart_map(c, u, v);
  return imm.evaluate_generic(p[0], p[1], p[2]);
}

Derivs jet_derivs(const Immersion& imm, Chart c, const Vector2d& uv) {
  const auto comps = jet_phi(imm, c, uv, 2);
  const auto n = static_cast<Eigen::Index>(comps.size());
  Derivs d{VectorXd(n), VectorXd(n), VectorXd(n), VectorXd(n), VectorXd(n), VectorXd(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Jet& j = comps[k];
    d.f[k] = j.derivative(0, 0);
    d.fu[k] = j.derivative(1, 0);
    d.fv[k] = j.derivative(0, 1);
    d.fuu[k] = j.derivative(2, 0);
    d.fuv[k] = j.derivative(1, 1);
    d.fvv[k] = j.derivative(0, 2);
  }
  return d;
}

// Tangent frame by Gram-Schmidt of (fu, fv); coefficients c with e_i = c_ia d_a.
void tangent_frame(const Derivs& d, MatrixXd& e, Matrix2d& c) {
  const double nu = d.fu.norm();
  if (nu == 0.0) throw DegenerateInputError("tangent frame: vanishing u derivative");
  const VectorXd e1 = d.fu / nu;
  const double proj = d.fv.dot(e1);
  const VectorXd w = d.fv - proj * e1;
  const double nw = w.norm();
  if (nw <= 1e-10 * d.fv.norm()) throw DegenerateInputError("tangent frame: rank < 2");
  e.resize(d.f.size(), 2);
  e.col(0) = e1;
  e.col(1) = w / nw;
  c << 1.0 / nu, 0.0, -proj / (nw * nu), 1.0 / nw;
}

// Orthonormal completion of `fixed` by pivoted Gram-Schmidt over the
// standard basis: at each step the column with the largest residual wins.
MatrixXd complete_basis(const MatrixXd& fixed, int count, std::vector<int>& columns) {
  const auto n = fixed.rows();
  MatrixXd q = fixed;
  MatrixXd out(n, count);
  columns.clear();
  std::vector<bool> used(n, false);
  for (int k = 0; k < count; ++k) {
    int best = -1;
    double best_norm = -1;
    VectorXd best_vec;
    for (Eigen::Index col = 0; col < n; ++col) {
      if (used[col]) continue;
      VectorXd r = VectorXd::Unit(n, col);
      for (int pass = 0; pass < 2; ++pass) r -= q * (q.transpose() * r);
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = static_cast<int>(col);
        best_vec = r;
      }
    }
    if (best < 0 || best_norm < 1e-8) throw DegenerateInputError("normal frame: cannot complete the basis");
    used[best] = true;
    columns.push_back(best);
    out.col(k) = best_vec / best_norm;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = out.col(k);
  }
  return out;
}

std::vector<Matrix2d> second_form(const Derivs& d, const MatrixXd& normals, const Matrix2d& c) {
  std::vector<Matrix2d> h(normals.cols());
  for (Eigen::Index a = 0; a < normals.cols(); ++a) {
    const auto n = normals.col(a);
    Matrix2d raw;
    raw << d.fuu.dot(n), d.fuv.dot(n), d.fuv.dot(n), d.fvv.dot(n);
    h[a] = c * raw * c.transpose();
  }
  return h;
}

FundamentalForms assemble(const Derivs& d, const Vector3d& x, Chart chart, const Vector2d& uv) {
  FundamentalForms ff;
  ff.first_form << d.fu.dot(d.fu), d.fu.dot(d.fv), d.fu.dot(d.fv), d.fv.dot(d.fv);
  FramedPoint& fp = ff.frame;
  fp.base = x;
  fp.chart = chart;
  fp.coords = uv;
  fp.position = d.f;
  tangent_frame(d, fp.tangent, fp.frame_coeffs);
  MatrixXd fixed(d.f.size(), 3);
  fixed.col(0) = d.f.normalized();
  fixed.col(1) = fp.tangent.col(0);
  fixed.col(2) = fp.tangent.col(1);
  fp.normal = complete_basis(fixed, static_cast<int>(d.f.size()) - 3, fp.normal_columns);
  ff.h = second_form(d, fp.normal, fp.frame_coeffs);
  return ff;
}

struct Metric {
  double E, F, G;
  Metric operator+(const Metric& o) const { return {E + o.E, F + o.F, G + o.G}; }
  Metric& operator+=(const Metric& o) {
    E += o.E;
    F += o.F;
    G += o.G;
    return *this;
  }
  Metric operator*(double k) const { return {E * k, F * k, G * k}; }
  Metric operator/(double k) const { return {E / k, F / k, G / k}; }
};

struct MetricJet {
  double E, F, G, Eu, Ev, Fu, Fv, Gu, Gv, Evv, Fuv, Guu;
};

double brioschi(const MetricJet& m) {
  Eigen::Matrix3d a, b;
  a << -0.5 * m.Evv + m.Fuv - 0.5 * m.Guu, 0.5 * m.Eu, m.Fu - 0.5 * m.Ev,  //
      m.Fv - 0.5 * m.Gu, m.E, m.F,                                         //
      0.5 * m.Gv, m.F, m.G;
  b << 0.0, 0.5 * m.Ev, 0.5 * m.Gu,  //
      0.5 * m.Ev, m.E, m.F,          //
      0.5 * m.Gu, m.F, m.G;
  const double det = m.E * m.G - m.F * m.F;
  return (a.determinant() - b.determinant()) / (det * det);
}

Vector2d base_coords(const Vector3d& x, Chart& chart) {
  if (std::abs(x.norm() - 1.0) > 1e-9) throw DomainError("point must lie on the unit sphere");
  chart = choose_chart(x);
  return chart_coords(chart, x);
}

}  // namespace

FundamentalForms fundamental_forms(const Immersion& imm, const Vector3d& x, double step) {
  if (!(step > 0)) throw DomainError("fundamental_forms: step must be positive");
  Chart chart;
  const Vector2d uv = base_coords(x, chart);
  return assemble(stencil_derivs(imm, chart, uv, step), x, chart, uv);
}

FundamentalForms fundamental_forms_jet(const Immersion& imm, const Vector3d& x) {
  Chart chart;
  const Vector2d uv = base_coords(x, chart);
  return assemble(jet_derivs(imm, chart, uv), x, chart, uv);
}

double induced_curvature(const Immersion& imm, const Vector3d& x, double step) {
  if (!(step > 0)) throw DomainError("induced_curvature: step must be positive");
  Chart chart;
  const Vector2d uv = base_coords(x, chart);
  const double H = 10.0 * step;
  auto metric = [&](int a, int b) {
    const Derivs d = jet_derivs(imm, chart, Vector2d(uv[0] + a * H, uv[1] + b * H));
    return Metric{d.fu.dot(d.fu), d.fu.dot(d.fv), d.fv.dot(d.fv)};
  };
  const Metric m0 = metric(0, 0);
  const Metric mu = first_derivative<Metric>([&](int k) { return metric(k, 0); }, H);
  const Metric mv = first_derivative<Metric>([&](int k) { return metric(0, k); }, H);
  const Metric muu = second_derivative<Metric>([&](int k) { return metric(k, 0); }, m0, H);
  const Metric mvv = second_derivative<Metric>([&](int k) { return metric(0, k); }, m0, H);
  const Metric muv = mixed_derivative<Metric>(metric, H, H);
  return brioschi({m0.E, m0.F, m0.G, mu.E, mv.E, mu.F, mv.F, mu.G, mv.G, mvv.E, muv.F, muu.G});
}

double induced_curvature_jet(const Immersion& imm, const Vector3d& x) {
  Chart chart;
  const Vector2d uv = base_coords(x, chart);
  const auto comps = jet_phi(imm, chart, uv, 4);
  Jet E(3), F(3), G(3);
  for (const auto& c : comps) {
    const Jet cu = c.partial(0), cv = c.partial(1);
    E += cu * cu;
    F += cu * cv;
    G += cv * cv;
  }
  return brioschi({E.value(), F.value(), G.value(), E.derivative(1, 0), E.derivative(0, 1), F.derivative(1, 0),
                   F.derivative(0, 1), G.derivative(1, 0), G.derivative(0, 1), E.derivative(0, 2),
                   F.derivative(1, 1), G.derivative(2, 0)});
}

CovariantDerivative covariant_derivative_h(const Immersion& imm, const Vector3d& x, double step) {
  if (step < 1e-4 || step > 1e-2) throw DomainError("covariant_derivative_h: step must lie in [1e-4, 1e-2]");
  Chart chart;
  const Vector2d uv = base_coords(x, chart);
  const FundamentalForms base = assemble(jet_derivs(imm, chart, uv), x, chart, uv);
  const MatrixXd& e0 = base.frame.tangent;
  const MatrixXd& n0 = base.frame.normal;
  const auto p = n0.cols();

  // h components at a neighbour, in frames transported from the base point.
  auto transported_h = [&](const Vector2d& at) {
    const Derivs d = jet_derivs(imm, chart, at);
    MatrixXd T(d.f.size(), 2);
    T.col(0) = d.fu;
    T.col(1) = d.fv;
    const Matrix2d gram = T.transpose() * T;
    const Matrix2d ginv = gram.inverse();
    MatrixXd e = T * (ginv * (T.transpose() * e0));
    // Gram-Schmidt
    e.col(0).normalize();
    e.col(1) -= e.col(1).dot(e.col(0)) * e.col(0);
    e.col(1).normalize();
    const Matrix2d c = (ginv * (T.transpose() * e)).transpose();  // e_i = c_ia d_a

    MatrixXd q(d.f.size(), 3);
    q.col(0) = d.f.normalized();
    q.col(1) = e.col(0);
    q.col(2) = e.col(1);
    MatrixXd n = n0;
    for (Eigen::Index a = 0; a < p; ++a) {
      VectorXd r = n.col(a);
      for (int pass = 0; pass < 2; ++pass) {
        r -= q * (q.transpose() * r);
        for (Eigen::Index b = 0; b < a; ++b) r -= n.col(b).dot(r) * n.col(b);
      }
      n.col(a) = r.normalized();
    }
    return second_form(d, n, c);
  };

  std::array<std::vector<Matrix2d>, 2> dh;  // coordinate derivatives of h components
  for (int dir = 0; dir < 2; ++dir) {
    auto shifted = [&](int k) {
      Vector2d at = uv;
      at[dir] += k * step;
      return HList{transported_h(at)};
    };
    dh[dir] = first_derivative<HList>(shifted, step).items;
  }

  CovariantDerivative out;
  out.hijk.resize(p);
  const Matrix2d& c = base.frame.frame_coeffs;
  for (Eigen::Index a = 0; a < p; ++a)
    for (int k = 0; k < 2; ++k) {
      out.hijk[a][k] = c(k, 0) * dh[0][a] + c(k, 1) * dh[1][a];
      out.B1 += out.hijk[a][k].squaredNorm();
    }
  return out;
}

PointScalars point_scalars(const FundamentalForms& ff) {
  PointScalars ps;
  const auto p = static_cast<Eigen::Index>(ff.h.size());
  ps.A = MatrixXd::Zero(p, p);
  for (Eigen::Index a = 0; a < p; ++a) {
    const Matrix2d& Sa = ff.h[a];
    ps.S += Sa.squaredNorm();
    const double tr = 0.5 * Sa.trace();
    ps.H_norm_sq += tr * tr;
    ps.ab += Sa(0, 0) * Sa(0, 1);
    ps.a_sq += Sa(0, 0) * Sa(0, 0);
    ps.b_sq += Sa(0, 1) * Sa(0, 1);
    for (Eigen::Index b = 0; b < p; ++b) {
      const Matrix2d& Sb = ff.h[b];
      ps.A(a, b) = (Sa * Sb).trace();
      ps.rho_perp += (Sa * Sb - Sb * Sa).squaredNorm();
    }
  }
  ps.trace_A = ps.A.trace();
  ps.A_norm_sq = ps.A.squaredNorm();
  return ps;
}

std::vector<Vector3d> sample_points(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_points: n must be >= 1");
  std::mt19937_64 rng(seed);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  const double phase = 2.0 * M_PI * uniform01(rng);
  std::vector<Vector3d> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / n + (uniform01(rng) - 0.5) / n;
    z = std::clamp(z, -1.0, 1.0);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = i * golden + phase + 0.1 * (uniform01(rng) - 0.5);
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    pts.back().normalize();
  }
  return pts;
}

GeometryScan geometry_scan(const Immersion& imm, int n_samples, std::uint64_t seed, const ScanOptions& opt) {
  if (n_samples < 1) throw DomainError("geometry_scan: n_samples must be >= 1");
  GeometryScan scan;
  scan.s = imm.s;
  scan.seed = seed;
  scan.options = opt;
  scan.points = sample_points(n_samples, seed);
  scan.samples.resize(n_samples);
  const unsigned threads = opt.threads ? opt.threads : worker_count();
  parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t i) {
    const Vector3d& x = scan.points[i];
    PointScalars ps = point_scalars(fundamental_forms(imm, x, opt.step));
    ps.K = induced_curvature(imm, x, opt.step);
    if (opt.derivatives) ps.B1 = covariant_derivative_h(imm, x, opt.step).B1;
    scan.samples[i] = std::move(ps);
  });
  return scan;
}

bool IdentityReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const IdentityResidual& r) { return r.pass; });
}

std::map<std::string, double> default_tolerances() {
  return {{"i", 1e-8}, {"ii", 1e-6}, {"iii", 1e-6}, {"iv", 1e-6}, {"v", 1e-6}, {"vi", 1e-6}, {"vii", 1e-3}};
}

IdentityReport verify_identities(const GeometryScan& scan, const std::map<std::string, double>& tol) {
  if (scan.samples.empty()) throw DomainError("verify_identities: empty scan");
  const double S_model = bounds::calabi_value(scan.s).S.to_double();
  struct Spec {
    const char* id;
    const char* description;
    double (*residual)(const PointScalars&, double);
  };
  const Spec specs[] = {
      {"i", "|H|^2 = 0", [](const PointScalars& p, double) { return std::abs(p.H_norm_sq); }},
      {"ii", "S = S(s)", [](const PointScalars& p, double m) { return std::abs(p.S - m); }},
      {"iii", "2K + S = 2", [](const PointScalars& p, double) { return std::abs(2 * p.K + p.S - 2); }},
      {"iv", "|A|^2 = S^2/2", [](const PointScalars& p, double) { return std::abs(p.A_norm_sq - p.S * p.S / 2); }},
      {"v", "rho_perp = S^2", [](const PointScalars& p, double) { return std::abs(p.rho_perp - p.S * p.S); }},
      {"vi", "<a,b> = 0, |a|^2 = |b|^2 = S/4",
       [](const PointScalars& p, double) {
         return std::max({std::abs(p.ab), std::abs(p.a_sq - p.S / 4), std::abs(p.b_sq - p.S / 4)});
       }},
  };
  IdentityReport rep;
  for (const auto& sp : specs) {
    IdentityResidual r{sp.id, sp.description, true, 0.0, tol.at(sp.id), true};
    for (const auto& p : scan.samples) r.max_residual = std::max(r.max_residual, sp.residual(p, S_model));
    r.pass = r.max_residual <= r.tolerance;
    rep.rows.push_back(r);
  }
  IdentityResidual b1{"vii", "B1 = S(3S-4)/2", scan.samples.front().B1.has_value(), 0.0, tol.at("vii"), true};
  if (b1.present) {
    for (const auto& p : scan.samples) {
      if (!p.B1) continue;
      b1.max_residual = std::max(b1.max_residual, std::abs(*p.B1 - p.S * (3 * p.S - 4) / 2));
    }
    b1.pass = b1.max_residual <= b1.tolerance;
  }
  rep.rows.push_back(b1);
  return rep;
}

std::string to_csv(const GeometryScan& scan) {
  std::ostringstream os;
  os.precision(17);
  const auto p = scan.samples.empty() ? 0 : scan.samples.front().A.rows();
  os << "index,x,y,z,S,trace_A,A_norm_sq,rho_perp,H_norm_sq,K,ab,a_sq,b_sq,B1";
  for (Eigen::Index a = 0; a < p; ++a)
    for (Eigen::Index b = a; b < p; ++b) os << ",A_" << a << "_" << b;
  os << "\n";
  for (std::size_t i = 0; i < scan.samples.size(); ++i) {
    const auto& s = scan.samples[i];
    const auto& x = scan.points[i];
    os << i << "," << x.x() << "," << x.y() << "," << x.z() << "," << s.S << "," << s.trace_A << "," << s.A_norm_sq
       << "," << s.rho_perp << "," << s.H_norm_sq << "," << s.K << "," << s.ab << "," << s.a_sq << "," << s.b_sq
       << ",";
    if (s.B1) os << *s.B1;
    for (Eigen::Index a = 0; a < p; ++a)
      for (Eigen::Index b = a; b < p; ++b) os << "," << s.A(a, b);
    os << "\n";
  }
  return os.str();
}

nlohmann::json summary_json(const GeometryScan& scan) {
  auto stats = [&](auto get) {
    std::vector<double> vals;
    for (const auto& s : scan.samples)
      if (const std::optional<double> v = get(s)) vals.push_back(*v);
    if (vals.empty()) return nlohmann::json(nullptr);
    double sum = 0;
    for (double v : vals) sum += v;
    const double mean = sum / vals.size();
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    return nlohmann::json{{"min", *std::min_element(vals.begin(), vals.end())},
                          {"max", *std::max_element(vals.begin(), vals.end())},
                          {"mean", mean},
                          {"stddev", std::sqrt(var / vals.size())}};
  };
  const auto cv = bounds::calabi_value(scan.s);
  return {{"s", scan.s},
          {"samples", scan.samples.size()},
          {"seed", scan.seed},
          {"step", scan.options.step},
          {"expected", {{"S", cv.S.to_string()}, {"K", cv.K.to_string()}, {"ambient_sphere_dim", cv.ambient_dim}}},
          {"S", stats([](const PointScalars& p) { return std::optional<double>(p.S); })},
          {"trace_A", stats([](const PointScalars& p) { return std::optional<double>(p.trace_A); })},
          {"A_norm_sq", stats([](const PointScalars& p) { return std::optional<double>(p.A_norm_sq); })},
          {"rho_perp", stats([](const PointScalars& p) { return std::optional<double>(p.rho_perp); })},
          {"H_norm_sq", stats([](const PointScalars& p) { return std::optional<double>(p.H_norm_sq); })},
          {"K", stats([](const PointScalars& p) { return std::optional<double>(p.K); })},
          {"B1", stats([](const PointScalars& p) { return p.B1; })}};
}

nlohmann::json to_json(const IdentityReport& r) {
  auto rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json j = {{"id", row.id}, {"identity", row.description}, {"present", row.present},
                        {"tolerance", row.tolerance}, {"pass", row.pass}};
    j["max_residual"] = row.present ? nlohmann::json(row.max_residual) : nlohmann::json(nullptr);
    rows.push_back(j);
  }
  return {{"identities", rows}, {"all_pass", r.all_pass()}};
}

}  // namespace pinchcert::calabi
