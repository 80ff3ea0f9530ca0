#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pinchcert/harmonics.hpp"

namespace pinchcert::calabi {

/// Calabi's minimal 2-sphere of degree s: p in S^2 -> R * basis(p) in S^{2s}.
struct Immersion {
  int s = 1;
  int ambient_dim = 3;       ///< 2s + 1 components
  double normalization = 1;  ///< c_s relative to an orthonormal harmonic basis
  RealHarmonicBasis basis{1};
  Eigen::MatrixXd rotation;  ///< ambient rigid motion, identity by default

  Eigen::VectorXd operator()(const Eigen::Vector3d& p) const;

  template <typename T>
  std::vector<T> evaluate_generic(const T& x, const T& y, const T& z) const {
    auto raw = basis.evaluate_generic(x, y, z);
    std::vector<T> out;
    out.reserve(raw.size());
    for (Eigen::Index i = 0; i < rotation.rows(); ++i) {
      T acc = constant_like(x, 0.0);
      for (Eigen::Index j = 0; j < rotation.cols(); ++j)
        if (rotation(i, j) != 0.0) acc += raw[j] * rotation(i, j);
      out.push_back(acc);
    }
    return out;
  }

  /// The same surface composed with an ambient rotation R (orthogonal, size N).
  Immersion rotated(const Eigen::MatrixXd& R) const;
};

/// Throws DomainError unless 1 <= s <= 6.
Immersion build_calabi_immersion(int s);

/// Haar-distributed rotation in SO(n), deterministic in seed.
Eigen::MatrixXd random_rotation(int n, std::uint64_t seed);

/// Uniform double in (0, 1) from 53 random bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng);

enum class Chart { polar_z, polar_x };
std::string to_string(Chart c);

/// polar_z: (sin u cos v, sin u sin v, cos u); polar_x: (cos u, sin u cos v, sin u sin v).
/// A point is evaluated in polar_z iff its distance from the z poles is at
/// least 0.5 rad (|z| <= cos 0.5), otherwise in polar_x.
Chart choose_chart(const Eigen::Vector3d& p);
Eigen::Vector2d chart_coords(Chart c, const Eigen::Vector3d& p);
Eigen::Vector3d chart_point(Chart c, const Eigen::Vector2d& uv);
/// Round metric of the unit sphere in chart coordinates: diag(1, sin^2 u).
Eigen::Matrix2d round_metric(const Eigen::Vector2d& uv);

struct FramedPoint {
  Eigen::Vector3d base;
  Chart chart = Chart::polar_z;
  Eigen::Vector2d coords;
  Eigen::VectorXd position;      ///< Phi(base), a unit vector
  Eigen::MatrixXd tangent;       ///< N x 2, orthonormal
  Eigen::MatrixXd normal;        ///< N x (N - 3), orthonormal, orthogonal to position and tangent
  std::vector<int> normal_columns;  ///< ambient basis column each normal was seeded from
  Eigen::Matrix2d frame_coeffs;  ///< e_i = sum_a frame_coeffs(i, a) d_a Phi
};

struct FundamentalForms {
  Eigen::Matrix2d first_form;       ///< in chart coordinates
  std::vector<Eigen::Matrix2d> h;   ///< h[alpha](i, j) in the orthonormal frames
  FramedPoint frame;
};

/// Derivatives by 4th-order central differences with the given step
/// (mixed derivative by the 16-point product stencil).
FundamentalForms fundamental_forms(const Immersion& imm, const Eigen::Vector3d& x, double step = 1e-3);
/// Same quantities from exact Taylor jets; used to cross-check the stencils.
FundamentalForms fundamental_forms_jet(const Immersion& imm, const Eigen::Vector3d& x);

/// Intrinsic Gaussian curvature of the induced metric (Brioschi formula).
/// The stencil version takes the metric from jets at the stencil nodes and
/// differentiates it by 4th-order central differences with step 10 * step;
/// the jet version is exact up to rounding.
double induced_curvature(const Immersion& imm, const Eigen::Vector3d& x, double step = 1e-3);
double induced_curvature_jet(const Immersion& imm, const Eigen::Vector3d& x);

struct CovariantDerivative {
  /// hijk[alpha][k](i, j): derivative in direction e_k.
  std::vector<std::array<Eigen::Matrix2d, 2>> hijk;
  double B1 = 0;
};

/// First covariant derivative of h by 4th-order central differences of h
/// components (from jets at the stencil nodes) taken in frames transported
/// from x (projection then Gram-Schmidt).
/// Requires step in [1e-4, 1e-2].
CovariantDerivative covariant_derivative_h(const Immersion& imm, const Eigen::Vector3d& x, double step = 1e-3);

struct PointScalars {
  double S = 0;          ///< sum of h^2
  double trace_A = 0;    ///< tr of the Gram matrix, second route to S
  Eigen::MatrixXd A;     ///< (<S_alpha, S_beta>)
  double A_norm_sq = 0;  ///< |A|^2
  double rho_perp = 0;   ///< sum |[S_alpha, S_beta]|^2
  double H_norm_sq = 0;  ///< |H|^2 with H = (1/2) tr
  double K = 0;          ///< intrinsic
  double ab = 0;         ///< <a, b>, a = (h^alpha_11), b = (h^alpha_12)
  double a_sq = 0;
  double b_sq = 0;
  std::optional<double> B1;
};

/// All algebraic scalars except K and B1.
PointScalars point_scalars(const FundamentalForms& ff);

struct ScanOptions {
  double step = 1e-3;
  bool derivatives = true;
  unsigned threads = 0;  ///< 0: worker_count()
};

struct GeometryScan {
  int s = 1;
  std::uint64_t seed = 0;
  ScanOptions options;
  std::vector<Eigen::Vector3d> points;
  std::vector<PointScalars> samples;
};

/// Seeded spherical Fibonacci lattice with jitter.
std::vector<Eigen::Vector3d> sample_points(int n, std::uint64_t seed);

/// Throws DomainError when n_samples < 1.
GeometryScan geometry_scan(const Immersion& imm, int n_samples, std::uint64_t seed, const ScanOptions& opt = {});

struct IdentityResidual {
  std::string id;
  std::string description;
  bool present = true;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = true;
};

struct IdentityReport {
  std::vector<IdentityResidual> rows;
  bool all_pass() const;
};

/// Keys "i" .. "vii".
std::map<std::string, double> default_tolerances();

/// (i) |H|^2 = 0; (ii) S = S(s); (iii) 2K + S = 2; (iv) |A|^2 = S^2/2;
/// (v) rho_perp = S^2; (vi) <a,b> = 0 and |a|^2 = |b|^2 = S/4;
/// (vii) B1 = S(3S-4)/2, skipped when no derivative data.
IdentityReport verify_identities(const GeometryScan& scan,
                                 const std::map<std::string, double>& tolerances = default_tolerances());

std::string to_csv(const GeometryScan& scan);
nlohmann::json summary_json(const GeometryScan& scan);
nlohmann::json to_json(const IdentityReport& r);

}  // namespace pinchcert::calabi
