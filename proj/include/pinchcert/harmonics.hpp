#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pinchcert/jet.hpp"

namespace pinchcert::calabi {

inline double constant_like(double, double v) { return v; }
inline long double constant_like(long double, double v) { return v; }
inline Jet constant_like(const Jet& like, double v) { return Jet(like.order(), v); }

/// Real degree-s spherical harmonics restricted to the unit sphere, ordered
/// m = 0, 1, -1, 2, -2, ..., s, -s:
///   m = 0:  P_s(z)
///   m > 0:  k_m P_s^{(m)}(z) Re (x + i y)^m
///   m < 0:  k_m P_s^{(|m|)}(z) Im (x + i y)^|m|
/// with k_m = sqrt(2 (s-m)! / (s+m)!).  The addition theorem gives
/// sum of squares = 1 on the sphere, i.e. c_s = sqrt(4 pi / (2s+1)) times an
/// orthonormal basis.
class RealHarmonicBasis {
 public:
  explicit RealHarmonicBasis(int s);

  int degree() const { return s_; }
  int size() const { return 2 * s_ + 1; }
  int order_of(int component) const;  ///< signed m of a component
  std::string label(int component) const;
  /// sqrt(4 pi / (2s + 1)): scale relative to the L^2-orthonormal basis.
  double normalization() const;

  Eigen::VectorXd evaluate(const Eigen::Vector3d& p) const;

  /// Works for any ring-like T with +, -, *, T * double and an overload
  /// constant_like(const T&, double).
  template <typename T>
  std::vector<T> evaluate_generic(const T& x, const T& y, const T& z) const {
    std::vector<T> out;
    out.reserve(size());
    T re = constant_like(x, 1.0);
    T im = constant_like(x, 0.0);
    for (int m = 0; m <= s_; ++m) {
      if (m > 0) {
        T nre = re * x - im * y;
        im = re * y + im * x;
        re = nre;
      }
      const auto& c = dlegendre_[m];
      T q = constant_like(x, c.back());
      for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) q = q * z + constant_like(x, c[k]);
      if (m == 0) {
        out.push_back(q);
      } else {
        out.push_back((q * re) * scale_[m]);
        out.push_back((q * im) * scale_[m]);
      }
    }
    return out;
  }

  const std::vector<double>& legendre_derivative(int m) const { return dlegendre_.at(m); }

 private:
  int s_;
  std::vector<std::vector<double>> dlegendre_;  ///< coefficients of P_s^{(m)}, low to high
  std::vector<double> scale_;
};

}  // namespace pinchcert::calabi
