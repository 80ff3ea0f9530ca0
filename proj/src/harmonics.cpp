#include "pinchcert/harmonics.hpp"

#include <cmath>

#include "pinchcert/errors.hpp"

namespace pinchcert::calabi {

namespace {

std::vector<double> differentiate(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

// (n+1) P_{n+1} = (2n+1) z P_n - n P_{n-1}
std::vector<double> legendre(int s) {
  std::vector<double> prev{1.0}, cur{0.0, 1.0};
  if (s == 0) return prev;
  for (int n = 1; n < s; ++n) {
    std::vector<double> next(n + 2, 0.0);
    for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += (2.0 * n + 1) * cur[k];
    for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= n * prev[k];
    for (auto& v : next) v /= (n + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

RealHarmonicBasis::RealHarmonicBasis(int s) : s_(s) {
  if (s < 0) throw DomainError("RealHarmonicBasis: degree must be >= 0");
  dlegendre_.push_back(legendre(s));
  for (int m = 1; m <= s; ++m) dlegendre_.push_back(differentiate(dlegendre_.back()));
  scale_.assign(s + 1, 1.0);
  for (int m = 1; m <= s; ++m) {
    // 2 (s-m)! / (s+m)! = 2 / prod_{k=s-m+1}^{s+m} k
    double prod = 1.0;
    for (int k = s - m + 1; k <= s + m; ++k) prod *= k;
    scale_[m] = std::sqrt(2.0 / prod);
  }
}

int RealHarmonicBasis::order_of(int component) const {
  if (component < 0 || component >= size()) throw DomainError("RealHarmonicBasis: component out of range");
  if (component == 0) return 0;
  const int m = (component + 1) / 2;
  return component % 2 == 1 ? m : -m;
}

std::string RealHarmonicBasis::label(int component) const {
  return "Y(" + std::to_string(s_) + "," + std::to_string(order_of(component)) + ")";
}

double RealHarmonicBasis::normalization() const { return std::sqrt(4.0 * M_PI / (2.0 * s_ + 1.0)); }

Eigen::VectorXd RealHarmonicBasis::evaluate(const Eigen::Vector3d& p) const {
  const auto v = evaluate_generic(p.x(), p.y(), p.z());
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace pinchcert::calabi
