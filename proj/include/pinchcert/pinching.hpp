#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinchcert/certificate.hpp"
#include "pinchcert/polynomial.hpp"

namespace pinchcert::bounds {

/// Calabi's minimal 2-sphere of harmonic degree s in S^{2s}.
struct CalabiValue {
  int s = 1;
  Rational K;  ///< Gaussian curvature 2/(s(s+1))
  Rational S;  ///< |h|^2 = 2(s-1)(s+2)/(s(s+1))
  int ambient_dim = 2;
};

CalabiValue calabi_value(int s);

// Interval endpoints and the published four-decimal pinching constants.
inline Rational s_lower() { return Rational(5, 3); }
inline Rational s_upper() { return Rational(9, 5); }
inline Rational published_left_pinch() { return Rational(17075, 10000); }
inline Rational published_right_pinch() { return Rational(17853, 10000); }

/// Expanded cubic x(3x-4)(5x-9) + 5/36 (3x-5)(11/4 x + 151/60)^2.
Polynomial theta1();
/// The same expression evaluated factor by factor.
Rational theta1_factored(const Rational& x);

/// 40t(2t-1) x(3x-4)(3x-5) + (9/5 t + 36/5)^2 (9-5x), 0 < t <= 1/2.
Polynomial theta2(const Rational& t);
Rational theta2_factored(const Rational& x, const Rational& t);

/// Numerator N(x) = 12x(9-5x)(3x-4) and denominator
/// D(x) = 60x(3x-4) + 5(19/4 x - 9/20)^2 of the gap function y = N/D.
Polynomial gap_numerator();
Polynomial gap_denominator();

/// y(S_min) = N/D, the lower bound on S_max - S_min for S_min in [5/3, 9/5].
Rational gap_lower_bound(const Rational& s_min);

/// Older bound (134 - 114 S_min + sqrt(F)) / 108 held as
/// rational_part + sqrt(radicand) / 108.
struct LegacyBound {
  Rational rational_part;
  Rational radicand;
  double approx() const;
};

LegacyBound legacy_gap_bound(const Rational& s_min);
/// sign(bound - q), exactly (squares with sign bookkeeping).
int compare(const LegacyBound& bound, const Rational& q);

/// Largest S_max excluded by the gap bound; equals w + gap_lower_bound(w).
/// Evaluated from the closed-form quotient, not from the identity.
Rational smax_threshold(const Rational& w);

/// x(3x-4)(3x-5)(5x-9) + 5/4 (w-x)^2 (11/4 x + 19/4 w - 27/5)^2.
Rational left_certificate_half(const Rational& x, const Rational& w);

/// Generalised left certificate
///   x(3x-4)(3x-5)(5x-9) + 5 (w-x)^2 / (16 t (1-t)) * sup_{S in [5/3, x]} x g(S)^2 / S
/// with g(S) = (2+15t)/2 (w+S) + 36/5 - 2x - 126t/5.  g(S)^2/S is convex in
/// S > 0, so the sup is taken at S = x or S = 5/3.  A negative value rules x
/// out as S_max (for surfaces with S_min >= w).  At t = 1/2 this coincides
/// with left_certificate_half.
Rational left_certificate(const Rational& x, const Rational& w, const Rational& t);

/// The two branches of the sup as polynomials in x for fixed (w, t):
/// `at_smax` uses S = x, `at_lower` uses S = 5/3.  The certificate is their
/// pointwise max.
struct LeftPieces {
  Polynomial at_smax;
  Polynomial at_lower;
};
LeftPieces left_certificate_pieces(const Rational& w, const Rational& t);

void check_t(const Rational& t, const char* where);
void check_in_pinching_interval(const Rational& x, const char* name, const char* where);

/// A named result whose every number is backed by certificates.
struct ThresholdReport {
  std::string name;
  std::vector<LabeledCertificate> certificates;
  std::optional<IntervalQ> root_enclosure;
  std::map<std::string, Rational> parameters;
  std::string conclusion;
};

nlohmann::json to_json(const ThresholdReport& r);

}  // namespace pinchcert::bounds
