#pragma once

#include <optional>
#include <vector>

#include "pinchcert/certificate.hpp"
#include "pinchcert/polynomial.hpp"

namespace pinchcert {

/// 10^-6.
Rational default_isolation_width();

/// Canonical chain p, p', -rem(p_{i-1}, p_i), ... up to the last nonzero
/// remainder.  A final member of positive degree is gcd(p, p') and signals a
/// repeated root.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Same chain with each member rescaled by a positive constant to coprime
/// integer coefficients.  Sign variations agree with the canonical chain.
std::vector<Polynomial> sturm_sequence_primitive(const Polynomial& p);

/// Sign changes along the chain at x, zeros skipped.
int sign_variations(const std::vector<Polynomial>& chain, const Rational& x);

struct RootCount {
  int count = 0;
  SignCertificate certificate;
};

/// Distinct real roots in the open interval (lo, hi).  An endpoint that is
/// itself a root is moved inward by 10^-k (hi - lo), k = 6..12, and the
/// nudge is recorded in the certificate.
RootCount count_roots(const Polynomial& p, const IntervalQ& iv);

struct RootEnclosure {
  IntervalQ enclosure;
  SignCertificate certificate;
};

/// Bisects to an enclosure of width <= `width` whose endpoints have strictly
/// opposite signs and which lies strictly inside one open cell
/// (k width, (k+1) width) of the width grid, so it also fixes the root's
/// decimal digits at that resolution (a root on the grid gets a tiny
/// centred enclosure).  Requires count_roots(p, iv) == 1.
RootEnclosure isolate_root(const Polynomial& p, const IntervalQ& iv,
                           const Rational& width = default_isolation_width());

enum class Sign { positive, negative };

/// Certifies p > 0 (or p < 0) on all of the closed interval.  Throws
/// SignClaimError with a rational witness when the claim is false.
SignCertificate certify_sign_on_interval(const Polynomial& p, const IntervalQ& iv, Sign sign);

enum class Extreme { smallest, largest };

/// Smallest or largest distinct root in the half-open interval (lo, hi].
/// Returns [a, b] with the root in (a, b] and b - a <= width, or nullopt when
/// there is none.  Works on the squarefree part, so lo and hi may be roots.
std::optional<IntervalQ> isolate_extreme_root(const Polynomial& p, const Rational& lo, const Rational& hi,
                                              const Rational& width, Extreme which);

}  // namespace pinchcert
