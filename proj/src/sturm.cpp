#include "pinchcert/sturm.hpp"

#include "pinchcert/errors.hpp"

namespace pinchcert {

Rational default_isolation_width() { return Rational::pow10(-6); }

namespace {

template <typename Normalize>
std::vector<Polynomial> build_chain(const Polynomial& p, Normalize normalize) {
  if (p.is_zero()) throw PreconditionError("sturm_sequence: zero polynomial");
  std::vector<Polynomial> chain{normalize(p)};
  Polynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(normalize(d));
  while (true) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    Polynomial r = -Polynomial::divmod(a, b).second;
    if (r.is_zero()) break;
    chain.push_back(normalize(r));
  }
  return chain;
}

int count_open(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

}  // namespace

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  return build_chain(p, [](const Polynomial& q) { return q; });
}

std::vector<Polynomial> sturm_sequence_primitive(const Polynomial& p) {
  return build_chain(p, [](const Polynomial& q) { return q.primitive(); });
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

RootCount count_roots(const Polynomial& p, const IntervalQ& iv) {
  if (p.is_zero()) throw DegenerateInputError("count_roots: zero polynomial");
  const Rational span = iv.width();
  auto nudge_for = [&](const Rational& endpoint, int direction) -> Rational {
    if (!p(endpoint).is_zero()) return Rational(0);
    if (span.is_zero()) throw DegenerateInputError("count_roots: point interval at a root");
    for (int k = 6; k <= 12; ++k) {
      Rational step = Rational::pow10(-k) * span;
      if (!p(endpoint + Rational(direction) * step).is_zero()) return step;
    }
    throw DegenerateInputError("count_roots: endpoint " + endpoint.to_string() + " stays a root after nudging");
  };
  const Rational nlo = nudge_for(iv.lo(), +1);
  const Rational nhi = nudge_for(iv.hi(), -1);
  if (iv.hi() - nhi < iv.lo() + nlo) throw DegenerateInputError("count_roots: nudges cross");

  RootCount out;
  out.certificate.polynomial = p;
  out.certificate.interval = iv;
  out.certificate.evidence = recompute_evidence(p, iv, nlo, nhi, std::nullopt);
  out.count = out.certificate.evidence.root_count;
  out.certificate.claim = out.count == 0 ? Claim::no_root
                        : out.count == 1 ? Claim::exactly_one_root
                                         : Claim::root_count;
  return out;
}

RootEnclosure isolate_root(const Polynomial& p, const IntervalQ& iv, const Rational& width) {
  if (width.sign() <= 0) throw DomainError("isolate_root: width must be positive");
  const RootCount rc = count_roots(p, iv);
  if (rc.count != 1)
    throw PreconditionError("isolate_root: expected exactly one root, found " + std::to_string(rc.count));
  const IntervalQ eff = rc.certificate.effective_interval();
  Rational lo = eff.lo(), hi = eff.hi();
  const int s_lo = p.sign_at(lo);
  if (s_lo == p.sign_at(hi)) throw PreconditionError("isolate_root: the single root has even multiplicity");

  const Rational two(2);
  // Done once narrow enough and strictly inside one open cell (k w, (k+1) w).
  auto in_cell = [&] {
    const Rational g = lo.floor_to(width);
    return g != lo && g == hi.floor_to(width);
  };
  int extra = 0;
  while (hi - lo > width || (!in_cell() && extra++ < 256)) {
    if (hi - lo <= width) {
      const Rational g = hi.floor_to(width);
      if (lo < g && p.sign_at(g) == 0) {
        Rational eps = min(width, min(g - lo, hi - g)) / Rational(4);
        lo = g - eps;
        hi = g + eps;
        break;
      }
    }
    Rational mid = (lo + hi) / two;
    const int s = p.sign_at(mid);
    if (s == 0) {
      // Exact rational root: centre a small enclosure on it.
      Rational eps = min(width, min(mid - lo, hi - mid)) / Rational(4);
      lo = mid - eps;
      hi = mid + eps;
      break;
    }
    if (s == s_lo) lo = std::move(mid);
    else hi = std::move(mid);
  }
  RootEnclosure out{IntervalQ(lo, hi), {}};
  out.certificate = count_roots(p, out.enclosure).certificate;
  return out;
}

SignCertificate certify_sign_on_interval(const Polynomial& p, const IntervalQ& iv, Sign sign) {
  const int want = sign == Sign::positive ? 1 : -1;
  const char* label = sign == Sign::positive ? "positive" : "negative";
  if (p.is_zero()) throw SignClaimError(std::string("polynomial is identically zero, not ") + label, iv.lo(), Rational(0));
  for (const Rational* x : {&iv.lo(), &iv.hi()}) {
    Rational v = p(*x);
    if (v.sign() != want) throw SignClaimError(std::string("sign is not ") + label + " at an endpoint", *x, v);
  }
  const auto chain = sturm_sequence_primitive(p);
  if (count_open(chain, iv.lo(), iv.hi()) != 0) {
    // Zoom in on the leftmost root; a nearby rational where the sign fails
    // (or the exact root when rational) is the witness.
    const auto enc = isolate_extreme_root(p, iv.lo(), iv.hi(), Rational::pow10(-30) * iv.width(), Extreme::smallest);
    Rational best = enc->hi();
    for (const Rational& x : {enc->hi(), enc->midpoint(), enc->lo()}) {
      if (p.sign_at(x) != want) {
        best = x;
        break;
      }
    }
    throw SignClaimError(std::string("polynomial has a root inside the interval, not ") + label, best, p(best));
  }
  SignCertificate cert;
  cert.polynomial = p;
  cert.interval = iv;
  cert.claim = sign == Sign::positive ? Claim::sign_positive : Claim::sign_negative;
  cert.evidence = recompute_evidence(p, iv, Rational(0), Rational(0), iv.midpoint());
  return cert;
}

std::optional<IntervalQ> isolate_extreme_root(const Polynomial& p, const Rational& lo, const Rational& hi,
                                              const Rational& width, Extreme which) {
  if (p.is_zero()) throw DegenerateInputError("isolate_extreme_root: zero polynomial");
  if (hi < lo) throw DomainError("isolate_extreme_root: lo > hi");
  if (width.sign() <= 0) throw DomainError("isolate_extreme_root: width must be positive");
  // For a squarefree chain with zeros skipped, V(a) - V(b) counts roots in (a, b].
  const auto chain = sturm_sequence_primitive(p.squarefree_part());
  if (count_open(chain, lo, hi) == 0) return std::nullopt;
  Rational a = lo, b = hi;
  const Rational two(2);
  while (b - a > width) {
    Rational mid = (a + b) / two;
    if (which == Extreme::smallest) {
      if (count_open(chain, a, mid) > 0) b = std::move(mid);
      else a = std::move(mid);
    } else {
      if (count_open(chain, mid, b) > 0) a = std::move(mid);
      else b = std::move(mid);
    }
  }
  return IntervalQ(a, b);
}

}  // namespace pinchcert
