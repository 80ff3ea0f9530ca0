#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pinchcert/polynomial.hpp"
#include "pinchcert/rational.hpp"

namespace pinchcert {

/// Closed interval [lo, hi] with exact endpoints.
class IntervalQ {
 public:
  IntervalQ() = default;
  IntervalQ(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  /// Both endpoints strictly inside (a, b).
  bool inside_open(const Rational& a, const Rational& b) const { return a < lo_ && hi_ < b; }
  bool is_point() const { return lo_ == hi_; }

  friend bool operator==(const IntervalQ&, const IntervalQ&) = default;

 private:
  Rational lo_{0};
  Rational hi_{0};
};

enum class Claim { no_root, exactly_one_root, root_count, sign_positive, sign_negative };

std::string to_string(Claim c);
Claim claim_from_string(const std::string& s);

/// Replayable evidence.  Counts refer to the effective interval
/// [lo + nudge_lo, hi - nudge_hi]; values are p at its endpoints.
struct Evidence {
  Rational nudge_lo{0};
  Rational nudge_hi{0};
  int variations_lo = 0;
  int variations_hi = 0;
  int root_count = 0;
  Rational value_lo{0};
  Rational value_hi{0};
  std::optional<Rational> sample_point;
  std::optional<Rational> sample_value;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// Exact record proving a root-count or strict-sign statement about a
/// polynomial on an interval.  Everything needed to re-derive the claim is
/// stored; `replay` recomputes it from scratch.
struct SignCertificate {
  Polynomial polynomial;
  IntervalQ interval;
  Claim claim = Claim::no_root;
  Evidence evidence;

  IntervalQ effective_interval() const {
    return {interval.lo() + evidence.nudge_lo, interval.hi() - evidence.nudge_hi};
  }
};

struct LabeledCertificate {
  std::string label;
  SignCertificate certificate;
};

/// Re-derives the evidence (Sturm variations and endpoint/sample values) from
/// the polynomial and interval alone.
Evidence recompute_evidence(const Polynomial& p, const IntervalQ& iv, const Rational& nudge_lo,
                            const Rational& nudge_hi, const std::optional<Rational>& sample_point);

/// Empty string when the certificate replays; otherwise the first mismatch.
std::string replay_failure(const SignCertificate& cert);
inline bool replay(const SignCertificate& cert) { return replay_failure(cert).empty(); }

nlohmann::json to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IntervalQ& iv);
IntervalQ interval_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SignCertificate& cert);
SignCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LabeledCertificate& c);
LabeledCertificate labeled_certificate_from_json(const nlohmann::json& j);

}  // namespace pinchcert
