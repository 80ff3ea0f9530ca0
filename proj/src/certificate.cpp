#include "pinchcert/certificate.hpp"

#include "pinchcert/errors.hpp"
#include "pinchcert/sturm.hpp"

namespace pinchcert {

IntervalQ::IntervalQ(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw DomainError("IntervalQ: lo > hi (" + lo_.to_string() + ", " + hi_.to_string() + ")");
}

std::string to_string(Claim c) {
  switch (c) {
    case Claim::no_root: return "no-root";
    case Claim::exactly_one_root: return "exactly-one-root";
    case Claim::root_count: return "root-count";
    case Claim::sign_positive: return "sign-constant-positive";
    case Claim::sign_negative: return "sign-constant-negative";
  }
  return "unknown";
}

Claim claim_from_string(const std::string& s) {
  for (Claim c : {Claim::no_root, Claim::exactly_one_root, Claim::root_count, Claim::sign_positive,
                  Claim::sign_negative})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown certificate claim '" + s + "'");
}

Evidence recompute_evidence(const Polynomial& p, const IntervalQ& iv, const Rational& nudge_lo,
                            const Rational& nudge_hi, const std::optional<Rational>& sample_point) {
  Evidence ev;
  ev.nudge_lo = nudge_lo;
  ev.nudge_hi = nudge_hi;
  const Rational a = iv.lo() + nudge_lo;
  const Rational b = iv.hi() - nudge_hi;
  const auto chain = sturm_sequence_primitive(p);
  ev.variations_lo = sign_variations(chain, a);
  ev.variations_hi = sign_variations(chain, b);
  ev.root_count = ev.variations_lo - ev.variations_hi;
  ev.value_lo = p(a);
  ev.value_hi = p(b);
  if (sample_point) {
    ev.sample_point = sample_point;
    ev.sample_value = p(*sample_point);
  }
  return ev;
}

std::string replay_failure(const SignCertificate& cert) {
  const auto& ev = cert.evidence;
  if (cert.polynomial.is_zero()) return "zero polynomial";
  if (ev.nudge_lo.sign() < 0 || ev.nudge_hi.sign() < 0) return "negative nudge";
  const IntervalQ eff = cert.effective_interval();
  if (eff.hi() < eff.lo()) return "nudges cross";
  if (ev.sample_point && !eff.contains(*ev.sample_point)) return "sample point outside interval";

  const Evidence fresh = recompute_evidence(cert.polynomial, cert.interval, ev.nudge_lo, ev.nudge_hi, ev.sample_point);
  if (!(fresh == ev)) return "recomputed evidence differs from recorded evidence";
  if (fresh.value_lo.is_zero() || fresh.value_hi.is_zero()) return "endpoint of the effective interval is a root";

  switch (cert.claim) {
    case Claim::no_root:
      if (fresh.root_count != 0) return "claimed no root, Sturm count " + std::to_string(fresh.root_count);
      break;
    case Claim::exactly_one_root:
      if (fresh.root_count != 1) return "claimed one root, Sturm count " + std::to_string(fresh.root_count);
      break;
    case Claim::root_count:
      break;
    case Claim::sign_positive:
    case Claim::sign_negative: {
      const int want = cert.claim == Claim::sign_positive ? 1 : -1;
      if (!ev.nudge_lo.is_zero() || !ev.nudge_hi.is_zero()) return "sign claims must cover the closed interval";
      if (fresh.root_count != 0) return "sign claim with roots inside";
      if (fresh.value_lo.sign() != want || fresh.value_hi.sign() != want) return "endpoint sign mismatch";
      if (!fresh.sample_value || fresh.sample_value->sign() != want) return "sample sign mismatch";
      break;
    }
  }
  return {};
}

nlohmann::json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

nlohmann::json to_json(const IntervalQ& iv) { return nlohmann::json::array({to_json(iv.lo()), to_json(iv.hi())}); }

IntervalQ interval_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be [lo, hi]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

nlohmann::json to_json(const Polynomial& p) {
  auto arr = nlohmann::json::array();
  for (const auto& c : p.coefficients()) arr.push_back(to_json(c));
  return arr;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of rationals");
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(rational_from_json(v));
  return Polynomial(std::move(c));
}

nlohmann::json to_json(const SignCertificate& cert) {
  const auto& ev = cert.evidence;
  nlohmann::json e = {
      {"nudge_lo", to_json(ev.nudge_lo)},
      {"nudge_hi", to_json(ev.nudge_hi)},
      {"variations_lo", ev.variations_lo},
      {"variations_hi", ev.variations_hi},
      {"root_count", ev.root_count},
      {"value_lo", to_json(ev.value_lo)},
      {"value_hi", to_json(ev.value_hi)},
  };
  if (ev.sample_point) {
    e["sample_point"] = to_json(*ev.sample_point);
    e["sample_value"] = to_json(*ev.sample_value);
  }
  return {{"polynomial", to_json(cert.polynomial)},
          {"interval", to_json(cert.interval)},
          {"claim", to_string(cert.claim)},
          {"evidence", std::move(e)}};
}

SignCertificate certificate_from_json(const nlohmann::json& j) {
  SignCertificate c;
  c.polynomial = polynomial_from_json(j.at("polynomial"));
  c.interval = interval_from_json(j.at("interval"));
  c.claim = claim_from_string(j.at("claim").get<std::string>());
  const auto& e = j.at("evidence");
  c.evidence.nudge_lo = rational_from_json(e.at("nudge_lo"));
  c.evidence.nudge_hi = rational_from_json(e.at("nudge_hi"));
  c.evidence.variations_lo = e.at("variations_lo").get<int>();
  c.evidence.variations_hi = e.at("variations_hi").get<int>();
  c.evidence.root_count = e.at("root_count").get<int>();
  c.evidence.value_lo = rational_from_json(e.at("value_lo"));
  c.evidence.value_hi = rational_from_json(e.at("value_hi"));
  if (e.contains("sample_point")) {
    c.evidence.sample_point = rational_from_json(e.at("sample_point"));
    c.evidence.sample_value = rational_from_json(e.at("sample_value"));
  }
  return c;
}

nlohmann::json to_json(const LabeledCertificate& c) {
  nlohmann::json j = to_json(c.certificate);
  j["label"] = c.label;
  return j;
}

LabeledCertificate labeled_certificate_from_json(const nlohmann::json& j) {
  return {j.value("label", std::string()), certificate_from_json(j)};
}

}  // namespace pinchcert
