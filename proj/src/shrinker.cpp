#include "pinchcert/shrinker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "pinchcert/certificate.hpp"
#include "pinchcert/errors.hpp"
#include "pinchcert/pinching.hpp"

namespace pinchcert::shrinker {

void validate(const ShrinkerPinchData& d) {
  if (d.a_circ_min.sign() < 0) throw DomainError("pinch data: a_circ_min must be >= 0");
  if (d.a_circ_max < d.a_circ_min) throw DomainError("pinch data: a_circ_min must not exceed a_circ_max");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::round_sphere: return "round-sphere";
    case Verdict::veronese: return "veronese";
    case Verdict::calabi_s3: return "calabi-s3";
    case Verdict::calabi_s4: return "calabi-s4";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::excluded: return "excluded";
    case Verdict::hypotheses_not_met: return "hypotheses-not-met";
  }
  return "unknown";
}

std::string model_description(Verdict v) {
  switch (v) {
    case Verdict::round_sphere: return "round sphere S^2(2) in R^3";
    case Verdict::veronese: return "Veronese surface S^2(2*sqrt(3)) -> S^4(2) in R^5";
    case Verdict::calabi_s3: return "Calabi sphere S^2(2*sqrt(6)) -> S^6(2) in R^7";
    case Verdict::calabi_s4: return "Calabi sphere S^2(2*sqrt(10)) -> S^8(2) in R^9";
    case Verdict::inconclusive: return "no rigidity case decides the data";
    case Verdict::excluded: return "no closed self-shrinker satisfies the data";
    case Verdict::hypotheses_not_met: return "mean curvature hypotheses not met";
  }
  return {};
}

Rational spherical_to_shrinker(const Rational& S_unit) {
  if (S_unit.sign() < 0) throw DomainError("spherical_to_shrinker: S must be >= 0");
  return S_unit / 4;
}

ShrinkerNorms shrinker_norms(const Rational& A_R_sq) {
  if (A_R_sq < Rational(1, 2)) throw DomainError("shrinker_norms: |A_R|^2 must be >= 1/2");
  const Rational v = A_R_sq - Rational(1, 2);
  return {v, v};
}

OscillationThresholds oscillation_threshold() { return {Rational(1, 220), Rational(1, 880), Rational(2, 15)}; }

Rational case3a_upper() { return spherical_to_shrinker(bounds::published_left_pinch()); }
Rational case3b_lower() { return spherical_to_shrinker(bounds::published_right_pinch()); }

namespace {

struct Model {
  Rational value;
  Verdict verdict;
};

const std::vector<Model>& models() {
  static const std::vector<Model> m = {{Rational(0), Verdict::round_sphere},
                                       {Rational(1, 3), Verdict::veronese},
                                       {Rational(5, 12), Verdict::calabi_s3},
                                       {Rational(9, 20), Verdict::calabi_s4}};
  return m;
}

struct Case {
  std::string group;
  bool applies;
  // (candidate verdict, sub-label)
  std::vector<std::pair<Verdict, std::string>> candidates;
};

}  // namespace

Classification classify(const ShrinkerPinchData& d) {
  Classification c;
  if (!d.mean_curvature_nonvanishing || !d.normalized_H_parallel) {
    c.verdict = Verdict::hypotheses_not_met;
    c.model = model_description(c.verdict);
    return c;
  }
  if (d.a_circ_min.sign() < 0 || d.a_circ_max < d.a_circ_min) {
    c.verdict = Verdict::inconclusive;
    c.model = "invalid pinching data (need 0 <= min <= max)";
    return c;
  }
  const Rational& lo = d.a_circ_min;
  const Rational& hi = d.a_circ_max;
  const Rational third(1, 3), five12(5, 12), nine20(9, 20);
  const std::vector<Case> cases = {
      {"1", hi <= third, {{Verdict::round_sphere, "1a"}, {Verdict::veronese, "1b"}}},
      {"2", third <= lo && hi <= five12, {{Verdict::veronese, "2a"}, {Verdict::calabi_s3, "2b"}}},
      {"3a", five12 <= lo && hi <= case3a_upper(), {{Verdict::calabi_s3, "3a"}}},
      {"3b", case3b_lower() <= lo && hi <= nine20, {{Verdict::calabi_s4, "3b"}}},
      {"3c", five12 <= lo && hi <= nine20 && hi - lo <= oscillation_threshold().shrinker,
       {{Verdict::calabi_s3, "3c"}, {Verdict::calabi_s4, "3c"}}},
  };

  // Models allowed by every applicable case and compatible with the data.
  std::vector<Verdict> alive;
  bool any = false;
  for (const auto& m : models()) {
    if (m.value < lo || hi < m.value) continue;
    bool ok = true;
    for (const auto& cs : cases) {
      if (!cs.applies) continue;
      ok = ok && std::any_of(cs.candidates.begin(), cs.candidates.end(),
                             [&](const auto& p) { return p.first == m.verdict; });
    }
    if (ok) alive.push_back(m.verdict);
  }
  for (const auto& cs : cases) any = any || cs.applies;

  if (!any) {
    c.verdict = Verdict::inconclusive;
    c.model = model_description(c.verdict);
    return c;
  }
  for (const auto& cs : cases) {
    if (!cs.applies) continue;
    bool labelled = false;
    for (const auto& [v, label] : cs.candidates) {
      if (std::find(alive.begin(), alive.end(), v) == alive.end()) continue;
      if (std::find(c.applicable_cases.begin(), c.applicable_cases.end(), label) == c.applicable_cases.end())
        c.applicable_cases.push_back(label);
      labelled = true;
    }
    if (!labelled) c.applicable_cases.push_back(cs.group);
  }
  std::sort(c.applicable_cases.begin(), c.applicable_cases.end());
  c.theorem_case = c.applicable_cases.front();
  c.candidates = alive;
  if (alive.size() == 1) c.verdict = alive.front();
  else if (alive.empty()) c.verdict = Verdict::excluded;
  else c.verdict = Verdict::inconclusive;
  c.model = model_description(c.verdict);
  if (alive.size() > 1) {
    c.model = "one of:";
    for (auto v : alive) c.model += " [" + model_description(v) + "]";
  }
  return c;
}

Rational simplest_rational(double x, double tolerance) {
  if (!std::isfinite(x)) throw DomainError("simplest_rational: non-finite input");
  if (!(tolerance > 0)) throw DomainError("simplest_rational: tolerance must be positive");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  const Rational exact = Rational::parse(buf);
  const Rational tol = Rational::parse([&] {
    char t[64];
    std::snprintf(t, sizeof t, "%.17g", tolerance);
    return std::string(t);
  }());
  // Simplest rational in [a, b] by continued fractions.
  Rational a = exact - tol, b = exact + tol;
  if (a.sign() <= 0 && b.sign() >= 0) return Rational(0);
  const bool negative = b.sign() < 0;
  if (negative) {
    Rational na = -b, nb = -a;
    a = na;
    b = nb;
  }
  std::function<Rational(const Rational&, const Rational&)> simplest = [&](const Rational& lo, const Rational& hi) {
    const Rational fl = lo.floor_to(Rational(1));
    if (fl == lo) return fl;
    if (fl + 1 <= hi) return fl + 1;
    return fl + simplest((hi - fl).reciprocal(), (lo - fl).reciprocal()).reciprocal();
  };
  const Rational r = simplest(a, b);
  return negative ? -r : r;
}

ShrinkerPinchData pinch_data_from_scan(const calabi::GeometryScan& scan, double tolerance) {
  if (scan.samples.empty()) throw DomainError("pinch_data_from_scan: empty scan");
  double lo = scan.samples.front().S, hi = lo;
  for (const auto& p : scan.samples) {
    lo = std::min(lo, p.S);
    hi = std::max(hi, p.S);
  }
  ShrinkerPinchData d;
  d.a_circ_min = spherical_to_shrinker(max(Rational(0), simplest_rational(lo, tolerance)));
  d.a_circ_max = spherical_to_shrinker(max(Rational(0), simplest_rational(hi, tolerance)));
  return d;
}

ShrinkerPinchData pinch_data_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("pinch data must be a JSON object");
  ShrinkerPinchData d;
  d.a_circ_min = rational_from_json(j.at("a_circ_min"));
  d.a_circ_max = rational_from_json(j.at("a_circ_max"));
  d.mean_curvature_nonvanishing = j.value("mean_curvature_nonvanishing", true);
  d.normalized_H_parallel = j.value("normalized_H_parallel", true);
  return d;
}

nlohmann::json to_json(const ShrinkerPinchData& d) {
  return {{"a_circ_min", pinchcert::to_json(d.a_circ_min)},
          {"a_circ_max", pinchcert::to_json(d.a_circ_max)},
          {"mean_curvature_nonvanishing", d.mean_curvature_nonvanishing},
          {"normalized_H_parallel", d.normalized_H_parallel}};
}

nlohmann::json to_json(const Classification& c) {
  auto cands = nlohmann::json::array();
  for (auto v : c.candidates) cands.push_back(to_string(v));
  return {{"verdict", to_string(c.verdict)},
          {"theorem_case", c.theorem_case.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.theorem_case)},
          {"applicable_cases", c.applicable_cases},
          {"candidates", cands},
          {"model", c.model}};
}

}  // namespace pinchcert::shrinker
