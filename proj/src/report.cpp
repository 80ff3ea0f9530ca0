#include "pinchcert/report.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "pinchcert/calabi.hpp"
#include "pinchcert/errors.hpp"
#include "pinchcert/pinching.hpp"
#include "pinchcert/sturm.hpp"

namespace pinchcert::report {

namespace b = pinchcert::bounds;

std::string toolkit_version() { return PINCHCERT_VERSION; }

void put_rational(nlohmann::json& j, const std::string& key, const Rational& r) {
  j[key] = r.to_string();
  j[key + "_approx"] = r.to_decimal(12);
}

std::vector<std::string> CertificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back("check failed: " + c.name);
  for (const auto& c : certificates) {
    const std::string why = replay_failure(c.certificate);
    if (!why.empty()) out.push_back("certificate '" + c.label + "' does not replay: " + why);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

nlohmann::json enclosure_json(const IntervalQ& iv) {
  nlohmann::json j;
  put_rational(j, "lo", iv.lo());
  put_rational(j, "hi", iv.hi());
  return j;
}

void add(CertificationReport& r, std::string label, SignCertificate cert) {
  r.certificates.push_back({std::move(label), std::move(cert)});
}

void add_all(CertificationReport& r, const std::vector<LabeledCertificate>& certs, const std::string& prefix) {
  for (const auto& c : certs) r.certificates.push_back({prefix + c.label, c.certificate});
}

Check sign_check(const std::string& name, const Polynomial& p, const Rational& x, int want) {
  Check c{name, p.sign_at(x) == want, nlohmann::json::object()};
  put_rational(c.detail, "x", x);
  put_rational(c.detail, "value", p(x));
  c.detail["expected_sign"] = want;
  return c;
}

// Unique root of p in [5/3, 9/5]: count, enclosure, and sign certificates on
// the two sides of [a, b].
void root_suite(CertificationReport& r, const std::string& name, const Polynomial& p, const Rational& a,
                const Rational& b, int sign_left) {
  const IntervalQ range(b::s_lower(), b::s_upper());
  const RootCount rc = count_roots(p, range);
  add(r, name + ": root count on [5/3, 9/5]", rc.certificate);
  Check uniq{name + ": exactly one root in [5/3, 9/5]", rc.count == 1, {{"root_count", rc.count}}};
  r.checks.push_back(uniq);
  if (rc.count != 1) return;
  const RootEnclosure enc = isolate_root(p, range);
  add(r, name + ": root enclosure", enc.certificate);
  r.enclosures.push_back({name + " root", enc.enclosure});
  Check inside{name + ": enclosure inside (" + a.to_decimal(5) + ", " + b.to_decimal(5) + ")",
               enc.enclosure.inside_open(a, b), enclosure_json(enc.enclosure)};
  r.checks.push_back(inside);
  r.checks.push_back(sign_check(name + ": sign at " + a.to_decimal(5), p, a, sign_left));
  r.checks.push_back(sign_check(name + ": sign at " + b.to_decimal(5), p, b, -sign_left));
  const Sign left = sign_left > 0 ? Sign::positive : Sign::negative;
  const Sign right = sign_left > 0 ? Sign::negative : Sign::positive;
  add(r, name + ": constant sign on [5/3, " + a.to_decimal(5) + "]",
      certify_sign_on_interval(p, IntervalQ(b::s_lower(), a), left));
  add(r, name + ": constant sign on [" + b.to_decimal(5) + ", 9/5]",
      certify_sign_on_interval(p, IntervalQ(b, b::s_upper()), right));
}

Rational random_w(std::mt19937_64& rng) {
  // 5/3 + (2/15) k / 10^6 with k uniform in [0, 10^6].
  const long k = static_cast<long>(rng() % 1000001ULL);
  return b::s_lower() + Rational(2, 15) * Rational(k, 1000000);
}

}  // namespace

CertificationReport cmd_certify(std::uint64_t seed) {
  const auto start = Clock::now();
  CertificationReport r;
  r.command = "certify";
  r.inputs = {{"seed", seed}};

  root_suite(r, "theta1", b::theta1(), b::published_left_pinch(), Rational(17076, 10000), -1);
  root_suite(r, "theta2(t=1/4)", b::theta2(Rational(1, 4)), Rational(17852, 10000), b::published_right_pinch(), 1);

  const IntervalQ range(b::s_lower(), b::s_upper());
  const Polynomial N = b::gap_numerator(), D = b::gap_denominator();
  const Polynomial W = N.derivative() * D - N * D.derivative();
  add(r, "gap: N'D - ND' negative on [5/3, 9/5]", certify_sign_on_interval(W, range, Sign::negative));
  add(r, "gap: D positive on [5/3, 9/5]", certify_sign_on_interval(D, range, Sign::positive));
  add(r, "gap: 12x(3x-4) positive on [5/3, 9/5]",
      certify_sign_on_interval(Rational(12) * Polynomial::x() * Polynomial::linear(-4, 3), range, Sign::positive));

  {
    const Rational y = b::gap_lower_bound(b::published_right_pinch());
    const Rational mid(4565, 1000000), osc = shrinker::oscillation_threshold().spherical;
    Check c{"gap: y(1.7853) > 0.004565 > 1/220", y > mid && mid > osc, nlohmann::json::object()};
    put_rational(c.detail, "y", y);
    put_rational(c.detail, "bound", mid);
    put_rational(c.detail, "oscillation", osc);
    r.checks.push_back(c);
  }

  {
    Check c{"gap: y(5/3) = 150/4261", b::gap_lower_bound(b::s_lower()) == Rational(150, 4261), nlohmann::json::object()};
    put_rational(c.detail, "value", b::gap_lower_bound(b::s_lower()));
    r.checks.push_back(c);
    Check z{"legacy bound vanishes at 5/3 and 9/5",
            b::compare(b::legacy_gap_bound(b::s_lower()), Rational(0)) == 0 &&
                b::compare(b::legacy_gap_bound(b::s_upper()), Rational(0)) == 0,
            nlohmann::json::object()};
    r.checks.push_back(z);
  }

  {
    // Legacy vs new on 5/3 + k (2/15)/8.
    Check c{"legacy bound <= new bound at 9 grid points", true, {{"points", nlohmann::json::array()}}};
    for (int k = 0; k <= 8; ++k) {
      const Rational x = b::s_lower() + Rational(2, 15) * Rational(k, 8);
      const Rational y = b::gap_lower_bound(x);
      const auto legacy = b::legacy_gap_bound(x);
      const int cmp = b::compare(legacy, y);
      nlohmann::json row;
      put_rational(row, "s_min", x);
      put_rational(row, "new", y);
      row["legacy_approx"] = legacy.approx();
      row["sign_legacy_minus_new"] = cmp;
      c.detail["points"].push_back(row);
      c.passed = c.passed && cmp <= 0;
    }
    r.checks.push_back(c);
  }

  {
    std::mt19937_64 rng(seed);
    Check c{"smax_threshold(w) = w + gap_lower_bound(w) at 100 random w", true, nlohmann::json::object()};
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
      const Rational w = random_w(rng);
      if (!(b::smax_threshold(w) - (w + b::gap_lower_bound(w))).is_zero()) ++mismatches;
    }
    c.passed = mismatches == 0;
    c.detail = {{"samples", 100}, {"nonzero_residuals", mismatches}};
    r.checks.push_back(c);
  }

  {
    const auto osc = shrinker::oscillation_threshold();
    const bool ok = 4 * shrinker::case3a_upper() == b::published_left_pinch() &&
                    4 * shrinker::case3b_lower() == b::published_right_pinch() && 4 * osc.shrinker == osc.spherical;
    Check c{"shrinker thresholds are spherical thresholds / 4", ok, nlohmann::json::object()};
    put_rational(c.detail, "case3a_upper", shrinker::case3a_upper());
    put_rational(c.detail, "case3b_lower", shrinker::case3b_lower());
    put_rational(c.detail, "oscillation", osc.shrinker);
    r.checks.push_back(c);
  }

  {
    const auto left = search::left_threshold(Rational(1, 2), b::s_lower(), default_isolation_width());
    r.enclosures.push_back({"left threshold (t=1/2, w=5/3)", left.enclosure});
    add_all(r, left.certificates, "left threshold: ");
    const auto right = search::right_threshold(Rational(1, 4), default_isolation_width());
    r.enclosures.push_back({"right threshold (t=1/4)", right.enclosure});
    add_all(r, right.certificates, "right threshold: ");
  }

  r.wall_time_ms = elapsed_ms(start);
  return r;
}

CertificationReport cmd_optimize(search::Side side, const search::SweepConfig& cfg, bool full_table,
                                 const std::string& config_source) {
  const auto start = Clock::now();
  CertificationReport r;
  r.command = "optimize";
  r.inputs = {{"side", search::to_string(side)}, {"config_source", config_source}, {"config", search::to_json(cfg)}};
  const search::Optimum opt = search::optimize(side, cfg);
  r.optimum = search::to_json(opt, full_table);
  r.optimum.erase("certificates");
  r.enclosures.push_back({search::to_string(side) + " threshold", opt.threshold});
  add_all(r, opt.certificates, search::to_string(side) + " threshold: ");

  auto contains = [](const std::vector<Rational>& g, const Rational& v) {
    return std::find(g.begin(), g.end(), v) != g.end();
  };
  if (side == search::Side::left && contains(cfg.t_grid, Rational(1, 2)) && contains(cfg.w_grid, b::s_lower())) {
    Check c{"left optimum >= 1.7075", opt.threshold.lo() >= b::published_left_pinch(), enclosure_json(opt.threshold)};
    r.checks.push_back(c);
  }
  if (side == search::Side::right && contains(cfg.t_grid, Rational(1, 4))) {
    Check c{"right optimum <= 1.7853", opt.threshold.hi() <= b::published_right_pinch(), enclosure_json(opt.threshold)};
    r.checks.push_back(c);
  }
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

CertificationReport cmd_lab(int s, int samples, std::uint64_t seed, double step) {
  const auto start = Clock::now();
  CertificationReport r;
  r.command = "lab";
  r.inputs = {{"s", s}, {"samples", samples}, {"seed", seed}, {"step", step}};
  const auto imm = calabi::build_calabi_immersion(s);
  calabi::ScanOptions opt;
  opt.step = step;
  const auto scan = calabi::geometry_scan(imm, samples, seed, opt);
  const auto identities = calabi::verify_identities(scan);
  nlohmann::json summary = calabi::summary_json(scan);
  summary["identities"] = calabi::to_json(identities)["identities"];
  r.scans.push_back(summary);
  for (const auto& row : identities.rows)
    if (row.present)
      r.checks.push_back({"identity (" + row.id + ") " + row.description + " within tolerance", row.pass,
                          {{"max_residual", row.max_residual}, {"tolerance", row.tolerance}}});

  const auto data = shrinker::pinch_data_from_scan(scan);
  nlohmann::json v = shrinker::to_json(shrinker::classify(data));
  v["input"] = shrinker::to_json(data);
  v["source"] = "scan, rescaled to the sphere of radius 2";
  r.verdicts.push_back(v);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

CertificationReport cmd_classify(const shrinker::ShrinkerPinchData& data) {
  const auto start = Clock::now();
  CertificationReport r;
  r.command = "classify";
  r.inputs = shrinker::to_json(data);
  nlohmann::json v = shrinker::to_json(shrinker::classify(data));
  v["input"] = shrinker::to_json(data);
  r.verdicts.push_back(v);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

CertificationReport cmd_replay(const nlohmann::json& report) {
  const auto start = Clock::now();
  CertificationReport r;
  r.command = "replay";
  if (!report.is_object() || !report.contains("certificates"))
    throw std::invalid_argument("replay input has no 'certificates' array");
  r.inputs = {{"source_command", report.value("command", "")}, {"schema", report.value("schema", "")}};
  for (const auto& c : report.at("certificates")) r.certificates.push_back(labeled_certificate_from_json(c));
  r.checks.push_back({"report schema is " + std::string(kSchema), report.value("schema", "") == kSchema, {}});
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

nlohmann::json to_json(const CertificationReport& r) {
  auto certs = nlohmann::json::array();
  for (const auto& c : r.certificates) {
    nlohmann::json j = pinchcert::to_json(c);
    j["replays"] = replay(c.certificate);
    certs.push_back(j);
  }
  auto encs = nlohmann::json::array();
  for (const auto& e : r.enclosures) {
    nlohmann::json j = enclosure_json(e.enclosure);
    j["name"] = e.name;
    encs.push_back(j);
  }
  auto checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  nlohmann::json j = {{"schema", kSchema},
                      {"toolkit_version", toolkit_version()},
                      {"command", r.command},
                      {"inputs", r.inputs},
                      {"certificates", certs},
                      {"enclosures", encs},
                      {"scans", r.scans},
                      {"verdicts", r.verdicts},
                      {"checks", checks},
                      {"ok", r.ok()},
                      {"failures", r.failures()},
                      {"wall_time_ms", r.wall_time_ms}};
  if (!r.optimum.is_null()) j["optimum"] = r.optimum;
  return j;
}

std::string to_markdown(const CertificationReport& r) {
  std::ostringstream md;
  md << "# pinchcert " << r.command << "\n\n";
  md << "- schema: `" << kSchema << "`\n- toolkit version: " << toolkit_version() << "\n- status: "
     << (r.ok() ? "all certified" : "FAILED") << "\n- wall time: " << r.wall_time_ms << " ms\n\n";
  for (const auto& f : r.failures()) md << "- **" << f << "**\n";

  if (!r.enclosures.empty()) {
    md << "## Enclosures\n\n| name | lo | hi | lo (approx) | hi (approx) |\n|---|---|---|---|---|\n";
    for (const auto& e : r.enclosures)
      md << "| " << e.name << " | " << e.enclosure.lo().to_string() << " | " << e.enclosure.hi().to_string() << " | "
         << e.enclosure.lo().to_decimal(12) << " | " << e.enclosure.hi().to_decimal(12) << " |\n";
    md << "\n";
  }
  if (!r.checks.empty()) {
    md << "## Checks\n\n| check | result |\n|---|---|\n";
    for (const auto& c : r.checks) md << "| " << c.name << " | " << (c.passed ? "pass" : "FAIL") << " |\n";
    md << "\n";
  }
  if (!r.certificates.empty()) {
    md << "## Certificates\n\n| label | claim | interval (approx) | roots | replays |\n|---|---|---|---|---|\n";
    for (const auto& c : r.certificates) {
      const auto& iv = c.certificate.interval;
      md << "| " << c.label << " | " << to_string(c.certificate.claim) << " | [" << iv.lo().to_decimal(12) << ", "
         << iv.hi().to_decimal(12) << "] | " << c.certificate.evidence.root_count << " | "
         << (replay(c.certificate) ? "yes" : "NO") << " |\n";
    }
    md << "\nExact polynomials, endpoints and Sturm evidence are in the JSON report.\n\n";
  }
  if (!r.optimum.is_null()) {
    md << "## Sweep\n\nbest t = " << r.optimum["best_t"].get<std::string>()
       << ", best w = " << r.optimum["best_w"].get<std::string>() << "\n\n| t | w | threshold lo | threshold hi |\n|---|---|---|---|\n";
    for (const auto& row : r.optimum["table"]) {
      const auto lo = Rational::parse(row["threshold"][0].get<std::string>());
      const auto hi = Rational::parse(row["threshold"][1].get<std::string>());
      md << "| " << row["t"].get<std::string>() << " | " << Rational::parse(row["w"].get<std::string>()).to_decimal(8)
         << " | " << lo.to_decimal(12) << " | " << hi.to_decimal(12) << " |\n";
    }
    md << "\n";
    if (r.optimum.contains("best_unconditional")) {
      const auto& u = r.optimum["best_unconditional"];
      md << "Best threshold with w = 5/3 (no hypothesis on S_min): t = " << u["t"].get<std::string>() << ", ["
         << Rational::parse(u["threshold"][0].get<std::string>()).to_decimal(12) << ", "
         << Rational::parse(u["threshold"][1].get<std::string>()).to_decimal(12) << "]\n\n";
    }
    if (r.optimum.contains("hypothesis")) md << "Hypothesis: " << r.optimum["hypothesis"].get<std::string>() << "\n\n";
  }
  for (const auto& s : r.scans) {
    md << "## Geometry scan (s = " << s["s"] << ", " << s["samples"] << " samples)\n\n";
    md << "| identity | max residual | tolerance | result |\n|---|---|---|---|\n";
    for (const auto& row : s["identities"]) {
      md << "| (" << row["id"].get<std::string>() << ") " << row["identity"].get<std::string>() << " | "
         << (row["max_residual"].is_null() ? std::string("absent") : row["max_residual"].dump()) << " | "
         << row["tolerance"].dump() << " | " << (row["pass"].get<bool>() ? "pass" : "FAIL") << " |\n";
    }
    md << "\n";
  }
  for (const auto& v : r.verdicts) {
    md << "## Classification\n\n- verdict: **" << v["verdict"].get<std::string>() << "**\n- case: "
       << (v["theorem_case"].is_null() ? std::string("none") : v["theorem_case"].get<std::string>())
       << "\n- applicable cases: " << v["applicable_cases"].dump() << "\n- model: " << v["model"].get<std::string>()
       << "\n\n";
  }
  return md.str();
}

}  // namespace pinchcert::report
