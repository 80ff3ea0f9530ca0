#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinchcert/certificate.hpp"
#include "pinchcert/param_search.hpp"
#include "pinchcert/shrinker.hpp"

namespace pinchcert::report {

inline constexpr const char* kSchema = "pinchcert-report/1";
std::string toolkit_version();

/// Exact or numeric check with a named outcome.
struct Check {
  std::string name;
  bool passed = false;
  nlohmann::json detail = nlohmann::json::object();
};

struct NamedEnclosure {
  std::string name;
  IntervalQ enclosure;
};

struct CertificationReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<LabeledCertificate> certificates;
  std::vector<NamedEnclosure> enclosures;
  std::vector<nlohmann::json> scans;
  std::vector<nlohmann::json> verdicts;
  std::vector<Check> checks;
  nlohmann::json optimum;  ///< null unless `optimize`
  std::int64_t wall_time_ms = 0;

  /// Failing checks plus certificates that do not replay.
  std::vector<std::string> failures() const;
  bool ok() const { return failures().empty(); }
};

/// Adds key (as "p/q") and key_approx (12 significant digits) to j.
void put_rational(nlohmann::json& j, const std::string& key, const Rational& r);

nlohmann::json to_json(const CertificationReport& r);
std::string to_markdown(const CertificationReport& r);

/// Fixed suite: Theta_1 and Theta_2(1/4) enclosures, the monotonicity of
/// the gap function, y(1.7853) > 1/220, legacy-vs-new comparison, the
/// S_max-threshold identity at 100 seeded random w, endpoint values and the
/// shrinker scale consistency.
CertificationReport cmd_certify(std::uint64_t seed = 1);

CertificationReport cmd_optimize(search::Side side, const search::SweepConfig& cfg, bool full_table = false,
                                 const std::string& config_source = "default");

CertificationReport cmd_lab(int s, int samples, std::uint64_t seed, double step);

CertificationReport cmd_classify(const shrinker::ShrinkerPinchData& data);

/// Replays every certificate of a report JSON.
CertificationReport cmd_replay(const nlohmann::json& report);

}  // namespace pinchcert::report
