#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pinchcert/calabi.hpp"
#include "pinchcert/rational.hpp"

namespace pinchcert::shrinker {

/// Self-shrinker pinching data: |Å_R|^2 takes values in [a_circ_min, a_circ_max].
struct ShrinkerPinchData {
  Rational a_circ_min{0};
  Rational a_circ_max{0};
  bool mean_curvature_nonvanishing = true;
  bool normalized_H_parallel = true;
};

/// Throws DomainError unless 0 <= min <= max.
void validate(const ShrinkerPinchData& d);

/// Verdicts.  `excluded`: a rigidity case applies but none of its model
/// values lies in the data range, so no such surface exists.
enum class Verdict { round_sphere, veronese, calabi_s3, calabi_s4, inconclusive, excluded, hypotheses_not_met };
std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::inconclusive;
  std::string model;
  std::string theorem_case;              ///< lowest applicable label, empty if none
  std::vector<std::string> applicable_cases;  ///< every applicable label
  std::vector<Verdict> candidates;       ///< models still possible
};

/// |Å_R|^2 = S/4 for a minimal surface of the unit sphere viewed on the
/// sphere of radius 2.  Throws on negative input.
Rational spherical_to_shrinker(const Rational& S_unit);

struct ShrinkerNorms {
  Rational A_sphere_sq;
  Rational A_circ_sq;
};
/// Both equal |A_R|^2 - 1/2.  Throws DomainError when A_R_sq < 1/2.
ShrinkerNorms shrinker_norms(const Rational& A_R_sq);

struct OscillationThresholds {
  Rational spherical;    ///< 1/220
  Rational shrinker;     ///< 1/880
  Rational conjectural;  ///< 2/15
};
OscillationThresholds oscillation_threshold();

/// Case boundaries on the shrinker scale.
Rational case3a_upper();  ///< 1.7075 / 4 = 0.426875
Rational case3b_lower();  ///< 1.7853 / 4 = 0.446325

Classification classify(const ShrinkerPinchData& data);

/// Simplest rational (smallest denominator) within `tolerance` of x.
Rational simplest_rational(double x, double tolerance);

/// Pinching data from a numeric scan of a minimal surface in the unit
/// sphere: min and max of S, each snapped to the simplest rational within
/// `tolerance`, divided by 4.  Mean curvature nonvanishing and parallel
/// normalized mean curvature hold for every such shrinker.
ShrinkerPinchData pinch_data_from_scan(const calabi::GeometryScan& scan, double tolerance = 1e-6);

std::string model_description(Verdict v);

ShrinkerPinchData pinch_data_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ShrinkerPinchData& d);
nlohmann::json to_json(const Classification& c);

}  // namespace pinchcert::shrinker
