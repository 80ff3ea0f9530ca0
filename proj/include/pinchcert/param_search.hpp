#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinchcert/certificate.hpp"

namespace pinchcert::search {

enum class Side { left, right };

std::string to_string(Side s);
Side side_from_string(const std::string& s);

/// Certified threshold for one parameter point.
///
/// Left: the certificate is negative on (w, enclosure.lo] and has its first
/// root in (enclosure.lo, enclosure.hi].  Right: Theta_2 is negative on
/// [enclosure.hi, 9/5] and its largest root lies in the enclosure.
/// Degenerate results ([5/3, 5/3] left, [9/5, 9/5] right) carry no gap.
struct Threshold {
  IntervalQ enclosure;
  bool degenerate = false;
  std::vector<LabeledCertificate> certificates;
  std::string hypothesis;
};

Threshold left_threshold(const Rational& t, const Rational& w, const Rational& width);
Threshold right_threshold(const Rational& t, const Rational& width);

struct SweepConfig {
  std::vector<Rational> t_grid;
  std::vector<Rational> w_grid;
  int refinement_rounds = 0;
  Rational isolation_width = Rational::pow10(-6);
};

/// t in {k/200 : 1 <= k <= 100}; w in {5/3 + k (2/15)/100 : 0 <= k <= 100}
/// for the left side and {9/5} for the right side.
SweepConfig default_sweep_config(Side side);
/// Throws DomainError unless grids are nonempty, sorted, unique and in domain.
void validate(const SweepConfig& cfg, Side side);
SweepConfig sweep_config_from_json(const nlohmann::json& j, Side side);
nlohmann::json to_json(const SweepConfig& cfg);

struct SweepPoint {
  Rational t;
  Rational w;
  IntervalQ enclosure;
  bool degenerate = false;
};

struct Optimum {
  Side side = Side::left;
  Rational best_t;
  Rational best_w;
  IntervalQ threshold;
  std::vector<LabeledCertificate> certificates;
  std::string hypothesis;
  std::vector<SweepPoint> evaluated;  ///< grid order, then refinement probes
  /// Left side: best evaluated point with w = 5/3, which needs no gap
  /// hypothesis on S_min.
  std::optional<SweepPoint> best_unconditional;
};

/// True when `a` is a strictly better threshold than `b` for this side,
/// tie-broken by smaller t and then smaller w.
bool better(Side side, const SweepPoint& a, const SweepPoint& b);

/// Grid evaluation followed by `refinement_rounds` of exact trisection
/// around the incumbent.  Deterministic for a given config; `threads` = 0
/// uses worker_count().
Optimum optimize(Side side, const SweepConfig& cfg, unsigned threads = 0);

nlohmann::json to_json(const Threshold& th);
nlohmann::json to_json(const Optimum& opt, bool full_table = false);

}  // namespace pinchcert::search
