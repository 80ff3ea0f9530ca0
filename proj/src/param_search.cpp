#include "pinchcert/param_search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pinchcert/errors.hpp"
#include "pinchcert/parallel.hpp"
#include "pinchcert/pinching.hpp"
#include "pinchcert/sturm.hpp"

namespace pinchcert::search {

namespace {

using bounds::s_lower;
using bounds::s_upper;

const char* kLeftHypothesis =
    "negativity of the certificate rules out S_max in (w, threshold.lo] for surfaces with S_min >= w; "
    "for w > 5/3 this requires the gap hypothesis S_min >= w";

// Moves a half-open enclosure (a, b] of an isolated root off an exact root
// at b, keeping the root strictly inside and b' <= cap.
IntervalQ off_root(const Polynomial& p, IntervalQ iv, const Rational& cap) {
  if (!p(iv.hi()).is_zero()) return iv;
  Rational shift = iv.width() / 2;
  if (shift.is_zero()) shift = Rational::pow10(-12);
  for (int i = 0; i < 60; ++i, shift = shift / 2) {
    const Rational b = iv.hi() + shift;
    const Rational a = iv.lo() + min(shift, iv.width() / 2);
    if (b <= cap && !p(b).is_zero() && !p(a).is_zero()) return {a, b};
  }
  return iv;
}

struct LeftPiece {
  std::string name;
  Polynomial reduced;             // piece with every (x - w) factor removed
  std::optional<IntervalQ> root;  // smallest root in (w, 9/5]
};

struct LeftCore {
  IntervalQ enclosure;
  bool degenerate = false;
  std::vector<LeftPiece> pieces;
};

LeftCore left_core(const Rational& t, const Rational& w, const Rational& width) {
  bounds::check_t(t, "left_threshold");
  bounds::check_in_pinching_interval(w, "w", "left_threshold");
  if (width.sign() <= 0) throw DomainError("left_threshold: width must be positive");
  LeftCore core;
  if (w == s_upper()) {
    core.enclosure = IntervalQ(s_lower(), s_lower());
    core.degenerate = true;
    return core;
  }
  const auto pieces = bounds::left_certificate_pieces(w, t);
  for (auto [name, poly] : {std::pair{"at_smax", pieces.at_smax}, std::pair{"at_lower", pieces.at_lower}}) {
    LeftPiece lp{name, poly.deflate(w).first, std::nullopt};
    if (lp.reduced(w).sign() > 0) {
      core.enclosure = IntervalQ(s_lower(), s_lower());
      core.degenerate = true;
      core.pieces.clear();
      return core;
    }
    lp.root = isolate_extreme_root(lp.reduced, w, s_upper(), width, Extreme::smallest);
    if (lp.root) lp.root = off_root(lp.reduced, *lp.root, s_upper());
    core.pieces.push_back(std::move(lp));
  }
  std::optional<Rational> lo, hi;
  for (const auto& p : core.pieces) {
    if (!p.root) continue;
    lo = lo ? min(*lo, p.root->lo()) : p.root->lo();
    hi = hi ? min(*hi, p.root->hi()) : p.root->hi();
  }
  core.enclosure = lo ? IntervalQ(*lo, *hi) : IntervalQ(s_upper(), s_upper());
  return core;
}

}  // namespace

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

Side side_from_string(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw std::invalid_argument("side must be 'left' or 'right', got '" + s + "'");
}

Threshold left_threshold(const Rational& t, const Rational& w, const Rational& width) {
  LeftCore core = left_core(t, w, width);
  Threshold th;
  th.hypothesis = kLeftHypothesis;
  th.enclosure = core.enclosure;
  th.degenerate = core.degenerate;
  if (core.degenerate) {
    if (w < s_upper()) {
      // Witness: the offending piece is positive just right of w.
      const auto pieces = bounds::left_certificate_pieces(w, t);
      for (const auto& [name, poly] : {std::pair{"at_smax", pieces.at_smax}, std::pair{"at_lower", pieces.at_lower}}) {
        const Polynomial r = poly.deflate(w).first;
        if (r(w).sign() > 0) {
          const auto next = isolate_extreme_root(r, w, s_upper(), default_isolation_width(), Extreme::smallest);
          const Rational right = next ? next->lo() : s_upper();
          if (right > w)
            th.certificates.push_back({std::string(name) + ": positive right of w",
                                       certify_sign_on_interval(r, IntervalQ(w, right), Sign::positive)});
          break;
        }
      }
    }
    return th;
  }
  for (auto& piece : core.pieces) {
    const Rational upto = piece.root ? piece.root->lo() : s_upper();
    th.certificates.push_back({piece.name + ": negative on [w, lo]",
                               certify_sign_on_interval(piece.reduced, IntervalQ(w, upto), Sign::negative)});
  }
  for (auto& piece : core.pieces)
    if (piece.root)
      th.certificates.push_back({piece.name + ": root in enclosure", count_roots(piece.reduced, *piece.root).certificate});
  return th;
}

namespace {

struct RightCore {
  IntervalQ enclosure;
  bool degenerate = false;
  RootCount count;
};

RightCore right_core(const Rational& t, const Rational& width) {
  bounds::check_t(t, "right_threshold");
  if (width.sign() <= 0) throw DomainError("right_threshold: width must be positive");
  const Polynomial p = bounds::theta2(t);
  RightCore core;
  core.count = count_roots(p, IntervalQ(s_lower(), s_upper()));
  if (core.count.count == 0) {
    core.enclosure = IntervalQ(s_upper(), s_upper());
    core.degenerate = true;
    return core;
  }
  const Rational top = core.count.certificate.effective_interval().hi();
  core.enclosure = off_root(p, *isolate_extreme_root(p, s_lower(), top, width, Extreme::largest), top);
  return core;
}

}  // namespace

Threshold right_threshold(const Rational& t, const Rational& width) {
  RightCore core = right_core(t, width);
  const Polynomial p = bounds::theta2(t);
  Threshold th;
  th.enclosure = core.enclosure;
  th.degenerate = core.degenerate;
  th.certificates.push_back({"theta2: root count on [5/3, 9/5]", core.count.certificate});
  if (core.degenerate) return th;
  const IntervalQ& enc = core.enclosure;
  if (enc.hi() < s_upper())
    th.certificates.push_back({"theta2: negative on [hi, 9/5]",
                               certify_sign_on_interval(p, IntervalQ(enc.hi(), s_upper()), Sign::negative)});
  th.certificates.push_back({"theta2: root in enclosure", count_roots(p, enc).certificate});
  return th;
}

SweepConfig default_sweep_config(Side side) {
  SweepConfig cfg;
  for (long k = 1; k <= 100; ++k) cfg.t_grid.emplace_back(k, 200);
  if (side == Side::left) {
    const Rational step = Rational(2, 15) / Rational(100);
    for (long k = 0; k <= 100; ++k) cfg.w_grid.push_back(s_lower() + Rational(k) * step);
  } else {
    cfg.w_grid.push_back(s_upper());
  }
  return cfg;
}

void validate(const SweepConfig& cfg, Side side) {
  auto check_sorted = [](const std::vector<Rational>& g, const char* name) {
    if (g.empty()) throw DomainError(std::string("sweep config: ") + name + " is empty");
    for (std::size_t i = 1; i < g.size(); ++i)
      if (!(g[i - 1] < g[i])) throw DomainError(std::string("sweep config: ") + name + " must be strictly increasing");
  };
  check_sorted(cfg.t_grid, "t_grid");
  check_sorted(cfg.w_grid, "w_grid");
  for (const auto& t : cfg.t_grid) bounds::check_t(t, "sweep config t_grid");
  for (const auto& w : cfg.w_grid) bounds::check_in_pinching_interval(w, "w", "sweep config w_grid");
  if (side == Side::right && !(cfg.w_grid.size() == 1 && cfg.w_grid[0] == s_upper()))
    throw DomainError("sweep config: the right side uses w = 9/5 only");
  if (cfg.refinement_rounds < 0) throw DomainError("sweep config: refinement_rounds must be >= 0");
  if (cfg.isolation_width.sign() <= 0) throw DomainError("sweep config: isolation_width must be positive");
}

SweepConfig sweep_config_from_json(const nlohmann::json& j, Side side) {
  if (!j.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
  SweepConfig cfg = default_sweep_config(side);
  auto grid = [](const nlohmann::json& g) {
    std::vector<Rational> out;
    if (g.is_array()) {
      for (const auto& v : g) out.push_back(rational_from_json(v));
    } else if (g.is_object()) {
      // {"start": a, "stop": b, "count": n}: n evenly spaced points, ends included.
      const Rational a = rational_from_json(g.at("start"));
      const Rational b = rational_from_json(g.at("stop"));
      const long n = g.at("count").get<long>();
      if (n < 1) throw std::invalid_argument("grid count must be >= 1");
      if (n == 1) return std::vector<Rational>{a};
      for (long k = 0; k < n; ++k) out.push_back(a + (b - a) * Rational(k, n - 1));
    } else {
      throw std::invalid_argument("grid must be an array or {start, stop, count}");
    }
    return out;
  };
  for (const auto& [key, val] : j.items()) {
    if (key == "t_grid") cfg.t_grid = grid(val);
    else if (key == "w_grid") cfg.w_grid = grid(val);
    else if (key == "refinement_rounds") cfg.refinement_rounds = val.get<int>();
    else if (key == "isolation_width") cfg.isolation_width = rational_from_json(val);
    else throw std::invalid_argument("unknown sweep config key '" + key + "'");
  }
  validate(cfg, side);
  return cfg;
}

nlohmann::json to_json(const SweepConfig& cfg) {
  auto arr = [](const std::vector<Rational>& g) {
    auto a = nlohmann::json::array();
    for (const auto& v : g) a.push_back(pinchcert::to_json(v));
    return a;
  };
  return {{"t_grid", arr(cfg.t_grid)},
          {"w_grid", arr(cfg.w_grid)},
          {"refinement_rounds", cfg.refinement_rounds},
          {"isolation_width", pinchcert::to_json(cfg.isolation_width)}};
}

bool better(Side side, const SweepPoint& a, const SweepPoint& b) {
  const IntervalQ& x = a.enclosure;
  const IntervalQ& y = b.enclosure;
  if (side == Side::left) {
    if (x.lo() != y.lo()) return x.lo() > y.lo();
    if (x.hi() != y.hi()) return x.hi() > y.hi();
  } else {
    if (x.hi() != y.hi()) return x.hi() < y.hi();
    if (x.lo() != y.lo()) return x.lo() < y.lo();
  }
  if (a.t != b.t) return a.t < b.t;
  return a.w < b.w;
}

namespace {

SweepPoint evaluate(Side side, const Rational& t, const Rational& w, const Rational& width) {
  SweepPoint sp{t, w, {}, false};
  if (side == Side::left) {
    const LeftCore core = left_core(t, w, width);
    sp.enclosure = core.enclosure;
    sp.degenerate = core.degenerate;
  } else {
    const RightCore core = right_core(t, width);
    sp.enclosure = core.enclosure;
    sp.degenerate = core.degenerate;
  }
  return sp;
}

// Distance from v to its nearest neighbour in a sorted grid (0 for singletons).
Rational nearest_gap(const std::vector<Rational>& grid, const Rational& v) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i] == v || grid[i + 1] == v) {
      const Rational g = grid[i + 1] - grid[i];
      best = best ? min(*best, g) : g;
    }
  }
  return best.value_or(Rational(0));
}

bool in_t_domain(const Rational& t) { return t.sign() > 0 && t <= Rational(1, 2); }
bool in_w_domain(const Rational& w) { return s_lower() <= w && w <= s_upper(); }

}  // namespace

Optimum optimize(Side side, const SweepConfig& cfg, unsigned threads) {
  validate(cfg, side);
  if (threads == 0) threads = worker_count();

  std::vector<std::pair<Rational, Rational>> grid;
  for (const auto& t : cfg.t_grid)
    for (const auto& w : cfg.w_grid) grid.emplace_back(t, w);

  Optimum opt;
  opt.side = side;
  opt.evaluated.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    opt.evaluated[i] = evaluate(side, grid[i].first, grid[i].second, cfg.isolation_width);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < opt.evaluated.size(); ++i)
    if (better(side, opt.evaluated[i], opt.evaluated[best])) best = i;
  SweepPoint incumbent = opt.evaluated[best];

  Rational ht = nearest_gap(cfg.t_grid, incumbent.t);
  Rational hw = side == Side::left ? nearest_gap(cfg.w_grid, incumbent.w) : Rational(0);
  std::set<std::pair<Rational, Rational>> seen(grid.begin(), grid.end());
  for (int round = 0; round < cfg.refinement_rounds; ++round) {
    ht = ht / 3;
    hw = hw / 3;
    std::vector<std::pair<Rational, Rational>> probes;
    for (int dt = -1; dt <= 1; ++dt) {
      for (int dw = -1; dw <= 1; ++dw) {
        if (dt == 0 && dw == 0) continue;
        const Rational t = incumbent.t + Rational(dt) * ht;
        const Rational w = incumbent.w + Rational(dw) * hw;
        if (!in_t_domain(t) || !in_w_domain(w)) continue;
        if (!seen.insert({t, w}).second) continue;
        probes.emplace_back(t, w);
      }
    }
    std::vector<SweepPoint> results(probes.size());
    parallel_for(probes.size(), threads, [&](std::size_t i) {
      results[i] = evaluate(side, probes[i].first, probes[i].second, cfg.isolation_width);
    });
    for (auto& r : results) {
      if (better(side, r, incumbent)) incumbent = r;
      opt.evaluated.push_back(std::move(r));
    }
  }

  if (side == Side::left)
    for (const auto& p : opt.evaluated)
      if (p.w == s_lower() && (!opt.best_unconditional || better(side, p, *opt.best_unconditional)))
        opt.best_unconditional = p;

  opt.best_t = incumbent.t;
  opt.best_w = incumbent.w;
  Threshold th = side == Side::left ? left_threshold(incumbent.t, incumbent.w, cfg.isolation_width)
                                    : right_threshold(incumbent.t, cfg.isolation_width);
  opt.threshold = th.enclosure;
  opt.certificates = std::move(th.certificates);
  opt.hypothesis = std::move(th.hypothesis);
  return opt;
}

nlohmann::json to_json(const Threshold& th) {
  auto certs = nlohmann::json::array();
  for (const auto& c : th.certificates) certs.push_back(pinchcert::to_json(c));
  nlohmann::json j = {{"enclosure", pinchcert::to_json(th.enclosure)},
                      {"degenerate", th.degenerate},
                      {"certificates", certs}};
  if (!th.hypothesis.empty()) j["hypothesis"] = th.hypothesis;
  return j;
}

nlohmann::json to_json(const Optimum& opt, bool full_table) {
  auto certs = nlohmann::json::array();
  for (const auto& c : opt.certificates) certs.push_back(pinchcert::to_json(c));

  // Default table: best entry per t, in first-seen t order.
  std::vector<const SweepPoint*> rows;
  if (full_table) {
    for (const auto& p : opt.evaluated) rows.push_back(&p);
  } else {
    std::map<Rational, const SweepPoint*> per_t;
    for (const auto& p : opt.evaluated) {
      auto it = per_t.find(p.t);
      if (it == per_t.end() || better(opt.side, p, *it->second)) per_t[p.t] = &p;
    }
    for (const auto& [t, p] : per_t) rows.push_back(p);
  }
  auto table = nlohmann::json::array();
  for (const auto* p : rows)
    table.push_back({{"t", pinchcert::to_json(p->t)},
                     {"w", pinchcert::to_json(p->w)},
                     {"threshold", pinchcert::to_json(p->enclosure)},
                     {"degenerate", p->degenerate}});

  nlohmann::json j = {{"side", to_string(opt.side)},
                      {"best_t", pinchcert::to_json(opt.best_t)},
                      {"best_w", pinchcert::to_json(opt.best_w)},
                      {"threshold", pinchcert::to_json(opt.threshold)},
                      {"certificates", certs},
                      {"evaluated_points", opt.evaluated.size()},
                      {"table", table}};
  if (!opt.hypothesis.empty()) j["hypothesis"] = opt.hypothesis;
  if (opt.best_unconditional)
    j["best_unconditional"] = {{"t", pinchcert::to_json(opt.best_unconditional->t)},
                               {"w", pinchcert::to_json(opt.best_unconditional->w)},
                               {"threshold", pinchcert::to_json(opt.best_unconditional->enclosure)}};
  return j;
}

}  // namespace pinchcert::search
