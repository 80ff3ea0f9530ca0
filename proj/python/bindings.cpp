#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "pinchcert/calabi.hpp"
#include "pinchcert/errors.hpp"
#include "pinchcert/param_search.hpp"
#include "pinchcert/pinching.hpp"
#include "pinchcert/report.hpp"
#include "pinchcert/shrinker.hpp"
#include "pinchcert/sturm.hpp"

namespace py = pybind11;
using namespace pinchcert;

// Rational <-> fractions.Fraction.  Accepts Fraction, int or a decimal/"p/q" string; floats are refused.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || PyFloat_Check(src.ptr())) return false;
    if (PyUnicode_Check(src.ptr())) {
      value = Rational::parse(src.cast<std::string>());
      return true;
    }
    if (!hasattr(src, "numerator") || !hasattr(src, "denominator")) return false;
    std::string text = py::str(src.attr("numerator")).cast<std::string>() + "/" +
                       py::str(src.attr("denominator")).cast<std::string>();
    value = Rational::parse(text);
    return true;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    static auto* fraction = new py::object(py::module_::import("fractions").attr("Fraction"));
    return (*fraction)(r.to_string()).release();
  }
};
}  // namespace pybind11::detail

namespace {

py::object to_py(const nlohmann::json& j) {
  static auto* loads = new py::object(py::module_::import("json").attr("loads"));
  return (*loads)(j.dump());
}

nlohmann::json from_py(const py::object& o) {
  static auto* dumps = new py::object(py::module_::import("json").attr("dumps"));
  return nlohmann::json::parse((*dumps)(o).cast<std::string>());
}

py::tuple pair(const IntervalQ& iv) { return py::make_tuple(iv.lo(), iv.hi()); }

Polynomial poly(const std::vector<Rational>& c) { return Polynomial(c); }

search::SweepConfig sweep_config(const py::object& cfg, search::Side side) {
  return cfg.is_none() ? search::default_sweep_config(side) : search::sweep_config_from_json(from_py(cfg), side);
}

}  // namespace

PYBIND11_MODULE(_pinchcert, m) {
  m.doc() = "Exact pinching certificates and Calabi-sphere geometry checks";
  m.attr("__version__") = report::toolkit_version();

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ArithmeticError);
  py::register_exception<SignClaimError>(m, "SignClaimError", PyExc_ArithmeticError);

  // exact polynomials: coefficient lists, lowest degree first
  m.def("poly_eval", [](const std::vector<Rational>& c, const Rational& x) { return poly(c)(x); },
        py::arg("coeffs"), py::arg("x"));
  m.def("count_roots", [](const std::vector<Rational>& c, const Rational& lo, const Rational& hi) {
    return count_roots(poly(c), IntervalQ(lo, hi)).count;
  }, py::arg("coeffs"), py::arg("lo"), py::arg("hi"));
  m.def("isolate_root", [](const std::vector<Rational>& c, const Rational& lo, const Rational& hi, const Rational& width) {
    return pair(isolate_root(poly(c), IntervalQ(lo, hi), width).enclosure);
  }, py::arg("coeffs"), py::arg("lo"), py::arg("hi"), py::arg("width") = default_isolation_width());
  m.def("certify_sign", [](const std::vector<Rational>& c, const Rational& lo, const Rational& hi, bool positive) {
    return to_py(to_json(certify_sign_on_interval(poly(c), IntervalQ(lo, hi), positive ? Sign::positive : Sign::negative)));
  }, py::arg("coeffs"), py::arg("lo"), py::arg("hi"), py::arg("positive") = true);
  m.def("replay", [](const py::object& cert) { return replay_failure(certificate_from_json(from_py(cert))); },
        py::arg("certificate"), "Empty string when the certificate replays, otherwise the reason.");

  // pinching bounds
  m.def("theta1", [] { return bounds::theta1().coefficients(); });
  m.def("theta2", [](const Rational& t) { return bounds::theta2(t).coefficients(); }, py::arg("t"));
  m.def("gap_lower_bound", &bounds::gap_lower_bound, py::arg("s_min"));
  m.def("smax_threshold", &bounds::smax_threshold, py::arg("w"));
  m.def("calabi_value", [](int s) {
    auto v = bounds::calabi_value(s);
    return py::make_tuple(v.K, v.S);
  }, py::arg("s"));

  // parameter search
  m.def("left_threshold", [](const Rational& t, const Rational& w, const Rational& width) {
    return to_py(search::to_json(search::left_threshold(t, w, width)));
  }, py::arg("t"), py::arg("w"), py::arg("width") = default_isolation_width());
  m.def("right_threshold", [](const Rational& t, const Rational& width) {
    return to_py(search::to_json(search::right_threshold(t, width)));
  }, py::arg("t"), py::arg("width") = default_isolation_width());
  m.def("optimize", [](const std::string& side, const py::object& cfg, unsigned threads, bool full_table) {
    auto sd = search::side_from_string(side);
    auto c = sweep_config(cfg, sd);
    auto opt = [&] {
      py::gil_scoped_release nogil;
      return search::optimize(sd, c, threads);
    }();
    return to_py(search::to_json(opt, full_table));
  }, py::arg("side"), py::arg("config") = py::none(), py::arg("threads") = 0u, py::arg("full_table") = false);

  // geometry lab
  m.def("geometry_scan", [](int s, int samples, std::uint64_t seed, double step) {
    calabi::ScanOptions opt;
    opt.step = step;
    auto imm = calabi::build_calabi_immersion(s);
    auto scan = [&] {
      py::gil_scoped_release nogil;
      return calabi::geometry_scan(imm, samples, seed, opt);
    }();
    auto out = to_py(calabi::summary_json(scan));
    out["check"] = to_py(calabi::to_json(calabi::verify_identities(scan)));
    return out;
  }, py::arg("s"), py::arg("samples") = 200, py::arg("seed") = 1, py::arg("step") = 1e-3);

  // shrinker bridge
  m.def("classify", [](const py::object& data) {
    return to_py(shrinker::to_json(shrinker::classify(shrinker::pinch_data_from_json(from_py(data)))));
  }, py::arg("data"));
  m.def("spherical_to_shrinker", &shrinker::spherical_to_shrinker, py::arg("S_unit"));

  // full reports, as the CLI emits them
  m.def("certify", [](std::uint64_t seed) { return to_py(report::to_json(report::cmd_certify(seed))); },
        py::arg("seed") = 1);
  m.def("replay_report", [](const py::object& rep) { return to_py(report::to_json(report::cmd_replay(from_py(rep)))); },
        py::arg("report"));
}
