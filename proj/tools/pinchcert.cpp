#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pinchcert/errors.hpp"
#include "pinchcert/param_search.hpp"
#include "pinchcert/report.hpp"
#include "pinchcert/shrinker.hpp"

using namespace pinchcert;

namespace {

constexpr int kOk = 0;
constexpr int kCertFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for pinching constants of minimal surfaces in spheres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::toolkit_version());

  std::string out_path, md_path;
  bool quiet = false;
  app.add_option("--out", out_path, "Write the JSON report to this file");
  app.add_option("--md", md_path, "Write a markdown summary to this file");
  app.add_flag("--quiet", quiet, "Do not print the JSON report to stdout");

  auto* certify = app.add_subcommand("certify", "Run the fixed certification suite");
  std::uint64_t certify_seed = 1;
  certify->add_option("--seed", certify_seed, "Seed for the random identity checks");

  auto* optimize = app.add_subcommand("optimize", "Sweep certificate parameters for the best threshold");
  std::string side_name, config_path;
  bool full_table = false;
  optimize->add_option("--side", side_name, "left or right")->required()->check(CLI::IsMember({"left", "right"}));
  optimize->add_option("--config", config_path, "Sweep config JSON (default grids when omitted)");
  optimize->add_flag("--full-table", full_table, "Include every evaluated point in the table");

  auto* lab = app.add_subcommand("lab", "Geometry scan of a Calabi sphere");
  int lab_s = 3, lab_samples = 500;
  std::uint64_t lab_seed = 1;
  double lab_step = 1e-3;
  std::string csv_path;
  lab->add_option("--s", lab_s, "Harmonic degree (1..6)")->required();
  lab->add_option("--samples", lab_samples, "Number of sample points");
  lab->add_option("--seed", lab_seed, "Sampling seed");
  lab->add_option("--step", lab_step, "Finite-difference step");
  lab->add_option("--csv", csv_path, "Write per-sample scan rows to this CSV file");

  auto* classify = app.add_subcommand("classify", "Classify self-shrinker pinching data");
  std::string input_path, min_text, max_text;
  bool h_nonvanishing = true, h_parallel = true;
  auto* input_opt = classify->add_option("--input", input_path, "JSON file with the pinching data");
  auto* min_opt = classify->add_option("--min", min_text, "Infimum of |Å_R|^2 (rational or decimal)");
  auto* max_opt = classify->add_option("--max", max_text, "Supremum of |Å_R|^2 (rational or decimal)");
  classify->add_option("--h-nonvanishing", h_nonvanishing, "Mean curvature nowhere vanishing (true/false)");
  classify->add_option("--h-parallel", h_parallel, "Normalized mean curvature parallel (true/false)");
  input_opt->excludes(min_opt)->excludes(max_opt);
  min_opt->needs(max_opt);
  max_opt->needs(min_opt);

  auto* replay = app.add_subcommand("replay", "Re-verify every certificate in a saved report");
  std::string replay_path;
  replay->add_option("report", replay_path, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  report::CertificationReport rep;
  try {
    if (*certify) {
      rep = report::cmd_certify(certify_seed);
    } else if (*optimize) {
      const auto side = search::side_from_string(side_name);
      search::SweepConfig cfg = search::default_sweep_config(side);
      std::string source = "default";
      if (!config_path.empty()) {
        try {
          cfg = search::sweep_config_from_json(read_json(config_path), side);
        } catch (const UsageError&) {
          throw;
        } catch (const std::exception& e) {
          throw UsageError("malformed sweep config: " + std::string(e.what()));
        }
        source = config_path;
      }
      rep = report::cmd_optimize(side, cfg, full_table, source);
    } else if (*lab) {
      if (lab_s < 1 || lab_s > 6) throw UsageError("--s must lie in [1, 6]");
      if (lab_samples < 1) throw UsageError("--samples must be >= 1");
      if (!(lab_step > 0)) throw UsageError("--step must be positive");
      rep = report::cmd_lab(lab_s, lab_samples, lab_seed, lab_step);
      if (!csv_path.empty()) {
        calabi::ScanOptions opt;
        opt.step = lab_step;
        write_file(csv_path, calabi::to_csv(calabi::geometry_scan(calabi::build_calabi_immersion(lab_s), lab_samples,
                                                                  lab_seed, opt)));
      }
    } else if (*classify) {
      shrinker::ShrinkerPinchData data;
      try {
        if (!input_path.empty()) {
          data = shrinker::pinch_data_from_json(read_json(input_path));
        } else if (!min_text.empty()) {
          data.a_circ_min = Rational::parse(min_text);
          data.a_circ_max = Rational::parse(max_text);
          data.mean_curvature_nonvanishing = h_nonvanishing;
          data.normalized_H_parallel = h_parallel;
        } else {
          throw UsageError("classify needs --input or --min/--max");
        }
        shrinker::validate(data);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        throw UsageError("malformed pinching data: " + std::string(e.what()));
      }
      rep = report::cmd_classify(data);
    } else if (*replay) {
      nlohmann::json j = read_json(replay_path);
      try {
        rep = report::cmd_replay(j);
      } catch (const std::exception& e) {
        throw UsageError("malformed report: " + std::string(e.what()));
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "pinchcert: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "pinchcert: " << e.what() << "\n";
    return kCertFailure;
  }

  const std::string json = report::to_json(rep).dump(2) + "\n";
  try {
    if (!out_path.empty()) write_file(out_path, json);
    if (!md_path.empty()) write_file(md_path, report::to_markdown(rep));
  } catch (const std::exception& e) {
    std::cerr << "pinchcert: " << e.what() << "\n";
    return kUsage;
  }
  if (!quiet && out_path.empty()) std::cout << json;
  for (const auto& f : rep.failures()) std::cerr << "pinchcert: " << f << "\n";
  return rep.ok() ? kOk : kCertFailure;
}
