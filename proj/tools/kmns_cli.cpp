// Command-line front end: run residual-check suites against built-in or
// user-defined scenarios and emit machine-readable reports.
//
// Exit codes: 0 every requested check passed; 1 at least one check failed
// (or a surface-energy extrapolation diverged); 2 configuration or scenario
// error (unknown names, bad flags, malformed scenario files, unwritable
// output paths, quadrature outside the chart domain).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "kmns/checks.hpp"
#include "kmns/errors.hpp"
#include "kmns/komar.hpp"
#include "kmns/report.hpp"
#include "kmns/scenario.hpp"

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "key=value" with a strict numeric value
std::pair<std::string, double> parse_assignment(const std::string& item,
                                                const std::string& flag) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
    throw kmns::config_error(flag + " expects key=value, got \"" + item +
                             "\"");
  const std::string key = item.substr(0, eq);
  const std::string text = item.substr(eq + 1);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw kmns::config_error(flag + ": \"" + text + "\" is not a number");
  }
  if (used != text.size())
    throw kmns::config_error(flag + ": trailing characters in \"" + text +
                             "\"");
  return {key, value};
}

kmns::Scenario load_from(const std::string& name, const kmns::Params& params,
                         const std::string& file) {
  return file.empty() ? kmns::load_scenario(name, params)
                      : kmns::load_scenario_file(file);
}

struct VerifyArgs {
  std::string scenario = "minkowski";
  std::string scenario_file;
  std::vector<std::string> params;
  std::vector<std::string> killing;
  std::vector<std::string> checks;
  std::vector<std::string> tolerances;
  int count = 100;
  long long seed = 0;
  std::vector<double> radii;
  int n_theta = 32;
  int n_phi = 64;
  std::string out_dir;
};

int run_verify(const VerifyArgs& args) {
  kmns::RunConfig cfg;
  cfg.scenario_name = args.scenario;
  cfg.scenario_file = args.scenario_file;
  for (const auto& item : args.params) {
    const auto [k, v] = parse_assignment(item, "--param");
    cfg.params[k] = v;
  }
  cfg.killing = args.killing;
  cfg.checks =
      args.checks.empty() ? kmns::known_check_tokens() : args.checks;
  for (const auto& item : args.tolerances) {
    const auto [k, v] = parse_assignment(item, "--tol");
    cfg.tolerances[k] = v;
  }
  cfg.count = args.count;
  cfg.seed = static_cast<std::uint64_t>(args.seed);
  if (!args.radii.empty()) cfg.komar.radii = args.radii;
  cfg.komar.n_theta = args.n_theta;
  cfg.komar.n_phi = args.n_phi;

  const kmns::RunResult res = kmns::run_checks(cfg);

  int failed = 0;
  for (const auto& r : res.reports) {
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check_id << "  "
              << r.scenario << "  "
              << (r.killing_field.empty() ? "-" : r.killing_field)
              << "  status=" << kmns::to_string(r.status)
              << "  max=" << fmt17(r.max_residual)
              << "  tol=" << fmt17(r.tolerance) << "\n";
  }
  std::cout << res.reports.size() << " report(s), "
            << (res.reports.size() - std::size_t(failed)) << " passed, "
            << failed << " failed\n";

  if (!args.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec)
      throw kmns::config_error("cannot create output directory \"" +
                               args.out_dir + "\": " + ec.message());
    const auto json_path =
        (std::filesystem::path(args.out_dir) / "report.json").string();
    const auto csv_path =
        (std::filesystem::path(args.out_dir) / "report.csv").string();
    kmns::write_file(json_path, kmns::to_json(res.reports));
    kmns::write_file(csv_path, kmns::to_csv(res.reports));
    std::cout << "wrote " << json_path << " and " << csv_path << "\n";
  }
  return res.all_pass ? 0 : 1;
}

struct KomarArgs {
  std::string scenario = "schwarzschild";
  std::string scenario_file;
  std::vector<std::string> params;
  std::string killing = "dt";
  std::vector<double> radii = {50.0, 100.0, 200.0};
  int n_theta = 32;
  int n_phi = 64;
};

int run_komar(const KomarArgs& args) {
  kmns::Params params;
  for (const auto& item : args.params) {
    const auto [k, v] = parse_assignment(item, "--param");
    params[k] = v;
  }
  const kmns::Scenario sc =
      load_from(args.scenario, params, args.scenario_file);
  const kmns::Chart* chart = sc.find_chart("spherical");
  if (!chart)
    throw kmns::config_error("scenario \"" + sc.name +
                             "\" has no spherical chart for the surface "
                             "quadrature");
  const kmns::VectorFn& X = sc.killing_on("spherical", args.killing);

  kmns::SphereQuadrature quad;
  quad.radii = args.radii;
  quad.n_theta = args.n_theta;
  quad.n_phi = args.n_phi;

  const kmns::KomarSurfaceResult res =
      kmns::komar_energy_surface(*chart->metric, X, quad, chart->box[0][0]);
  for (const auto& row : res.table)
    std::cout << "r=" << fmt17(row.radius)
              << "  energy=" << fmt17(row.estimate) << "\n";
  std::cout << "extrapolated=" << fmt17(res.value) << "\n";
  return 0;
}

int run_list() {
  for (const std::string& name : kmns::builtin_scenario_names()) {
    const kmns::Scenario sc = kmns::load_scenario(name);
    std::cout << sc.name << "\n  params:";
    if (sc.params.empty()) std::cout << " (none)";
    for (const auto& [k, v] : sc.params) std::cout << " " << k << "=" << v;
    std::cout << "\n  charts:";
    for (const auto& c : sc.charts) std::cout << " " << c.name;
    std::cout << "\n  generators:";
    for (const auto& k : sc.killing)
      std::cout << " " << k.name << (k.is_symmetry ? "" : " (control)");
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "residual verification of the curvature / field-strength / fluid "
      "identity chain on Lorentzian metrics"};
  app.require_subcommand(1);

  VerifyArgs vargs;
  CLI::App* verify =
      app.add_subcommand("verify", "run residual checks and emit reports");
  verify->add_option("--scenario", vargs.scenario,
                     "built-in scenario name (default minkowski)");
  verify->add_option("--scenario-file", vargs.scenario_file,
                     "scenario JSON file; takes precedence over --scenario");
  verify->add_option("--param", vargs.params,
                     "scenario parameter key=value (repeatable)");
  verify
      ->add_option("--killing", vargs.killing,
                   "comma-separated generator names (default: every "
                   "declared symmetry generator)")
      ->delimiter(',');
  verify
      ->add_option("--checks", vargs.checks,
                   "comma-separated check tokens (default: all)")
      ->delimiter(',');
  verify->add_option("--tol", vargs.tolerances,
                     "tolerance override key=value (repeatable)");
  verify->add_option("--count", vargs.count,
                     "sample points per chart (default 100)");
  verify->add_option("--seed", vargs.seed, "sample-sequence seed (default 0)");
  verify
      ->add_option("--radii", vargs.radii,
                   "surface-energy sphere radii (default 50,100,200)")
      ->delimiter(',');
  verify->add_option("--n-theta", vargs.n_theta,
                     "surface quadrature polar order (default 32)");
  verify->add_option("--n-phi", vargs.n_phi,
                     "surface quadrature azimuthal nodes (default 64)");
  verify->add_option("--out", vargs.out_dir,
                     "directory for report.json and report.csv");

  KomarArgs kargs;
  CLI::App* komar = app.add_subcommand(
      "komar", "surface energy of one generator over large spheres");
  komar->add_option("--scenario", kargs.scenario,
                    "built-in scenario name (default schwarzschild)");
  komar->add_option("--scenario-file", kargs.scenario_file,
                    "scenario JSON file; takes precedence over --scenario");
  komar->add_option("--param", kargs.params,
                    "scenario parameter key=value (repeatable)");
  komar->add_option("--killing", kargs.killing,
                    "generator name (default dt)");
  komar
      ->add_option("--radii", kargs.radii,
                   "sphere radii (default 50,100,200)")
      ->delimiter(',');
  komar->add_option("--n-theta", kargs.n_theta,
                    "polar quadrature order (default 32)");
  komar->add_option("--n-phi", kargs.n_phi,
                    "azimuthal quadrature nodes (default 64)");

  CLI::App* list =
      app.add_subcommand("list-scenarios", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad flags are configuration errors
  }

  try {
    if (verify->parsed()) return run_verify(vargs);
    if (komar->parsed()) return run_komar(kargs);
    if (list->parsed()) return run_list();
    return 2;
  } catch (const kmns::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;  // the run executed; the quantity itself failed to converge
  } catch (const kmns::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
