#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "netcoh/scenario.hpp"

namespace {

int run_command(const std::string& scenario_path, const std::string& out_path,
                const std::string& csv_path, unsigned jobs, long seed_override,
                bool list_checks) {
  using namespace netcoh;
  if (list_checks) {
    for (const auto& kind : list_check_kinds()) std::cout << kind << "\n";
    return 0;
  }
  std::ifstream in(scenario_path);
  if (!in) {
    std::cerr << "cannot open scenario: " << scenario_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  Scenario scenario;
  try {
    scenario = parse_scenario(buf.str());
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (seed_override >= 0) scenario.seed = (uint64_t)seed_override;

  const RunReport report = run(scenario, jobs);
  for (const auto& r : report.results)
    std::cout << r.name << ": " << r.status << " (" << r.elapsed_us / 1000 << " ms)\n";
  std::cout << report.passed << " passed, " << report.failed << " failed, "
            << report.skipped << " skipped\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << emit(report, ReportFormat::Json);
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    out << emit(report, ReportFormat::Csv);
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netcoh: exact checks for nets of symplectic subspaces on the line"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run a scenario file");
  std::string scenario_path, out_path, csv_path;
  unsigned jobs = 1;
  long seed = -1;
  bool list_checks = false;
  run_cmd->add_option("scenario", scenario_path, "scenario JSON file");
  run_cmd->add_option("--out", out_path, "write the JSON report here");
  run_cmd->add_option("--csv", csv_path, "write the CSV table here");
  run_cmd->add_option("--jobs", jobs, "run checks concurrently");
  run_cmd->add_option("--seed", seed, "override the scenario seed");
  run_cmd->add_flag("--list-checks", list_checks, "list known check kinds and exit");

  CLI11_PARSE(app, argc, argv);

  if (!list_checks && scenario_path.empty()) {
    std::cerr << "a scenario file is required\n";
    return 2;
  }
  return run_command(scenario_path, out_path, csv_path, jobs, seed, list_checks);
}
