#include <CLI11.hpp>

#include "slopelab/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"slope-lab: exact slope calculus, Okounkov bodies and toric chi-volumes"};
  std::string kind, config_path, out_path;
  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("kind", kind,
                 "experiment kind: slopes | series-invariants | chi-vol | hs-check | "
                 "cone-scan | certificate | fekete | check-axioms")
      ->required();
  app.add_option("--config", config_path, "input config (JSON)")->required();
  app.add_option("--out", out_path, "output report (CSV)")->required();
  app.add_option("--seed", seed, "seed for property suites (recorded in the output)");
  app.add_option("--jobs", jobs, "worker threads for scans")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : slopelab::kExitConfigError;
  }
  return slopelab::run_experiment(kind, config_path, out_path, seed, jobs);
}
