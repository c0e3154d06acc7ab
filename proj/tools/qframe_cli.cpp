#include "qframe/workbench.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace wb = qframe::workbench;

int main(int argc, char** argv) {
  CLI::App app{"Encoded-qubit workbench: builds the constructions and verifies their frames"};
  app.require_subcommand(1);

  wb::SuiteConfig config;
  std::string suite = "all";
  std::string format = "text";
  std::string out_path;

  auto* run = app.add_subcommand("run", "Run verification suites");
  run->add_option("--suite", suite, "bosonic | repetition | collective | algebra | all")
      ->capture_default_str();
  run->add_option("--tol", config.tolerance, "Pass threshold on max deviation")
      ->capture_default_str();
  run->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  run->add_option("--trials", config.trials, "Random trials per randomized check")
      ->capture_default_str();
  run->add_option("--cutoff", config.cutoff, "Photon cutoff per mode (bosonic)")
      ->capture_default_str();
  run->add_option("--out", out_path, "Write the report here instead of stdout");
  run->add_option("--format", format, "text | json")->capture_default_str();

  std::string describe_suite;
  auto* describe = app.add_subcommand("describe", "Print which check verifies which construction");
  describe->add_option("suite", describe_suite, "Suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wb::kUsageError;
  }

  try {
    if (*describe) {
      std::cout << wb::describe(describe_suite);
      return wb::kAllPass;
    }
    config.suite = wb::suite_from_string(suite);
    config.format = wb::format_from_string(format);
    if (!out_path.empty()) config.output_path = out_path;
  } catch (const wb::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return wb::kUsageError;
  }
  return wb::run(config, std::cout, std::cerr);
}
