#include "qframe/workbench.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace qframe;
using namespace qframe::workbench;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QFRAME_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace

TEST_CASE("full run passes with at least 30 checks") {
  SuiteConfig config;
  config.format = Format::json;
  std::ostringstream out, err;
  CHECK(run(config, out, err) == kAllPass);
  const auto j = nlohmann::ordered_json::parse(out.str());
  CHECK(j["all_pass"] == true);
  CHECK(j["checks"].size() >= 30);
  CHECK(j["suite"] == "all");
  for (const auto& c : j["checks"]) {
    CHECK(c.size() == 3);
    CHECK(c.contains("name"));
    CHECK(c.contains("max_deviation"));
    CHECK(c.contains("pass"));
  }
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"suite", "config", "checks", "all_pass"});
}

TEST_CASE("usage errors") {
  SuiteConfig config;
  config.suite = Suite::bosonic;
  config.cutoff = 1;
  std::ostringstream out, err;
  CHECK(run(config, out, err) == kUsageError);
  CHECK_THROWS_AS(validate(config), UsageError);

  config.suite = Suite::repetition;
  CHECK_NOTHROW(validate(config));
  config.tolerance = 0.0;
  CHECK_THROWS_AS(validate(config), UsageError);
  CHECK_THROWS_AS(suite_from_string("bogus"), UsageError);
  CHECK_THROWS_AS(format_from_string("xml"), UsageError);
}

TEST_CASE("zero trials runs static checks only") {
  SuiteConfig config;
  config.suite = Suite::repetition;
  config.trials = 0;
  const VerificationReport r = run_suites(config);
  CHECK(r.all_pass());
  CHECK_FALSE(r.checks().empty());
  for (const Check& c : r.checks()) {
    CHECK(c.name.rfind("repetition.", 0) == 0);
    CHECK(c.name.find("invariance.") == std::string::npos);
  }
}

TEST_CASE("a failing check forces a nonzero exit") {
  SuiteConfig config;
  config.suite = Suite::collective;
  config.trials = 0;
  config.tolerance = 1e-300;
  std::ostringstream out, err;
  CHECK(run(config, out, err) == kCheckFailure);
}

TEST_CASE("I/O failure has its own exit status") {
  SuiteConfig config;
  config.suite = Suite::algebra;
  config.output_path = "/nonexistent-dir/report.json";
  std::ostringstream out, err;
  CHECK(run(config, out, err) == kIoError);
}

TEST_CASE("seeds and determinism") {
  CHECK(child_seed(0, "bosonic") != child_seed(0, "collective"));
  CHECK(child_seed(0, "bosonic") != child_seed(1, "bosonic"));
  CHECK(child_seed(5, "repetition") == child_seed(5, "repetition"));

  SuiteConfig config;
  config.seed = 17;
  config.trials = 10;
  CHECK(render_json(config, run_suites(config)) == render_json(config, run_suites(config)));
}

TEST_CASE("text report is sorted by module then name") {
  SuiteConfig config;
  config.trials = 0;
  const std::string text = render_text(config, run_suites(config));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    if (line.rfind("PASS", 0) != 0 && line.rfind("FAIL", 0) != 0) continue;
    std::istringstream fields(line.substr(6));
    std::string name;
    fields >> name;
    names.push_back(name);
  }
  CHECK(names.size() >= 30);
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(text.find("checks passed") != std::string::npos);
}

TEST_CASE("describe") {
  const std::string collective = describe("collective");
  for (const char* needle : {"casimir", "omega.basis", "singlet_triplet.basis", "scalars",
                             "protected_projector", "omega.frame", "exchange_sectors"}) {
    CHECK(collective.find(needle) != std::string::npos);
  }
  CHECK(describe("bosonic").find("c-sign") != std::string::npos);
  CHECK(describe("all").find("[repetition]") != std::string::npos);
  CHECK_THROWS_AS(describe("bogus"), UsageError);
}

TEST_CASE("command-line binary") {
  CHECK(run_cli("run --suite repetition --trials 0") == kAllPass);
  CHECK(run_cli("run --suite bosonic --cutoff 1") == kUsageError);
  CHECK(run_cli("run --suite nonsense") == kUsageError);
  CHECK(run_cli("run --trials -3") == kUsageError);
  CHECK(run_cli("run --bogus-flag") == kUsageError);
  CHECK(run_cli("describe collective") == kAllPass);
  CHECK(run_cli("describe bogus") == kUsageError);
  CHECK(run_cli("run --suite algebra --out /nonexistent-dir/x.json") == kIoError);

  const std::string a = "cli_determinism_a.json";
  const std::string b = "cli_determinism_b.json";
  CHECK(run_cli("run --format json --seed 3 --trials 20 --out " + a) == kAllPass);
  CHECK(run_cli("run --format json --seed 3 --trials 20 --out " + b) == kAllPass);
  const std::string ja = slurp(a);
  CHECK_FALSE(ja.empty());
  CHECK(ja == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}
