#ifndef QFRAME_WORKBENCH_HPP
#define QFRAME_WORKBENCH_HPP

#include "qframe/algebra_tools.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qframe::workbench {

enum class Suite { bosonic, repetition, collective, algebra, all };
enum class Format { text, json };

enum ExitStatus : int {
  kAllPass = 0,
  kCheckFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  Suite suite = Suite::all;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t cutoff = 2; ///< bosonic only
  std::optional<std::string> output_path;
  Format format = Format::text;
};

Suite suite_from_string(const std::string& name);
std::string to_string(Suite suite);
Format format_from_string(const std::string& name);
std::string to_string(Format format);

/// Throws UsageError for a non-positive tolerance or a cutoff below 2 on a suite that needs the
/// nonlinear sign gate.
void validate(const SuiteConfig& config);

/// FNV-1a over the master seed bytes followed by the suite name.
std::uint64_t child_seed(std::uint64_t master, std::string_view suite_name);

/// Runs the selected suites and returns their checks in a fixed order, names prefixed by module.
/// Independent suites run concurrently; each draws from its own child seed.
VerificationReport run_suites(const SuiteConfig& config);

nlohmann::ordered_json report_json(const SuiteConfig& config, const VerificationReport& report);
std::string render_json(const SuiteConfig& config, const VerificationReport& report);
/// One line per check, sorted by module and then name, followed by a summary line.
std::string render_text(const SuiteConfig& config, const VerificationReport& report);

/// Validates, runs, and writes the report to config.output_path or `out`. Returns an ExitStatus.
int run(const SuiteConfig& config, std::ostream& out, std::ostream& err);

/// Table of check name and the construction it verifies. Throws UsageError for unknown names.
std::string describe(const std::string& suite_name);

} // namespace qframe::workbench

#endif
