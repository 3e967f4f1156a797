#pragma once

// Verification suites behind the carlab command-line tool.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "carlab/fock_rep.hpp"
#include "carlab/instances.hpp"

namespace carlab::cli {

using Json = nlohmann::ordered_json;

/// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { kVerify, kCampaign, kSpectrum, kFormel };

/// Tolerance per check class.
struct ToleranceTable {
  double car = 1e-10;
  double formel = 1e-9;
  double structural = 1e-9;
  double graph = 1e-8;
  double modular = 1e-8;
  double conjugation = 1e-7;
  double duality = 1e-7;
  void set_all(double tol);
};

struct RunConfig {
  Mode mode = Mode::kVerify;
  /// Built-in name, or empty when an inline instance or seed+dim is used.
  std::string builtin;
  std::optional<Json> inline_instance;
  std::uint64_t seed = 1;
  Index dim = 4;
  int count = 10;
  int n_max = 4;
  int jobs = 1;
  bool timing = false;
  std::string output_path;
  ToleranceTable tolerances;
};

struct CheckRecord {
  std::string name;
  std::string identity;
  double defect = 0.0;
  double tolerance = 0.0;
  /// "pass", "fail", "skipped" (not applicable) or "excluded" (ill-conditioned).
  std::string verdict;
  std::string note;
};

Json to_json(const CheckRecord& r);

/// Parses a JSON config document; throws ConfigError.
RunConfig parse_config(const Json& doc);
Json config_echo(const RunConfig& cfg);

/// Complex matrices as arrays of rows of [re, im].
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
Json instance_to_json(const Instance& inst);
/// {id?, gamma_kernel, P, q_frame}; throws ConfigError on malformed input.
Instance instance_from_json(const Json& j);

/// Resolves the instance of a config: built-in, inline, or random generic at (dim, seed).
Instance resolve_instance(const RunConfig& cfg);

/// The ordered verification suite on one instance.
std::vector<CheckRecord> run_suite(const Instance& inst, const ToleranceTable& tol,
                                   std::uint64_t seed, int n_max);

struct CommandResult {
  Json report;
  int exit_code = 0;
};

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_campaign(const RunConfig& cfg);
CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_formel(const RunConfig& cfg);
CommandResult run(const RunConfig& cfg);

/// Largest deviation of the pairing expansion from the operator product for n factors.
double formel_deviation(const FockSpace& fock, int n, std::uint64_t seed, int trials = 3);

}  // namespace carlab::cli
