#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "baskafuzz/error.hpp"
#include "baskafuzz/fuzzy_number.hpp"
#include "baskafuzz/operator_kernel.hpp"
#include "baskafuzz/quadrature.hpp"

namespace baskafuzz {

inline constexpr std::string_view kVersion = "baskafuzz 0.1.0";

using Json = nlohmann::ordered_json;

enum class Command { Approximate, Metrics, Verify, Converge, Sample };

std::string_view to_string(Command command);
/// Throws Error(SchemaError) for an unknown command name.
Command parse_command(std::string_view name);

/// Nonnegative function on an interval, with the shape facts the verify
/// command needs. Concavity is taken from the grid test at run time.
struct FunctionInput {
  SampledFunction f;
  double lo = 0.0;
  double hi = 1.0;
  std::optional<double> peak;
};

struct JobSpec {
  Command command = Command::Verify;
  std::optional<FuzzyNumber> fuzzy;
  std::optional<FunctionInput> function;
  std::vector<int> degrees;  // from "n" or "n_list", increasing
  std::size_t grid = 4097;
  QuadratureConfig quadrature;  // 1024 Simpson panels unless overridden
  std::vector<int> reductions{1};
  std::vector<double> sample_points;  // sample command only
  Json echo;  // the input document as parsed
};

/// Parses a job document. Field errors name the JSON path and the line of
/// the enclosing key; syntax errors carry line and column. Fuzzy-number
/// validation errors propagate with their own kinds.
JobSpec parse_spec(std::string_view text, Command command);

struct CheckEntry {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // how measured relates to bound when passing, e.g. "<="
  bool pass = false;
  bool asserted = true;  // reported-only entries never affect the exit code

  bool operator==(const CheckEntry&) const = default;
};

struct Report {
  std::string version{kVersion};
  std::string command;
  Json job;
  std::vector<CheckEntry> checks;
  Json quantities = Json::object();
  std::optional<std::string> error_kind;
  std::optional<std::string> error_message;

  /// True iff every asserted check passed and no error was recorded.
  bool ok() const;
  bool operator==(const Report&) const = default;
};

Json to_json(const Report& report);
/// Throws Error(SchemaError) on a malformed report document.
Report report_from_json(const Json& doc);

/// Serialized report text: two-space indent, trailing LF.
std::string emit_report(const Report& report);

struct RunResult {
  Report report;
  int exit_code = 0;  // 0 ok, 1 schema, 2 validation, 3 check failure, 4 internal
  std::vector<std::filesystem::path> written;
};

/// Maps an error kind to its exit code (1 schema, 2 validation, 4 internal).
int exit_code_for(ErrorKind kind);

/// Runs a parsed job and writes its artifacts into `out_dir` (created if
/// missing): report.json always, plus curve.csv, convergence.csv or
/// weights.csv depending on the command.
RunResult run(const JobSpec& job, const std::filesystem::path& out_dir);

/// Full CLI flow: read the spec file, parse, run, and always leave a
/// report.json behind when `out_dir` is writable.
RunResult run_file(Command command, const std::filesystem::path& spec_path,
                   const std::filesystem::path& out_dir);

}  // namespace baskafuzz
