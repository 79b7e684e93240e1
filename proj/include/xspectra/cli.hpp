#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace xspectra::cli {

enum ExitCode { kPass = 0, kCheckFailure = 1, kUsageError = 2 };

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string relation = "<=";  // measured <= tolerance, or ">=" for negative controls
};

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::map<std::string, double> tolerances;
  std::vector<std::string> outputs;
  std::vector<Check> checks;
  std::map<std::string, std::string> notes;

  /// Adds a check, deciding pass from relation. Non-finite measurements fail.
  const Check& add_check(std::string name, double measured, double tolerance,
                         std::string relation = "<=");
  bool all_pass() const;
  std::string to_json() const;
};

/// 17 significant digits, scientific.
std::string format_double(double v);

/// Writes via a temporary sibling file and rename.
void write_atomic(const std::string& path, const std::string& content);

/// Full command line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace xspectra::cli
