#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace varispeed {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInfeasible = 2, kExitInternal = 3 };

struct SolveReport {
  std::string instance_hash;
  std::string algo;
  double eps = 0.0;
  std::string alpha, budget;  // empty when not applicable
  int machines = 1;
  std::vector<int> permutation;  // job ids in time (or priority) order
  double cost = 0.0;
  std::string cost_exact;  // "p/q" when the cost is computed exactly
  double energy_used = 0.0;
  std::optional<double> certified_bound;
  std::optional<double> oracle_cost;
  std::optional<double> ratio;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json schedule;
};

nlohmann::json to_json(const SolveReport& r);
std::string report_csv_header();
std::string report_csv_row(const SolveReport& r);

/// Shortest round-trip text of a double.
std::string format_double(double x);

/// Entry point shared by the executable and the tests; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varispeed
