#pragma once

#include "varispeed/discrete.hpp"
#include "varispeed/instance.hpp"
#include "varispeed/parallel.hpp"
#include "varispeed/schedule.hpp"
#include "varispeed/speed.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace varispeed {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An instance together with its speed model and, for energy problems, a budget.
struct Problem {
  Instance instance;
  std::optional<PiecewiseConstantSpeed> speed;
  std::optional<DiscreteSpeedMenu> menu;
  std::optional<Rational> alpha;
  std::optional<Rational> budget;
};

nlohmann::json rational_json(const Rational& q);
/// Accepts "p/q", decimal strings and JSON numbers.
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Problem& p);
Problem problem_from_json(const nlohmann::json& j);

Problem read_problem(const std::string& path);
void write_problem(const std::string& path, const Problem& p);

/// Canonical single-line text of the problem; equal problems give equal text.
std::string canonical_text(const Problem& p);
/// 64-bit FNV-1a of canonical_text, as 16 hex digits.
std::string problem_hash(const Problem& p);
std::uint64_t fnv1a(const std::string& bytes);

/// Permutation (job ids) plus per-job C_j, x_j, C_j^w and E_j.
nlohmann::json schedule_json(const Instance& inst, const TimeSchedule& ts, const WeightSchedule& ws,
                             const std::vector<double>& energies);
nlohmann::json parallel_schedule_json(const Instance& inst, const ParallelSchedule& s);
/// machine,job_id,start,end rows ordered by machine then start.
std::string machine_timeline_csv(const Instance& inst, const ParallelSchedule& s);

}  // namespace varispeed
