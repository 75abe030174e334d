#pragma once

#include "varispeed/envelope.hpp"
#include "varispeed/instance.hpp"
#include "varispeed/schedule.hpp"
#include "varispeed/speed.hpp"

#include <optional>
#include <vector>

namespace varispeed {

/// Volume of one job processed at one menu speed.
struct SpeedShare {
  std::size_t speed = 0;
  Rational volume;
};

/// A realized discrete-speed schedule.  The machine profile runs the total time spent at each
/// speed fastest first, which never delays any completion and leaves the energy unchanged.
struct DiscreteSchedule {
  std::vector<int> order;                       // job indices in time order
  std::vector<std::vector<SpeedShare>> plan;    // per job index, as planned by the solver
  std::vector<Rational> plan_time;              // per job index, sum of share / speed
  std::vector<Rational> plan_energy;            // per job index, sum of share * P / speed
  std::vector<Rational> time_at_speed;          // per menu index
  std::optional<PiecewiseConstantSpeed> profile;
  TimeSchedule time;
  EnergyAssignment energy;                      // per job energy under the profile
  Rational energy_used;
  Rational cost;
};

DiscreteSchedule realize_plan(const Instance& inst, const DiscreteSpeedMenu& menu, std::vector<int> order,
                              std::vector<std::vector<SpeedShare>> plan, const Rational& budget);

/// True when the machine speed never increases over time.
bool speeds_nonincreasing(const PiecewiseConstantSpeed& profile);

/// Least energy that can process `volume` within time T, read off the envelope.
/// Returns nullopt when even the fastest speed is too slow.
std::optional<double> envelope_energy(const SpeedEnvelope& env, double volume, double T);

/// Share of `volume` run at the faster of the two envelope points bracketing time T.
struct EnvelopeMix {
  std::size_t fast = 0, slow = 0;  // envelope point positions
  double theta = 1.0;
};
EnvelopeMix envelope_mix(const SpeedEnvelope& env, double volume, double T);

/// Splits `order` over consecutive speed shares (fastest first) of total volume equal to the
/// jobs' volumes, appending each job's pieces to plan.
void assign_shares(const Instance& inst, const std::vector<int>& order, const std::vector<SpeedShare>& shares,
                   std::vector<std::vector<SpeedShare>>& plan);

/// Budget left after reserving the slowest useful speed for zero-weight jobs.
struct DiscreteSetup {
  std::vector<int> head;   // zero volume, run first
  std::vector<int> tail;   // zero weight with volume, run last at the cheapest speed
  std::vector<int> core;   // everything else
  std::size_t cheapest = 0;
  Rational reserve;
  Rational core_budget;
};
DiscreteSetup discrete_setup(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget);

struct DiscretePtasOptions {
  double eps = 0.2;
  /// Layers with more admissible sets fall back to chain successors of the previous layer.
  std::size_t lattice_limit = 512;
  /// Cost grid points tried per transition between the all-fast and all-slow allowances.
  std::size_t targets_per_transition = 8;
};

struct DiscretePtasResult {
  DiscreteSchedule schedule;
  double dp_cost = 0.0;    // rounded cost of the chosen end state, original weight units
  double dp_energy = 0.0;  // energy of the chosen end state, including the zero-weight reserve
  double delta = 0.0;
  std::size_t layers = 0, states = 0;
  bool truncated = false;
};

DiscretePtasResult discrete_ptas(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget,
                                 const DiscretePtasOptions& opt);

}  // namespace varispeed
