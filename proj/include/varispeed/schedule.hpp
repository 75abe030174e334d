#pragma once

#include "varispeed/instance.hpp"
#include "varispeed/speed.hpp"

#include <vector>

namespace varispeed {

/// Completion weight C_j^w per job index.
struct WeightSchedule {
  std::vector<Rational> completion;
};

struct TimeSchedule {
  std::vector<int> order;             // job indices, first to last in time
  std::vector<Rational> completion;   // per job index
  std::vector<Rational> execution;    // per job index
};

struct EnergyAssignment {
  std::vector<double> energies;  // per job index
  double budget = 0.0;
  double total() const;
};

/// S_j^w >= 0 and pairwise disjoint [S_j^w, C_j^w).
bool is_feasible(const Instance& inst, const WeightSchedule& ws);

/// Unassigned weight below the largest completion weight.
Rational idle_weight(const Instance& inst, const WeightSchedule& ws);

/// Jobs by decreasing C_j^w; equal completion weights go by ascending id.
std::vector<int> order_by_completion_weight(const Instance& inst, const WeightSchedule& ws);

/// No-idle weight schedule whose time order is `order`.
WeightSchedule tight_weight_schedule(const Instance& inst, const std::vector<int>& order);

/// Processes `order` back to back from time 0 under the speed profile.
TimeSchedule schedule_in_order(const Instance& inst, const PiecewiseConstantSpeed& speed, const std::vector<int>& order);

}  // namespace varispeed
