#pragma once

#include "varispeed/instance.hpp"
#include "varispeed/ptas.hpp"
#include "varispeed/schedule.hpp"

#include <vector>

namespace varispeed {

struct EnergySplit {
  std::vector<int> order;
  EnergyAssignment assignment;
  std::vector<double> execution;  // per job index
  double gamma = 0.0;
  double cost = 0.0;
  /// Energy handed to trailing zero-weight jobs, which the closed form would starve.
  double residual_energy = 0.0;
  bool residual_adjusted = false;
};

/// Default share of the budget reserved, per job, for trailing zero-weight jobs.
inline constexpr double kResidualShare = 0.01;

/// E_j = v_j W_j^((alpha-1)/alpha) E / gamma for the given time order.
EnergySplit optimal_energy_split(const Instance& inst, const std::vector<int>& order, double alpha, double energy,
                                 double residual_share = kResidualShare);

/// Order for the continuous problem, independent of the budget: the weight-space DP
/// on the instance with volumes and weights swapped and f(x) = x^((alpha-1)/alpha).
struct UniversalSequence {
  std::vector<int> order;
  double gamma = 0.0;
  PtasResult ptas;  // run on the swapped instance
};

UniversalSequence universal_sequence(const Instance& inst, double alpha, const PtasOptions& opt);

struct ParetoSample {
  double budget = 0.0;
  EnergySplit split;
};

struct ParetoCurve {
  std::vector<int> order;
  double gamma = 0.0;
  std::vector<ParetoSample> samples;
};

ParetoCurve pareto(const Instance& inst, double alpha, const PtasOptions& opt, const std::vector<double>& budgets);

/// Sixteen budgets spaced by factors of two around `center`.
std::vector<double> default_budget_grid(double center);

}  // namespace varispeed
