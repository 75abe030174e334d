#pragma once

#include "varispeed/envelope.hpp"
#include "varispeed/instance.hpp"
#include "varispeed/schedule.hpp"
#include "varispeed/speed.hpp"

#include <optional>
#include <vector>

namespace varispeed {

struct InstanceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Permutation bound for exhaustive oracles: VARISPEED_ORACLE_MAX_N, default 9.
int oracle_max_n();

enum class Execution { Serial, Parallel };

struct ExactResult {
  std::vector<std::vector<int>> best_permutations;  // job indices in time order
  double cost = 0.0;
  std::optional<Rational> exact_cost;                // given-speed only
  std::size_t permutations_checked = 0;
};

/// Relative gap treated as a tie in argmin sets.
inline constexpr double kTieTolerance = 1e-9;

ExactResult exact_given_speed(const Instance& inst, const PiecewiseConstantSpeed& speed,
                              Execution exec = Execution::Parallel);

/// gamma_pi = sum_j v_j (W_j)^((alpha-1)/alpha) for jobs in time order.
double gamma_of(const Instance& inst, const std::vector<int>& order, double alpha);
double continuous_cost(double gamma, double alpha, double energy);

ExactResult exact_continuous(const Instance& inst, const Rational& alpha, double energy,
                             Execution exec = Execution::Parallel);

/// Optimal speed allocation for a fixed order under a discrete menu.
struct DiscreteOrderSolution {
  double cost = 0.0;
  double energy = 0.0;
  SpeedEnvelope envelope;
  std::vector<JobMix> mix;  // per job index
};

DiscreteOrderSolution solve_discrete_order(const Instance& inst, const DiscreteSpeedMenu& menu, double energy,
                                           const std::vector<int>& order);

ExactResult exact_discrete(const Instance& inst, const DiscreteSpeedMenu& menu, double energy,
                           Execution exec = Execution::Parallel);

struct KktCheck {
  double residual = 0.0;    // relative spread of the per-job multipliers
  double budget_gap = 0.0;  // |sum E_j - E| / E
};

KktCheck numeric_kkt_check(const Instance& inst, const std::vector<int>& order, double alpha,
                           const EnergyAssignment& assignment);

/// Continuous cost sum_j W_j x_j of an order under given energies.
double energy_split_cost(const Instance& inst, const std::vector<int>& order, double alpha,
                         const std::vector<double>& energies);

/// Pairwise coordinate descent on the convex energy program for a fixed order.
std::vector<double> numeric_energy_minimize(const Instance& inst, const std::vector<int>& order, double alpha,
                                            double energy, int max_sweeps = 400);

}  // namespace varispeed
