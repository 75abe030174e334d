#pragma once

#include "varispeed/fptas.hpp"
#include "varispeed/instance.hpp"
#include "varispeed/oracle.hpp"
#include "varispeed/ptas.hpp"

#include <optional>
#include <string>
#include <vector>

namespace varispeed {

struct Fragment {
  int machine = 0;
  Rational start, end;
};

struct ParallelSchedule {
  int machines = 1;
  std::vector<int> priority;                     // job indices, highest priority first
  std::vector<std::vector<Fragment>> fragments;  // per job index, in time order
  std::vector<Rational> execution;               // x_j on one of the m machines
  std::vector<Rational> completion;
  std::vector<double> energy;
  Rational cost;
};

/// Preemptive list scheduling with migration: at every moment the m available jobs
/// earliest in `priority` run.  Zero-length jobs complete at their release date.
ParallelSchedule preemptive_list_schedule(const Instance& inst, int machines, const std::vector<int>& priority,
                                          const std::vector<Rational>& execution, std::vector<double> energy);

/// Empty when fragments respect machines, releases and durations; otherwise the first problem found.
std::string check_parallel_schedule(const Instance& inst, const ParallelSchedule& s);

struct RelaxationBounds {
  double low = 0.0, high = 0.0;
};

/// Bounds on the weighted execution time sum w_j x_j of an optimal schedule.
RelaxationBounds relaxation_bounds(const Instance& inst, double alpha, double energy);
RelaxationBounds relaxation_bounds(const Instance& inst, const DiscreteSpeedMenu& menu);

/// Solution of the single machine m times as fast, without release dates.
struct Relaxation {
  std::vector<int> order;
  std::vector<double> energy;       // per job index
  std::vector<Rational> execution;  // per job index, x_j = m x_j^1
  double z1 = 0.0;                  // sum w_j C_j^1 on the fast machine
  double weighted_time = 0.0;       // sum w_j x_j
};

/// Energy split for a fixed order minimizing the fast-machine cost subject to
/// sum w_j x_j <= X; nullopt when no split meets the bound.
std::optional<Relaxation> constrained_split(const Instance& inst, int machines, double alpha, double energy,
                                            double X, const std::vector<int>& order);

/// Best constrained split over the candidate orders, each refined by reordering on w_j / x_j.
std::optional<Relaxation> fast_relaxation(const Instance& inst, int machines, double alpha, double energy, double X,
                                          const std::vector<std::vector<int>>& orders);

/// Universal sequence and Smith's rule.
std::vector<std::vector<int>> relaxation_orders(const Instance& inst, double alpha, const PtasOptions& opt);

/// Discrete speeds: the FPTAS on the fast menu (m s_i, m P_i) with the weighted time bound.
std::optional<Relaxation> fast_relaxation(const Instance& inst, int machines, const DiscreteSpeedMenu& menu,
                                          const Rational& energy, double X, const FptasOptions& opt);

struct ParallelOptions {
  double eps = 0.2;
  Execution exec = Execution::Parallel;
};

struct ParallelResult {
  ParallelSchedule schedule;
  Relaxation relaxation;
  RelaxationBounds bounds;
  double eps_prime = 0.0;
  double x_prime = 0.0;       // grid value whose relaxation produced the schedule
  double release_term = 0.0;  // sum w_j r_j
  double certified_bound = 0.0;
  std::size_t grid_points = 0, feasible_points = 0;
};

ParallelResult solve_parallel(const Instance& inst, int machines, double alpha, double energy,
                              const ParallelOptions& opt);
ParallelResult solve_parallel(const Instance& inst, int machines, const DiscreteSpeedMenu& menu,
                              const Rational& energy, const ParallelOptions& opt);

}  // namespace varispeed
