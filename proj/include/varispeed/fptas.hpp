#pragma once

#include "varispeed/discrete.hpp"
#include "varispeed/oracle.hpp"

#include <limits>
#include <vector>

namespace varispeed {

struct FptasOptions {
  double eps = 0.2;
  /// Largest menu accepted; the guess count grows like n^(2 kappa).
  std::size_t max_kappa = 4;
  Execution exec = Execution::Parallel;
  /// Seed the cost bound with (1+eps)^2 times the optimal allocation for Smith's order.
  bool heuristic_incumbent = true;
  /// Bound on the sum of w_j x_j in original weight units (infinite: no bound).
  double weighted_time_limit = std::numeric_limits<double>::infinity();
  /// Ratio of the geometric grid on which that sum is rounded up.
  double weighted_time_base = 1.1;
};

/// Split jobs, their completion weights and the interval speeds.
struct SplitGuess {
  std::vector<std::size_t> speeds;  // menu index per interval, bottom of the weight axis first
  std::vector<int> split;           // per boundary: job index, or -1 for a dummy
  std::vector<long> exponent;       // per boundary: C^w = (1+beta)^exponent in scaled weight units
};

struct FptasContext {
  const Instance* inst = nullptr;
  DiscreteSpeedMenu menu;
  DiscreteSetup setup;
  FptasOptions opt;
  double beta = 0.0, delta = 0.0;
  double scale = 1.0;         // smallest positive weight
  double total_weight = 0.0;  // scaled, core jobs only
  double anchor = 1.0;        // least positive cost on the z grid
  double limit = 0.0;         // energy available to core jobs
  double x_limit = std::numeric_limits<double>::infinity();  // scaled weighted time bound
  long max_exponent = 0;
  std::vector<std::size_t> useful;  // menu indices, fastest first
  std::vector<double> v, w;         // per job index, w scaled
  std::vector<double> speed, power, epv;

  double zval(long zi) const;
  long zround(double z) const;  // least grid index with value >= z
  double position(long e) const;
};

FptasContext make_fptas_context(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget,
                                const FptasOptions& opt);

std::vector<SplitGuess> enumerate_guesses(const FptasContext& ctx);

struct FptasState {
  std::vector<double> y;  // weight per interval, rounded down to powers of 1+beta unless exact
  long zi = -1;           // cost grid index, -1 for zero
  double energy = 0.0;
  double xw = 0.0;        // weighted time, rounded up, when bounded
  int parent = -1;
  int interval = -1;      // interval receiving the job of this layer
};

struct GuessDp {
  std::vector<int> jobs;                        // non-split jobs in DP order (nondecreasing w/v)
  std::vector<double> base, cap;                // per interval
  std::vector<std::vector<FptasState>> layers;  // layers[0] holds the starting states
  bool valid = false;
};

struct FptasDpMode {
  bool round_y = true;
  double energy_limit = 0.0;
  double incumbent = std::numeric_limits<double>::infinity();
};

/// DP_{z,y} (round_y) or DP_z (exact y) for one guess.
GuessDp run_guess_dp(const FptasContext& ctx, const SplitGuess& guess, const FptasDpMode& mode);

/// Least cost end state within the energy limit, as (layer index, state index), or -1.
int best_end_state(const FptasContext& ctx, const GuessDp& dp, double energy_limit);

struct FptasResult {
  DiscreteSchedule schedule;
  SplitGuess guess;
  double dp_cost = 0.0;    // rounded cost of the chosen end state, original weight units
  double dp_energy = 0.0;  // including the zero-weight reserve
  double beta = 0.0, delta = 0.0;
  std::size_t guesses = 0, guesses_with_states = 0, states = 0;
  /// Along the chosen chain, scaled: DP values and the realized partial schedules.
  std::vector<double> chain_z, realized_z;
  std::vector<std::vector<double>> chain_y, realized_y;
  double weighted_time = 0.0;  // sum w_j x_j of the plan, original units
};

FptasResult fptas(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget,
                  const FptasOptions& opt);

}  // namespace varispeed
