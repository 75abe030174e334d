#pragma once

#include "varispeed/instance.hpp"
#include "varispeed/schedule.hpp"
#include "varispeed/speed.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace varispeed {

/// Geometric weight intervals I_u = [b^(u-1), b^u) with b = 1 + eps.
struct WeightIntervalGrid {
  double eps = 0.1;
  double base = 1.1;
  long nu = 0;  // least u with b^u >= total (scaled, rounded) weight

  double power(long e) const;
  double lower(long u) const { return power(u - 1); }
  double width(long u) const { return eps * power(u - 1); }
  long index_of(double x) const;
  /// Least e with b^e >= x, up to a relative slack of 1e-12.
  long round_up_exponent(double x) const;
};

WeightIntervalGrid make_grid(double eps, double total_weight);

/// Release and deadline weights per job, plus the class structure they induce.
/// Weights are divided by `scale` and rounded up to powers of b.
struct Localization {
  WeightIntervalGrid grid;
  double scale = 1.0;
  std::vector<int> jobs;            // indices with positive weight and volume
  std::vector<double> volume;       // per index
  std::vector<double> weight;       // per index, original (unscaled)
  std::vector<long> weight_exp;     // per index, rounded scaled weight b^e
  std::vector<long> release_exp;    // r^w = b^release_exp
  std::vector<long> deadline_exp;   // d^w = b^(release_exp + s)
  std::vector<char> light;
  long s = 1;
  std::size_t promotions = 0;
  std::map<long, std::vector<int>> classes;  // v -> jobs with r^w = b^(v-1)

  double rounded_weight(int j) const { return grid.power(weight_exp[j]); }
  double class_weight(long v) const;
};

Localization localize(const Instance& inst, double eps);
Localization localize(const std::vector<double>& volume, const std::vector<double>& weight, double eps);

/// One release class split into units that enter the completed set S in a fixed order.
struct FamilyClass {
  long release_class = 0;
  bool light = false;
  long weight_exp = 0;  // heavy classes only
  std::vector<std::vector<int>> units;
  std::vector<double> unit_weight, unit_volume;  // rounded scaled weight, volume
  long free_from = 0;  // first interval where the count is free
  long full_from = 0;  // first interval where every unit must be in S
};

struct CompactFamilies {
  WeightIntervalGrid grid;
  std::vector<FamilyClass> classes;
  long u_begin = 1, u_end = 1;

  /// Stable text form of the whole structure.
  std::string fingerprint() const;
  /// Jobs still outside S for every admissible count of class c.
  std::vector<std::vector<int>> class_options(std::size_t c) const;
  /// Number of completed sets admissible at interval u (product over classes).
  double family_size(long u) const;
};

CompactFamilies build_families(const Localization& loc);

/// Admissible completed sets at interval u as per-class unit counts, in lexicographic order.
/// Returns false when more than `limit` sets exist; `out` then holds a prefix.
bool admissible_sets(const CompactFamilies& fam, long u, std::size_t limit,
                     std::vector<std::vector<std::uint16_t>>& out);
/// Every job its own class with free membership everywhere: the full 2^n family.
CompactFamilies exhaustive_families(const Localization& loc);

struct DpLimits {
  /// Layers with at most this many admissible sets are solved exactly.
  std::size_t lattice_limit = 1u << 16;
  /// States kept per layer once a layer exceeds the lattice limit.
  std::size_t beam_width = 1024;
};

struct DpOutcome {
  double value = 0.0;              // in scaled rounded weight units
  std::vector<int> time_order;     // DP jobs, first to last in time
  std::vector<long> job_interval;  // per index, interval in which the job completes (-1 if not a DP job)
  bool truncated = false;
  std::size_t layers = 0, max_layer_states = 0, total_states = 0;
};

/// T(u,S) = min T(u-1,S') + b^u [f(V - v(S')) - f(V - v(S))] over compatible S' in the families.
DpOutcome run_weight_dp(const CompactFamilies& fam, const Localization& loc,
                        const std::function<double(double)>& time_of_volume, double total_volume,
                        const DpLimits& limits);

struct PtasOptions {
  double eps = 0.1;
  DpLimits limits;
  bool exhaustive = false;
};

struct PtasResult {
  std::vector<int> order;  // all jobs, first to last in time
  WeightSchedule schedule;
  std::optional<Rational> cost;  // exact cost when a rational speed profile is used
  double cost_estimate = 0.0;
  double dp_bound = 0.0;  // upper bound on the emitted schedule's cost
  long s = 0, nu = 0;
  std::string families_fingerprint;
  DpOutcome dp;
};

/// Generic form: jobs given as doubles and the speed as a time-of-volume oracle.
PtasResult ptas_with_oracle(const std::vector<double>& volume, const std::vector<double>& weight,
                            const std::function<double(double)>& time_of_volume, const PtasOptions& opt);

PtasResult solve_given_speed(const Instance& inst, const PiecewiseConstantSpeed& speed, const PtasOptions& opt);

}  // namespace varispeed
