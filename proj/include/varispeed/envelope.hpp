#pragma once

#include "varispeed/instance.hpp"
#include "varispeed/speed.hpp"

#include <optional>
#include <vector>

namespace varispeed {

/// A menu speed seen per unit of volume: time 1/s and energy P/s.
struct EnvelopePoint {
  std::size_t speed_index = 0;
  double time = 0.0;
  double energy = 0.0;
};

/// Lower convex envelope of the per-unit-volume points, fastest first.
/// Along the envelope time increases and energy strictly decreases.
struct SpeedEnvelope {
  std::vector<EnvelopePoint> points;
};

SpeedEnvelope lower_envelope(const DiscreteSpeedMenu& menu);
SpeedEnvelope lower_envelope(const DiscreteSpeedMenu& menu, const std::vector<std::size_t>& allowed);

/// Menu indices not dominated by a faster speed with no more energy per volume.
std::vector<std::size_t> useful_speeds(const DiscreteSpeedMenu& menu);

/// Volume split between two neighbouring envelope points: share theta at `fast`.
struct JobMix {
  std::size_t fast = 0;
  std::size_t slow = 0;
  double theta = 1.0;
};

/// Parametric (Lagrangian) trade-off between sum coeff_j * x_j and energy for a
/// fixed set of jobs; each job mixes at most two adjacent points of its envelope.
class ParametricAllocation {
 public:
  ParametricAllocation(std::vector<double> volume, std::vector<double> coeff, std::vector<SpeedEnvelope> envelopes);

  struct Vertex {
    double cost;
    double energy;
  };
  const std::vector<Vertex>& vertices() const { return vertices_; }

  double min_cost() const { return vertices_.front().cost; }
  double min_energy() const { return vertices_.back().energy; }

  struct Allocation {
    std::vector<JobMix> mix;
    double cost = 0.0;
    double energy = 0.0;
  };
  /// Least cost using at most `energy`; nullopt if below min_energy().
  std::optional<Allocation> at_energy(double energy) const;
  /// Least energy with cost at most `cost`; nullopt if below min_cost().
  std::optional<Allocation> at_cost(double cost) const;

  const std::vector<SpeedEnvelope>& envelopes() const { return env_; }

 private:
  struct Move {
    std::size_t job, from;
    double lambda, dcost, denergy;
  };
  Allocation build(std::size_t moves_done, double partial) const;

  std::vector<double> vol_, coeff_;
  std::vector<SpeedEnvelope> env_;
  std::vector<Move> moves_;
  std::vector<Vertex> vertices_;
};

/// Time per job implied by a mix.
double mix_time(const SpeedEnvelope& env, const JobMix& mix, double volume);
double mix_energy(const SpeedEnvelope& env, const JobMix& mix, double volume);

struct IntervalLpResult {
  bool feasible = false;
  double energy = 0.0;
  std::vector<double> durations;  // per menu speed
};

/// min sum l_i P_i  s.t.  sum l_i s_i = volume,  factor * sum l_i <= allowance,
/// solved by enumerating basic solutions with at most two positive variables.
IntervalLpResult interval_energy_lp(double volume, double factor, double allowance, const DiscreteSpeedMenu& menu);

}  // namespace varispeed
