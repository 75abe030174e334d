#pragma once

#include "varispeed/rational.hpp"

#include <stdexcept>
#include <vector>

namespace varispeed {

struct InsufficientCapacity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Speed s(t) constant on [t_k, t_{k+1}); the last segment extends to infinity.
class PiecewiseConstantSpeed {
 public:
  PiecewiseConstantSpeed(std::vector<Rational> breakpoints, std::vector<Rational> speeds);

  static PiecewiseConstantSpeed constant(const Rational& s);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& speeds() const { return speeds_; }

  /// f(v) = inf{ t : work done by time t >= v }.
  Rational oracle_time(const Rational& v) const;
  /// Floating-point mirror of oracle_time for DP inner loops.
  double oracle_time(double v) const;

  /// Work completed by time t.
  Rational work_by(const Rational& t) const;

  bool unbounded() const { return speeds_.back() > 0; }
  /// Total capacity; only meaningful when !unbounded().
  Rational capacity() const { return cum_.back(); }

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> speeds_;
  std::vector<Rational> cum_;  // work done by breakpoint k
  std::vector<double> bp_d_, sp_d_, cum_d_;
};

/// Speeds s_1 > ... > s_kappa > 0 with power P(s_i); speed 0 is free.
struct DiscreteSpeedMenu {
  std::vector<Rational> speeds;
  std::vector<Rational> power;

  std::size_t size() const { return speeds.size(); }
  /// Energy per unit of volume at speed i, P_i / s_i.
  Rational energy_per_volume(std::size_t i) const { return power[i] / speeds[i]; }
  /// Index of the speed with the least energy per unit volume (slowest on ties).
  std::size_t min_energy_index() const;
  /// Least energy able to process `volume` at all.
  Rational min_energy(const Rational& volume) const;
};

DiscreteSpeedMenu make_menu(std::vector<Rational> speeds, std::vector<Rational> power);

/// Menu with P(s) = s^alpha; alpha must be a positive integer.
DiscreteSpeedMenu power_law_menu(const std::vector<Rational>& speeds, long alpha);

}  // namespace varispeed
