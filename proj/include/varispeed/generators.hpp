#pragma once

#include "varispeed/instance.hpp"
#include "varispeed/speed.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace varispeed {

struct RandomParams {
  long volume_min = 1, volume_max = 10;
  long weight_min = 1, weight_max = 10;
  long release_max = 0;  // 0 disables release dates
  InstanceKind kind = InstanceKind::GivenSpeed;
};

Instance gen_random(int n, const RandomParams& params, std::uint64_t seed);

/// Random piecewise-constant profile with `segments` pieces; the final speed is positive.
PiecewiseConstantSpeed gen_random_speed(int segments, std::uint64_t seed, long max_speed = 4, long max_gap = 6,
                                        bool allow_zero = true);

/// Random menu of `kappa` distinct integer speeds with P(s) = s^alpha.
DiscreteSpeedMenu gen_random_menu(int kappa, long alpha, std::uint64_t seed, long max_speed = 6);

struct TardinessInstance {
  std::vector<std::pair<long, long>> jobs;  // (v_j, w_j)
  long due = 0;
};

struct HardnessGadget {
  Instance instance;
  DiscreteSpeedMenu menu;
  Rational budget;
  Rational eps;
  Rational alpha;
  Rational due;
  /// Speed 1/eps on [0, eps*d), 1 afterwards.
  PiecewiseConstantSpeed profile;
};

/// Two-speed energy instance equivalent to weighted tardiness with a common due date.
HardnessGadget gen_hardness_gadget(const TardinessInstance& tardiness, const Rational& alpha);

/// f_eps(x) = eps*x below the due date d, x - d + eps*d from d on.
Rational gadget_time_map(const Rational& x, const Rational& eps, const Rational& due);

TardinessInstance gen_random_tardiness(int n, std::uint64_t seed, long max_volume = 4, long max_weight = 4);

}  // namespace varispeed
