#pragma once

#include "varispeed/instance.hpp"
#include "varispeed/schedule.hpp"

#include <vector>

namespace varispeed {

/// A contiguous share [lo, hi) of one job's weight.
struct WeightPiece {
  int job = 0;
  Rational lo, hi;
};

struct SmithTrace {
  std::vector<char> light;             // per job index
  std::vector<WeightPiece> packed;     // heavy jobs pushed up inside their completion interval
  std::vector<WeightPiece> filled;     // plus light jobs poured in by largest v/w
  std::vector<WeightPiece> stretched;  // after stretching the intervals
  WeightSchedule result;
  bool fallback = false;  // a split light job did not fit its interval's idle block
};

/// Light iff w_j <= eps^2 |I_u| for the interval holding S_j^w > 0.
std::vector<char> light_jobs(const Instance& inst, const WeightSchedule& ws, const Rational& eps);

SmithTrace classify_and_smith(const Instance& inst, const WeightSchedule& ws, const Rational& eps);

/// Volume of jobs completing strictly above weight w.
Rational remaining_volume(const Instance& inst, const WeightSchedule& ws, const Rational& w);

/// As above but light jobs count fractionally by the share of their pieces above w.
Rational fractional_remaining_volume(const Instance& inst, const std::vector<WeightPiece>& pieces,
                                     const std::vector<char>& light, const Rational& w);

/// Light pieces poured into the idle weight of `packed` in the given priority order;
/// the greedy step uses the order by nonincreasing v/w.
std::vector<WeightPiece> fill_light(const Instance& inst, const std::vector<WeightPiece>& packed,
                                    const std::vector<char>& light, const std::vector<int>& priority,
                                    const Rational& eps);

}  // namespace varispeed
