#pragma once

#include "varispeed/schedule.hpp"

#include <vector>

namespace varispeed {

/// Sum of w_j C_j; throws InvariantViolation if the remaining-weight integral disagrees.
Rational time_cost(const Instance& inst, const TimeSchedule& ts);

/// Integral over time of the weight of jobs completing strictly after t.
Rational remaining_weight_integral(const Instance& inst, const TimeSchedule& ts);

TimeSchedule to_time_schedule(const Instance& inst, const WeightSchedule& ws, const PiecewiseConstantSpeed& speed);

/// Sum of x_j C_j^w with x_j induced by ordering jobs by decreasing C_j^w.
Rational weight_cost(const Instance& inst, const WeightSchedule& ws, const PiecewiseConstantSpeed& speed);

/// Time cost of processing jobs in the given order.
Rational order_cost(const Instance& inst, const PiecewiseConstantSpeed& speed, const std::vector<int>& order);

/// Interval index u with b^(u-1) <= x < b^u, for x > 0.
long interval_index(const Rational& x, const Rational& b);

WeightSchedule weight_stretch(const WeightSchedule& ws, const Rational& eps);

struct StretchResult {
  WeightSchedule schedule;
  /// Interval indices that a single job covered entirely after the shift.
  std::vector<long> covered_intervals;
};

/// Delays each C_j^w in I_u by |I_u| and packs idle weight per interval to its top.
StretchResult stretch_intervals(const Instance& inst, const WeightSchedule& ws, const Rational& eps);

}  // namespace varispeed
