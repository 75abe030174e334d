#include "varispeed/cost.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace varispeed {

Rational remaining_weight_integral(const Instance& inst, const TimeSchedule& ts) {
  // W(t) is a step function that drops at each distinct completion time
  std::map<Rational, Rational> drop;
  Rational W = 0;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    drop[ts.completion[j]] += inst.jobs[j].weight;
    W += inst.jobs[j].weight;
  }
  Rational area = 0, t = 0;
  for (const auto& [time, w] : drop) {
    area += W * (time - t);
    t = time;
    W -= w;
  }
  return area;
}

Rational time_cost(const Instance& inst, const TimeSchedule& ts) {
  Rational sum = 0;
  for (std::size_t j = 0; j < inst.size(); ++j) sum += inst.jobs[j].weight * ts.completion[j];
  if (sum != remaining_weight_integral(inst, ts))
    throw InvariantViolation("weighted completion time differs from the remaining-weight integral");
  return sum;
}

TimeSchedule to_time_schedule(const Instance& inst, const WeightSchedule& ws, const PiecewiseConstantSpeed& speed) {
  if (!is_feasible(inst, ws)) throw std::invalid_argument("weight schedule is infeasible");
  return schedule_in_order(inst, speed, order_by_completion_weight(inst, ws));
}

Rational weight_cost(const Instance& inst, const WeightSchedule& ws, const PiecewiseConstantSpeed& speed) {
  TimeSchedule ts = to_time_schedule(inst, ws, speed);
  Rational cost = 0;
  for (std::size_t j = 0; j < inst.size(); ++j) cost += ts.execution[j] * ws.completion[j];
  return cost;
}

Rational order_cost(const Instance& inst, const PiecewiseConstantSpeed& speed, const std::vector<int>& order) {
  Rational cost = 0, done = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    done += inst.jobs[order[k]].volume;
    cost += inst.jobs[order[k]].weight * speed.oracle_time(done);
  }
  return cost;
}

long interval_index(const Rational& x, const Rational& b) {
  if (x <= 0) throw std::invalid_argument("interval index needs a positive weight");
  long u = static_cast<long>(std::floor(std::log(x.get_d()) / std::log(b.get_d()))) + 1;
  Rational lo = pow_int(b, u - 1);
  while (x < lo) {
    --u;
    lo /= b;
  }
  while (x >= lo * b) {
    ++u;
    lo *= b;
  }
  return u;
}

WeightSchedule weight_stretch(const WeightSchedule& ws, const Rational& eps) {
  WeightSchedule out = ws;
  for (auto& c : out.completion) c *= 1 + eps;
  return out;
}

StretchResult stretch_intervals(const Instance& inst, const WeightSchedule& ws, const Rational& eps) {
  const Rational b = 1 + eps;
  const std::size_t n = inst.size();
  std::vector<Rational> start(n), shifted_start(n);
  StretchResult res;
  res.schedule.completion.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& c = ws.completion[j];
    start[j] = c - inst.jobs[j].weight;
    Rational delta = 0;
    if (c > 0) delta = eps * pow_int(b, interval_index(c, b) - 1);
    res.schedule.completion[j] = c + delta;
    shifted_start[j] = start[j] + delta;
  }

  for (std::size_t j = 0; j < n; ++j) {
    const Rational& c = res.schedule.completion[j];
    if (inst.jobs[j].weight == 0 || shifted_start[j] <= 0) continue;
    long first = interval_index(shifted_start[j], b) + 1;
    long last = interval_index(c, b) - 1;
    if (pow_int(b, first - 2) == shifted_start[j]) --first;
    for (long u = first; u <= last; ++u) res.covered_intervals.push_back(u);
  }
  std::sort(res.covered_intervals.begin(), res.covered_intervals.end());
  res.covered_intervals.erase(std::unique(res.covered_intervals.begin(), res.covered_intervals.end()),
                              res.covered_intervals.end());

  // pack downward inside each starting interval, never below the original start
  auto order = identity_order(n);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    if (shifted_start[a] != shifted_start[c]) return shifted_start[a] < shifted_start[c];
    return res.schedule.completion[a] < res.schedule.completion[c];
  });
  Rational frontier = 0;
  for (int j : order) {
    if (inst.jobs[j].weight == 0) continue;
    Rational s = shifted_start[j];
    if (s > 0) {
      Rational floor_u = pow_int(b, interval_index(s, b) - 1);
      Rational target = max(max(frontier, floor_u), start[j]);
      if (target < s) s = target;
    }
    res.schedule.completion[j] = s + inst.jobs[j].weight;
    frontier = res.schedule.completion[j];
  }
  return res;
}

}  // namespace varispeed
