#include "varispeed/schedule.hpp"

#include <algorithm>
#include <numeric>

namespace varispeed {

double EnergyAssignment::total() const {
  double s = 0.0;
  for (double e : energies) s += e;
  return s;
}

namespace {

std::vector<int> by_start(const Instance& inst, const WeightSchedule& ws) {
  auto idx = identity_order(inst.size());
  std::vector<Rational> start(inst.size());
  for (std::size_t j = 0; j < inst.size(); ++j) start[j] = ws.completion[j] - inst.jobs[j].weight;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (start[a] != start[b]) return start[a] < start[b];
    return ws.completion[a] < ws.completion[b];
  });
  return idx;
}

}  // namespace

bool is_feasible(const Instance& inst, const WeightSchedule& ws) {
  if (ws.completion.size() != inst.size()) return false;
  for (std::size_t j = 0; j < inst.size(); ++j)
    if (ws.completion[j] - inst.jobs[j].weight < 0) return false;
  Rational frontier = 0;
  for (int j : by_start(inst, ws)) {
    Rational s = ws.completion[j] - inst.jobs[j].weight;
    if (inst.jobs[j].weight == 0) continue;
    if (s < frontier) return false;
    frontier = ws.completion[j];
  }
  return true;
}

Rational idle_weight(const Instance& inst, const WeightSchedule& ws) {
  Rational top = 0, busy = 0;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    top = max(top, ws.completion[j]);
    busy += inst.jobs[j].weight;
  }
  return top - busy;
}

std::vector<int> order_by_completion_weight(const Instance& inst, const WeightSchedule& ws) {
  auto order = identity_order(inst.size());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ws.completion[a] > ws.completion[b]; });
  return order;
}

WeightSchedule tight_weight_schedule(const Instance& inst, const std::vector<int>& order) {
  WeightSchedule ws;
  ws.completion.assign(inst.size(), Rational(0));
  Rational acc = 0;
  for (std::size_t k = order.size(); k-- > 0;) {
    acc += inst.jobs[order[k]].weight;
    ws.completion[order[k]] = acc;
  }
  return ws;
}

TimeSchedule schedule_in_order(const Instance& inst, const PiecewiseConstantSpeed& speed, const std::vector<int>& order) {
  TimeSchedule ts;
  ts.order = order;
  ts.completion.assign(inst.size(), Rational(0));
  ts.execution.assign(inst.size(), Rational(0));
  Rational done = 0, prev = 0;
  for (int j : order) {
    done += inst.jobs[j].volume;
    Rational c = speed.oracle_time(done);
    ts.completion[j] = c;
    ts.execution[j] = c - prev;
    prev = c;
  }
  return ts;
}

}  // namespace varispeed
