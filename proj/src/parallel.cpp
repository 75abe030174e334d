#include "varispeed/parallel.hpp"

#include "varispeed/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace varispeed {

ParallelSchedule preemptive_list_schedule(const Instance& inst, int machines, const std::vector<int>& priority,
                                          const std::vector<Rational>& execution, std::vector<double> energy) {
  const std::size_t n = inst.size();
  if (machines < 1) throw std::invalid_argument("machine count must be positive");
  if (!is_permutation_of(priority, n)) throw std::invalid_argument("priority is not a permutation of the jobs");
  if (execution.size() != n) throw std::invalid_argument("one execution time per job is required");
  ParallelSchedule s;
  s.machines = machines;
  s.priority = priority;
  s.fragments.assign(n, {});
  s.execution = execution;
  s.completion.assign(n, Rational(0));
  s.energy = std::move(energy);

  std::vector<Rational> rem = execution;
  std::vector<char> done(n, 0);
  std::vector<int> machine_of(n, -1);
  std::size_t left = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (rem[j] < 0) throw std::invalid_argument("execution times must be nonnegative");
    if (rem[j] == 0) {
      done[j] = 1;
      s.completion[j] = inst.jobs[j].release;
      --left;
    }
  }
  Rational t = 0;
  while (left > 0) {
    std::vector<int> avail;
    std::optional<Rational> next_release;
    for (int j : priority) {
      if (done[j]) continue;
      if (inst.jobs[j].release <= t)
        avail.push_back(j);
      else if (!next_release || inst.jobs[j].release < *next_release)
        next_release = inst.jobs[j].release;
    }
    if (avail.empty()) {
      t = *next_release;
      continue;
    }
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(machines), avail.size());
    std::vector<char> busy(machines, 0);
    std::vector<int> run(avail.begin(), avail.begin() + static_cast<long>(k));
    for (int j : run)
      if (machine_of[j] >= 0) busy[machine_of[j]] = 1;
    for (std::size_t i = k; i < avail.size(); ++i) machine_of[avail[i]] = -1;
    for (int j : run) {
      if (machine_of[j] >= 0) continue;
      int mi = 0;
      while (busy[mi]) ++mi;
      busy[mi] = 1;
      machine_of[j] = mi;
    }
    Rational next = t + rem[run[0]];
    for (int j : run) next = min(next, t + rem[j]);
    if (next_release) next = min(next, *next_release);
    const Rational dt = next - t;
    for (int j : run) {
      auto& fr = s.fragments[j];
      if (!fr.empty() && fr.back().machine == machine_of[j] && fr.back().end == t)
        fr.back().end = next;
      else
        fr.push_back({machine_of[j], t, next});
      rem[j] -= dt;
      if (rem[j] == 0) {
        done[j] = 1;
        s.completion[j] = next;
        machine_of[j] = -1;
        --left;
      }
    }
    t = next;
  }
  s.cost = 0;
  for (std::size_t j = 0; j < n; ++j) s.cost += inst.jobs[j].weight * s.completion[j];
  return s;
}

std::string check_parallel_schedule(const Instance& inst, const ParallelSchedule& s) {
  const std::size_t n = inst.size();
  std::ostringstream err;
  if (s.fragments.size() != n || s.execution.size() != n || s.completion.size() != n) return "size mismatch";
  std::vector<std::vector<std::pair<Rational, Rational>>> per_machine(s.machines);
  Rational cost = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational total = 0;
    const auto& fr = s.fragments[j];
    for (std::size_t i = 0; i < fr.size(); ++i) {
      if (fr[i].machine < 0 || fr[i].machine >= s.machines) return "fragment on a missing machine";
      if (!(fr[i].start < fr[i].end)) return "empty or reversed fragment";
      if (fr[i].start < inst.jobs[j].release) {
        err << "job " << inst.jobs[j].id << " runs before its release";
        return err.str();
      }
      if (i > 0 && fr[i].start < fr[i - 1].end) {
        err << "job " << inst.jobs[j].id << " runs on two machines at once";
        return err.str();
      }
      total += fr[i].end - fr[i].start;
      per_machine[fr[i].machine].emplace_back(fr[i].start, fr[i].end);
    }
    if (total != s.execution[j]) {
      err << "job " << inst.jobs[j].id << " runs " << to_string(total) << " instead of " << to_string(s.execution[j]);
      return err.str();
    }
    Rational c = fr.empty() ? inst.jobs[j].release : fr.back().end;
    if (c != s.completion[j]) return "completion time disagrees with the fragments";
    cost += inst.jobs[j].weight * c;
  }
  for (auto& iv : per_machine) {
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i)
      if (iv[i].first < iv[i - 1].second) return "two fragments overlap on one machine";
  }
  if (cost != s.cost) return "cost disagrees with the completion times";
  return {};
}

RelaxationBounds relaxation_bounds(const Instance& inst, double alpha, double energy) {
  RelaxationBounds b;
  double V = 0.0, wmax = 0.0;
  for (const auto& j : inst.jobs) {
    double v = j.volume.get_d(), w = j.weight.get_d();
    b.low += w * std::pow(std::pow(v, alpha) / energy, 1.0 / (alpha - 1));
    V += v;
    wmax = std::max(wmax, w);
  }
  b.high = static_cast<double>(inst.size()) * wmax * std::pow(energy, -1.0 / (alpha - 1)) * std::pow(V, alpha / (alpha - 1));
  return b;
}

RelaxationBounds relaxation_bounds(const Instance& inst, const DiscreteSpeedMenu& menu) {
  RelaxationBounds b;
  const double fast = menu.speeds.front().get_d(), slow = menu.speeds.back().get_d();
  for (const auto& j : inst.jobs) {
    b.low += j.weight.get_d() * j.volume.get_d() / fast;
    b.high += j.weight.get_d() * j.volume.get_d() / slow;
  }
  return b;
}

namespace {

Rational sum_of(const std::vector<double>& xs) {
  Rational s = 0;
  for (double x : xs) s += from_double(x);
  return s;
}

}  // namespace

std::optional<Relaxation> constrained_split(const Instance& inst, int machines, double alpha, double energy,
                                            double X, const std::vector<int>& order) {
  if (!(alpha > 1)) throw std::invalid_argument("alpha must exceed 1");
  if (!(energy > 0)) throw std::invalid_argument("energy budget must be positive");
  const std::size_t n = inst.size();
  const double q = (alpha - 1) / alpha;
  std::vector<double> W(n), v(n), w(n);
  {
    auto Wr = suffix_weights(inst, order);
    for (std::size_t k = 0; k < n; ++k) {
      W[k] = Wr[k].get_d();
      v[k] = inst.jobs[order[k]].volume.get_d();
      w[k] = inst.jobs[order[k]].weight.get_d();
    }
  }
  std::vector<double> en(n), x(n);
  auto split = [&](double mu) {
    std::vector<double> term(n, 0.0);
    double gamma = 0.0;
    std::size_t starved = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (v[k] <= 0) continue;
      double c = W[k] + mu * w[k];
      if (c <= 0) {
        ++starved;
        continue;
      }
      term[k] = v[k] * std::pow(c, q);
      gamma += term[k];
    }
    double each = 0.0, main = energy;
    if (starved > 0) {
      each = gamma > 0 ? kResidualShare * energy / static_cast<double>(n) : energy / static_cast<double>(starved);
      main = energy - each * static_cast<double>(starved);
    }
    double weighted = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      en[k] = 0.0;
      x[k] = 0.0;
      if (v[k] <= 0) continue;
      en[k] = term[k] > 0 ? term[k] * main / gamma : each;
      x[k] = std::pow(std::pow(v[k], alpha) / en[k], 1.0 / (alpha - 1));
      weighted += w[k] * x[k];
    }
    return weighted;
  };
  const double tol = 1 + 1e-12;
  if (split(0.0) > X * tol) {
    double hi = 1.0;
    while (split(hi) > X * tol) {
      hi *= 4;
      if (hi > 1e40) return std::nullopt;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      double mid = lo > 0 ? std::sqrt(lo * hi) : hi / 4;
      if (mid <= lo || mid >= hi) mid = 0.5 * (lo + hi);
      if (split(mid) > X * tol)
        lo = mid;
      else
        hi = mid;
    }
    split(hi);
  }
  // keep the exact energy sum within the budget
  const Rational budget = from_double(energy);
  for (int guard = 0; sum_of(en) > budget; ++guard) {
    if (guard > 60) throw InvariantViolation("cannot fit the energy split into the budget");
    for (std::size_t k = 0; k < n; ++k)
      if (en[k] > 0) {
        en[k] *= 1 - 4e-16 * static_cast<double>(n + guard);
        x[k] = std::pow(std::pow(v[k], alpha) / en[k], 1.0 / (alpha - 1));
      }
  }
  Relaxation r;
  r.order = order;
  r.energy.assign(n, 0.0);
  r.execution.assign(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    int j = order[k];
    r.energy[j] = en[k];
    if (v[k] > 0) r.execution[j] = from_double(x[k]);
    r.z1 += W[k] * x[k] / machines;
    r.weighted_time += w[k] * x[k];
  }
  if (r.weighted_time > X * (1 + 1e-9)) return std::nullopt;
  return r;
}

std::optional<Relaxation> fast_relaxation(const Instance& inst, int machines, double alpha, double energy, double X,
                                          const std::vector<std::vector<int>>& orders) {
  std::optional<Relaxation> best;
  for (const auto& start : orders) {
    auto r = constrained_split(inst, machines, alpha, energy, X, start);
    for (int round = 0; r && round < 4; ++round) {
      std::vector<int> next = r->order;
      std::vector<long> pos(inst.size());
      for (std::size_t k = 0; k < next.size(); ++k) pos[next[k]] = static_cast<long>(k);
      const auto& ex = r->execution;
      std::stable_sort(next.begin(), next.end(), [&](int a, int b) {
        // w_a / x_a > w_b / x_b, zero execution first
        Rational lhs = inst.jobs[a].weight * ex[b], rhs = inst.jobs[b].weight * ex[a];
        if (ex[a] == 0 || ex[b] == 0) return ex[a] == 0 && ex[b] != 0;
        if (lhs != rhs) return lhs > rhs;
        return pos[a] < pos[b];
      });
      if (next == r->order) break;
      auto r2 = constrained_split(inst, machines, alpha, energy, X, next);
      if (!r2 || r2->z1 >= r->z1) break;
      r = std::move(r2);
    }
    if (r && (!best || r->z1 < best->z1)) best = std::move(r);
  }
  return best;
}

std::vector<std::vector<int>> relaxation_orders(const Instance& inst, double alpha, const PtasOptions& opt) {
  std::vector<std::vector<int>> out{universal_sequence(inst, alpha, opt).order};
  auto smith = smith_order(inst);
  if (smith != out.front()) out.push_back(std::move(smith));
  return out;
}

std::optional<Relaxation> fast_relaxation(const Instance& inst, int machines, const DiscreteSpeedMenu& menu,
                                          const Rational& energy, double X, const FptasOptions& opt) {
  std::vector<Rational> sp, pw;
  for (std::size_t i = 0; i < menu.size(); ++i) {
    sp.push_back(menu.speeds[i] * machines);
    pw.push_back(menu.power[i] * machines);
  }
  DiscreteSpeedMenu fast = make_menu(sp, pw);
  FptasOptions o = opt;
  o.weighted_time_limit = X / machines;
  FptasResult f;
  try {
    f = fptas(inst, fast, energy, o);
  } catch (const InfeasibleBudget&) {
    return std::nullopt;
  }
  const std::size_t n = inst.size();
  Relaxation r;
  r.order = f.schedule.order;
  r.energy.resize(n);
  r.execution.resize(n);
  Rational wx = 0;
  for (std::size_t j = 0; j < n; ++j) {
    r.energy[j] = f.schedule.plan_energy[j].get_d();
    r.execution[j] = f.schedule.plan_time[j] * machines;
    wx += inst.jobs[j].weight * r.execution[j];
  }
  r.z1 = f.schedule.cost.get_d();
  r.weighted_time = wx.get_d();
  return r;
}

namespace {

std::vector<double> x_grid(const RelaxationBounds& b, double eps_prime) {
  if (!(b.high > 0)) return {0.0};
  double low = b.low > 0 ? b.low : b.high * 1e-12;
  long count = static_cast<long>(std::ceil(std::log(b.high / low) / std::log1p(eps_prime) - 1e-9));
  std::vector<double> g;
  for (long i = 0; i <= std::max(0L, count) + 1; ++i) g.push_back(low * std::pow(1 + eps_prime, static_cast<double>(i)));
  return g;
}

double release_term(const Instance& inst) {
  double s = 0.0;
  for (const auto& j : inst.jobs) s += Rational(j.weight * j.release).get_d();
  return s;
}

ParallelResult pick(const Instance& inst, int machines, const std::vector<double>& grid,
                    std::vector<std::optional<Relaxation>>& relax, double eps_prime) {
  ParallelResult res;
  res.eps_prime = eps_prime;
  res.grid_points = grid.size();
  res.release_term = release_term(inst);
  long best = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!relax[i]) continue;
    ++res.feasible_points;
    auto s = preemptive_list_schedule(inst, machines, relax[i]->order, relax[i]->execution, relax[i]->energy);
    if (best < 0 || s.cost < res.schedule.cost) {
      best = static_cast<long>(i);
      res.schedule = std::move(s);
    }
  }
  if (best < 0) throw InvariantViolation("no relaxation is feasible anywhere on the X grid");
  res.relaxation = *relax[best];
  res.x_prime = grid[best];
  res.certified_bound = res.release_term + (1 + eps_prime) * res.relaxation.z1 + res.x_prime;
  return res;
}

}  // namespace

ParallelResult solve_parallel(const Instance& inst, int machines, double alpha, double energy,
                              const ParallelOptions& opt) {
  if (!(opt.eps > 0 && opt.eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (machines < 1) throw std::invalid_argument("machine count must be positive");
  const double ep = opt.eps / 2;
  auto bounds = relaxation_bounds(inst, alpha, energy);
  auto grid = x_grid(bounds, ep);
  PtasOptions po;
  po.eps = ep;
  auto orders = relaxation_orders(inst, alpha, po);
  std::vector<std::optional<Relaxation>> relax(grid.size());
  const bool par = opt.exec == Execution::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (long i = 0; i < static_cast<long>(grid.size()); ++i)
    relax[i] = fast_relaxation(inst, machines, alpha, energy, grid[i], orders);
  auto res = pick(inst, machines, grid, relax, ep);
  res.bounds = bounds;
  return res;
}

ParallelResult solve_parallel(const Instance& inst, int machines, const DiscreteSpeedMenu& menu,
                              const Rational& energy, const ParallelOptions& opt) {
  if (!(opt.eps > 0 && opt.eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (machines < 1) throw std::invalid_argument("machine count must be positive");
  if (energy < menu.min_energy(inst.total_volume()))
    throw InfeasibleBudget("energy budget is below the minimum needed to process all work");
  const double ep = opt.eps / 2;
  auto bounds = relaxation_bounds(inst, menu);
  auto grid = x_grid(bounds, ep);
  FptasOptions fo;
  fo.eps = ep;
  fo.exec = opt.exec;
  fo.weighted_time_base = 1 + ep;
  std::vector<std::optional<Relaxation>> relax(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) relax[i] = fast_relaxation(inst, machines, menu, energy, grid[i], fo);
  auto res = pick(inst, machines, grid, relax, ep);
  res.bounds = bounds;
  return res;
}

}  // namespace varispeed
