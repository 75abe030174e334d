#include "varispeed/discrete.hpp"

#include "varispeed/cost.hpp"
#include "varispeed/ptas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace varispeed {

DiscreteSchedule realize_plan(const Instance& inst, const DiscreteSpeedMenu& menu, std::vector<int> order,
                              std::vector<std::vector<SpeedShare>> plan, const Rational& budget) {
  const std::size_t n = inst.size();
  if (!is_permutation_of(order, n)) throw std::invalid_argument("order is not a permutation of the jobs");
  DiscreteSchedule s;
  s.order = std::move(order);
  s.plan = std::move(plan);
  s.plan_time.assign(n, Rational(0));
  s.plan_energy.assign(n, Rational(0));
  s.time_at_speed.assign(menu.size(), Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational vol = 0;
    for (const auto& sh : s.plan[j]) {
      if (sh.volume < 0) throw InvariantViolation("negative volume share");
      Rational t = sh.volume / menu.speeds[sh.speed];
      s.plan_time[j] += t;
      s.plan_energy[j] += t * menu.power[sh.speed];
      s.time_at_speed[sh.speed] += t;
      vol += sh.volume;
    }
    if (vol != inst.jobs[j].volume) throw InvariantViolation("speed shares do not cover the job volume");
  }
  std::vector<Rational> bps{Rational(0)}, sps;
  Rational t = 0;
  for (std::size_t i = 0; i < menu.size(); ++i) {
    if (s.time_at_speed[i] == 0) continue;
    if (!sps.empty()) bps.push_back(t);
    sps.push_back(menu.speeds[i]);
    t += s.time_at_speed[i];
  }
  if (sps.empty()) {
    sps.push_back(Rational(0));
  } else {
    bps.push_back(t);
    sps.push_back(Rational(0));
  }
  s.profile.emplace(bps, sps);
  s.time = schedule_in_order(inst, *s.profile, s.order);
  s.cost = time_cost(inst, s.time);

  // energy of the profile up to time x
  auto energy_by = [&](const Rational& x) {
    Rational e = 0, start = 0;
    for (std::size_t i = 0; i < menu.size(); ++i) {
      if (s.time_at_speed[i] == 0) continue;
      Rational end = start + s.time_at_speed[i];
      if (x > start) e += (min(x, end) - start) * menu.power[i];
      start = end;
    }
    return e;
  };
  s.energy.budget = budget.get_d();
  s.energy.energies.assign(n, 0.0);
  Rational prev = 0, total = 0;
  for (int j : s.order) {
    Rational e = energy_by(s.time.completion[j]) - energy_by(prev);
    s.energy.energies[j] = e.get_d();
    total += e;
    prev = s.time.completion[j];
  }
  s.energy_used = total;
  return s;
}

bool speeds_nonincreasing(const PiecewiseConstantSpeed& p) {
  for (std::size_t i = 1; i < p.speeds().size(); ++i)
    if (p.speeds()[i] > p.speeds()[i - 1]) return false;
  return true;
}

EnvelopeMix envelope_mix(const SpeedEnvelope& env, double volume, double T) {
  const auto& pts = env.points;
  EnvelopeMix m;
  double tau = volume > 0 ? T / volume : pts.back().time;
  if (tau <= pts.front().time) return m;
  if (tau >= pts.back().time) {
    m.fast = m.slow = pts.size() - 1;
    return m;
  }
  std::size_t k = 0;
  while (k + 1 < pts.size() && pts[k + 1].time <= tau) ++k;
  if (k + 1 == pts.size()) {
    m.fast = m.slow = k;
    return m;
  }
  m.fast = k;
  m.slow = k + 1;
  m.theta = std::clamp((pts[k + 1].time - tau) / (pts[k + 1].time - pts[k].time), 0.0, 1.0);
  return m;
}

std::optional<double> envelope_energy(const SpeedEnvelope& env, double volume, double T) {
  if (volume <= 0) return 0.0;
  const auto& pts = env.points;
  if (T < volume * pts.front().time * (1 - 1e-12)) return std::nullopt;
  EnvelopeMix m = envelope_mix(env, volume, T);
  return volume * (m.theta * pts[m.fast].energy + (1 - m.theta) * pts[m.slow].energy);
}

void assign_shares(const Instance& inst, const std::vector<int>& order, const std::vector<SpeedShare>& shares,
                   std::vector<std::vector<SpeedShare>>& plan) {
  std::size_t si = 0;
  Rational left = shares.empty() ? Rational(0) : shares[0].volume;
  for (int j : order) {
    Rational need = inst.jobs[j].volume;
    while (need > 0) {
      while (left == 0 && si + 1 < shares.size()) left = shares[++si].volume;
      if (left == 0) throw InvariantViolation("speed shares run out before the jobs do");
      Rational take = min(need, left);
      plan[j].push_back({shares[si].speed, take});
      need -= take;
      left -= take;
    }
  }
}

DiscreteSetup discrete_setup(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget) {
  if (budget < menu.min_energy(inst.total_volume()))
    throw InfeasibleBudget("energy budget is below the minimum needed to process all work");
  DiscreteSetup d;
  d.cheapest = menu.min_energy_index();
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const Job& job = inst.jobs[j];
    if (job.volume == 0)
      d.head.push_back(static_cast<int>(j));
    else if (job.weight == 0)
      d.tail.push_back(static_cast<int>(j));
    else
      d.core.push_back(static_cast<int>(j));
  }
  for (int j : d.tail) d.reserve += inst.jobs[j].volume * menu.energy_per_volume(d.cheapest);
  d.core_budget = budget - d.reserve;
  return d;
}

namespace {

struct Point {
  long zi;  // -1 for cost 0
  double E;
  int ps, pp;
  double T;  // time allowance of the block entering here
};

struct State {
  std::vector<std::uint16_t> k;
  double volume = 0.0;
  std::vector<Point> pts;
};

void pareto_prune(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    if (a.zi != b.zi) return a.zi < b.zi;
    if (a.E != b.E) return a.E < b.E;
    if (a.ps != b.ps) return a.ps < b.ps;
    return a.pp < b.pp;
  });
  std::vector<Point> keep;
  for (const auto& p : pts)
    if (keep.empty() || p.E < keep.back().E) keep.push_back(p);
  pts = std::move(keep);
}

std::string key_of(const std::vector<std::uint16_t>& k) {
  return std::string(reinterpret_cast<const char*>(k.data()), k.size() * sizeof(std::uint16_t));
}

}  // namespace

DiscretePtasResult discrete_ptas(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget,
                                 const DiscretePtasOptions& opt) {
  DiscreteSetup setup = discrete_setup(inst, menu, budget);
  const std::size_t n = inst.size();
  const SpeedEnvelope env = lower_envelope(menu);
  const auto& ep = env.points;
  DiscretePtasResult res;

  std::vector<double> vol(n), wt(n);
  for (std::size_t j = 0; j < n; ++j) {
    vol[j] = inst.jobs[j].volume.get_d();
    wt[j] = inst.jobs[j].weight.get_d();
  }
  Localization loc = localize(vol, wt, opt.eps);
  CompactFamilies fam = build_families(loc);
  const std::size_t C = fam.classes.size();

  std::vector<std::vector<double>> pv(C);
  for (std::size_t c = 0; c < C; ++c) {
    pv[c].assign(fam.classes[c].units.size() + 1, 0.0);
    for (std::size_t i = 0; i < fam.classes[c].units.size(); ++i)
      pv[c][i + 1] = pv[c][i] + fam.classes[c].unit_volume[i];
  }
  double V = 0.0;
  for (int j : setup.core) V += vol[j];
  const double e_min = ep.back().energy;

  // chain order for oversized layers: largest v/w enters S first
  std::vector<std::pair<int, int>> chain;
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t t = 0; t < fam.classes[c].units.size(); ++t) chain.emplace_back(static_cast<int>(c), static_cast<int>(t));
  std::stable_sort(chain.begin(), chain.end(), [&](const auto& a, const auto& b) {
    const auto& ca = fam.classes[a.first];
    const auto& cb = fam.classes[b.first];
    return ca.unit_volume[a.second] / ca.unit_weight[a.second] > cb.unit_volume[b.second] / cb.unit_weight[b.second];
  });

  const long layers = C == 0 ? 0 : fam.u_end - fam.u_begin + 1;
  res.layers = static_cast<std::size_t>(std::max(0L, layers));
  res.delta = std::pow(1 + opt.eps, 1.0 / std::max(1L, layers)) - 1;
  const double lg = std::log1p(res.delta);
  double anchor = std::numeric_limits<double>::infinity();
  for (int j : loc.jobs) anchor = std::min(anchor, vol[j] * ep.front().time);
  if (C > 0) anchor *= fam.grid.power(fam.u_begin);
  auto zval = [&](long zi) { return zi < 0 ? 0.0 : anchor * std::exp(static_cast<double>(zi) * lg); };
  auto zidx = [&](double z) -> long {
    if (z <= 0) return -1;
    long k = static_cast<long>(std::ceil(std::log(z / anchor) / lg - 1e-9));
    k = std::max(0L, k);
    while (k > 0 && zval(k - 1) >= z * (1 - 1e-12)) --k;
    while (zval(k) < z * (1 - 1e-12)) ++k;
    return k;
  };

  const double Bcore = setup.core_budget.get_d();
  std::vector<std::vector<State>> all;
  auto run = [&](double limit) -> std::pair<int, int> {
    all.clear();
    res.truncated = false;
    res.states = 0;
    all.push_back({State{std::vector<std::uint16_t>(C, 0), 0.0, {Point{-1, 0.0, -1, -1, 0.0}}}});
    for (long u = fam.u_begin; C > 0 && u <= fam.u_end; ++u) {
      const double bu = fam.grid.power(u);
      const auto& prev = all.back();
      std::vector<State> next;
      std::vector<std::vector<int>> sources;  // per next state: candidate predecessors, empty = all
      std::vector<std::vector<std::uint16_t>> lattice;
      if (admissible_sets(fam, u, opt.lattice_limit, lattice)) {
        for (auto& k : lattice) next.push_back(State{std::move(k), 0.0, {}});
        sources.assign(next.size(), {});
      } else {
        res.truncated = true;
        std::map<std::string, int> idx;
        auto add = [&](const std::vector<std::uint16_t>& k, int from) {
          auto key = key_of(k);
          auto it = idx.find(key);
          int at;
          if (it == idx.end()) {
            at = static_cast<int>(next.size());
            idx.emplace(key, at);
            next.push_back(State{k, 0.0, {}});
            sources.emplace_back();
          } else {
            at = it->second;
          }
          sources[at].push_back(from);
        };
        for (std::size_t pi = 0; pi < prev.size(); ++pi) {
          std::vector<std::uint16_t> base = prev[pi].k;
          bool ok = true;
          double w = 0.0;
          for (std::size_t c = 0; c < C; ++c) {
            const auto& cls = fam.classes[c];
            int units = static_cast<int>(cls.units.size());
            int lo = u >= cls.full_from ? units : 0;
            int hi = u >= cls.free_from ? units : 0;
            base[c] = static_cast<std::uint16_t>(std::max<int>(base[c], lo));
            ok = ok && base[c] <= hi;
            for (int t = 0; t < base[c]; ++t) w += cls.unit_weight[t];
          }
          if (!ok || w > bu * (1 + 1e-12)) continue;
          add(base, static_cast<int>(pi));
          for (const auto& [c, t] : chain) {
            const auto& cls = fam.classes[c];
            if (t != base[c] || u < cls.free_from) continue;
            if (w + cls.unit_weight[t] > bu * (1 + 1e-12)) continue;
            w += cls.unit_weight[t];
            ++base[c];
            add(base, static_cast<int>(pi));
          }
        }
      }
      for (auto& st : next) {
        st.volume = 0.0;
        for (std::size_t c = 0; c < C; ++c) st.volume += pv[c][st.k[c]];
      }
      for (std::size_t si = 0; si < next.size(); ++si) {
        State& st = next[si];
        const double rest_energy = std::max(0.0, V - st.volume) * e_min;
        auto from = [&](int pi) {
          const State& p = prev[pi];
          for (std::size_t c = 0; c < C; ++c)
            if (p.k[c] > st.k[c]) return;
          bool same = p.k == st.k;
          double d = same ? 0.0 : std::max(0.0, st.volume - p.volume);
          for (std::size_t pp = 0; pp < p.pts.size(); ++pp) {
            const Point& q = p.pts[pp];
            if (same || d <= 0) {
              st.pts.push_back({q.zi, q.E, pi, static_cast<int>(pp), 0.0});
              continue;
            }
            const double z0 = zval(q.zi);
            long k0 = zidx(z0 + bu * d * ep.front().time);
            long k1 = zidx(z0 + bu * d * ep.back().time);
            const long span = k1 - k0 + 1;
            const long cap = std::max<long>(2, static_cast<long>(opt.targets_per_transition));
            const long count = std::min(span, cap);
            for (long i = 0; i < count; ++i) {
              long k = span <= cap ? k0 + i : k0 + i * (span - 1) / (cap - 1);
              double T = (zval(k) - z0) / bu;
              auto e = envelope_energy(env, d, T);
              if (!e) continue;
              double E = q.E + *e;
              if (E + rest_energy > limit * (1 + 1e-12)) continue;
              st.pts.push_back({k, E, pi, static_cast<int>(pp), T});
            }
          }
        };
        if (sources[si].empty()) {
          for (std::size_t pi = 0; pi < prev.size(); ++pi) from(static_cast<int>(pi));
        } else {
          for (int pi : sources[si]) from(pi);
        }
        pareto_prune(st.pts);
      }
      std::erase_if(next, [](const State& s) { return s.pts.empty(); });
      res.states += next.size();
      if (next.empty()) return {-1, -1};
      all.push_back(std::move(next));
    }
    // best end state: every class complete, least cost then least energy
    const auto& last = all.back();
    std::pair<int, int> best{-1, -1};
    for (std::size_t i = 0; i < last.size(); ++i) {
      bool full = true;
      for (std::size_t c = 0; c < C; ++c) full = full && last[i].k[c] == fam.classes[c].units.size();
      if (!full) continue;
      const auto& pts = last[i].pts;
      for (std::size_t p = 0; p < pts.size(); ++p) {
        if (pts[p].E > limit * (1 + 1e-12)) continue;
        if (best.first < 0) {
          best = {static_cast<int>(i), static_cast<int>(p)};
        } else {
          const Point& b = last[best.first].pts[best.second];
          if (pts[p].zi < b.zi || (pts[p].zi == b.zi && pts[p].E < b.E)) best = {static_cast<int>(i), static_cast<int>(p)};
        }
        break;
      }
    }
    return best;
  };

  auto build = [&](std::pair<int, int> best) {
    std::vector<std::vector<SpeedShare>> plan(n);
    std::vector<int> order = setup.head;
    if (C > 0) {
      auto [si, pi] = best;
      const Point& top = all.back()[si].pts[pi];
      res.dp_cost = zval(top.zi) * loc.scale;
      res.dp_energy = top.E + setup.reserve.get_d();
      std::vector<std::pair<std::vector<int>, double>> blocks;  // top interval first
      for (std::size_t L = all.size() - 1; L > 0; --L) {
        const State& st = all[L][si];
        const Point& q = st.pts[pi];
        const State& par = all[L - 1][q.ps];
        std::vector<int> block;
        for (std::size_t c = 0; c < C; ++c)
          for (std::size_t t = par.k[c]; t < st.k[c]; ++t)
            block.insert(block.end(), fam.classes[c].units[t].begin(), fam.classes[c].units[t].end());
        if (!block.empty()) blocks.emplace_back(std::move(block), q.T);
        si = q.ps;
        pi = q.pp;
      }
      for (auto& [block, T] : blocks) {
        std::sort(block.begin(), block.end(), [&](int a, int b) {
          Rational lhs = inst.jobs[a].weight * inst.jobs[b].volume, rhs = inst.jobs[b].weight * inst.jobs[a].volume;
          if (lhs != rhs) return lhs > rhs;
          return a < b;
        });
        Rational d = 0;
        for (int j : block) d += inst.jobs[j].volume;
        EnvelopeMix m = envelope_mix(env, d.get_d(), T);
        Rational fast = m.fast == m.slow ? d : d * from_double(m.theta);
        std::vector<SpeedShare> shares{{ep[m.fast].speed_index, fast}};
        if (m.fast != m.slow) shares.push_back({ep[m.slow].speed_index, d - fast});
        assign_shares(inst, block, shares, plan);
        order.insert(order.end(), block.begin(), block.end());
      }
    }
    for (int j : setup.tail) {
      plan[j].push_back({setup.cheapest, inst.jobs[j].volume});
      order.push_back(j);
    }
    return realize_plan(inst, menu, order, plan, budget);
  };

  double limit = Bcore;
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto best = C > 0 ? run(limit) : std::pair<int, int>{0, 0};
    if (best.first < 0) break;
    res.schedule = build(best);
    if (res.schedule.energy_used <= budget) return res;
    limit = Bcore * (1 - std::pow(10.0, attempt - 12));
  }
  throw InfeasibleBudget("no schedule found within the energy budget");
}

}  // namespace varispeed
