#include "varispeed/fptas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace varispeed {

namespace {

double grid_value(double anchor, double lg, long k) { return anchor * std::exp(static_cast<double>(k) * lg); }

long grid_up(double anchor, double lg, double x) {
  if (x <= 0) return -1;
  long k = std::max(0L, static_cast<long>(std::ceil(std::log(x / anchor) / lg - 1e-9)));
  while (k > 0 && grid_value(anchor, lg, k - 1) >= x * (1 - 1e-12)) --k;
  while (grid_value(anchor, lg, k) < x * (1 - 1e-12)) ++k;
  return k;
}

// largest k with (1+beta)^k <= x, or -1 when x < 1
long grid_down(double lg, double x) {
  if (x < 1 - 1e-12) return -1;
  long k = std::max(0L, static_cast<long>(std::floor(std::log(x) / lg + 1e-9)));
  while (k > 0 && std::exp(static_cast<double>(k) * lg) > x * (1 + 1e-12)) --k;
  while (std::exp(static_cast<double>(k + 1) * lg) <= x * (1 + 1e-12)) ++k;
  return k;
}

}  // namespace

double FptasContext::zval(long zi) const { return zi < 0 ? 0.0 : grid_value(anchor, std::log1p(delta), zi); }

long FptasContext::zround(double z) const { return grid_up(anchor, std::log1p(delta), z); }

double FptasContext::position(long e) const { return std::exp(static_cast<double>(e) * std::log1p(beta)); }

FptasContext make_fptas_context(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget,
                                const FptasOptions& opt) {
  if (!(opt.eps > 0 && opt.eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (menu.size() == 0) throw std::invalid_argument("speed menu is empty");
  if (menu.size() > opt.max_kappa) throw std::invalid_argument("speed menu exceeds the supported number of speeds");
  FptasContext c;
  c.inst = &inst;
  c.menu = menu;
  c.opt = opt;
  c.setup = discrete_setup(inst, menu, budget);
  c.useful = useful_speeds(menu);
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < menu.size(); ++i) {
    c.speed.push_back(menu.speeds[i].get_d());
    c.power.push_back(menu.power[i].get_d());
    c.epv.push_back(c.power.back() / c.speed.back());
  }
  double wmin = 0.0;
  for (int j : c.setup.core) {
    double w = inst.jobs[j].weight.get_d();
    if (wmin == 0.0 || w < wmin) wmin = w;
  }
  c.scale = wmin > 0 ? wmin : 1.0;
  c.v.assign(n, 0.0);
  c.w.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    c.v[j] = inst.jobs[j].volume.get_d();
    c.w[j] = inst.jobs[j].weight.get_d() / c.scale;
  }
  const double nc = static_cast<double>(std::max<std::size_t>(1, c.setup.core.size()));
  c.beta = std::pow(1 + opt.eps, 1.0 / nc) - 1;
  c.delta = std::pow(1 + opt.eps, 1.0 / (nc + 1)) - 1;
  c.anchor = std::numeric_limits<double>::infinity();
  const double sfast = c.speed[c.useful.front()];
  for (int j : c.setup.core) {
    c.total_weight += c.w[j];
    c.anchor = std::min(c.anchor, c.v[j] * c.w[j] / sfast);
  }
  if (!std::isfinite(c.anchor)) c.anchor = 1.0;
  c.max_exponent = std::max(0L, static_cast<long>(std::ceil(std::log(std::max(1.0, c.total_weight)) / std::log1p(c.beta))));
  c.limit = c.setup.core_budget.get_d();
  if (std::isfinite(opt.weighted_time_limit)) {
    if (!(opt.weighted_time_base > 1)) throw std::invalid_argument("weighted time grid ratio must exceed 1");
    c.x_limit = opt.weighted_time_limit / c.scale;
  }
  return c;
}

std::vector<SplitGuess> enumerate_guesses(const FptasContext& ctx) {
  std::vector<std::size_t> asc(ctx.useful.rbegin(), ctx.useful.rend());  // slowest first
  const std::size_t K = asc.size();
  std::vector<SplitGuess> out;
  std::vector<int> core = ctx.setup.core;
  std::sort(core.begin(), core.end());

  SplitGuess g;
  std::vector<char> used(ctx.inst->size(), 0);
  // boundaries b = 0..m-2 between intervals b and b+1
  auto boundaries = [&](auto&& self, std::size_t b, double prev) -> void {
    if (b + 1 == g.speeds.size()) {
      out.push_back(g);
      return;
    }
    for (long e = 0; e <= ctx.max_exponent; ++e) {
      double C = ctx.position(e);
      if (C <= prev * (1 + 1e-12)) continue;
      g.split.push_back(-1);
      g.exponent.push_back(e);
      self(self, b + 1, C);
      g.split.pop_back();
      g.exponent.pop_back();
    }
    for (int j : core) {
      if (used[j]) continue;
      used[j] = 1;
      for (long e = 0; e <= ctx.max_exponent; ++e) {
        double C = ctx.position(e);
        if (C - ctx.w[j] < prev * (1 - 1e-12)) continue;
        g.split.push_back(j);
        g.exponent.push_back(e);
        self(self, b + 1, C);
        g.split.pop_back();
        g.exponent.pop_back();
      }
      used[j] = 0;
    }
  };
  std::size_t mmax = ctx.setup.core.empty() ? 1 : K;
  for (std::size_t m = 1; m <= mmax; ++m) {
    std::vector<std::size_t> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      g = SplitGuess{};
      for (std::size_t p : pick) g.speeds.push_back(asc[p]);
      boundaries(boundaries, 0, 0.0);
      std::size_t i = m;
      while (i > 0 && pick[i - 1] == K - m + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t k = i; k < m; ++k) pick[k] = pick[k - 1] + 1;
    }
  }
  return out;
}

namespace {

struct GuessShape {
  std::vector<double> base, cap;
  std::vector<SpeedEnvelope> env;  // per boundary with a split job
  std::vector<int> split_jobs;
  std::vector<double> split_coeff;
};

GuessShape shape_of(const FptasContext& ctx, const SplitGuess& g) {
  GuessShape s;
  const std::size_t m = g.speeds.size();
  s.base.assign(m, 0.0);
  s.cap.assign(m, std::numeric_limits<double>::infinity());
  for (std::size_t b = 0; b + 1 < m; ++b) {
    double C = ctx.position(g.exponent[b]);
    double wj = g.split[b] >= 0 ? ctx.w[g.split[b]] : 0.0;
    s.cap[b] = std::max(0.0, C - wj - s.base[b]);
    s.base[b + 1] = C;
    if (g.split[b] >= 0) {
      std::vector<std::size_t> allowed;
      const double lo = ctx.speed[g.speeds[b]], hi = ctx.speed[g.speeds[b + 1]];
      for (std::size_t i : ctx.useful)
        if (ctx.speed[i] >= lo && ctx.speed[i] <= hi) allowed.push_back(i);
      s.env.push_back(lower_envelope(ctx.menu, allowed));
      s.split_jobs.push_back(g.split[b]);
      s.split_coeff.push_back(C);
    }
  }
  return s;
}

std::vector<int> dp_jobs(const FptasContext& ctx, const SplitGuess& g) {
  std::vector<int> jobs;
  for (int j : ctx.setup.core)
    if (std::find(g.split.begin(), g.split.end(), j) == g.split.end()) jobs.push_back(j);
  const Instance& inst = *ctx.inst;
  std::sort(jobs.begin(), jobs.end(), [&](int a, int b) {
    Rational lhs = inst.jobs[a].weight * inst.jobs[b].volume, rhs = inst.jobs[b].weight * inst.jobs[a].volume;
    if (lhs != rhs) return lhs < rhs;
    return a < b;
  });
  return jobs;
}

void append_key(std::string& key, long v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); }

}  // namespace

GuessDp run_guess_dp(const FptasContext& ctx, const SplitGuess& g, const FptasDpMode& mode) {
  GuessDp dp;
  const std::size_t m = g.speeds.size();
  GuessShape sh = shape_of(ctx, g);
  dp.base = sh.base;
  dp.cap = sh.cap;
  dp.jobs = dp_jobs(ctx, g);
  const std::size_t N = dp.jobs.size();
  const double lgb = std::log1p(ctx.beta);
  const bool track_x = std::isfinite(ctx.x_limit);
  const double lgx = track_x ? std::log(ctx.opt.weighted_time_base) : 1.0;
  auto round_x = [&](double x) { return x <= 0 ? 0.0 : std::exp(std::ceil(std::log(x) / lgx - 1e-9) * lgx); };

  // remaining jobs: least energy and a cost bound at the fastest interval speed
  const double slow_epv = ctx.epv[g.speeds.front()];
  const double fast = ctx.speed[g.speeds.back()];
  std::vector<double> rest_energy(N + 1, 0.0), lb(N + 1, 0.0);
  {
    double vol = 0.0;
    for (std::size_t k = N; k-- > 0;) {
      int j = dp.jobs[k];
      vol += ctx.v[j];
      rest_energy[k] = rest_energy[k + 1] + ctx.v[j] * slow_epv;
      lb[k] = lb[k + 1] + ctx.w[j] * vol / fast;
    }
    for (double& x : lb) x /= 1 + ctx.opt.eps;
  }
  const double elimit = mode.energy_limit * (1 + 1e-12);
  const double inc = mode.incumbent * (1 + 1e-9);

  std::vector<FptasState> start;
  if (sh.split_jobs.empty()) {
    FptasState s;
    s.y.assign(m, 0.0);
    start.push_back(std::move(s));
  } else {
    std::vector<double> vol;
    for (int j : sh.split_jobs) vol.push_back(ctx.v[j]);
    ParametricAllocation alloc(vol, sh.split_coeff, sh.env);
    const long k0 = ctx.zround(alloc.min_cost());
    const long k1 = ctx.zround(alloc.vertices().back().cost);
    for (long k = k0; k <= k1; ++k) {
      auto a = alloc.at_cost(ctx.zval(k));
      if (!a) continue;
      if (a->energy + rest_energy[0] > elimit) continue;
      if (ctx.zval(k) + lb[0] > inc) break;
      FptasState s;
      s.y.assign(m, 0.0);
      s.zi = k;
      s.energy = a->energy;
      if (track_x) {
        double x = 0.0;
        for (std::size_t i = 0; i < sh.split_jobs.size(); ++i)
          x += ctx.w[sh.split_jobs[i]] * mix_time(sh.env[i], a->mix[i], vol[i]);
        s.xw = round_x(x);
        if (s.xw > ctx.x_limit * (1 + 1e-12)) continue;
      }
      start.push_back(std::move(s));
    }
  }
  dp.layers.push_back(std::move(start));
  if (dp.layers[0].empty()) return dp;

  for (std::size_t k = 0; k < N; ++k) {
    const int j = dp.jobs[k];
    const auto& prev = dp.layers.back();
    std::vector<FptasState> next;
    std::unordered_map<std::string, std::vector<int>> groups;
    std::vector<std::string> key_order;
    for (std::size_t p = 0; p < prev.size(); ++p) {
      const FptasState& st = prev[p];
      for (std::size_t i = 0; i < m; ++i) {
        double ny = st.y[i] + ctx.w[j];
        if (ny > sh.cap[i] * (1 + 1e-12)) continue;
        const double s = ctx.speed[g.speeds[i]];
        double energy = st.energy + ctx.v[j] * ctx.epv[g.speeds[i]];
        if (energy + rest_energy[k + 1] > elimit) continue;
        long zi = ctx.zround(ctx.zval(st.zi) + ctx.v[j] / s * (sh.base[i] + st.y[i] + ctx.w[j]));
        if (ctx.zval(zi) + lb[k + 1] > inc) continue;
        FptasState n;
        n.y = st.y;
        n.zi = zi;
        n.energy = energy;
        n.parent = static_cast<int>(p);
        n.interval = static_cast<int>(i);
        std::string key;
        if (track_x) {
          n.xw = round_x(st.xw + ctx.w[j] * ctx.v[j] / s);
          if (n.xw > ctx.x_limit * (1 + 1e-12)) continue;
          append_key(key, n.xw <= 0 ? -1 : std::lround(std::log(n.xw) / lgx));
        }
        for (std::size_t q = 0; q < m; ++q) {
          double yq = q == i ? ny : st.y[q];
          if (mode.round_y) {
            long e = grid_down(lgb, yq);
            n.y[q] = e < 0 ? 0.0 : ctx.position(e);
            append_key(key, e);
          } else {
            n.y[q] = yq;
            long bits;
            std::memcpy(&bits, &yq, sizeof bits);
            append_key(key, bits);
          }
        }
        auto [it, fresh] = groups.try_emplace(std::move(key));
        if (fresh) key_order.push_back(it->first);
        it->second.push_back(static_cast<int>(next.size()));
        next.push_back(std::move(n));
      }
    }
    std::vector<FptasState> kept;
    for (const auto& key : key_order) {
      auto& idx = groups[key];
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (next[a].zi != next[b].zi) return next[a].zi < next[b].zi;
        return next[a].energy < next[b].energy;
      });
      double best = std::numeric_limits<double>::infinity();
      for (int a : idx) {
        if (next[a].energy >= best) continue;
        best = next[a].energy;
        kept.push_back(std::move(next[a]));
      }
    }
    dp.layers.push_back(std::move(kept));
    if (dp.layers.back().empty()) return dp;
  }
  dp.valid = true;
  return dp;
}

int best_end_state(const FptasContext&, const GuessDp& dp, double energy_limit) {
  if (!dp.valid) return -1;
  const auto& last = dp.layers.back();
  int best = -1;
  for (std::size_t i = 0; i < last.size(); ++i) {
    if (last[i].energy > energy_limit * (1 + 1e-12)) continue;
    if (best < 0 || last[i].zi < last[best].zi ||
        (last[i].zi == last[best].zi && last[i].energy < last[best].energy))
      best = static_cast<int>(i);
  }
  return best;
}

namespace {

struct Pick {
  long zi = 0;
  double energy = 0.0;
  long guess = -1;
  bool better_than(const Pick& o) const {
    if (o.guess < 0) return guess >= 0;
    if (guess < 0) return false;
    if (zi != o.zi) return zi < o.zi;
    if (energy != o.energy) return energy < o.energy;
    return guess < o.guess;
  }
};

Pick search(const FptasContext& ctx, const std::vector<SplitGuess>& guesses, double limit, double incumbent,
            std::size_t& with_states, std::size_t& states) {
  std::atomic<double> inc{incumbent};
  Pick best;
  std::size_t ws = 0, st = 0;
  const bool par = ctx.opt.exec == Execution::Parallel;
#pragma omp parallel if (par)
  {
    Pick local;
    std::size_t lws = 0, lst = 0;
#pragma omp for schedule(dynamic, 8) nowait
    for (long gi = 0; gi < static_cast<long>(guesses.size()); ++gi) {
      FptasDpMode mode;
      mode.energy_limit = limit;
      mode.incumbent = inc.load(std::memory_order_relaxed);
      GuessDp dp = run_guess_dp(ctx, guesses[gi], mode);
      if (!dp.layers.empty() && !dp.layers[0].empty()) ++lws;
      for (const auto& l : dp.layers) lst += l.size();
      int e = best_end_state(ctx, dp, limit);
      if (e < 0) continue;
      Pick p{dp.layers.back()[e].zi, dp.layers.back()[e].energy, gi};
      if (p.better_than(local)) local = p;
      double z = ctx.zval(p.zi);
      double cur = inc.load(std::memory_order_relaxed);
      while (z < cur && !inc.compare_exchange_weak(cur, z, std::memory_order_relaxed)) {
      }
    }
#pragma omp critical(varispeed_fptas_merge)
    {
      if (local.better_than(best)) best = local;
      ws += lws;
      st += lst;
    }
  }
  with_states = ws;
  states = st;
  return best;
}

}  // namespace

FptasResult fptas(const Instance& inst, const DiscreteSpeedMenu& menu, const Rational& budget,
                  const FptasOptions& opt) {
  FptasContext ctx = make_fptas_context(inst, menu, budget, opt);
  const std::size_t n = inst.size();
  FptasResult res;
  res.beta = ctx.beta;
  res.delta = ctx.delta;
  std::vector<SplitGuess> guesses = enumerate_guesses(ctx);
  res.guesses = guesses.size();

  double incumbent = std::numeric_limits<double>::infinity();
  if (opt.heuristic_incumbent && !std::isfinite(ctx.x_limit) && !ctx.setup.core.empty()) {
    auto h = solve_discrete_order(inst, menu, budget.get_d(), smith_order(inst));
    if (std::isfinite(h.cost)) incumbent = (1 + opt.eps) * (1 + opt.eps) * h.cost / ctx.scale * (1 + 1e-9);
  }

  auto build = [&](const SplitGuess& g, const GuessDp& dp, int end) {
    const std::size_t m = g.speeds.size();
    const std::size_t N = dp.jobs.size();
    GuessShape sh = shape_of(ctx, g);
    std::vector<const FptasState*> chain(N + 1);
    int at = end;
    for (std::size_t k = N + 1; k-- > 0;) {
      chain[k] = &dp.layers[k][at];
      at = chain[k]->parent;
    }
    res.dp_cost = ctx.zval(chain[N]->zi) * ctx.scale;
    res.dp_energy = chain[N]->energy + ctx.setup.reserve.get_d();

    std::vector<std::vector<SpeedShare>> plan(n);
    std::vector<double> split_time(sh.split_jobs.size(), 0.0);
    if (!sh.split_jobs.empty()) {
      std::vector<double> vol;
      for (int j : sh.split_jobs) vol.push_back(ctx.v[j]);
      ParametricAllocation alloc(vol, sh.split_coeff, sh.env);
      auto a = alloc.at_cost(ctx.zval(chain[0]->zi));
      if (!a) throw InvariantViolation("starting state has no split-job allocation");
      for (std::size_t i = 0; i < sh.split_jobs.size(); ++i) {
        const int j = sh.split_jobs[i];
        const JobMix& mx = a->mix[i];
        const auto& pts = sh.env[i].points;
        const Rational& v = inst.jobs[j].volume;
        Rational fast = mx.fast == mx.slow ? v : v * from_double(mx.theta);
        plan[j].push_back({pts[mx.fast].speed_index, fast});
        if (mx.fast != mx.slow) plan[j].push_back({pts[mx.slow].speed_index, v - fast});
        split_time[i] = mix_time(sh.env[i], mx, vol[i]);
      }
    }
    std::vector<int> interval(n, -1);
    for (std::size_t k = 0; k < N; ++k) {
      const int j = dp.jobs[k];
      interval[j] = chain[k + 1]->interval;
      plan[j].push_back({g.speeds[interval[j]], inst.jobs[j].volume});
    }

    // realized partial schedules: overflowing intervals push everything above them up
    res.chain_z.clear();
    res.realized_z.clear();
    res.chain_y.clear();
    res.realized_y.clear();
    for (std::size_t k = 0; k <= N; ++k) {
      std::vector<double> Y(m, 0.0), shift(m, 0.0);
      for (std::size_t q = 0; q < k; ++q) Y[interval[dp.jobs[q]]] += ctx.w[dp.jobs[q]];
      double d = 0.0;
      std::vector<double> boundary(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        shift[i] = d;
        d += std::max(0.0, Y[i] - sh.cap[i]);
        if (i + 1 < m) boundary[i] = ctx.position(g.exponent[i]) + d;
      }
      double z = 0.0;
      std::size_t si = 0;
      for (std::size_t b = 0; b + 1 < m; ++b)
        if (g.split[b] >= 0) z += split_time[si++] * boundary[b];
      std::vector<double> fill(m, 0.0);
      for (std::size_t q = 0; q < k; ++q) {
        const int j = dp.jobs[q];
        const int i = interval[j];
        fill[i] += ctx.w[j];
        z += ctx.v[j] / ctx.speed[g.speeds[i]] * (sh.base[i] + shift[i] + fill[i]);
      }
      res.chain_z.push_back(ctx.zval(chain[k]->zi));
      res.realized_z.push_back(z);
      res.chain_y.push_back(chain[k]->y);
      res.realized_y.push_back(Y);
    }

    // time order runs down the weight axis
    std::vector<int> order = ctx.setup.head;
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t k = N; k-- > 0;)
        if (interval[dp.jobs[k]] == static_cast<int>(i)) order.push_back(dp.jobs[k]);
      if (i > 0 && g.split[i - 1] >= 0) order.push_back(g.split[i - 1]);
    }
    for (int j : ctx.setup.tail) {
      plan[j].push_back({ctx.setup.cheapest, inst.jobs[j].volume});
      order.push_back(j);
    }
    for (int j : ctx.setup.head) plan[j].clear();
    res.schedule = realize_plan(inst, menu, order, plan, budget);
    Rational wx = 0;
    for (std::size_t j = 0; j < n; ++j) wx += inst.jobs[j].weight * res.schedule.plan_time[j];
    res.weighted_time = wx.get_d();
  };

  if (ctx.setup.core.empty()) {
    SplitGuess g;
    g.speeds.push_back(ctx.useful.front());
    GuessDp dp;
    dp.layers.push_back({FptasState{{0.0}, -1, 0.0, 0.0, -1, -1}});
    dp.valid = true;
    res.guess = g;
    build(g, dp, 0);
    return res;
  }

  double limit = ctx.limit;
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::size_t ws = 0, st = 0;
    Pick best = search(ctx, guesses, limit, incumbent, ws, st);
    if (best.guess < 0 && std::isfinite(incumbent)) best = search(ctx, guesses, limit, INFINITY, ws, st);
    res.guesses_with_states = ws;
    res.states = st;
    if (best.guess < 0) break;
    const SplitGuess& g = guesses[best.guess];
    FptasDpMode mode;
    mode.energy_limit = limit;
    mode.incumbent = ctx.zval(best.zi);
    GuessDp dp = run_guess_dp(ctx, g, mode);
    int end = best_end_state(ctx, dp, limit);
    if (end < 0) throw InvariantViolation("winning guess lost its end state on replay");
    res.guess = g;
    build(g, dp, end);
    bool x_ok = !std::isfinite(opt.weighted_time_limit) || res.weighted_time <= opt.weighted_time_limit * (1 + 1e-9);
    if (res.schedule.energy_used <= budget && x_ok) return res;
    limit = ctx.limit * (1 - std::pow(10.0, attempt - 12));
  }
  throw InfeasibleBudget("no schedule found within the energy budget");
}

}  // namespace varispeed
