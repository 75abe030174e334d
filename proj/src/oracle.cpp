#include "varispeed/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace varispeed {

int oracle_max_n() {
  if (const char* env = std::getenv("VARISPEED_ORACLE_MAX_N")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 9;
}

namespace {

void check_size(const Instance& inst) {
  if (static_cast<int>(inst.size()) > oracle_max_n() || inst.size() > 20)
    throw InstanceTooLarge("instance has " + std::to_string(inst.size()) + " jobs; oracle bound is " +
                           std::to_string(oracle_max_n()));
}

bool within(const Rational& c, const Rational& best) {
  static const Rational slack(1000000001, 1000000000);
  return best >= 0 ? c <= best * slack : c <= best;
}

bool within(double c, double best) { return c <= best + kTieTolerance * std::abs(best); }

template <class C>
struct Collector {
  C best{};
  bool has = false;
  std::vector<std::pair<C, std::vector<int>>> cand;
  std::size_t seen = 0;

  void add(const C& c, const std::vector<int>& perm) {
    ++seen;
    if (!has || c < best) {
      best = c;
      has = true;
      std::erase_if(cand, [&](const auto& e) { return !within(e.first, best); });
    }
    if (within(c, best)) cand.emplace_back(c, perm);
  }

  void merge(const Collector& other) {
    seen += other.seen;
    for (const auto& e : other.cand) {
      if (!has || e.first < best) {
        best = e.first;
        has = true;
        std::erase_if(cand, [&](const auto& x) { return !within(x.first, best); });
      }
      if (within(e.first, best)) cand.push_back(e);
    }
  }
};

template <class C, class Term>
void dfs(int n, unsigned mask, int depth, const C& acc, std::vector<int>& perm, const Term& term, Collector<C>& out) {
  if (depth == n) {
    out.add(acc, perm);
    return;
  }
  for (int j = 0; j < n; ++j) {
    if (mask & (1u << j)) continue;
    perm[depth] = j;
    dfs(n, mask | (1u << j), depth + 1, C(acc + term(mask, j)), perm, term, out);
  }
}

/// Runs one DFS per first job, in parallel when asked, and merges in job order.
template <class C, class Term>
Collector<C> enumerate_additive(int n, const Term& term, Execution exec) {
  std::vector<Collector<C>> parts(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::Parallel)
  for (int first = 0; first < n; ++first) {
    std::vector<int> perm(n);
    perm[0] = first;
    dfs(n, 1u << first, 1, C(term(0u, first)), perm, term, parts[first]);
  }
  Collector<C> all;
  for (const auto& p : parts) all.merge(p);
  return all;
}

template <class C>
std::vector<std::vector<int>> sorted_perms(const Collector<C>& c) {
  std::vector<std::vector<int>> out;
  for (const auto& e : c.cand) out.push_back(e.second);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ExactResult exact_given_speed(const Instance& inst, const PiecewiseConstantSpeed& speed, Execution exec) {
  check_size(inst);
  const int n = static_cast<int>(inst.size());
  // completion time depends only on the set of jobs processed so far
  std::vector<Rational> F(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Rational vol = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) vol += inst.jobs[j].volume;
    F[mask] = speed.oracle_time(vol);
  }
  auto term = [&](unsigned before, int j) { return Rational(inst.jobs[j].weight * F[before | (1u << j)]); };
  auto all = enumerate_additive<Rational>(n, term, exec);
  ExactResult r;
  r.exact_cost = all.best;
  r.cost = all.best.get_d();
  r.best_permutations = sorted_perms(all);
  r.permutations_checked = all.seen;
  return r;
}

double gamma_of(const Instance& inst, const std::vector<int>& order, double alpha) {
  const double q = (alpha - 1) / alpha;
  auto W = suffix_weights(inst, order);
  double g = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    double v = inst.jobs[order[k]].volume.get_d();
    if (v > 0) g += v * std::pow(W[k].get_d(), q);
  }
  return g;
}

double continuous_cost(double gamma, double alpha, double energy) {
  if (energy <= 0) throw std::invalid_argument("energy budget must be positive");
  return std::pow(gamma, alpha / (alpha - 1)) * std::pow(energy, -1.0 / (alpha - 1));
}

ExactResult exact_continuous(const Instance& inst, const Rational& alpha_q, double energy, Execution exec) {
  if (alpha_q <= 1) throw std::invalid_argument("alpha must exceed 1");
  if (energy <= 0) throw std::invalid_argument("energy budget must be positive");
  check_size(inst);
  const int n = static_cast<int>(inst.size());
  const double alpha = alpha_q.get_d();
  const double q = (alpha - 1) / alpha;
  const double total = inst.total_weight().get_d();
  std::vector<double> R(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Rational w = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) w += inst.jobs[j].weight;
    double rest = std::max(0.0, total - w.get_d());
    R[mask] = std::pow(rest, q);
  }
  auto term = [&](unsigned before, int j) { return inst.jobs[j].volume.get_d() * R[before]; };
  auto all = enumerate_additive<double>(n, term, exec);
  ExactResult r;
  r.cost = continuous_cost(all.best, alpha, energy);
  // ties are judged on cost, whose relative gaps exceed those of gamma
  std::erase_if(all.cand, [&](const auto& e) { return !within(continuous_cost(e.first, alpha, energy), r.cost); });
  r.best_permutations = sorted_perms(all);
  r.permutations_checked = all.seen;
  return r;
}

DiscreteOrderSolution solve_discrete_order(const Instance& inst, const DiscreteSpeedMenu& menu, double energy,
                                           const std::vector<int>& order) {
  const std::size_t n = inst.size();
  if (from_double(energy) < menu.min_energy(inst.total_volume()))
    throw InfeasibleBudget("energy budget is below the minimum needed to process all work");
  DiscreteOrderSolution sol;
  sol.envelope = lower_envelope(menu);
  auto W = suffix_weights(inst, order);
  std::vector<double> vol(n), coeff(n);
  for (std::size_t k = 0; k < n; ++k) {
    vol[order[k]] = inst.jobs[order[k]].volume.get_d();
    coeff[order[k]] = W[k].get_d();
  }
  ParametricAllocation alloc(vol, coeff, std::vector<SpeedEnvelope>(n, sol.envelope));
  auto a = alloc.at_energy(energy);
  if (!a) throw InfeasibleBudget("energy budget is below the minimum needed to process all work");
  sol.cost = a->cost;
  sol.energy = a->energy;
  sol.mix = std::move(a->mix);
  return sol;
}

ExactResult exact_discrete(const Instance& inst, const DiscreteSpeedMenu& menu, double energy, Execution exec) {
  check_size(inst);
  if (from_double(energy) < menu.min_energy(inst.total_volume()))
    throw InfeasibleBudget("energy budget is below the minimum needed to process all work");
  const int n = static_cast<int>(inst.size());
  std::vector<Collector<double>> parts(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::Parallel)
  for (int first = 0; first < n; ++first) {
    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
      if (j != first) rest.push_back(j);
    do {
      std::vector<int> perm{first};
      perm.insert(perm.end(), rest.begin(), rest.end());
      parts[first].add(solve_discrete_order(inst, menu, energy, perm).cost, perm);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  Collector<double> all;
  for (const auto& p : parts) all.merge(p);
  ExactResult r;
  r.cost = all.best;
  r.best_permutations = sorted_perms(all);
  r.permutations_checked = all.seen;
  return r;
}

KktCheck numeric_kkt_check(const Instance& inst, const std::vector<int>& order, double alpha,
                           const EnergyAssignment& a) {
  if (alpha <= 1) throw std::invalid_argument("alpha must exceed 1");
  auto W = suffix_weights(inst, order);
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    int j = order[k];
    double E = a.energies[j];
    sum += E;
    double v = inst.jobs[j].volume.get_d(), w = W[k].get_d();
    if (v <= 0 || w <= 0) continue;
    if (E <= 0) throw std::invalid_argument("stationarity needs positive energies");
    double lambda = w * std::pow(v, alpha / (alpha - 1)) / (alpha - 1) * std::pow(E, -alpha / (alpha - 1));
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
  }
  KktCheck c;
  c.residual = hi > 0 ? (hi - lo) / hi : 0.0;
  c.budget_gap = std::abs(sum - a.budget) / a.budget;
  return c;
}

double energy_split_cost(const Instance& inst, const std::vector<int>& order, double alpha,
                         const std::vector<double>& energies) {
  auto W = suffix_weights(inst, order);
  double cost = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    int j = order[k];
    double v = inst.jobs[j].volume.get_d();
    if (v <= 0) continue;
    double x = std::pow(std::pow(v, alpha) / energies[j], 1.0 / (alpha - 1));
    cost += W[k].get_d() * x;
  }
  return cost;
}

std::vector<double> numeric_energy_minimize(const Instance& inst, const std::vector<int>& order, double alpha,
                                            double energy, int max_sweeps) {
  const std::size_t n = inst.size();
  const double p = 1.0 / (alpha - 1);
  auto W = suffix_weights(inst, order);
  std::vector<double> a(n, 0.0);
  std::vector<int> active;
  for (std::size_t k = 0; k < n; ++k) {
    int j = order[k];
    double v = inst.jobs[j].volume.get_d();
    a[j] = W[k].get_d() * std::pow(v, alpha * p);
    if (a[j] > 0) active.push_back(j);
  }
  std::vector<double> E(n, 0.0);
  if (active.empty()) return E;
  for (int j : active) E[j] = energy / active.size();

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0.0;
    for (std::size_t x = 0; x < active.size(); ++x)
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        int i = active[x], j = active[y];
        double T = E[i] + E[j];
        // derivative of a_i e^-p + a_j (T-e)^-p is increasing in e
        double lo = 0.0, hi = T;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          double d = -a[i] * std::pow(mid, -p - 1) + a[j] * std::pow(T - mid, -p - 1);
          if (d > 0)
            hi = mid;
          else
            lo = mid;
        }
        double e = 0.5 * (lo + hi);
        moved = std::max(moved, std::abs(e - E[i]) / T);
        E[i] = e;
        E[j] = T - e;
      }
    if (moved < 1e-15) break;
  }
  return E;
}

}  // namespace varispeed
