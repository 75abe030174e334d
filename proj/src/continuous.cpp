#include "varispeed/continuous.hpp"

#include "varispeed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varispeed {

EnergySplit optimal_energy_split(const Instance& inst, const std::vector<int>& order, double alpha, double energy,
                                 double residual_share) {
  if (!(alpha > 1)) throw std::invalid_argument("alpha must exceed 1");
  if (!(energy > 0)) throw std::invalid_argument("energy budget must be positive");
  if (!is_permutation_of(order, inst.size())) throw std::invalid_argument("order is not a permutation of the jobs");
  const std::size_t n = inst.size();
  const double q = (alpha - 1) / alpha;
  auto W = suffix_weights(inst, order);

  EnergySplit s;
  s.order = order;
  s.assignment.budget = energy;
  s.assignment.energies.assign(n, 0.0);
  s.execution.assign(n, 0.0);

  std::vector<int> starved;
  std::vector<double> term(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    int j = order[k];
    double v = inst.jobs[j].volume.get_d();
    if (v <= 0) continue;
    if (W[k] == 0) {
      starved.push_back(j);
      continue;
    }
    term[j] = v * std::pow(W[k].get_d(), q);
    s.gamma += term[j];
  }

  double main = energy;
  if (!starved.empty()) {
    s.residual_adjusted = true;
    double each = residual_share * energy / static_cast<double>(n);
    if (s.gamma == 0) each = energy / static_cast<double>(starved.size());
    for (int j : starved) s.assignment.energies[j] = each;
    s.residual_energy = each * static_cast<double>(starved.size());
    main = energy - s.residual_energy;
  }
  if (s.gamma > 0) {
    for (std::size_t j = 0; j < n; ++j)
      if (term[j] > 0) s.assignment.energies[j] = term[j] * main / s.gamma;
    s.cost = continuous_cost(s.gamma, alpha, main);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double v = inst.jobs[j].volume.get_d();
    if (v > 0) s.execution[j] = std::pow(std::pow(v, alpha) / s.assignment.energies[j], 1.0 / (alpha - 1));
  }
  return s;
}

UniversalSequence universal_sequence(const Instance& inst, double alpha, const PtasOptions& opt) {
  if (!(alpha > 1)) throw std::invalid_argument("alpha must exceed 1");
  const double q = (alpha - 1) / alpha;
  std::vector<double> v, w;
  for (const auto& j : inst.jobs) {
    v.push_back(j.weight.get_d());
    w.push_back(j.volume.get_d());
  }
  UniversalSequence u;
  u.ptas = ptas_with_oracle(v, w, [q](double x) { return x > 0 ? std::pow(x, q) : 0.0; }, opt);
  u.order.assign(u.ptas.order.rbegin(), u.ptas.order.rend());
  u.gamma = gamma_of(inst, u.order, alpha);
  return u;
}

ParetoCurve pareto(const Instance& inst, double alpha, const PtasOptions& opt, const std::vector<double>& budgets) {
  for (double b : budgets)
    if (!(b > 0)) throw std::invalid_argument("budgets must be positive");
  auto seq = universal_sequence(inst, alpha, opt);
  ParetoCurve c;
  c.order = seq.order;
  c.gamma = seq.gamma;
  c.samples.resize(budgets.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    c.samples[i].budget = budgets[i];
    c.samples[i].split = optimal_energy_split(inst, c.order, alpha, budgets[i]);
  }
  return c;
}

std::vector<double> default_budget_grid(double center) {
  std::vector<double> g;
  for (int k = -8; k < 8; ++k) g.push_back(std::ldexp(center, k));
  return g;
}

}  // namespace varispeed
