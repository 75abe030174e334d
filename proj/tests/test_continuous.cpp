#include "support/fixtures.hpp"
#include "varispeed/continuous.hpp"
#include "varispeed/generators.hpp"
#include "varispeed/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace varispeed;
using varispeed::testing::jobs_vw;

TEST_CASE("energy split for two unit jobs") {
  auto inst = jobs_vw({{1, 1}, {1, 1}});
  auto s = optimal_energy_split(inst, {0, 1}, 2.0, 1.0);
  const double r2 = std::sqrt(2.0);
  CHECK(s.gamma == doctest::Approx(r2 + 1));
  CHECK(s.assignment.energies[0] == doctest::Approx(r2 / (r2 + 1)).epsilon(1e-12));
  CHECK(s.assignment.energies[1] == doctest::Approx(1 / (r2 + 1)).epsilon(1e-12));
  CHECK(s.cost == doctest::Approx(3 + 2 * r2).epsilon(1e-12));
  CHECK(numeric_kkt_check(inst, {0, 1}, 2.0, s.assignment).residual < 1e-8);
  auto num = numeric_energy_minimize(inst, {0, 1}, 2.0, 1.0);
  CHECK(num[0] == doctest::Approx(s.assignment.energies[0]).epsilon(1e-6));
  CHECK(energy_split_cost(inst, {0, 1}, 2.0, num) == doctest::Approx(s.cost).epsilon(1e-6));
}

TEST_CASE("energy split edge cases") {
  auto one = jobs_vw({{3, 2}});
  CHECK(optimal_energy_split(one, {0}, 3.0, 5.0).assignment.energies[0] == doctest::Approx(5.0));

  auto same = jobs_vw({{2, 1}, {2, 1}, {2, 1}, {2, 1}});
  std::vector<int> order{2, 0, 3, 1};
  auto s = optimal_energy_split(same, order, 2.5, 3.0);
  for (std::size_t k = 0; k + 1 < order.size(); ++k)
    CHECK(s.assignment.energies[order[k]] > s.assignment.energies[order[k + 1]]);
  double total = std::accumulate(s.assignment.energies.begin(), s.assignment.energies.end(), 0.0);
  CHECK(std::abs(total - 3.0) / 3.0 < 1e-12);
}

TEST_CASE("trailing zero-weight jobs receive a residual share") {
  auto inst = jobs_vw({{1, 2}, {2, 0}});
  auto s = optimal_energy_split(inst, {0, 1}, 2.0, 4.0);
  CHECK(s.residual_adjusted);
  CHECK(s.assignment.energies[1] > 0);
  CHECK(s.assignment.energies[0] + s.assignment.energies[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::isfinite(s.execution[1]));
}

TEST_CASE("KKT and budget saturation on random triples") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomParams p;
    auto inst = gen_random(2 + static_cast<int>(seed % 6), p, seed);
    std::vector<int> order = identity_order(inst.size());
    std::reverse(order.begin(), order.end());
    double alpha = 1.5 + static_cast<double>(seed % 4) * 0.5;
    double E = 0.3 * static_cast<double>(seed);
    auto s = optimal_energy_split(inst, order, alpha, E);
    auto k = numeric_kkt_check(inst, order, alpha, s.assignment);
    CHECK(k.residual < 1e-8);
    CHECK(k.budget_gap < 1e-12);
  }
}

TEST_CASE("universal sequence ties for identical jobs and is close to optimal") {
  PtasOptions opt;
  opt.eps = 0.05;
  auto same = jobs_vw({{1, 1}, {1, 1}});
  auto u = universal_sequence(same, 2.0, opt);
  CHECK(continuous_cost(u.gamma, 2.0, 1.0) == doctest::Approx(exact_continuous(same, Rational(2), 1.0).cost));

  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    RandomParams p;
    auto inst = gen_random(2 + static_cast<int>(seed % 6), p, seed);
    auto us = universal_sequence(inst, 2.0, opt);
    REQUIRE(is_permutation_of(us.order, inst.size()));
    double opt_cost = exact_continuous(inst, Rational(2), 1.0).cost;
    double c = continuous_cost(gamma_of(inst, us.order, 2.0), 2.0, 1.0);
    CHECK(c >= opt_cost * (1 - 1e-9));
    CHECK(c <= opt_cost * std::pow(1 + 3 * opt.eps, 2.0));
  }
}

TEST_CASE("Pareto curve follows the scaling law") {
  PtasOptions opt;
  opt.eps = 0.1;
  RandomParams p;
  auto inst = gen_random(6, p, 5);
  auto curve = pareto(inst, 2.0, opt, {1.0, 2.0, 4.0});
  REQUIRE(curve.samples.size() == 3);
  CHECK(curve.samples[1].split.cost == doctest::Approx(curve.samples[0].split.cost / 2).epsilon(1e-12));
  CHECK(curve.samples[2].split.cost == doctest::Approx(curve.samples[0].split.cost / 4).epsilon(1e-12));
  for (const auto& s : curve.samples) CHECK(s.split.order == curve.order);

  auto one = jobs_vw({{1, 1}});
  CHECK(pareto(one, 3.0, opt, {1.0}).samples[0].split.cost == doctest::Approx(1.0));

  auto cubic = pareto(inst, 3.0, opt, {1.0, 2.0});
  CHECK(cubic.samples[1].split.cost == doctest::Approx(cubic.samples[0].split.cost / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(default_budget_grid(1.0).size() == 16);
}

TEST_CASE("Pareto samples stay near the per-budget optimum") {
  PtasOptions opt;
  opt.eps = 0.1;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RandomParams p;
    auto inst = gen_random(3 + static_cast<int>(seed % 4), p, seed);
    std::vector<double> budgets{0.5, 1.0, 3.0};
    auto curve = pareto(inst, 3.0, opt, budgets);
    for (std::size_t k = 0; k < budgets.size(); ++k) {
      double best = exact_continuous(inst, Rational(3), budgets[k]).cost;
      CHECK(curve.samples[k].split.cost >= best * (1 - 1e-9));
      CHECK(curve.samples[k].split.cost <= best * std::pow(1 + 3 * opt.eps, 1.5));
    }
  }
}
