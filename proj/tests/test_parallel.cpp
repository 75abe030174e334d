#include "support/fixtures.hpp"
#include "varispeed/continuous.hpp"
#include "varispeed/generators.hpp"
#include "varispeed/oracle.hpp"
#include "varispeed/parallel.hpp"

#include <doctest.h>

#include <cmath>
#include <array>
#include <functional>
#include <limits>

using namespace varispeed;
using varispeed::testing::for_each_permutation;

namespace {

Instance with_releases(const std::vector<std::array<long, 3>>& vwr, InstanceKind kind = InstanceKind::ContinuousEnergy) {
  std::vector<Job> jobs;
  int id = 1;
  for (const auto& [v, w, r] : vwr) jobs.push_back(Job{id++, Rational(v), Rational(w), Rational(r)});
  return make_instance(std::move(jobs), kind);
}

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

double exec_time(double v, double E, double alpha) { return std::pow(std::pow(v, alpha) / E, 1.0 / (alpha - 1)); }

}  // namespace

TEST_CASE("list scheduling with enough machines starts everything at once") {
  auto inst = with_releases({{1, 1, 0}, {2, 1, 0}, {3, 1, 0}});
  auto s = preemptive_list_schedule(inst, 4, {2, 0, 1}, rationals({3, 1, 2}), {1, 1, 1});
  CHECK(check_parallel_schedule(inst, s).empty());
  for (std::size_t j = 0; j < 3; ++j) {
    REQUIRE(s.fragments[j].size() == 1);
    CHECK(s.fragments[j][0].start == 0);
    CHECK(s.completion[j] == s.execution[j]);
  }
  CHECK(s.cost == 6);
}

TEST_CASE("list scheduling on one machine gives prefix sums") {
  auto inst = with_releases({{1, 2, 0}, {2, 1, 0}, {3, 3, 0}});
  auto s = preemptive_list_schedule(inst, 1, {1, 2, 0}, rationals({4, 1, 2}), {1, 1, 1});
  CHECK(check_parallel_schedule(inst, s).empty());
  CHECK(s.completion[1] == 1);
  CHECK(s.completion[2] == 3);
  CHECK(s.completion[0] == 7);
}

TEST_CASE("list scheduling obeys the per-job completion bound") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    RandomParams p;
    p.release_max = 6;
    p.kind = InstanceKind::ContinuousEnergy;
    auto inst = gen_random(4, p, seed);
    std::vector<Rational> x;
    for (const auto& j : inst.jobs) x.push_back(j.volume / 2);
    std::vector<int> prio = identity_order(4);
    std::rotate(prio.begin(), prio.begin() + static_cast<long>(seed % 4), prio.end());
    const int m = 2;
    auto s = preemptive_list_schedule(inst, m, prio, x, std::vector<double>(4, 1.0));
    CHECK(check_parallel_schedule(inst, s).empty());
    Rational before = 0;
    for (int j : prio) {
      CHECK(s.completion[j] <= inst.jobs[j].release + before / m + x[j]);
      before += x[j];
    }
  }
}

TEST_CASE("the checker rejects overlaps and early starts") {
  auto inst = with_releases({{1, 1, 2}, {1, 1, 0}});
  auto s = preemptive_list_schedule(inst, 1, {0, 1}, rationals({1, 1}), {1, 1});
  REQUIRE(check_parallel_schedule(inst, s).empty());
  auto early = s;
  early.fragments[0][0].start -= 1;
  early.fragments[0][0].end -= 1;
  CHECK_FALSE(check_parallel_schedule(inst, early).empty());
}

TEST_CASE("one machine without a weighted-time bound is the single-machine split") {
  RandomParams p;
  p.kind = InstanceKind::ContinuousEnergy;
  auto inst = gen_random(5, p, 2);
  auto order = smith_order(inst);
  auto r = constrained_split(inst, 1, 2.0, 3.0, std::numeric_limits<double>::infinity(), order);
  REQUIRE(r);
  auto s = optimal_energy_split(inst, order, 2.0, 3.0);
  CHECK(r->z1 == doctest::Approx(s.cost).epsilon(1e-12));
}

TEST_CASE("single job relaxation") {
  auto inst = with_releases({{2, 3, 0}});
  auto r = constrained_split(inst, 2, 2.0, 4.0, 100.0, {0});
  REQUIRE(r);
  double x = exec_time(2.0, 4.0, 2.0);
  CHECK(r->weighted_time == doctest::Approx(3 * x));
  CHECK(r->z1 == doctest::Approx(3 * x / 2));
  CHECK_FALSE(constrained_split(inst, 2, 2.0, 4.0, 3 * x * 0.99, {0}));
}

TEST_CASE("relaxation cost is nonincreasing in X") {
  PtasOptions popt;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    RandomParams p;
    p.kind = InstanceKind::ContinuousEnergy;
    auto inst = gen_random(2 + static_cast<int>(seed % 4), p, seed);
    double E = 2.0 + static_cast<double>(seed);
    auto b = relaxation_bounds(inst, 2.0, E);
    CHECK(b.low <= b.high);
    auto orders = relaxation_orders(inst, 2.0, popt);
    double prev = std::numeric_limits<double>::infinity();
    for (double X = b.low; X <= b.high * 1.5; X *= 1.1) {
      auto r = fast_relaxation(inst, 2, 2.0, E, X, orders);
      if (!r) {
        CHECK(prev == std::numeric_limits<double>::infinity());
        continue;
      }
      CHECK(r->weighted_time <= X * (1 + 1e-9));
      CHECK(r->z1 <= prev * (1 + 1e-9));
      prev = r->z1;
    }
    CHECK(prev < std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("discrete bounds are ordered") {
  RandomParams p;
  p.kind = InstanceKind::DiscreteEnergy;
  auto inst = gen_random(5, p, 1);
  auto b = relaxation_bounds(inst, gen_random_menu(3, 2, 1));
  CHECK(b.low <= b.high);
}

TEST_CASE("two identical jobs run side by side") {
  auto inst = with_releases({{1, 1, 0}, {1, 1, 0}});
  ParallelOptions opt;
  auto r = solve_parallel(inst, 2, 2.0, 2.0, opt);
  CHECK(check_parallel_schedule(inst, r.schedule).empty());
  CHECK(r.schedule.fragments[0][0].start == 0);
  CHECK(r.schedule.fragments[1][0].start == 0);
  CHECK(r.schedule.fragments[0][0].machine != r.schedule.fragments[1][0].machine);
  CHECK(r.schedule.cost.get_d() < r.certified_bound);
}

TEST_CASE("parallel solutions satisfy the certified bound and the budget") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomParams p;
    p.release_max = 8;
    p.kind = InstanceKind::ContinuousEnergy;
    auto inst = gen_random(2 + static_cast<int>(seed % 6), p, seed);
    ParallelOptions opt;
    double E = 4.0 + static_cast<double>(seed);
    auto r = solve_parallel(inst, 2 + static_cast<int>(seed % 2), 2.0 + static_cast<double>(seed % 2), E, opt);
    CHECK(check_parallel_schedule(inst, r.schedule).empty());
    Rational total = 0;
    for (double e : r.schedule.energy) total += from_double(e);
    CHECK(total <= from_double(E));
    CHECK(r.schedule.cost.get_d() <= r.certified_bound * (1 + 1e-12));
    CHECK(r.eps_prime == doctest::Approx(opt.eps / 2));
  }
}

TEST_CASE("one machine and no releases stays near the single-machine optimum") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RandomParams p;
    p.kind = InstanceKind::ContinuousEnergy;
    auto inst = gen_random(2 + static_cast<int>(seed % 5), p, seed);
    ParallelOptions opt;
    auto r = solve_parallel(inst, 1, 2.0, 3.0, opt);
    double best = exact_continuous(inst, Rational(2), 3.0).cost;
    CHECK(r.schedule.cost.get_d() >= best * (1 - 1e-9));
    CHECK(r.schedule.cost.get_d() <= best * (1 + 3 * opt.eps));
  }
}

TEST_CASE("relaxation lower-bounds brute-force parallel schedules") {
  PtasOptions popt;
  const double alpha = 2.0, E = 3.0;
  const int m = 2, grid = 6;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    RandomParams p;
    p.release_max = 3;
    p.volume_max = 4;
    p.kind = InstanceKind::ContinuousEnergy;
    auto inst = gen_random(3 + static_cast<int>(seed % 2), p, seed);
    const std::size_t n = inst.size();
    double best = std::numeric_limits<double>::infinity(), best_x = 0;
    // energies on a grid of E/grid units, every job at least one unit
    std::vector<int> units(n, 1);
    auto visit = [&](const std::vector<int>& u) {
      std::vector<double> en(n);
      std::vector<Rational> x(n);
      double wx = 0;
      for (std::size_t j = 0; j < n; ++j) {
        en[j] = E * u[j] / grid;
        x[j] = from_double(exec_time(inst.jobs[j].volume.get_d(), en[j], alpha));
        wx += Rational(inst.jobs[j].weight * x[j]).get_d();
      }
      for_each_permutation(n, [&](const std::vector<int>& prio) {
        auto s = preemptive_list_schedule(inst, m, prio, x, en);
        double c = s.cost.get_d();
        if (c < best) {
          best = c;
          best_x = wx;
        }
      });
    };
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
      if (j + 1 == n) {
        units[j] = left;
        visit(units);
        return;
      }
      for (int k = 1; k <= left - static_cast<int>(n - j - 1); ++k) {
        units[j] = k;
        rec(j + 1, left - k);
      }
    };
    rec(0, grid);
    auto r = fast_relaxation(inst, m, alpha, E, best_x, relaxation_orders(inst, alpha, popt));
    REQUIRE(r);
    CHECK(r->z1 <= best * (1 + 1e-9));
  }
}
