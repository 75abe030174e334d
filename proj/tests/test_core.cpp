#include "support/fixtures.hpp"
#include "varispeed/cost.hpp"
#include "varispeed/generators.hpp"
#include "varispeed/schedule.hpp"

#include <doctest.h>

#include <random>

using namespace varispeed;
using varispeed::testing::for_each_permutation;
using varispeed::testing::jobs_vw;
using varispeed::testing::two_step_speed;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(to_string(Rational(6) / 3) == "2");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
  CHECK(*exact_pow(Rational(4), Rational(1, 2)) == 2);
  CHECK_FALSE(exact_pow(Rational(2), Rational(1, 2)).has_value());
}

TEST_CASE("oracle_time on a two-step profile") {
  auto sp = two_step_speed();
  CHECK(sp.oracle_time(Rational(4)) == 2);
  CHECK(sp.oracle_time(Rational(12)) == 7);
  CHECK(sp.oracle_time(Rational(0)) == 0);
  CHECK(sp.oracle_time(12.0) == doctest::Approx(7.0));
  CHECK(sp.work_by(Rational(7)) == 12);
}

TEST_CASE("oracle_time skips zero-speed gaps and reports missing capacity") {
  PiecewiseConstantSpeed gap({Rational(0), Rational(1), Rational(3)}, {Rational(1), Rational(0), Rational(2)});
  CHECK(gap.oracle_time(Rational(1)) == 1);
  CHECK(gap.oracle_time(Rational(2)) == Rational(7, 2));
  PiecewiseConstantSpeed finite({Rational(0), Rational(2)}, {Rational(1), Rational(0)});
  CHECK(finite.capacity() == 2);
  CHECK_THROWS_AS(finite.oracle_time(Rational(3)), InsufficientCapacity);
}

TEST_CASE("time_cost examples") {
  auto inst = jobs_vw({{1, 2}, {2, 1}});
  auto unit = PiecewiseConstantSpeed::constant(1);
  auto ts = schedule_in_order(inst, unit, {0, 1});
  CHECK(time_cost(inst, ts) == 5);
  CHECK(remaining_weight_integral(inst, ts) == 5);

  auto single = jobs_vw({{3, 4}});
  CHECK(time_cost(single, schedule_in_order(single, unit, {0})) == 12);

  auto big = jobs_vw({{12, 1}});
  CHECK(time_cost(big, schedule_in_order(big, two_step_speed(), {0})) == 7);
}

TEST_CASE("weight_cost equals time_cost without idle weight and grows by the idle area") {
  auto inst = jobs_vw({{1, 2}, {2, 1}});
  auto unit = PiecewiseConstantSpeed::constant(1);
  auto ws = tight_weight_schedule(inst, {0, 1});
  CHECK(ws.completion[0] == 3);
  CHECK(ws.completion[1] == 1);
  CHECK(idle_weight(inst, ws) == 0);
  CHECK(weight_cost(inst, ws, unit) == 5);

  // Raising the top job's completion weight by one adds one unit of idle weight below it.
  WeightSchedule raised = ws;
  raised.completion[0] += 1;
  CHECK(idle_weight(inst, raised) == 1);
  auto ts = to_time_schedule(inst, raised, unit);
  CHECK(weight_cost(inst, raised, unit) == 5 + ts.execution[0]);
}

TEST_CASE("to_time_schedule orders by decreasing completion weight") {
  auto inst = jobs_vw({{1, 1}, {1, 1}});
  WeightSchedule ws;
  ws.completion = {Rational(3), Rational(1)};
  auto ts = to_time_schedule(inst, ws, PiecewiseConstantSpeed::constant(1));
  CHECK(ts.order == std::vector<int>{0, 1});
  CHECK(ts.completion[0] == 1);
  CHECK(ts.completion[1] == 2);

  auto one = jobs_vw({{12, 3}});
  WeightSchedule w1;
  w1.completion = {Rational(3)};
  CHECK(to_time_schedule(one, w1, two_step_speed()).completion[0] == 7);
}

TEST_CASE("weight_cost dominates time_cost exhaustively with idle insertions") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RandomParams p;
    int n = 2 + static_cast<int>(seed % 4);
    auto inst = gen_random(n, p, seed);
    auto sp = gen_random_speed(3, seed);
    std::mt19937_64 rng(seed);
    for_each_permutation(inst.size(), [&](const std::vector<int>& perm) {
      auto ws = tight_weight_schedule(inst, perm);
      auto tight_cost = weight_cost(inst, ws, sp);
      CHECK(tight_cost == time_cost(inst, to_time_schedule(inst, ws, sp)));
      // insert idle weight below a random job and every job above it
      std::size_t cut = rng() % inst.size();
      WeightSchedule idle = ws;
      for (std::size_t k = 0; k <= cut; ++k) idle.completion[perm[k]] += Rational(1, 2);
      REQUIRE(is_feasible(inst, idle));
      CHECK(idle_weight(inst, idle) > 0);
      CHECK(weight_cost(inst, idle, sp) > time_cost(inst, to_time_schedule(inst, idle, sp)));
    });
  }
}

TEST_CASE("weight_stretch scales completion weights and cost by at most 1+eps") {
  WeightSchedule ws;
  ws.completion = {Rational(10)};
  CHECK(weight_stretch(ws, Rational(1, 2)).completion[0] == 15);
  CHECK(weight_stretch(WeightSchedule{}, Rational(1, 2)).completion.empty());

  Rational eps(1, 4);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomParams p;
    auto inst = gen_random(1 + static_cast<int>(seed % 6), p, seed);
    auto sp = gen_random_speed(2, seed);
    std::vector<int> order = identity_order(inst.size());
    std::shuffle(order.begin(), order.end(), std::mt19937_64(seed));
    auto base = tight_weight_schedule(inst, order);
    Rational ratio = weight_cost(inst, weight_stretch(base, eps), sp) / weight_cost(inst, base, sp);
    CHECK(ratio >= 1);
    CHECK(ratio <= 1 + eps);
  }
}

TEST_CASE("stretch_intervals lands boundary weights on the next boundary") {
  Rational eps(1, 4), b = 1 + eps;
  // a job of weight eps completing at b^0 lands on b^1
  auto inst = make_instance({Job{1, Rational(1), eps, Rational(0)}});
  WeightSchedule ws;
  ws.completion = {Rational(1)};
  auto res = stretch_intervals(inst, ws, eps);
  CHECK(res.schedule.completion[0] == b);

  // a small job is delayed and then packed to the floor of the interval it moved into
  auto small = jobs_vw({{1, 1}});
  WeightSchedule deep;
  deep.completion = {pow_int(b, 20)};
  auto moved = stretch_intervals(small, deep, eps);
  CHECK(moved.schedule.completion[0] > deep.completion[0]);
  CHECK(moved.schedule.completion[0] <= deep.completion[0] * b);
  CHECK(moved.covered_intervals.empty());
}

TEST_CASE("stretch_intervals flags a job covering a whole interval") {
  Rational eps(1, 4);
  // Weight 10 from 0 to 10 covers every interval below 10.
  auto inst = jobs_vw({{1, 10}});
  WeightSchedule ws;
  ws.completion = {Rational(10)};
  auto res = stretch_intervals(inst, ws, eps);
  CHECK_FALSE(res.covered_intervals.empty());
  CHECK(is_feasible(inst, res.schedule));
}

TEST_CASE("stretch_intervals costs at most (1+eps)^2") {
  Rational eps(1, 4), bound = (1 + eps) * (1 + eps);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomParams p;
    auto inst = gen_random(1 + static_cast<int>(seed % 6), p, seed);
    auto sp = gen_random_speed(3, seed + 100);
    std::vector<int> order = identity_order(inst.size());
    std::shuffle(order.begin(), order.end(), std::mt19937_64(seed));
    auto base = tight_weight_schedule(inst, order);
    auto res = stretch_intervals(inst, base, eps);
    REQUIRE(is_feasible(inst, res.schedule));
    Rational ratio = weight_cost(inst, res.schedule, sp) / weight_cost(inst, base, sp);
    CHECK(ratio >= 1);
    CHECK(ratio <= bound);
  }
}

TEST_CASE("gen_random is deterministic and validates its input") {
  RandomParams p;
  auto a = gen_random(3, p, 7), b = gen_random(3, p, 7);
  REQUIRE(a.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(a.jobs[j].volume == b.jobs[j].volume);
    CHECK(a.jobs[j].weight == b.jobs[j].weight);
  }
  CHECK_THROWS_AS(gen_random(0, p, 1), std::invalid_argument);
  RandomParams unit;
  unit.weight_min = unit.weight_max = 1;
  for (const auto& j : gen_random(8, unit, 3).jobs) CHECK(j.weight == 1);
}

TEST_CASE("hardness gadget parameters") {
  TardinessInstance t;
  t.jobs = {{1, 1}, {1, 1}};
  t.due = 2;
  auto g = gen_hardness_gadget(t, Rational(2));
  CHECK(g.eps == Rational(1, 4));
  CHECK(g.menu.speeds == std::vector<Rational>{Rational(4), Rational(1)});
  CHECK(g.budget == 8);
}

TEST_CASE("hardness gadget time map holds for every permutation") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto t = gen_random_tardiness(1 + static_cast<int>(seed % 5), seed);
    auto g = gen_hardness_gadget(t, Rational(2));
    auto unit = PiecewiseConstantSpeed::constant(1);
    for_each_permutation(g.instance.size(), [&](const std::vector<int>& perm) {
      auto slow = schedule_in_order(g.instance, unit, perm);
      auto fast = schedule_in_order(g.instance, g.profile, perm);
      for (int j : perm) CHECK(gadget_time_map(slow.completion[j], g.eps, g.due) == fast.completion[j]);
    });
  }
}

TEST_CASE("Smith order breaks ties by id and puts zero volume first") {
  auto inst = jobs_vw({{2, 2}, {1, 1}, {0, 1}, {1, 3}});
  CHECK(smith_order(inst) == std::vector<int>{2, 3, 0, 1});
}
