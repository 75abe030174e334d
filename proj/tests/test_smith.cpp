#include "support/fixtures.hpp"
#include "varispeed/cost.hpp"
#include "varispeed/generators.hpp"
#include "varispeed/smith.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace varispeed;
using varispeed::testing::jobs_vw;

namespace {

Rational lowest_piece(const std::vector<WeightPiece>& pieces, int job) {
  Rational lo = -1;
  for (const auto& p : pieces)
    if (p.job == job && p.hi > p.lo && (lo < 0 || p.lo < lo)) lo = p.lo;
  return lo;
}

}  // namespace

TEST_CASE("light job with the larger v/w takes the lower idle weight") {
  // job 0 heavy, job 1 with v/w = 1, job 2 with v/w = 3
  auto inst = jobs_vw({{1, 1000}, {1, 1}, {3, 1}});
  WeightSchedule ws;
  ws.completion = {Rational(1201), Rational(101), Rational(201)};
  Rational eps(1, 4);
  auto tr = classify_and_smith(inst, ws, eps);
  CHECK_FALSE(tr.light[0]);
  REQUIRE(tr.light[1]);
  REQUIRE(tr.light[2]);
  CHECK(lowest_piece(tr.filled, 2) < lowest_piece(tr.filled, 1));
  CHECK(tr.result.completion[2] < tr.result.completion[1]);
  CHECK(is_feasible(inst, tr.result));
}

TEST_CASE("Smith-ordered light jobs keep their order") {
  auto inst = jobs_vw({{1, 1}, {2, 1}, {3, 1}, {4, 1}});
  WeightSchedule ws;
  ws.completion = {Rational(104), Rational(103), Rational(102), Rational(101)};
  auto tr = classify_and_smith(inst, ws, Rational(1, 4));
  for (char l : tr.light) CHECK(l);
  CHECK(order_by_completion_weight(inst, tr.result) == order_by_completion_weight(inst, ws));
}

TEST_CASE("remaining volume after the Smith step is dominated by the fractional volume") {
  Rational eps(1, 4), b = 1 + eps, b3 = b * b * b;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    std::mt19937_64 rng(seed);
    int n = 2 + static_cast<int>(seed % 5);
    RandomParams p;
    p.weight_max = 3;
    auto jobs = gen_random(n, p, seed).jobs;
    jobs[0].weight = 400 + static_cast<long>(seed);
    if (n > 3) jobs[1].weight = 150;
    auto inst = make_instance(jobs);
    std::vector<int> perm = identity_order(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    WeightSchedule ws;
    ws.completion.assign(n, Rational(0));
    Rational cur = 0;
    for (int k = n - 1; k >= 0; --k) {
      cur += Rational(static_cast<long>(rng() % 7), 2) + inst.jobs[perm[k]].weight;
      ws.completion[perm[k]] = cur;
    }
    auto tr = classify_and_smith(inst, ws, eps);
    REQUIRE(is_feasible(inst, tr.result));
    std::set<Rational> pts{Rational(0)};
    for (const auto& piece : tr.filled) {
      pts.insert(piece.lo);
      pts.insert(piece.hi);
    }
    for (const auto& c : tr.result.completion) pts.insert(c / b3);
    std::vector<Rational> grid(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      Rational mid = (grid[i] + grid[i + 1]) / 2;
      CHECK(remaining_volume(inst, tr.result, b3 * mid) <=
            fractional_remaining_volume(inst, tr.filled, tr.light, grid[i + 1]));
    }
  }
}

TEST_CASE("light_jobs threshold") {
  auto inst = jobs_vw({{1, 1}, {1, 50}});
  WeightSchedule ws;
  ws.completion = {Rational(101), Rational(150)};
  auto light = light_jobs(inst, ws, Rational(1, 4));
  CHECK(light[0]);
  CHECK_FALSE(light[1]);
}
