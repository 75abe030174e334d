#include "varispeed/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace varispeed {

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

Instance gen_random(int n, const RandomParams& p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("instance size must be at least 1");
  if (p.volume_min < 0 || p.volume_max < p.volume_min) throw std::invalid_argument("invalid volume range");
  if (p.weight_min < 0 || p.weight_max < p.weight_min) throw std::invalid_argument("invalid weight range");
  if (p.release_max < 0) throw std::invalid_argument("invalid release range");
  std::mt19937_64 rng(seed);
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i) {
    Job j;
    j.id = i + 1;
    j.volume = draw(rng, p.volume_min, p.volume_max);
    j.weight = draw(rng, p.weight_min, p.weight_max);
    j.release = p.release_max > 0 ? draw(rng, 0, p.release_max) : 0;
    jobs.push_back(j);
  }
  return make_instance(std::move(jobs), p.kind);
}

PiecewiseConstantSpeed gen_random_speed(int segments, std::uint64_t seed, long max_speed, long max_gap,
                                        bool allow_zero) {
  if (segments < 1 || max_speed < 1 || max_gap < 1) throw std::invalid_argument("invalid speed profile parameters");
  std::mt19937_64 rng(seed);
  std::vector<Rational> bps{Rational(0)}, speeds;
  for (int k = 1; k < segments; ++k) bps.push_back(bps.back() + Rational(draw(rng, 1, 2 * max_gap)) / 2);
  for (int k = 0; k < segments; ++k) {
    long lo = (allow_zero && k + 1 < segments) ? 0 : 1;
    speeds.push_back(Rational(draw(rng, lo, 2 * max_speed)) / 2);
    if (speeds.back() == 0 && lo == 1) speeds.back() = 1;
  }
  return PiecewiseConstantSpeed(bps, speeds);
}

DiscreteSpeedMenu gen_random_menu(int kappa, long alpha, std::uint64_t seed, long max_speed) {
  if (kappa < 1 || max_speed < kappa) throw std::invalid_argument("invalid menu parameters");
  std::mt19937_64 rng(seed);
  std::set<long> picked;
  while (static_cast<int>(picked.size()) < kappa) picked.insert(draw(rng, 1, max_speed));
  std::vector<Rational> speeds;
  for (auto it = picked.rbegin(); it != picked.rend(); ++it) speeds.push_back(Rational(*it));
  return power_law_menu(speeds, alpha);
}

HardnessGadget gen_hardness_gadget(const TardinessInstance& t, const Rational& alpha) {
  if (t.due <= 0) throw std::invalid_argument("due date must be positive");
  if (alpha < 1) throw std::invalid_argument("alpha must be at least 1");
  long total_w = 0;
  std::vector<Job> jobs;
  int id = 1;
  for (auto [v, w] : t.jobs) {
    if (v < 0 || w < 0) throw std::invalid_argument("tardiness jobs need nonnegative integers");
    total_w += w;
    jobs.push_back(Job{id++, Rational(v), Rational(w), Rational(0)});
  }
  if (total_w == 0) throw std::invalid_argument("tardiness instance has zero total weight");

  HardnessGadget g{make_instance(std::move(jobs), InstanceKind::DiscreteEnergy), {}, 0, 0, alpha, t.due,
                   PiecewiseConstantSpeed::constant(1)};
  g.eps = Rational(1, t.due * total_w);
  const Rational fast = 1 / g.eps;
  auto p_fast = exact_pow(fast, alpha);
  auto e_pow = exact_pow(fast, alpha - 1);
  if (!p_fast || !e_pow) throw std::invalid_argument("alpha yields an irrational power level for this gadget");
  // d * sum w = 1 collapses both speeds to 1
  g.menu = fast == 1 ? make_menu({Rational(1)}, {Rational(1)}) : make_menu({fast, Rational(1)}, {*p_fast, Rational(1)});
  g.budget = g.instance.total_volume() + Rational(t.due) * (*e_pow - 1);
  g.profile = PiecewiseConstantSpeed({Rational(0), g.eps * t.due}, {fast, Rational(1)});
  return g;
}

Rational gadget_time_map(const Rational& x, const Rational& eps, const Rational& due) {
  if (x < due) return eps * x;
  return x - due + eps * due;
}

TardinessInstance gen_random_tardiness(int n, std::uint64_t seed, long max_volume, long max_weight) {
  if (n < 1) throw std::invalid_argument("instance size must be at least 1");
  std::mt19937_64 rng(seed);
  TardinessInstance t;
  long total_v = 0;
  for (int i = 0; i < n; ++i) {
    long v = draw(rng, 1, max_volume);
    t.jobs.emplace_back(v, draw(rng, 1, max_weight));
    total_v += v;
  }
  t.due = std::max(1L, draw(rng, total_v / 3, (2 * total_v) / 3));
  return t;
}

}  // namespace varispeed
