#include "varispeed/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace varispeed {

std::vector<std::size_t> useful_speeds(const DiscreteSpeedMenu& menu) {
  std::vector<std::size_t> out;
  Rational best;
  for (std::size_t i = 0; i < menu.size(); ++i) {
    Rational e = menu.energy_per_volume(i);
    if (out.empty() || e < best) {
      out.push_back(i);
      best = e;
    }
  }
  return out;
}

SpeedEnvelope lower_envelope(const DiscreteSpeedMenu& menu) {
  std::vector<std::size_t> all(menu.size());
  std::iota(all.begin(), all.end(), 0);
  return lower_envelope(menu, all);
}

SpeedEnvelope lower_envelope(const DiscreteSpeedMenu& menu, const std::vector<std::size_t>& allowed) {
  struct P {
    std::size_t idx;
    Rational t, e;
  };
  std::vector<P> pts;
  for (std::size_t i : allowed) pts.push_back({i, 1 / menu.speeds[i], menu.energy_per_volume(i)});
  std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) { return a.t < b.t; });

  std::vector<P> kept;
  for (const auto& p : pts)
    if (kept.empty() || p.e < kept.back().e) kept.push_back(p);

  std::vector<P> hull;
  for (const auto& c : kept) {
    while (hull.size() >= 2) {
      const P& a = hull[hull.size() - 2];
      const P& b = hull.back();
      if ((b.e - a.e) * (c.t - a.t) >= (c.e - a.e) * (b.t - a.t))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(c);
  }
  SpeedEnvelope env;
  for (const auto& p : hull) env.points.push_back({p.idx, p.t.get_d(), p.e.get_d()});
  return env;
}

double mix_time(const SpeedEnvelope& env, const JobMix& m, double volume) {
  return volume * (m.theta * env.points[m.fast].time + (1 - m.theta) * env.points[m.slow].time);
}

double mix_energy(const SpeedEnvelope& env, const JobMix& m, double volume) {
  return volume * (m.theta * env.points[m.fast].energy + (1 - m.theta) * env.points[m.slow].energy);
}

ParametricAllocation::ParametricAllocation(std::vector<double> volume, std::vector<double> coeff,
                                           std::vector<SpeedEnvelope> envelopes)
    : vol_(std::move(volume)), coeff_(std::move(coeff)), env_(std::move(envelopes)) {
  const std::size_t n = vol_.size();
  if (coeff_.size() != n || env_.size() != n) throw std::invalid_argument("allocation inputs differ in length");
  Vertex v0{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    if (env_[j].points.empty()) throw std::invalid_argument("job without any usable speed");
    const auto& pts = env_[j].points;
    v0.cost += coeff_[j] * vol_[j] * pts[0].time;
    v0.energy += vol_[j] * pts[0].energy;
    if (vol_[j] <= 0) continue;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      double dt = pts[k + 1].time - pts[k].time;
      double de = pts[k].energy - pts[k + 1].energy;
      moves_.push_back({j, k, coeff_[j] * dt / de, coeff_[j] * vol_[j] * dt, vol_[j] * de});
    }
  }
  std::sort(moves_.begin(), moves_.end(), [](const Move& a, const Move& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.job != b.job) return a.job < b.job;
    return a.from < b.from;
  });
  vertices_.push_back(v0);
  for (const auto& m : moves_) {
    Vertex v = vertices_.back();
    v.cost += m.dcost;
    v.energy -= m.denergy;
    vertices_.push_back(v);
  }
}

ParametricAllocation::Allocation ParametricAllocation::build(std::size_t done, double partial) const {
  Allocation a;
  a.mix.assign(vol_.size(), JobMix{0, 0, 1.0});
  for (std::size_t i = 0; i < done; ++i) {
    auto& m = a.mix[moves_[i].job];
    m.fast = m.slow = moves_[i].from + 1;
    m.theta = 1.0;
  }
  a.cost = vertices_[done].cost;
  a.energy = vertices_[done].energy;
  if (partial > 0 && done < moves_.size()) {
    const Move& mv = moves_[done];
    a.mix[mv.job] = JobMix{mv.from, mv.from + 1, 1.0 - partial};
    a.cost += partial * mv.dcost;
    a.energy -= partial * mv.denergy;
  }
  return a;
}

std::optional<ParametricAllocation::Allocation> ParametricAllocation::at_energy(double energy) const {
  if (energy >= vertices_.front().energy) return build(0, 0.0);
  if (energy < vertices_.back().energy) {
    if (energy >= vertices_.back().energy * (1 - 1e-12)) return build(moves_.size(), 0.0);
    return std::nullopt;
  }
  // first vertex whose energy fits
  std::size_t i = 1;
  while (vertices_[i].energy > energy) ++i;
  const Move& mv = moves_[i - 1];
  double phi = (vertices_[i - 1].energy - energy) / mv.denergy;
  phi = std::clamp(phi, 0.0, 1.0);
  if (phi >= 1.0) return build(i, 0.0);
  return build(i - 1, phi);
}

std::optional<ParametricAllocation::Allocation> ParametricAllocation::at_cost(double cost) const {
  if (cost < vertices_.front().cost) {
    if (cost >= vertices_.front().cost * (1 - 1e-12)) return build(0, 0.0);
    return std::nullopt;
  }
  // last vertex whose cost fits
  std::size_t i = vertices_.size() - 1;
  while (vertices_[i].cost > cost) --i;
  if (i == moves_.size()) return build(i, 0.0);
  const Move& mv = moves_[i];
  double phi = mv.dcost > 0 ? (cost - vertices_[i].cost) / mv.dcost : 1.0;
  phi = std::clamp(phi, 0.0, 1.0);
  if (phi >= 1.0) return build(i + 1, 0.0);
  return build(i, phi);
}

IntervalLpResult interval_energy_lp(double volume, double factor, double allowance, const DiscreteSpeedMenu& menu) {
  const std::size_t k = menu.size();
  IntervalLpResult best;
  best.durations.assign(k, 0.0);
  if (volume <= 0) {
    best.feasible = true;
    return best;
  }
  if (factor <= 0) throw std::invalid_argument("interval weight factor must be positive");
  const double T = allowance / factor;
  const double slack = 1e-12 * std::max(1.0, T);
  best.energy = std::numeric_limits<double>::infinity();
  std::vector<double> s(k), P(k);
  for (std::size_t i = 0; i < k; ++i) {
    s[i] = menu.speeds[i].get_d();
    P[i] = menu.power[i].get_d();
  }
  auto consider = [&](std::vector<double> l) {
    double e = 0.0;
    for (std::size_t i = 0; i < k; ++i) e += l[i] * P[i];
    if (e < best.energy) {
      best.energy = e;
      best.durations = std::move(l);
      best.feasible = true;
    }
  };
  // one duration positive, time constraint slack
  for (std::size_t i = 0; i < k; ++i) {
    double l = volume / s[i];
    if (l <= T + slack) {
      std::vector<double> d(k, 0.0);
      d[i] = l;
      consider(std::move(d));
    }
  }
  // two durations positive, time constraint tight
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      double li = (volume - T * s[j]) / (s[i] - s[j]);
      double lj = T - li;
      if (li < -slack || lj < -slack) continue;
      std::vector<double> d(k, 0.0);
      d[i] = std::max(0.0, li);
      d[j] = std::max(0.0, lj);
      consider(std::move(d));
    }
  if (!best.feasible) best.energy = 0.0;
  return best;
}

}  // namespace varispeed
