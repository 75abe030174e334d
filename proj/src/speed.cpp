#include "varispeed/speed.hpp"

#include <algorithm>
#include <limits>

namespace varispeed {

PiecewiseConstantSpeed::PiecewiseConstantSpeed(std::vector<Rational> breakpoints, std::vector<Rational> speeds)
    : breakpoints_(std::move(breakpoints)), speeds_(std::move(speeds)) {
  for (auto& q : breakpoints_) q.canonicalize();
  for (auto& q : speeds_) q.canonicalize();
  if (breakpoints_.empty() || breakpoints_.size() != speeds_.size())
    throw std::invalid_argument("speed profile needs one speed per breakpoint");
  if (breakpoints_.front() != 0) throw std::invalid_argument("speed profile must start at time 0");
  for (std::size_t k = 1; k < breakpoints_.size(); ++k)
    if (!(breakpoints_[k - 1] < breakpoints_[k])) throw std::invalid_argument("breakpoints must be strictly increasing");
  for (const auto& s : speeds_)
    if (s < 0) throw std::invalid_argument("negative speed");

  cum_.resize(breakpoints_.size());
  cum_[0] = 0;
  for (std::size_t k = 1; k < breakpoints_.size(); ++k)
    cum_[k] = cum_[k - 1] + speeds_[k - 1] * (breakpoints_[k] - breakpoints_[k - 1]);
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    bp_d_.push_back(breakpoints_[k].get_d());
    sp_d_.push_back(speeds_[k].get_d());
    cum_d_.push_back(cum_[k].get_d());
  }
}

PiecewiseConstantSpeed PiecewiseConstantSpeed::constant(const Rational& s) {
  return PiecewiseConstantSpeed({Rational(0)}, {s});
}

Rational PiecewiseConstantSpeed::oracle_time(const Rational& v) const {
  if (v < 0) throw std::invalid_argument("negative volume");
  if (v == 0) return 0;
  // first segment whose end capacity reaches v
  const std::size_t K = breakpoints_.size();
  auto it = std::lower_bound(cum_.begin() + 1, cum_.end(), v);
  std::size_t k;
  if (it == cum_.end()) {
    if (speeds_[K - 1] == 0) throw InsufficientCapacity("speed profile cannot process the requested volume");
    k = K - 1;
  } else {
    k = static_cast<std::size_t>(it - cum_.begin()) - 1;
  }
  return breakpoints_[k] + (v - cum_[k]) / speeds_[k];
}

double PiecewiseConstantSpeed::oracle_time(double v) const {
  if (v <= 0) return 0.0;
  const std::size_t K = bp_d_.size();
  auto it = std::lower_bound(cum_d_.begin() + 1, cum_d_.end(), v);
  std::size_t k;
  if (it == cum_d_.end()) {
    if (sp_d_[K - 1] == 0) {
      // tolerate rounding right at the capacity limit
      if (v <= cum_d_[K - 1] * (1 + 1e-12)) return bp_d_[K - 1];
      return std::numeric_limits<double>::infinity();
    }
    k = K - 1;
  } else {
    k = static_cast<std::size_t>(it - cum_d_.begin()) - 1;
  }
  return bp_d_[k] + (v - cum_d_[k]) / sp_d_[k];
}

Rational PiecewiseConstantSpeed::work_by(const Rational& t) const {
  if (t <= 0) return 0;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return cum_[k] + speeds_[k] * (t - breakpoints_[k]);
}

std::size_t DiscreteSpeedMenu::min_energy_index() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < speeds.size(); ++i)
    if (energy_per_volume(i) <= energy_per_volume(best)) best = i;
  return best;
}

Rational DiscreteSpeedMenu::min_energy(const Rational& volume) const {
  return volume * energy_per_volume(min_energy_index());
}

DiscreteSpeedMenu make_menu(std::vector<Rational> speeds, std::vector<Rational> power) {
  if (speeds.empty() || speeds.size() != power.size()) throw std::invalid_argument("menu needs matching speeds and powers");
  for (auto& q : speeds) q.canonicalize();
  for (auto& q : power) q.canonicalize();
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (speeds[i] <= 0) throw std::invalid_argument("menu speeds must be positive");
    if (power[i] < 0) throw std::invalid_argument("menu powers must be nonnegative");
    if (i > 0 && !(speeds[i] < speeds[i - 1])) throw std::invalid_argument("menu speeds must be strictly decreasing");
  }
  return DiscreteSpeedMenu{std::move(speeds), std::move(power)};
}

DiscreteSpeedMenu power_law_menu(const std::vector<Rational>& speeds, long alpha) {
  if (alpha < 1) throw std::invalid_argument("power-law exponent must be at least 1");
  std::vector<Rational> power;
  for (const auto& s : speeds) power.push_back(pow_int(s, alpha));
  return make_menu(speeds, power);
}

}  // namespace varispeed
