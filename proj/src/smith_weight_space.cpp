#include "varispeed/smith.hpp"

#include "varispeed/cost.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace varispeed {

namespace {

void sort_pieces(std::vector<WeightPiece>& p) {
  std::sort(p.begin(), p.end(), [](const WeightPiece& a, const WeightPiece& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
}

Rational interval_floor(const Rational& x, const Rational& b) { return pow_int(b, interval_index(x, b) - 1); }

/// Smallest u with w <= eps^3 b^(u-1).
long eligible_from(const Rational& w, const Rational& eps) {
  const Rational b = 1 + eps;
  const Rational e3 = eps * eps * eps;
  long u = interval_index(w / e3, b);
  while (w <= e3 * pow_int(b, u - 2)) --u;
  while (w > e3 * pow_int(b, u - 1)) ++u;
  return u;
}

}  // namespace

std::vector<char> light_jobs(const Instance& inst, const WeightSchedule& ws, const Rational& eps) {
  const Rational b = 1 + eps;
  std::vector<char> light(inst.size(), 0);
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const Rational& w = inst.jobs[j].weight;
    Rational s = ws.completion[j] - w;
    if (w <= 0 || s <= 0) continue;
    light[j] = w <= eps * eps * eps * interval_floor(s, b);
  }
  return light;
}

std::vector<WeightPiece> fill_light(const Instance& inst, const std::vector<WeightPiece>& packed,
                                    const std::vector<char>& light, const std::vector<int>& priority,
                                    const Rational& eps) {
  const Rational b = 1 + eps;
  std::vector<WeightPiece> out = packed;
  std::vector<Rational> rem(inst.size(), Rational(0));
  bool any = false;
  long u_start = 0;
  for (int j : priority) {
    if (!light[j]) continue;
    rem[j] = inst.jobs[j].weight;
    long e = eligible_from(rem[j], eps);
    u_start = any ? std::min(u_start, e) : e;
    any = true;
  }
  if (!any) return out;

  std::vector<WeightPiece> busy = packed;
  sort_pieces(busy);
  // idle segments between packed pieces, the last one unbounded
  std::vector<std::pair<Rational, Rational>> idle;
  Rational frontier = 0;
  for (const auto& p : busy) {
    if (p.hi <= p.lo) continue;
    if (p.lo > frontier) idle.emplace_back(frontier, p.lo);
    frontier = max(frontier, p.hi);
  }
  const Rational start = pow_int(b, u_start - 1);
  std::size_t left = 0;
  for (int j : priority)
    if (light[j]) ++left;

  auto pour = [&](Rational x, const Rational* end) {
    x = max(x, start);
    while (left > 0 && (!end || x < *end)) {
      long u = interval_index(x, b);
      Rational top = pow_int(b, u);
      if (end && *end < top) top = *end;
      const Rational cap = eps * eps * eps * pow_int(b, u - 1);
      int pick = -1;
      for (int j : priority)
        if (light[j] && rem[j] > 0 && inst.jobs[j].weight <= cap) {
          pick = j;
          break;
        }
      if (pick < 0) {
        x = top;
        continue;
      }
      Rational amount = min(rem[pick], top - x);
      out.push_back({pick, x, x + amount});
      rem[pick] -= amount;
      if (rem[pick] == 0) --left;
      x += amount;
    }
  };
  for (const auto& [lo, hi] : idle) {
    if (hi <= start) continue;
    pour(lo, &hi);
  }
  pour(frontier, nullptr);
  sort_pieces(out);
  return out;
}

SmithTrace classify_and_smith(const Instance& inst, const WeightSchedule& ws, const Rational& eps) {
  if (!is_feasible(inst, ws)) throw std::invalid_argument("weight schedule is infeasible");
  const Rational b = 1 + eps;
  const std::size_t n = inst.size();
  SmithTrace tr;
  tr.light = light_jobs(inst, ws, eps);

  // push heavy jobs up towards the top of their completion interval, highest first,
  // which leaves the idle weight of every interval in one block at its bottom
  std::vector<int> heavy;
  for (std::size_t j = 0; j < n; ++j)
    if (!tr.light[j]) heavy.push_back(static_cast<int>(j));
  std::sort(heavy.begin(), heavy.end(), [&](int a, int c) {
    if (ws.completion[a] != ws.completion[c]) return ws.completion[a] > ws.completion[c];
    return a > c;
  });
  std::optional<Rational> ceiling;
  for (int j : heavy) {
    const Rational& w = inst.jobs[j].weight;
    const Rational& c = ws.completion[j];
    if (w == 0) {
      tr.packed.push_back({j, c, c});
      continue;
    }
    Rational nc = pow_int(b, interval_index(c, b));
    if (ceiling && *ceiling < nc) nc = *ceiling;
    if (nc < c) nc = c;
    tr.packed.push_back({j, nc - w, nc});
    ceiling = nc - w;
  }
  sort_pieces(tr.packed);
  Rational frontier = 0;

  std::vector<int> priority = identity_order(n);
  std::stable_sort(priority.begin(), priority.end(), [&](int a, int c) {
    const Job& x = inst.jobs[a];
    const Job& y = inst.jobs[c];
    return x.volume * y.weight > y.volume * x.weight;
  });
  tr.filled = fill_light(inst, tr.packed, tr.light, priority, eps);

  // stretch every piece by the width of the interval holding its top, then pack downward
  std::vector<WeightPiece> st;
  std::vector<Rational> orig_lo;
  for (const auto& p : tr.filled) {
    Rational d = p.hi > 0 ? eps * pow_int(b, interval_index(p.hi, b) - 1) : Rational(0);
    st.push_back({p.job, p.lo + d, p.hi + d});
    orig_lo.push_back(p.lo);
  }
  frontier = 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    auto& p = st[i];
    Rational w = p.hi - p.lo;
    if (w == 0) continue;
    Rational target = max(max(frontier, p.lo > 0 ? interval_floor(p.lo, b) : Rational(0)), orig_lo[i]);
    if (target < p.lo) p.lo = target;
    p.hi = p.lo + w;
    frontier = p.hi;
  }
  // merge touching pieces of the same job
  for (const auto& p : st) {
    if (!tr.stretched.empty() && tr.stretched.back().job == p.job && tr.stretched.back().hi == p.lo && p.hi > p.lo)
      tr.stretched.back().hi = p.hi;
    else
      tr.stretched.push_back(p);
  }

  // de-preempt: each split light job moves into the idle block atop its first interval
  std::vector<WeightPiece> pieces = tr.stretched;
  std::map<int, int> count;
  for (const auto& p : pieces)
    if (p.hi > p.lo) ++count[p.job];
  std::vector<int> split;
  for (const auto& p : pieces)
    if (count[p.job] > 1 && std::find(split.begin(), split.end(), p.job) == split.end()) split.push_back(p.job);
  for (int j : split) {
    Rational first_lo;
    bool seen = false;
    for (const auto& p : pieces)
      if (p.job == j && p.hi > p.lo && (!seen || p.lo < first_lo)) {
        first_lo = p.lo;
        seen = true;
      }
    std::erase_if(pieces, [&](const WeightPiece& p) { return p.job == j; });
    long u = interval_index(first_lo, b);
    Rational bottom = pow_int(b, u - 1), top = pow_int(b, u);
    Rational a = bottom, highest = 0;
    for (const auto& p : pieces) {
      highest = max(highest, p.hi);
      if (p.lo < top) a = max(a, p.hi);
    }
    const Rational& w = inst.jobs[j].weight;
    if (a + w <= top) {
      pieces.push_back({j, a, a + w});
    } else {
      tr.fallback = true;
      pieces.push_back({j, highest, highest + w});
    }
  }
  sort_pieces(pieces);
  tr.result.completion.assign(n, Rational(0));
  for (const auto& p : pieces) tr.result.completion[p.job] = p.hi;
  if (!is_feasible(inst, tr.result)) throw InvariantViolation("Smith in weight-space produced overlapping jobs");
  return tr;
}

Rational remaining_volume(const Instance& inst, const WeightSchedule& ws, const Rational& w) {
  Rational v = 0;
  for (std::size_t j = 0; j < inst.size(); ++j)
    if (ws.completion[j] > w) v += inst.jobs[j].volume;
  return v;
}

Rational fractional_remaining_volume(const Instance& inst, const std::vector<WeightPiece>& pieces,
                                     const std::vector<char>& light, const Rational& w) {
  Rational v = 0;
  std::map<int, Rational> top;
  for (const auto& p : pieces) {
    const Job& job = inst.jobs[p.job];
    if (light[p.job]) {
      if (p.hi > w) v += job.volume * (p.hi - max(p.lo, w)) / job.weight;
    } else {
      auto it = top.find(p.job);
      if (it == top.end() || p.hi > it->second) top[p.job] = p.hi;
    }
  }
  for (const auto& [j, c] : top)
    if (c > w) v += inst.jobs[j].volume;
  return v;
}

}  // namespace varispeed
