#include "varispeed/ptas.hpp"

#include "varispeed/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace varispeed {

double WeightIntervalGrid::power(long e) const { return std::pow(base, static_cast<double>(e)); }

long WeightIntervalGrid::index_of(double x) const {
  if (!(x > 0)) throw std::invalid_argument("interval index needs a positive weight");
  long u = static_cast<long>(std::floor(std::log(x) / std::log(base))) + 1;
  while (x < lower(u)) --u;
  while (x >= lower(u + 1)) ++u;
  return u;
}

long WeightIntervalGrid::round_up_exponent(double x) const {
  if (!(x > 0)) throw std::invalid_argument("rounding needs a positive value");
  const double target = x * (1 - 1e-12);
  long e = static_cast<long>(std::ceil(std::log(x) / std::log(base)));
  while (power(e - 1) >= target) --e;
  while (power(e) < target) ++e;
  return e;
}

WeightIntervalGrid make_grid(double eps, double total_weight) {
  if (!(eps > 0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  WeightIntervalGrid g;
  g.eps = eps;
  g.base = 1 + eps;
  g.nu = total_weight > 0 ? std::max(0L, g.round_up_exponent(total_weight)) : 0;
  return g;
}

double Localization::class_weight(long v) const {
  auto it = classes.find(v);
  if (it == classes.end()) return 0.0;
  double s = 0.0;
  for (int j : it->second) s += rounded_weight(j);
  return s;
}

Localization localize(const Instance& inst, double eps) {
  std::vector<double> v, w;
  for (const auto& j : inst.jobs) {
    v.push_back(j.volume.get_d());
    w.push_back(j.weight.get_d());
  }
  return localize(v, w, eps);
}

Localization localize(const std::vector<double>& volume, const std::vector<double>& weight, double eps) {
  const std::size_t n = volume.size();
  Localization loc;
  loc.grid = make_grid(eps, 0.0);
  loc.volume = volume;
  loc.weight = weight;
  loc.weight_exp.assign(n, 0);
  loc.release_exp.assign(n, 0);
  loc.deadline_exp.assign(n, 0);
  loc.light.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (volume[j] > 0 && weight[j] > 0) loc.jobs.push_back(static_cast<int>(j));
  if (loc.jobs.empty()) return loc;

  loc.scale = weight[loc.jobs[0]];
  for (int j : loc.jobs) loc.scale = std::min(loc.scale, weight[j]);
  double total = 0.0;
  for (int j : loc.jobs) {
    loc.weight_exp[j] = std::max(0L, loc.grid.round_up_exponent(weight[j] / loc.scale));
    total += loc.grid.power(loc.weight_exp[j]);
  }
  loc.grid = make_grid(eps, total);
  const auto& g = loc.grid;
  for (int j : loc.jobs) loc.release_exp[j] = g.round_up_exponent(eps * loc.rounded_weight(j));

  const double e2 = eps * eps, e3 = e2 * eps;
  const double tol = 1 + 1e-12;
  long v = loc.release_exp[loc.jobs[0]] + 1, vmax = v;
  for (int j : loc.jobs) {
    v = std::min(v, loc.release_exp[j] + 1);
    vmax = std::max(vmax, loc.release_exp[j] + 1);
  }
  for (; v <= vmax; ++v) {
    const double lo = g.lower(v);
    std::vector<int> light;
    std::map<long, std::vector<int>> heavy;
    for (int j : loc.jobs) {
      if (loc.release_exp[j] != v - 1) continue;
      if (loc.rounded_weight(j) <= e3 * lo * tol)
        light.push_back(j);
      else
        heavy[loc.weight_exp[j]].push_back(j);
    }
    bool promoted = false;
    auto promote = [&](std::vector<int>& group, std::vector<int>::iterator it) {
      loc.release_exp[*it] = v;
      group.erase(it);
      ++loc.promotions;
      promoted = true;
    };

    double lw = 0.0;
    for (int j : light) lw += loc.rounded_weight(j);
    while (!light.empty() && lw > (1 + e2) * eps * lo * tol) {
      auto it = std::min_element(light.begin(), light.end(), [&](int a, int b) {
        double ra = volume[a] / loc.rounded_weight(a), rb = volume[b] / loc.rounded_weight(b);
        if (ra != rb) return ra < rb;
        return a < b;
      });
      lw -= loc.rounded_weight(*it);
      promote(light, it);
    }
    for (auto& [e, group] : heavy) {
      const double we = g.power(e);
      while (group.size() > 1 && we * group.size() > (eps * lo + we) * tol) {
        auto it = std::min_element(group.begin(), group.end(), [&](int a, int b) {
          if (volume[a] != volume[b]) return volume[a] < volume[b];
          return a < b;
        });
        promote(group, it);
      }
    }
    if (promoted) vmax = std::max(vmax, v + 1);
  }

  for (int j : loc.jobs) {
    loc.classes[loc.release_exp[j] + 1].push_back(j);
    loc.light[j] = loc.rounded_weight(j) <= e3 * g.power(loc.release_exp[j]) * tol;
  }
  // smallest s with eps^2 b^(v+s-3) >= w(J_v) for every class
  loc.s = 1;
  for (const auto& [cls, members] : loc.classes) {
    double need = loc.class_weight(cls) / (e2 * g.power(cls - 3));
    loc.s = std::max(loc.s, g.round_up_exponent(need));
  }
  for (int j : loc.jobs) loc.deadline_exp[j] = loc.release_exp[j] + loc.s;
  return loc;
}

std::string CompactFamilies::fingerprint() const {
  std::ostringstream os;
  os << "eps=" << grid.eps << ";u=" << u_begin << ".." << u_end;
  for (const auto& c : classes) {
    os << ";v" << c.release_class << (c.light ? "L" : "H") << c.weight_exp << "[" << c.free_from << ","
       << c.full_from << "]";
    for (const auto& unit : c.units) {
      os << "(";
      for (int j : unit) os << j << ' ';
      os << ")";
    }
  }
  return os.str();
}

std::vector<std::vector<int>> CompactFamilies::class_options(std::size_t c) const {
  const auto& cls = classes.at(c);
  std::vector<std::vector<int>> out;
  for (std::size_t k = 0; k <= cls.units.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t i = k; i < cls.units.size(); ++i) rest.insert(rest.end(), cls.units[i].begin(), cls.units[i].end());
    std::sort(rest.begin(), rest.end());
    out.push_back(rest);
  }
  return out;
}

double CompactFamilies::family_size(long u) const {
  double size = 1.0;
  for (const auto& c : classes) {
    if (u < c.free_from || u >= c.full_from) continue;
    size *= static_cast<double>(c.units.size() + 1);
  }
  return size;
}

namespace {

void finish_class(FamilyClass& c, const Localization& loc) {
  for (const auto& unit : c.units) {
    double w = 0.0, v = 0.0;
    for (int j : unit) {
      w += loc.rounded_weight(j);
      v += loc.volume[j];
    }
    c.unit_weight.push_back(w);
    c.unit_volume.push_back(v);
  }
}

}  // namespace

CompactFamilies build_families(const Localization& loc) {
  CompactFamilies fam;
  fam.grid = loc.grid;
  if (loc.jobs.empty()) return fam;
  const double e3 = loc.grid.eps * loc.grid.eps * loc.grid.eps;
  for (const auto& [v, members] : loc.classes) {
    std::vector<int> light;
    std::map<long, std::vector<int>> heavy;
    for (int j : members) {
      if (loc.light[j])
        light.push_back(j);
      else
        heavy[loc.weight_exp[j]].push_back(j);
    }
    if (!light.empty()) {
      // Reverse Smith order: largest v/w enters S first
      std::sort(light.begin(), light.end(), [&](int a, int b) {
        double ra = loc.volume[a] / loc.rounded_weight(a), rb = loc.volume[b] / loc.rounded_weight(b);
        if (ra != rb) return ra > rb;
        return a < b;
      });
      FamilyClass c;
      c.release_class = v;
      c.light = true;
      const double floor_w = e3 * loc.grid.lower(v) * (1 - 1e-12);
      std::vector<int> cur;
      double cw = 0.0;
      for (int j : light) {
        cur.push_back(j);
        cw += loc.rounded_weight(j);
        if (cw >= floor_w) {
          c.units.push_back(cur);
          cur.clear();
          cw = 0.0;
        }
      }
      if (!cur.empty()) c.units.push_back(cur);
      finish_class(c, loc);
      fam.classes.push_back(std::move(c));
    }
    for (auto& [e, group] : heavy) {
      // S holds the largest volumes, R the volume-sorted prefix
      std::sort(group.begin(), group.end(), [&](int a, int b) {
        if (loc.volume[a] != loc.volume[b]) return loc.volume[a] > loc.volume[b];
        return a > b;
      });
      FamilyClass c;
      c.release_class = v;
      c.weight_exp = e;
      for (int j : group) c.units.push_back({j});
      finish_class(c, loc);
      fam.classes.push_back(std::move(c));
    }
  }
  fam.u_begin = fam.classes.front().release_class;
  fam.u_end = loc.grid.nu;
  for (auto& c : fam.classes) {
    c.free_from = c.release_class;
    c.full_from = c.release_class + loc.s - 1;
    fam.u_begin = std::min(fam.u_begin, c.free_from);
    fam.u_end = std::max(fam.u_end, c.full_from);
  }
  return fam;
}

CompactFamilies exhaustive_families(const Localization& loc) {
  CompactFamilies fam;
  fam.grid = loc.grid;
  if (loc.jobs.empty()) return fam;
  fam.u_begin = loc.weight_exp[loc.jobs[0]];
  for (int j : loc.jobs) fam.u_begin = std::min(fam.u_begin, loc.weight_exp[j]);
  fam.u_end = std::max(loc.grid.nu, fam.u_begin);
  for (int j : loc.jobs) {
    FamilyClass c;
    c.release_class = loc.release_exp[j] + 1;
    c.weight_exp = loc.weight_exp[j];
    c.units.push_back({j});
    finish_class(c, loc);
    c.free_from = fam.u_begin;
    c.full_from = fam.u_end;
    fam.classes.push_back(std::move(c));
  }
  return fam;
}

namespace {

struct Node {
  std::vector<std::uint16_t> k;
  double T = 0.0;
  double weight = 0.0, volume = 0.0;
  int parent = -1;
};

std::string key_of(const std::vector<std::uint16_t>& k) {
  return std::string(reinterpret_cast<const char*>(k.data()), k.size() * sizeof(std::uint16_t));
}

/// Orders jobs by nonincreasing w/v, ties by index.
void smith_sort(std::vector<int>& jobs, const std::vector<double>& volume, const std::vector<double>& weight) {
  std::sort(jobs.begin(), jobs.end(), [&](int a, int b) {
    double lhs = weight[a] * volume[b], rhs = weight[b] * volume[a];
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
}

}  // namespace

namespace {

/// Admissible count vectors of one layer in lexicographic order; stops past `limit`.
bool enumerate_lattice(const std::vector<int>& lo, const std::vector<int>& hi,
                       const std::vector<std::vector<double>>& pw, double cap, std::size_t limit,
                       std::vector<std::vector<std::uint16_t>>& out) {
  const std::size_t C = lo.size();
  std::vector<double> min_rest(C + 1, 0.0);
  for (std::size_t c = C; c-- > 0;) min_rest[c] = min_rest[c + 1] + pw[c][lo[c]];
  if (min_rest[0] > cap) return true;
  std::vector<std::uint16_t> k(C);
  bool overflow = false;
  auto dfs = [&](auto&& self, std::size_t c, double w) -> void {
    if (overflow) return;
    if (c == C) {
      if (out.size() >= limit) {
        overflow = true;
        return;
      }
      out.push_back(k);
      return;
    }
    for (int cnt = lo[c]; cnt <= hi[c]; ++cnt) {
      double w2 = w + pw[c][cnt];
      if (w2 + min_rest[c + 1] > cap) break;
      k[c] = static_cast<std::uint16_t>(cnt);
      self(self, c + 1, w2);
    }
  };
  dfs(dfs, 0, 0.0);
  return !overflow;
}

}  // namespace

bool admissible_sets(const CompactFamilies& fam, long u, std::size_t limit,
                     std::vector<std::vector<std::uint16_t>>& out) {
  const std::size_t C = fam.classes.size();
  std::vector<int> lo(C), hi(C);
  std::vector<std::vector<double>> pw(C);
  for (std::size_t c = 0; c < C; ++c) {
    const auto& cls = fam.classes[c];
    int units = static_cast<int>(cls.units.size());
    lo[c] = u >= cls.full_from ? units : 0;
    hi[c] = u >= cls.free_from ? units : 0;
    pw[c].assign(cls.units.size() + 1, 0.0);
    for (std::size_t i = 0; i < cls.units.size(); ++i) pw[c][i + 1] = pw[c][i] + cls.unit_weight[i];
  }
  return enumerate_lattice(lo, hi, pw, fam.grid.power(u) * (1 + 1e-12), limit, out);
}

DpOutcome run_weight_dp(const CompactFamilies& fam, const Localization& loc,
                        const std::function<double(double)>& f, double V, const DpLimits& limits) {
  DpOutcome out;
  out.job_interval.assign(loc.volume.size(), -1);
  const std::size_t C = fam.classes.size();
  if (C == 0) return out;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> pw(C), pv(C);  // prefix weight / volume per class
  for (std::size_t c = 0; c < C; ++c) {
    const auto& cls = fam.classes[c];
    pw[c].assign(cls.units.size() + 1, 0.0);
    pv[c].assign(cls.units.size() + 1, 0.0);
    for (std::size_t i = 0; i < cls.units.size(); ++i) {
      pw[c][i + 1] = pw[c][i] + cls.unit_weight[i];
      pv[c][i + 1] = pv[c][i] + cls.unit_volume[i];
    }
  }
  auto measure = [&](Node& nd) {
    nd.weight = nd.volume = 0.0;
    for (std::size_t c = 0; c < C; ++c) {
      nd.weight += pw[c][nd.k[c]];
      nd.volume += pv[c][nd.k[c]];
    }
  };

  // unit order for the fallback successor chains: largest v/w enters S first
  std::vector<std::pair<int, int>> chain_units;  // (class, unit)
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t t = 0; t < fam.classes[c].units.size(); ++t) chain_units.emplace_back(static_cast<int>(c), static_cast<int>(t));
  auto ratio = [&](const std::pair<int, int>& x) {
    return fam.classes[x.first].unit_volume[x.second] / fam.classes[x.first].unit_weight[x.second];
  };
  std::vector<std::vector<std::pair<int, int>>> chains(3, chain_units);
  std::stable_sort(chains[0].begin(), chains[0].end(), [&](const auto& a, const auto& b) { return ratio(a) > ratio(b); });
  std::stable_sort(chains[1].begin(), chains[1].end(), [&](const auto& a, const auto& b) {
    return fam.classes[a.first].unit_volume[a.second] > fam.classes[b.first].unit_volume[b.second];
  });
  std::stable_sort(chains[2].begin(), chains[2].end(), [&](const auto& a, const auto& b) {
    return fam.classes[a.first].unit_weight[a.second] < fam.classes[b.first].unit_weight[b.second];
  });

  std::vector<std::vector<Node>> layers;
  layers.push_back({Node{std::vector<std::uint16_t>(C, 0), 0.0, 0.0, 0.0, -1}});
  std::vector<int> lo(C), hi(C);
  const std::size_t L_max = std::max<std::size_t>(1, limits.lattice_limit);
  const std::size_t B = std::max<std::size_t>(1, limits.beam_width);

  for (long u = fam.u_begin; u <= fam.u_end; ++u) {
    const double bu = fam.grid.power(u);
    const double cap = bu * (1 + 1e-12);
    for (std::size_t c = 0; c < C; ++c) {
      const auto& cls = fam.classes[c];
      int units = static_cast<int>(cls.units.size());
      lo[c] = u >= cls.full_from ? units : 0;
      hi[c] = u >= cls.free_from ? units : 0;
    }
    const auto& prev = layers.back();
    std::vector<Node> next;
    std::unordered_map<std::string, int> index;

    std::vector<std::vector<std::uint16_t>> lattice;
    if (enumerate_lattice(lo, hi, pw, cap, L_max, lattice)) {
      // T(u,S) = min over S' <= S of [T(u-1,S') + b^u f(V - v(S'))] - b^u f(V - v(S))
      std::vector<double> H(lattice.size(), inf);
      std::vector<int> parent(lattice.size(), -1);
      for (std::size_t i = 0; i < lattice.size(); ++i) index.emplace(key_of(lattice[i]), static_cast<int>(i));
      for (std::size_t pi = 0; pi < prev.size(); ++pi) {
        const Node& p = prev[pi];
        std::vector<std::uint16_t> proj(C);
        bool ok = true;
        for (std::size_t c = 0; c < C; ++c) {
          int v = std::max<int>(p.k[c], lo[c]);
          ok = ok && v <= hi[c];
          proj[c] = static_cast<std::uint16_t>(v);
        }
        if (!ok) continue;
        auto it = index.find(key_of(proj));
        if (it == index.end()) continue;
        double G = p.T + bu * f(std::max(0.0, V - p.volume));
        if (G < H[it->second]) {
          H[it->second] = G;
          parent[it->second] = static_cast<int>(pi);
        }
      }
      std::vector<std::uint16_t> down(C);
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        for (std::size_t c = 0; c < C; ++c) {
          if (lattice[i][c] <= lo[c]) continue;
          down = lattice[i];
          --down[c];
          int j = index.at(key_of(down));
          if (H[j] < H[i]) {
            H[i] = H[j];
            parent[i] = parent[j];
          }
        }
      }
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        if (H[i] == inf) continue;
        Node nd{lattice[i], 0.0, 0.0, 0.0, parent[i]};
        measure(nd);
        nd.T = H[i] - bu * f(std::max(0.0, V - nd.volume));
        next.push_back(std::move(nd));
      }
    } else {
      // layer too large for the exact lattice: chains of plausible successors, then a beam
      out.truncated = true;
      auto relax = [&](Node&& nd) {
        auto key = key_of(nd.k);
        auto it = index.find(key);
        if (it == index.end()) {
          index.emplace(std::move(key), static_cast<int>(next.size()));
          next.push_back(std::move(nd));
        } else if (nd.T < next[it->second].T) {
          next[it->second] = std::move(nd);
        }
      };
      for (std::size_t pi = 0; pi < prev.size(); ++pi) {
        const Node& p = prev[pi];
        Node base{p.k, 0.0, 0.0, 0.0, static_cast<int>(pi)};
        bool ok = true;
        for (std::size_t c = 0; c < C; ++c) {
          int v = std::max<int>(p.k[c], lo[c]);
          ok = ok && v <= hi[c];
          base.k[c] = static_cast<std::uint16_t>(v);
        }
        if (!ok) continue;
        measure(base);
        if (base.weight > cap) continue;
        const double G = p.T + bu * f(std::max(0.0, V - p.volume));
        auto emit = [&](const Node& nd) {
          Node copy = nd;
          copy.T = G - bu * f(std::max(0.0, V - nd.volume));
          relax(std::move(copy));
        };
        emit(base);
        for (std::size_t c = 0; c < C; ++c) {
          if (base.k[c] >= hi[c]) continue;
          Node one = base;
          ++one.k[c];
          one.weight += fam.classes[c].unit_weight[base.k[c]];
          one.volume += fam.classes[c].unit_volume[base.k[c]];
          if (one.weight <= cap) emit(one);
        }
        for (const auto& chain : chains) {
          Node cur = base;
          for (const auto& [c, t] : chain) {
            if (t != cur.k[c] || cur.k[c] >= hi[c]) continue;
            double w2 = cur.weight + fam.classes[c].unit_weight[t];
            if (w2 > cap) continue;
            ++cur.k[c];
            cur.weight = w2;
            cur.volume += fam.classes[c].unit_volume[t];
            emit(cur);
          }
        }
      }
    }
    if (next.empty()) throw InvariantViolation("weight-space DP has no admissible completed set");

    const std::size_t M = out.truncated ? B : L_max;
    if (next.size() > M) {
      // keep the states whose cost plus a Smith completion of the rest, charged on the grid, is smallest
      out.truncated = true;
      std::vector<std::pair<double, int>> score;
      for (std::size_t i = 0; i < next.size(); ++i) {
        const Node& nd = next[i];
        std::vector<int> rest;
        for (std::size_t c = 0; c < C; ++c)
          for (std::size_t t = nd.k[c]; t < fam.classes[c].units.size(); ++t)
            rest.insert(rest.end(), fam.classes[c].units[t].begin(), fam.classes[c].units[t].end());
        smith_sort(rest, loc.volume, loc.weight);
        double above = 0.0;
        for (int j : rest) above += loc.rounded_weight(j);
        double done = 0.0, prev_t = 0.0, est = nd.T;
        for (int j : rest) {
          done += loc.volume[j];
          double t = f(done);
          est += (t - prev_t) * fam.grid.power(fam.grid.round_up_exponent(nd.weight + above));
          above -= loc.rounded_weight(j);
          prev_t = t;
        }
        score.emplace_back(est, static_cast<int>(i));
      }
      std::nth_element(score.begin(), score.begin() + M, score.end());
      score.resize(M);
      std::sort(score.begin(), score.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
      std::vector<Node> kept;
      kept.reserve(score.size());
      for (const auto& s : score) kept.push_back(std::move(next[s.second]));
      next = std::move(kept);
    }
    out.max_layer_states = std::max(out.max_layer_states, next.size());
    out.total_states += next.size();
    layers.push_back(std::move(next));
  }

  const auto& last = layers.back();
  int best = -1;
  for (std::size_t i = 0; i < last.size(); ++i) {
    bool full = true;
    for (std::size_t c = 0; c < C; ++c) full = full && last[i].k[c] == fam.classes[c].units.size();
    if (full && (best < 0 || last[i].T < last[best].T)) best = static_cast<int>(i);
  }
  if (best < 0) throw InvariantViolation("weight-space DP never completes every job");
  out.value = last[best].T;
  out.layers = layers.size() - 1;

  std::vector<std::vector<int>> blocks;
  int cur = best;
  for (std::size_t L = layers.size() - 1; L > 0; --L) {
    const Node& nd = layers[L][cur];
    const Node& par = layers[L - 1][nd.parent];
    std::vector<int> block;
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t t = par.k[c]; t < nd.k[c]; ++t)
        block.insert(block.end(), fam.classes[c].units[t].begin(), fam.classes[c].units[t].end());
    long u = fam.u_begin + static_cast<long>(L) - 1;
    for (int j : block) out.job_interval[j] = u;
    smith_sort(block, loc.volume, loc.weight);
    blocks.push_back(std::move(block));
    cur = nd.parent;
  }
  // blocks were collected from the top interval down, which is time order
  for (const auto& b : blocks) out.time_order.insert(out.time_order.end(), b.begin(), b.end());
  return out;
}

PtasResult ptas_with_oracle(const std::vector<double>& volume, const std::vector<double>& weight,
                            const std::function<double(double)>& f, const PtasOptions& opt) {
  const std::size_t n = volume.size();
  PtasResult res;
  Localization loc = localize(volume, weight, opt.eps);
  res.s = loc.s;
  res.nu = loc.grid.nu;

  std::vector<int> head, tail;
  for (std::size_t j = 0; j < n; ++j) {
    if (volume[j] == 0)
      head.push_back(static_cast<int>(j));
    else if (weight[j] == 0)
      tail.push_back(static_cast<int>(j));
  }
  res.order = head;
  if (!loc.jobs.empty()) {
    CompactFamilies fam = opt.exhaustive ? exhaustive_families(loc) : build_families(loc);
    res.families_fingerprint = fam.fingerprint();
    double V = 0.0;
    for (int j : loc.jobs) V += volume[j];
    res.dp = run_weight_dp(fam, loc, f, V, opt.limits);
    res.dp_bound = res.dp.value * loc.scale;
    res.order.insert(res.order.end(), res.dp.time_order.begin(), res.dp.time_order.end());
  } else {
    res.dp.job_interval.assign(n, -1);
  }
  res.order.insert(res.order.end(), tail.begin(), tail.end());

  double done = 0.0;
  for (int j : res.order) {
    done += volume[j];
    res.cost_estimate += weight[j] * f(done);
  }
  return res;
}

PtasResult solve_given_speed(const Instance& inst, const PiecewiseConstantSpeed& speed, const PtasOptions& opt) {
  speed.oracle_time(inst.total_volume());  // capacity check
  std::vector<double> v, w;
  for (const auto& j : inst.jobs) {
    v.push_back(j.volume.get_d());
    w.push_back(j.weight.get_d());
  }
  PtasResult res = ptas_with_oracle(v, w, [&](double x) { return speed.oracle_time(x); }, opt);
  res.schedule = tight_weight_schedule(inst, res.order);
  res.cost = order_cost(inst, speed, res.order);
  return res;
}

}  // namespace varispeed
