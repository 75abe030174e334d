#include "varispeed/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace varispeed {

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::GivenSpeed: return "given-speed";
    case InstanceKind::ContinuousEnergy: return "continuous-energy";
    case InstanceKind::DiscreteEnergy: return "discrete-energy";
  }
  return "given-speed";
}

InstanceKind parse_instance_kind(const std::string& text) {
  if (text == "given-speed") return InstanceKind::GivenSpeed;
  if (text == "continuous-energy") return InstanceKind::ContinuousEnergy;
  if (text == "discrete-energy") return InstanceKind::DiscreteEnergy;
  throw std::invalid_argument("unknown instance kind '" + text + "'");
}

Rational Instance::total_volume() const {
  Rational s = 0;
  for (const auto& j : jobs) s += j.volume;
  return s;
}

Rational Instance::total_weight() const {
  Rational s = 0;
  for (const auto& j : jobs) s += j.weight;
  return s;
}

bool Instance::has_releases() const {
  return std::any_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.release != 0; });
}

Instance make_instance(std::vector<Job> jobs, InstanceKind kind) {
  if (jobs.empty()) throw std::invalid_argument("instance has no jobs");
  std::set<int> ids;
  for (auto& j : jobs) {
    j.volume.canonicalize();
    j.weight.canonicalize();
    j.release.canonicalize();
    if (j.volume < 0 || j.weight < 0 || j.release < 0)
      throw std::invalid_argument("job " + std::to_string(j.id) + " has a negative field");
    if (!ids.insert(j.id).second) throw std::invalid_argument("duplicate job id " + std::to_string(j.id));
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
  Instance inst{std::move(jobs), kind};
  if (kind == InstanceKind::GivenSpeed && inst.has_releases())
    throw std::invalid_argument("given-speed instances cannot carry release dates");
  return inst;
}

bool is_permutation_of(const std::vector<int>& perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (int i : perm) {
    if (i < 0 || static_cast<std::size_t>(i) >= n || seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

std::vector<int> identity_order(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> ids_of(const Instance& inst, const std::vector<int>& order) {
  std::vector<int> out;
  out.reserve(order.size());
  for (int i : order) out.push_back(inst.jobs[i].id);
  return out;
}

std::vector<Rational> suffix_weights(const Instance& inst, const std::vector<int>& order) {
  std::vector<Rational> W(order.size());
  Rational acc = 0;
  for (std::size_t k = order.size(); k-- > 0;) {
    acc += inst.jobs[order[k]].weight;
    W[k] = acc;
  }
  return W;
}

std::vector<int> smith_order(const Instance& inst) {
  auto order = identity_order(inst.size());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Job& x = inst.jobs[a];
    const Job& y = inst.jobs[b];
    // w_a / v_a > w_b / v_b, with zero volume as +infinity
    if (x.volume == 0 || y.volume == 0) {
      if (x.volume == 0 && y.volume == 0) return false;
      return x.volume == 0;
    }
    return x.weight * y.volume > y.weight * x.volume;
  });
  return order;
}

}  // namespace varispeed
