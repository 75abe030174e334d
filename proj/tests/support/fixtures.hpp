#pragma once

#include "varispeed/instance.hpp"
#include "varispeed/speed.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace varispeed::testing {

inline Instance jobs_vw(const std::vector<std::pair<long, long>>& vw, InstanceKind kind = InstanceKind::GivenSpeed) {
  std::vector<Job> jobs;
  int id = 1;
  for (auto [v, w] : vw) jobs.push_back(Job{id++, Rational(v), Rational(w), Rational(0)});
  return make_instance(std::move(jobs), kind);
}

/// Speed 2 on [0,5), speed 1 afterwards.
inline PiecewiseConstantSpeed two_step_speed() {
  return PiecewiseConstantSpeed({Rational(0), Rational(5)}, {Rational(2), Rational(1)});
}

/// Calls f on every permutation of 0..n-1.
template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace varispeed::testing
