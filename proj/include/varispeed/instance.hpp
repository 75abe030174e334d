#pragma once

#include "varispeed/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace varispeed {

/// Raised when a computed result breaks one of the library's checked identities.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct InfeasibleBudget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  int id = 0;
  Rational volume;
  Rational weight;
  Rational release;
};

enum class InstanceKind { GivenSpeed, ContinuousEnergy, DiscreteEnergy };

std::string to_string(InstanceKind kind);
InstanceKind parse_instance_kind(const std::string& text);

/// Jobs are kept sorted by id, so index order coincides with id order.
struct Instance {
  std::vector<Job> jobs;
  InstanceKind kind = InstanceKind::GivenSpeed;

  std::size_t size() const { return jobs.size(); }
  Rational total_volume() const;
  Rational total_weight() const;
  bool has_releases() const;
};

/// Validates and sorts by id; throws std::invalid_argument on bad data.
Instance make_instance(std::vector<Job> jobs, InstanceKind kind = InstanceKind::GivenSpeed);

/// Permutations are vectors of job indices (positions in Instance::jobs).
bool is_permutation_of(const std::vector<int>& perm, std::size_t n);
std::vector<int> identity_order(std::size_t n);
std::vector<int> ids_of(const Instance& inst, const std::vector<int>& order);

/// Suffix weights W_j of each position: weight of the job and all later ones.
std::vector<Rational> suffix_weights(const Instance& inst, const std::vector<int>& order);

/// Smith's rule: nonincreasing w/v, zero-volume jobs first, ties by id.
std::vector<int> smith_order(const Instance& inst);

}  // namespace varispeed
