#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dialg/vec.hpp"

namespace dialg {

/// A single failed instance of an identity on basis elements.
struct Violation {
  std::string identity;
  std::vector<std::size_t> indices;  // basis indices of the arguments
  SparseVec discrepancy;             // lhs - rhs
};

/// Outcome of an exhaustive identity check.
///
/// `violation_count` is the total number of failing instances; `witnesses`
/// holds at most `witness_limit` of them in ascending argument order.
struct Report {
  static constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

  std::string check;
  std::size_t instances_checked = 0;
  std::size_t violation_count = 0;
  std::size_t witness_limit = kUnlimited;
  std::vector<Violation> witnesses;
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const { return violation_count == 0; }

  void add(Violation v) {
    ++violation_count;
    if (witnesses.size() < witness_limit) witnesses.push_back(std::move(v));
  }

  /// Appends another report's findings (used when one check runs several identities).
  void merge(const Report& other);
};

}  // namespace dialg
