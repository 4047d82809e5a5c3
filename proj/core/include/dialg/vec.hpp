#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dialg/rational.hpp"

namespace dialg {

/// Dense coordinate vector over Q.
using Vec = std::vector<Rational>;

/// One nonzero coefficient of a sparse vector.
struct Term {
  std::size_t index;
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

using SparseVec = std::vector<Term>;

inline Vec zero_vec(std::size_t n) { return Vec(n); }

inline Vec basis_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = Rational(1);
  return v;
}

inline bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

/// y += c * x
void axpy(Vec& y, const Rational& c, std::span<const Rational> x);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scaled(const Rational& c, std::span<const Rational> v);

SparseVec to_sparse(std::span<const Rational> v);
Vec to_dense(const SparseVec& v, std::size_t n);

}  // namespace dialg
