#pragma once

// Helpers shared by the test binaries. The oracles here deliberately avoid the
// library's own elimination and product code.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dialg/algebra.hpp"
#include "dialg/dialgebra.hpp"
#include "dialg/linop.hpp"
#include "dialg/rational.hpp"

namespace testing_support {

using dialg::LinOp;
using dialg::Rational;
using dialg::Vec;

/// Plain 2x2 matrix over Q, indexed like the E_ij basis of M2 (row-major).
struct Mat2 {
  std::array<Rational, 4> a{};

  static Mat2 unit(int r, int c) {
    Mat2 m;
    m.a[static_cast<std::size_t>((r - 1) * 2 + (c - 1))] = 1;
    return m;
  }
  static Mat2 from(const Vec& v) {
    Mat2 m;
    for (std::size_t i = 0; i < 4; ++i) m.a[i] = v.at(i);
    return m;
  }
  [[nodiscard]] Vec vec() const { return Vec(a.begin(), a.end()); }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 z;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        for (int k = 0; k < 2; ++k) z.a[r * 2 + c] += x.a[r * 2 + k] * y.a[k * 2 + c];
      }
    }
    return z;
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    Mat2 z;
    for (std::size_t i = 0; i < 4; ++i) z.a[i] = x.a[i] - y.a[i];
    return z;
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Rank by textbook dense Gaussian elimination.
inline std::size_t naive_rank(std::vector<Vec> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline Vec flat_of(const LinOp& op) { return Vec(op.flat().begin(), op.flat().end()); }

inline Rational small(std::mt19937_64& rng, int bound = 3) {
  return Rational(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound);
}

inline Vec random_vec(std::size_t n, std::mt19937_64& rng, int bound = 3) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(small(rng, bound));
  return v;
}

inline LinOp random_op(const std::string& tag, std::size_t n, std::mt19937_64& rng, int bound = 2) {
  LinOp op = LinOp::zero(tag, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) op.at(r, c) = small(rng, bound);
  }
  return op;
}

/// Index of a basis label, or throws.
template <class Space>
std::size_t index_of(const Space& s, const std::string& label) {
  const auto& l = s.basis_labels();
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] == label) return i;
  }
  throw std::out_of_range("no basis label " + label);
}

template <class Space>
Vec e(const Space& s, const std::string& label) {
  Vec v(s.dim());
  v[index_of(s, label)] = 1;
  return v;
}

/// The catalog algebras a KP dialgebra is usually built over.
inline std::vector<dialg::FiniteAlgebra> unital_catalog() {
  return {dialg::field_algebra(), dialg::truncated_poly(3), dialg::matrix_algebra(2), dialg::group_algebra_c2()};
}

}  // namespace testing_support
