#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dialg/vec.hpp"

namespace dialg {

/// Structure constants of a bilinear product on a dim-dimensional space:
/// e_i * e_j = sum_k c_{ij}^k e_k. Each product is kept as a sparse vector.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(std::size_t dim) : dim_(dim), table_(dim * dim) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }

  /// e_i * e_j, sorted by index, no zero entries.
  [[nodiscard]] const SparseVec& product(std::size_t i, std::size_t j) const {
    return table_[i * dim_ + j];
  }

  [[nodiscard]] Rational coeff(std::size_t i, std::size_t j, std::size_t k) const;

  void add(std::size_t i, std::size_t j, std::size_t k, const Rational& c);
  void set_product(std::size_t i, std::size_t j, const Vec& value);

  /// Bilinear extension to dense vectors.
  [[nodiscard]] Vec multiply(std::span<const Rational> v, std::span<const Rational> w) const;
  /// e_i * w
  [[nodiscard]] Vec left_basis(std::size_t i, std::span<const Rational> w) const;
  /// v * e_j
  [[nodiscard]] Vec right_basis(std::span<const Rational> v, std::size_t j) const;

  /// Same tensor with arguments swapped: (i, j) -> e_j * e_i.
  [[nodiscard]] StructureTensor reversed() const;

  [[nodiscard]] std::size_t nonzeros() const;

  friend bool operator==(const StructureTensor& a, const StructureTensor& b);

 private:
  void check(std::size_t i, std::size_t j) const;

  std::size_t dim_ = 0;
  std::vector<SparseVec> table_;
};

}  // namespace dialg
