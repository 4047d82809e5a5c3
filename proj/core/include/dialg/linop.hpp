#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dialg/vec.hpp"

namespace dialg {

/// Exact linear map between tagged coordinate spaces, stored as a dense
/// codomain_dim x domain_dim matrix (column c = image of basis vector c).
class LinOp {
 public:
  LinOp() = default;
  LinOp(std::string domain_tag, std::string codomain_tag, std::size_t domain_dim, std::size_t codomain_dim);

  /// Zero endomorphism of the tagged space.
  static LinOp zero(const std::string& tag, std::size_t dim);
  static LinOp identity(const std::string& tag, std::size_t dim);
  /// Endomorphism whose row-major entries are `flat` (size dim*dim).
  static LinOp from_flat(const std::string& tag, std::size_t dim, std::span<const Rational> flat);

  [[nodiscard]] const std::string& domain_tag() const { return domain_tag_; }
  [[nodiscard]] const std::string& codomain_tag() const { return codomain_tag_; }
  [[nodiscard]] std::size_t domain_dim() const { return cols_; }
  [[nodiscard]] std::size_t codomain_dim() const { return rows_; }
  [[nodiscard]] bool is_endomorphism() const { return rows_ == cols_ && domain_tag_ == codomain_tag_; }

  [[nodiscard]] const Rational& at(std::size_t row, std::size_t col) const { return data_[row * cols_ + col]; }
  Rational& at(std::size_t row, std::size_t col) { return data_[row * cols_ + col]; }

  /// Row-major entries.
  [[nodiscard]] std::span<const Rational> flat() const { return data_; }

  [[nodiscard]] Vec column(std::size_t col) const;
  void set_column(std::size_t col, std::span<const Rational> values);
  void add_to_column(std::size_t col, std::span<const Rational> values);

  [[nodiscard]] Vec apply(std::span<const Rational> v) const;
  [[nodiscard]] bool is_zero() const;

  LinOp& operator+=(const LinOp& o);
  LinOp& operator-=(const LinOp& o);
  friend LinOp operator+(LinOp a, const LinOp& b) { return a += b; }
  friend LinOp operator-(LinOp a, const LinOp& b) { return a -= b; }
  friend LinOp operator*(const Rational& c, LinOp a);

  friend bool operator==(const LinOp&, const LinOp&) = default;

 private:
  void require_same_shape(const LinOp& o, const char* op) const;

  std::string domain_tag_;
  std::string codomain_tag_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

/// f ∘ g. Throws ContractError unless g's codomain is f's domain (tag and dim).
LinOp compose(const LinOp& f, const LinOp& g);

/// [f, g] = f∘g − g∘f for endomorphisms of the same space.
LinOp bracket(const LinOp& f, const LinOp& g);

}  // namespace dialg
