#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dialg/algebra.hpp"
#include "dialg/dialgebra.hpp"
#include "dialg/linop.hpp"

namespace dialg {

/// One linear constraint together with where it came from.
struct ConstraintRow {
  SparseVec coeffs;
  const char* identity = "";
  std::size_t i = 0;  // first basis argument
  std::size_t j = 0;  // second basis argument
  std::size_t m = 0;  // output coordinate
};

/// Linear system sum_u row_u x_u = 0, delivered in blocks so that rows can be
/// generated lazily (and in parallel) while elimination stays sequential.
///
/// When `op_dim` is nonzero the unknowns are the entries of an op_dim x op_dim
/// operator matrix, unknown index = row * op_dim + col.
struct ConstraintSystem {
  std::string tag;
  std::size_t op_dim = 0;
  std::size_t unknowns = 0;
  std::size_t block_count = 0;
  std::function<std::vector<ConstraintRow>(std::size_t)> block;

  static ConstraintSystem from_rows(std::size_t unknowns, std::vector<ConstraintRow> rows);
};

/// Incremental exact Gaussian elimination over Q. Rows are kept monic with
/// distinct leading columns; reduced_rows() returns the reduced row echelon form.
class Echelon {
 public:
  explicit Echelon(std::size_t columns) : columns_(columns), pivots_(columns) {}

  /// Reduces `row` against the current pivots and keeps it if independent.
  /// Returns true when the rank grew.
  bool insert(SparseVec row);

  /// Reduces `row` against the current pivots (leading entries only when
  /// `full` is false, every pivot column otherwise).
  [[nodiscard]] SparseVec reduce(SparseVec row, bool full) const;

  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] std::size_t columns() const { return columns_; }

  /// RREF rows in ascending pivot order.
  [[nodiscard]] std::vector<SparseVec> reduced_rows() const;

 private:
  std::size_t columns_;
  std::vector<std::optional<SparseVec>> pivots_;
  std::size_t rank_ = 0;
};

/// Basis of a linear subspace in reduced row echelon form.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;

  /// Span of `vectors` (any spanning set) inside Q^{ambient}. `op_dim` != 0
  /// marks the vectors as flattened op_dim x op_dim operators on space `tag`.
  static SubspaceBasis from_vectors(std::string tag, std::size_t op_dim, std::size_t ambient,
                                    const std::vector<SparseVec>& vectors);
  static SubspaceBasis from_ops(const std::string& tag, std::size_t op_dim, const std::vector<LinOp>& ops);

  [[nodiscard]] const std::string& tag() const { return tag_; }
  [[nodiscard]] std::size_t op_dim() const { return op_dim_; }
  [[nodiscard]] std::size_t ambient() const { return ambient_; }
  [[nodiscard]] std::size_t dimension() const { return rows_.size(); }
  [[nodiscard]] const std::vector<SparseVec>& vectors() const { return rows_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivot_cols_; }

  /// Basis vectors as operators. Throws ContractError when op_dim is 0.
  [[nodiscard]] std::vector<LinOp> basis_ops() const;
  [[nodiscard]] LinOp basis_op(std::size_t k) const;

  /// sum_k coeffs[k] * basis_k as an operator.
  [[nodiscard]] LinOp combination(const std::vector<Rational>& coeffs) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b);

 private:
  std::string tag_;
  std::size_t op_dim_ = 0;
  std::size_t ambient_ = 0;
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> pivot_cols_;
};

/// Kernel of the system, in RREF.
SubspaceBasis nullspace(const ConstraintSystem& system);

enum class DerivationKind { two_sided, left, right };

std::string_view to_string(DerivationKind k);
DerivationKind parse_derivation_kind(std::string_view s);

ConstraintSystem derivation_constraints(const Dialgebra& d);
ConstraintSystem diderivation_constraints(const Dialgebra& d);
ConstraintSystem algebra_derivation_constraints(const FiniteAlgebra& a, DerivationKind kind);

/// Der(D): operators that are derivations of both ⊢ and ⊣.
SubspaceBasis derivation_space(const Dialgebra& d);
/// Dider(D).
SubspaceBasis diderivation_space(const Dialgebra& d);
/// Der(A), LDer(A) or RDer(A).
SubspaceBasis algebra_derivation_space(const FiniteAlgebra& a, DerivationKind kind);

/// Basis of the center {z : za = az for all a}, as coordinate vectors.
std::vector<Vec> center_basis(const FiniteAlgebra& a);

struct SpanCertificate {
  bool contained = false;
  /// Coordinates with respect to the basis when contained.
  std::vector<Rational> coefficients;
  /// Otherwise a functional vanishing on the subspace but not on the operator,
  /// over the flattened operator entries.
  SparseVec separating_functional;
};

SpanCertificate span_contains(const SubspaceBasis& basis, const LinOp& op);

/// Mutual containment of two subspaces of the same space.
bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b);

/// Flattened row-major entries of an operator as a sparse vector.
SparseVec flatten(const LinOp& op);

}  // namespace dialg
