#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialg/report.hpp"
#include "dialg/structure.hpp"

namespace dialg {

enum class Flavor { associative, left_perm, right_perm };

enum class Side { left, right };

std::string_view to_string(Flavor f);
Flavor parse_flavor(std::string_view s);

/// Finite-dimensional algebra over Q given by structure constants on a
/// labeled basis. The optional unit is two-sided.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, Flavor flavor, std::vector<std::string> basis_labels,
                StructureTensor structure, std::optional<Vec> unit = std::nullopt);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] Flavor flavor() const { return flavor_; }
  [[nodiscard]] std::size_t dim() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& basis_labels() const { return labels_; }
  [[nodiscard]] const StructureTensor& structure() const { return structure_; }
  [[nodiscard]] const std::optional<Vec>& unit() const { return unit_; }

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  std::string name_;
  Flavor flavor_;
  std::vector<std::string> labels_;
  StructureTensor structure_;
  std::optional<Vec> unit_;
};

/// sum_ij v_i w_j (e_i e_j). Throws ContractError on length mismatch.
Vec algebra_mul(const FiniteAlgebra& a, std::span<const Rational> v, std::span<const Rational> w);

/// (e_i e_j) e_l == e_i (e_j e_l) for every basis triple; lists every failure.
Report validate_associative(const FiniteAlgebra& a);

/// Left: (xy)z == (yx)z. Right: x(yz) == x(zy). Exhaustive over basis triples.
Report validate_perm(const FiniteAlgebra& a, Side side);

/// Unit laws u e_j == e_j == e_j u. Empty report when the algebra has no unit.
Report check_unit(const FiniteAlgebra& a);

/// Runs the validators implied by the algebra's flavor plus the unit check.
Report validate_flavor(const FiniteAlgebra& a);

// Catalog ------------------------------------------------------------------

/// k[x]/(x^{N+1}) with x^i o x^j = [i == 0] x^j. 1 is only a left unit, so no unit is set.
FiniteAlgebra perm_quotient(std::size_t n);

/// k[t]/(t^n), unital, commutative. Labels use `var`.
FiniteAlgebra truncated_poly(std::size_t n, const std::string& var = "t");

/// Full matrix algebra M_n(Q) on matrix units E_ij (row-major order).
FiniteAlgebra matrix_algebra(std::size_t n);

/// k[C_2] on the basis {1, g}.
FiniteAlgebra group_algebra_c2();

/// The ground field as a 1-dimensional algebra.
FiniteAlgebra field_algebra();

/// A (x) B with (a(x)f)(b(x)g) = ab (x) fg. Basis index = i * dim B + j.
FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Perm algebra on k[x]/(x^{N1+1}) (x) k[x]/(x^{N2+1}) with
/// (P(x)f)(Q(x)g) = P(0)Q (x) fg. Basis index = i1 * (N2+1) + i2.
FiniteAlgebra perm_window(std::size_t n1, std::size_t n2);

/// Looks up a catalog algebra by name: "Q", "M<n>", "T<n>" (k[t]/(t^n)), "C2", "perm<N>".
FiniteAlgebra catalog_algebra(std::string_view name);

}  // namespace dialg
