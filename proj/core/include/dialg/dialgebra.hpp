#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dialg/algebra.hpp"

namespace dialg {

enum class Product { vdash, dashv };  // ⊢ and ⊣

/// Truncation window of the perm factor k[x]/(x^{N1+1}) (x) k[x]/(x^{N2+1}).
/// A missing N2 means the single-slot algebra P0 = k[x]/(x^{N1+1}).
struct Window {
  std::size_t n1 = 0;
  std::optional<std::size_t> n2;

  [[nodiscard]] std::size_t slot2_dim() const { return n2.value_or(0) + 1; }
  [[nodiscard]] std::size_t perm_dim() const { return (n1 + 1) * slot2_dim(); }
  [[nodiscard]] std::size_t perm_index(std::size_t i1, std::size_t i2) const { return i1 * slot2_dim() + i2; }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Factors a KP dialgebra was built from.
struct Provenance {
  FiniteAlgebra perm;
  FiniteAlgebra algebra;
  std::optional<Window> window;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Finite-dimensional space with two bilinear products ⊢ (left_prod) and ⊣ (right_prod).
class Dialgebra {
 public:
  Dialgebra(std::string name, std::vector<std::string> basis_labels, StructureTensor left_prod,
            StructureTensor right_prod, std::optional<Provenance> provenance = std::nullopt);

  /// ⊢ = ⊣ = the product of `a`.
  static Dialgebra from_associative(const FiniteAlgebra& a);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t dim() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& basis_labels() const { return labels_; }
  [[nodiscard]] const StructureTensor& left_prod() const { return left_; }
  [[nodiscard]] const StructureTensor& right_prod() const { return right_; }
  [[nodiscard]] const StructureTensor& prod(Product p) const { return p == Product::vdash ? left_ : right_; }
  [[nodiscard]] const std::optional<Provenance>& provenance() const { return provenance_; }

  [[nodiscard]] Vec vdash(std::span<const Rational> x, std::span<const Rational> y) const {
    return left_.multiply(x, y);
  }
  [[nodiscard]] Vec dashv(std::span<const Rational> x, std::span<const Rational> y) const {
    return right_.multiply(x, y);
  }

  /// Index of p (x) u_k for KP dialgebras. Throws ContractError without provenance.
  [[nodiscard]] std::size_t index(std::size_t perm_idx, std::size_t alg_idx) const;

  /// p (x) a as a coordinate vector (KP dialgebras only).
  [[nodiscard]] Vec pure_tensor(std::span<const Rational> p, std::span<const Rational> a) const;

  friend bool operator==(const Dialgebra&, const Dialgebra&) = default;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  StructureTensor left_;
  StructureTensor right_;
  std::optional<Provenance> provenance_;
};

/// (p(x)a) ⊢ (q(x)b) = p∘q (x) ab, (p(x)a) ⊣ (q(x)b) = q∘p (x) ab.
/// Refuses (RejectedInput) when P is not left perm or A is not unital associative.
Dialgebra kp_dialgebra(const FiniteAlgebra& perm, const FiniteAlgebra& algebra,
                       std::optional<Window> window = std::nullopt);

/// KP dialgebra over the perm window P[N1,N2].
Dialgebra kp_window(std::size_t n1, std::size_t n2, const FiniteAlgebra& algebra);

/// KP dialgebra over the single-slot perm algebra P0 = k[x]/(x^{N+1}).
Dialgebra kp_single(std::size_t n, const FiniteAlgebra& algebra);

/// Associativity of ⊢ and ⊣ and the three compatibility axioms, exhaustively.
Report validate_dialgebra(const Dialgebra& d);

/// e ⊢ v == v for every basis vector v.
bool is_left_unit(const Dialgebra& d, std::span<const Rational> e);

/// Left units for ⊢ among the basis vectors and, for KP dialgebras with a
/// unital second factor, the elements p (x) 1_A for basis p of the perm factor.
std::vector<Vec> find_bar_units(const Dialgebra& d);

}  // namespace dialg
