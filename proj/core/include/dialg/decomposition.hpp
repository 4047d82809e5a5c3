#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "dialg/dialgebra.hpp"
#include "dialg/linop.hpp"
#include "dialg/report.hpp"

// Coordinate decomposition of derivations and diderivations of a KP dialgebra
// D = P (x) A over a perm window P = k[x]/(x^{N1+1}) (x) k[x]/(x^{N2+1}).
//
// Basis of A: u_0..u_{m-1}. Derivations are written as
//
//   d(P⊗f⊗a) = sum_j  P ⊗ x^j f ⊗ D_j(a)  +  sum_k d_k(P⊗f) ⊗ a u_k
//
// with D_j in Der(A) and d_k in Der(P); diderivations as
//
//   δ(P⊗f⊗a) = sum_i  P(0) x^{i1} ⊗ x^{i2} f ⊗ δ_i(a)  +  sum_k ḋ_k(P⊗f) ⊗ a u_k
//
// with δ_i in Der(A) and ḋ_k a one-sided derivation of P. Multiplication by
// x^j in the second slot happens inside the quotient k[x]/(x^{N2+1}).

namespace dialg {

using SlotIndex = std::pair<std::size_t, std::size_t>;  // (i1, i2)

struct DerComponentFamily {
  std::map<std::size_t, LinOp> perm_parts;  // k -> d_k, endomorphism of P
  std::map<std::size_t, LinOp> alg_parts;   // j -> D_j, endomorphism of A

  friend bool operator==(const DerComponentFamily&, const DerComponentFamily&) = default;
};

struct DiderComponentFamily {
  std::map<SlotIndex, LinOp> alg_parts;     // (i1, i2) -> δ_i, endomorphism of A
  std::map<std::size_t, LinOp> perm_parts;  // k -> ḋ_k, endomorphism of P

  friend bool operator==(const DiderComponentFamily&, const DiderComponentFamily&) = default;
};

/// Which one-sided derivation identity the ḋ parts must satisfy.
enum class Sidedness { left, right };

std::string_view to_string(Sidedness s);
Sidedness parse_sidedness(std::string_view s);

/// The operator given by the derivation formula, without validating components.
LinOp realize_derivation(const Dialgebra& d, const DerComponentFamily& fam);
/// The operator given by the diderivation formula, without validating components.
LinOp realize_diderivation(const Dialgebra& d, const DiderComponentFamily& fam);

/// Validates every component (RejectedInput with the component's report) and
/// window indices (ContractError), then realizes the formula.
LinOp assemble_derivation(const Dialgebra& d, const DerComponentFamily& fam);
LinOp assemble_diderivation(const Dialgebra& d, const DiderComponentFamily& fam, Sidedness sidedness);

/// Difference between a reassembled operator and the original.
struct Residual {
  Report report;                      // one witness per differing input column
  std::size_t boundary_entries = 0;   // differing entries touching slot-2 degree N2
  std::size_t interior_entries = 0;   // all other differing entries
  [[nodiscard]] bool exact() const { return report.ok(); }
};

struct DerDecomposition {
  DerComponentFamily family;
  /// φ_{(j1,j2)}, j1 > 0: components of d(1⊗1⊗a) that the formula drops.
  std::map<SlotIndex, LinOp> phi_parts;
  /// Whether every φ_j equals a ↦ a·c_j with c_j read off sum_k d_k(1⊗1) ⊗ u_k.
  bool phi_determined_by_perm_parts = true;
  Report perm_part_checks;  // each d_k against Der(P)
  Report alg_part_checks;   // each D_j against Der(A)
  Residual residual;        // realize(family) - d
};

struct SidednessOutcome {
  std::size_t k = 0;
  bool two_sided = false;
  bool left = false;
  bool right = false;
};

struct DiderDecomposition {
  DiderComponentFamily family;
  Report alg_part_checks;                       // each δ_i against Der(A)
  std::vector<SidednessOutcome> perm_sidedness; // per extracted ḋ_k
  Residual residual;
};

/// Reads the components off d's action on {P⊗1_A} and {1⊗1⊗u_l}.
/// Refuses (RejectedInput) when d is not a derivation of D.
DerDecomposition decompose_derivation(const Dialgebra& d, const LinOp& op);
DiderDecomposition decompose_diderivation(const Dialgebra& d, const LinOp& op);

/// d(P⊗a) = d(1⊗a) ⊢ (P⊗1) + (1⊗a) ⊢ d(P⊗1) on every basis element P⊗u_l.
Report reconstruct_check(const Dialgebra& d, const LinOp& op);

}  // namespace dialg
