#pragma once

#include <span>

#include "dialg/algebra.hpp"
#include "dialg/dialgebra.hpp"
#include "dialg/linop.hpp"
#include "dialg/report.hpp"

namespace dialg {

/// Witnesses kept by the Leibniz checkers.
inline constexpr std::size_t kCheckerWitnessLimit = 10;

/// L_a: b ↦ a ⋆ b for the chosen product.
LinOp mult_left(const Dialgebra& d, Product product, std::span<const Rational> a);
/// R_a: b ↦ b ⋆ a for the chosen product.
LinOp mult_right(const Dialgebra& d, Product product, std::span<const Rational> a);

/// ad_a = R_a^⊣ − L_a^⊢, i.e. ad_a(b) = b⊣a − a⊢b. A derivation of any dialgebra.
LinOp inner_ad(const Dialgebra& d, std::span<const Rational> a);
/// Ad_a = R_a^⊢ − L_a^⊣, i.e. Ad_a(b) = b⊢a − a⊣b. A diderivation of any dialgebra.
LinOp inner_Ad(const Dialgebra& d, std::span<const Rational> a);

/// Inner derivation of an associative algebra with the same sign convention
/// as inner_ad on ⊢ = ⊣: b ↦ ba − ab.
LinOp algebra_inner_ad(const FiniteAlgebra& a, std::span<const Rational> x);

/// d(x⊢y) = d(x)⊢y + x⊢d(y) and d(x⊣y) = d(x)⊣y + x⊣d(y) on all basis pairs.
/// By bilinearity this is equivalent to the identities on the whole space.
Report is_derivation(const Dialgebra& d, const LinOp& op);

/// δ(x⊢y) = δ(x⊣y) and δ(x⊢y) = δ(x)⊣y + x⊢δ(y) on all basis pairs.
Report is_diderivation(const Dialgebra& d, const LinOp& op);

/// d(xy) = d(x)y + x d(y) on all basis pairs of an algebra.
Report is_derivation(const FiniteAlgebra& a, const LinOp& op);
/// δ(xy) = x δ(y) + y δ(x).
Report is_left_derivation(const FiniteAlgebra& a, const LinOp& op);
/// δ(xy) = δ(x) y + δ(y) x.
Report is_right_derivation(const FiniteAlgebra& a, const LinOp& op);

}  // namespace dialg
