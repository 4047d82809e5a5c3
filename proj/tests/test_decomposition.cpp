#include <doctest.h>

#include <random>

#include "dialg/compare.hpp"
#include "dialg/decomposition.hpp"
#include "dialg/errors.hpp"
#include "dialg/operators.hpp"
#include "dialg/solver.hpp"
#include "support.hpp"

using namespace dialg;
using testing_support::e;
using testing_support::Mat2;

namespace {

LinOp first_der_of_perm(const Dialgebra& d) {
  return algebra_derivation_space(d.provenance()->perm, DerivationKind::two_sided).basis_op(0);
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("empty families assemble to zero") {
    const auto d = kp_window(2, 2, matrix_algebra(2));
    CHECK(assemble_derivation(d, {}).is_zero());
    CHECK(assemble_diderivation(d, {}, Sidedness::left).is_zero());
    CHECK(assemble_diderivation(d, {}, Sidedness::right).is_zero());
  }

  TEST_CASE("over Q a perm part d gives d ⊗ id") {
    const auto d = kp_window(2, 2, field_algebra());
    const auto p = d.provenance()->perm;
    for (const auto& dp : algebra_derivation_space(p, DerivationKind::two_sided).basis_ops()) {
      const auto op = assemble_derivation(d, {{{0, dp}}, {}});
      CHECK(is_derivation(d, op).ok());
      // dim A = 1, so the operator is dp itself under the identification P ⊗ Q = P
      for (std::size_t r = 0; r < p.dim(); ++r) {
        for (std::size_t c = 0; c < p.dim(); ++c) CHECK(op.at(r, c) == dp.at(r, c));
      }
    }
  }

  TEST_CASE("an alg part ad_E12 at j = 0 acts as id ⊗ L_1 ⊗ ad_E12") {
    const auto a = matrix_algebra(2);
    const auto d = kp_window(2, 2, a);
    const auto ad = algebra_inner_ad(a, Mat2::unit(1, 2).vec());
    const auto op = assemble_derivation(d, {{}, {{0, ad}}});
    CHECK(is_derivation(d, op).ok());
    // b ↦ b E12 − E12 b on E21 gives E22 − E11
    CHECK(op.apply(e(d, "1⊗1⊗E21")) == e(d, "1⊗1⊗E22") - e(d, "1⊗1⊗E11"));
    CHECK(op.apply(e(d, "x⊗x⊗E21")) == e(d, "x⊗x⊗E22") - e(d, "x⊗x⊗E11"));
    // j = 1 shifts the second slot inside the quotient
    const auto shifted = assemble_derivation(d, {{}, {{1, ad}}});
    CHECK(shifted.apply(e(d, "1⊗x⊗E21")) == e(d, "1⊗x^2⊗E22") - e(d, "1⊗x^2⊗E11"));
    CHECK(is_zero(shifted.apply(e(d, "1⊗x^2⊗E21"))));
    CHECK(is_derivation(d, shifted).ok());
  }

  TEST_CASE("the ev0 term of a diderivation kills x in the first slot") {
    const auto a = matrix_algebra(2);
    const auto d = kp_window(2, 2, a);
    const auto ad = algebra_inner_ad(a, Mat2::unit(1, 2).vec());
    const auto op = assemble_diderivation(d, {{{SlotIndex{0, 0}, ad}}, {}}, Sidedness::left);
    CHECK(is_diderivation(d, op).ok());
    for (const char* m : {"E11", "E12", "E21", "E22"}) CHECK(is_zero(op.apply(e(d, std::string("x⊗1⊗") + m))));
    CHECK(op.apply(e(d, "1⊗1⊗E21")) == e(d, "1⊗1⊗E22") - e(d, "1⊗1⊗E11"));
    const auto lifted = assemble_diderivation(d, {{{SlotIndex{2, 1}, ad}}, {}}, Sidedness::left);
    CHECK(lifted.apply(e(d, "1⊗x⊗E21")) == e(d, "x^2⊗x^2⊗E22") - e(d, "x^2⊗x^2⊗E11"));
    CHECK(is_diderivation(d, lifted).ok());
  }

  TEST_CASE("assembly validates components") {
    const auto d = kp_window(1, 1, truncated_poly(3));
    const auto& p = d.provenance()->perm;
    const auto& a = d.provenance()->algebra;
    CHECK_THROWS_AS(assemble_derivation(d, {{{0, LinOp::identity(p.name(), p.dim())}}, {}}), RejectedInput);
    CHECK_THROWS_AS(assemble_derivation(d, {{}, {{0, LinOp::identity(a.name(), a.dim())}}}), RejectedInput);
    const auto der_a = algebra_derivation_space(a, DerivationKind::two_sided).basis_op(0);
    CHECK_THROWS_AS(assemble_derivation(d, {{}, {{2, der_a}}}), ContractError);
    CHECK_THROWS_AS(assemble_derivation(d, {{{3, first_der_of_perm(d)}}, {}}), ContractError);
    CHECK_THROWS_AS(assemble_diderivation(d, {{{SlotIndex{2, 0}, der_a}}, {}}, Sidedness::left), ContractError);
    // a two-sided derivation of P that is not a left derivation
    const auto two_sided = first_der_of_perm(d);
    if (!is_left_derivation(p, two_sided).ok()) {
      CHECK_THROWS_AS(assemble_diderivation(d, {{}, {{0, two_sided}}}, Sidedness::left), RejectedInput);
    }
    try {
      assemble_derivation(d, {{{0, LinOp::identity(p.name(), p.dim())}}, {}});
    } catch (const RejectedInput& ex) {
      CHECK_FALSE(ex.report().ok());
    }
  }

  TEST_CASE("decompose refuses operators that are not (di)derivations") {
    const auto d = kp_window(1, 1, field_algebra());
    CHECK_THROWS_AS(decompose_derivation(d, LinOp::identity(d.name(), d.dim())), RejectedInput);
    CHECK_THROWS_AS(decompose_diderivation(d, LinOp::identity(d.name(), d.dim())), RejectedInput);
  }

  TEST_CASE("zero decomposes to the empty family") {
    const auto d = kp_window(2, 2, matrix_algebra(2));
    const auto zero = LinOp::zero(d.name(), d.dim());
    const auto der = decompose_derivation(d, zero);
    CHECK(der.family == DerComponentFamily{});
    CHECK(der.phi_parts.empty());
    CHECK(der.residual.exact());
    const auto di = decompose_diderivation(d, zero);
    CHECK(di.family == DiderComponentFamily{});
    CHECK(di.residual.exact());
  }

  TEST_CASE("random valid families roundtrip") {
    std::mt19937_64 rng(99);
    for (const auto& alg : testing_support::unital_catalog()) {
      const auto d = kp_window(2, 2, alg);
      const auto bases = FamilyBases::of(d);
      // unrestricted draws are only valid for central perm coordinates
      const auto mode = alg.name() == "M2" ? DrawMode::central : DrawMode::unrestricted;
      for (int t = 0; t < 5; ++t) {
        const auto op = assemble_derivation(d, random_der_family(d, bases, mode, rng));
        REQUIRE(is_derivation(d, op).ok());
        const auto dec = decompose_derivation(d, op);
        CHECK(dec.residual.exact());
        CHECK(realize_derivation(d, dec.family) == op);
        CHECK(dec.perm_part_checks.ok());
        CHECK(dec.alg_part_checks.ok());
        CHECK(dec.phi_determined_by_perm_parts);

        const auto dop = assemble_diderivation(d, random_dider_family(d, bases, Sidedness::left, mode, rng), Sidedness::left);
        REQUIRE(is_diderivation(d, dop).ok());
        const auto ddec = decompose_diderivation(d, dop);
        CHECK(ddec.residual.exact());
        CHECK(realize_diderivation(d, ddec.family) == dop);
      }
    }
  }

  TEST_CASE("inner operators roundtrip") {
    std::mt19937_64 rng(31);
    const auto a = matrix_algebra(2);
    const auto d = kp_window(2, 2, a);
    const Vec one = basis_vec(d.provenance()->perm.dim(), 0);
    for (std::size_t u = 0; u < a.dim(); ++u) {
      const Vec x = d.pure_tensor(one, basis_vec(a.dim(), u));
      const auto ad = inner_ad(d, x);
      const auto dec = decompose_derivation(d, ad);
      CHECK(dec.residual.exact());
      CHECK(realize_derivation(d, dec.family) == ad);
      const auto Ad = inner_Ad(d, x);
      CHECK(realize_diderivation(d, decompose_diderivation(d, Ad).family) == Ad);
    }
    for (int t = 0; t < 5; ++t) {
      const auto Ad = inner_Ad(d, testing_support::random_vec(d.dim(), rng));
      const auto dec = decompose_diderivation(d, Ad);
      CHECK(dec.residual.exact());
      CHECK(realize_diderivation(d, dec.family) == Ad);
    }
  }

  TEST_CASE("extracted diderivation perm parts are left derivations") {
    for (const auto& alg : testing_support::unital_catalog()) {
      const auto d = kp_window(2, 1, alg);
      for (const auto& op : diderivation_space(d).basis_ops()) {
        const auto dec = decompose_diderivation(d, op);
        CHECK(dec.residual.exact());
        CHECK(dec.alg_part_checks.ok());
        for (const auto& s : dec.perm_sidedness) CHECK(s.left);
      }
    }
  }

  TEST_CASE("reconstruct_check") {
    const auto d = kp_window(2, 1, truncated_poly(3));
    for (const auto& op : derivation_space(d).basis_ops()) CHECK(reconstruct_check(d, op).ok());
    CHECK(reconstruct_check(d, LinOp::zero(d.name(), d.dim())).ok());
    // identity: lhs x⊗1⊗u, rhs (1⊗1⊗u)⊢(x⊗1⊗1) + (1⊗1⊗u)⊢(x⊗1⊗1) = 2 x⊗1⊗u
    const auto r = reconstruct_check(d, LinOp::identity(d.name(), d.dim()));
    CHECK_FALSE(r.ok());
    CHECK(r.violation_count == d.dim());
  }

  TEST_CASE("perm parts on a non-central coordinate break the derivation law") {
    const auto a = matrix_algebra(2);
    const auto d = kp_window(1, 1, a);
    const auto dp = first_der_of_perm(d);
    const auto e12 = assemble_derivation(d, {{{testing_support::index_of(a, "E12"), dp}}, {}});
    CHECK_FALSE(is_derivation(d, e12).ok());
    // the same part spread over the centre I = E11 + E22 is fine
    const auto central = assemble_derivation(d, {{{0, dp}, {3, dp}}, {}});
    CHECK(is_derivation(d, central).ok());
  }

  TEST_CASE("φ parts are right multiplication by the perm coefficients of d(1⊗1)") {
    const auto d = kp_window(2, 2, matrix_algebra(2));
    for (const auto& op : derivation_space(d).basis_ops()) {
      const auto dec = decompose_derivation(d, op);
      CHECK(dec.phi_determined_by_perm_parts);
      CHECK(dec.residual.exact());
    }
  }
}
