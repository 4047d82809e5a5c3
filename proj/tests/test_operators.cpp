#include <doctest.h>

#include <random>

#include "dialg/errors.hpp"
#include "dialg/operators.hpp"
#include "support.hpp"

using namespace dialg;
using testing_support::e;
using testing_support::Mat2;

TEST_SUITE("operators") {
  TEST_CASE("mult_left examples") {
    const auto d = kp_window(1, 1, matrix_algebra(2));
    const Vec unit = d.pure_tensor(basis_vec(4, 0), *matrix_algebra(2).unit());
    CHECK(mult_left(d, Product::vdash, unit) == LinOp::identity(d.name(), d.dim()));
    CHECK(mult_left(d, Product::vdash, Vec(d.dim())).is_zero());
    const auto p = kp_single(1, field_algebra());
    CHECK(mult_left(p, Product::vdash, e(p, "x⊗1")).is_zero());
    CHECK_THROWS_AS(mult_left(d, Product::vdash, Vec(3)), ContractError);
  }

  TEST_CASE("mult_right examples") {
    const auto d = kp_window(1, 1, matrix_algebra(2));
    const Vec unit = d.pure_tensor(basis_vec(4, 0), *matrix_algebra(2).unit());
    const auto r = mult_right(d, Product::dashv, unit);
    CHECK(r == LinOp::identity(d.name(), d.dim()));
    for (std::size_t b = 0; b < d.dim(); ++b) CHECK(r.column(b) == d.dashv(basis_vec(d.dim(), b), unit));
    CHECK(mult_right(d, Product::dashv, Vec(d.dim())).is_zero());
    const auto p = kp_single(1, field_algebra());
    CHECK(mult_right(p, Product::dashv, e(p, "1⊗1")).apply(e(p, "x⊗1")) == e(p, "x⊗1"));
  }

  TEST_CASE("inner_ad on the matrix dialgebra follows b⊣a − a⊢b") {
    const auto d = Dialgebra::from_associative(matrix_algebra(2));
    const Vec a = Mat2::unit(1, 2).vec();
    const Vec got = inner_ad(d, a).apply(Mat2::unit(2, 1).vec());
    const Mat2 expected = Mat2::unit(2, 1) * Mat2::unit(1, 2) - Mat2::unit(1, 2) * Mat2::unit(2, 1);
    CHECK(got == expected.vec());
    CHECK(got == (Mat2::unit(2, 2) - Mat2::unit(1, 1)).vec());
    CHECK(inner_ad(d, Vec(4)).is_zero());
  }

  TEST_CASE("inner operators are (di)derivations") {
    std::mt19937_64 rng(21);
    for (const auto& alg : testing_support::unital_catalog()) {
      const auto d = kp_window(1, 1, alg);
      for (int t = 0; t < 20; ++t) {
        const Vec a = testing_support::random_vec(d.dim(), rng);
        CHECK(is_derivation(d, inner_ad(d, a)).ok());
        CHECK(is_diderivation(d, inner_Ad(d, a)).ok());
      }
    }
    const auto z = kp_window(1, 1, matrix_algebra(2));
    CHECK(inner_Ad(z, Vec(z.dim())).is_zero());
  }

  TEST_CASE("Ad = ad when ⊢ = ⊣") {
    std::mt19937_64 rng(4);
    const auto d = Dialgebra::from_associative(truncated_poly(3));
    const auto m = Dialgebra::from_associative(matrix_algebra(2));
    for (int t = 0; t < 10; ++t) {
      const Vec a = testing_support::random_vec(3, rng);
      CHECK(inner_Ad(d, a) == inner_ad(d, a));
      const Vec b = testing_support::random_vec(4, rng);
      CHECK(inner_Ad(m, b) == inner_ad(m, b));
    }
  }

  TEST_CASE("checker examples") {
    const auto d = kp_window(1, 1, matrix_algebra(2));
    CHECK(is_derivation(d, LinOp::zero(d.name(), d.dim())).ok());
    CHECK(is_diderivation(d, LinOp::zero(d.name(), d.dim())).ok());
    const auto id = is_derivation(d, LinOp::identity(d.name(), d.dim()));
    CHECK_FALSE(id.ok());
    CHECK(id.witnesses.size() <= kCheckerWitnessLimit);
    CHECK(id.violation_count >= id.witnesses.size());
    // witnesses come out in pair order
    for (std::size_t i = 1; i < id.witnesses.size(); ++i) CHECK(id.witnesses[i - 1].indices <= id.witnesses[i].indices);
    CHECK_THROWS_AS(is_derivation(d, LinOp::zero("other", d.dim())), ContractError);
  }

  TEST_CASE("identity fails with lhs = xy and rhs = 2xy") {
    const auto a = truncated_poly(3);
    const auto r = is_derivation(a, LinOp::identity(a.name(), 3));
    REQUIRE_FALSE(r.ok());
    // first witness (1, 1): 1 − 2 = −1 on the unit coordinate
    CHECK(r.witnesses.front().indices == std::vector<std::size_t>{0, 0});
    CHECK(r.witnesses.front().discrepancy == SparseVec{{0, Rational(-1)}});
  }

  TEST_CASE("d(1) = x, d(x) = 0 on P0[1]") {
    // Hand expansion over the pairs (1,1), (1,x), (x,1), (x,x) with 1∘y = y, x∘y = 0:
    //   two-sided: d(1∘1) = x and d(1)∘1 + 1∘d(1) = x∘1 + 1∘x = x.  ok
    //              d(1∘x) = 0 and x∘x + 1∘0 = 0.                     ok
    //              d(x∘y) = 0 and 0∘y + x∘d(y) = 0.                  ok
    //   left:      d(1∘1) = x but 1∘d(1) + 1∘d(1) = 2x.              fails
    //   right:     d(1∘1) = x but d(1)∘1 + d(1)∘1 = 0.                fails
    const auto p = perm_quotient(1);
    LinOp d = LinOp::zero(p.name(), 2);
    d.at(1, 0) = 1;
    CHECK(is_derivation(p, d).ok());
    CHECK_FALSE(is_left_derivation(p, d).ok());
    CHECK_FALSE(is_right_derivation(p, d).ok());
  }

  TEST_CASE("left and right derivations coincide on commutative algebras") {
    std::mt19937_64 rng(8);
    for (const auto& a : {truncated_poly(3), group_algebra_c2(), field_algebra()}) {
      for (int t = 0; t < 30; ++t) {
        const auto op = testing_support::random_op(a.name(), a.dim(), rng, 1);
        CHECK(is_left_derivation(a, op).ok() == is_right_derivation(a, op).ok());
      }
      CHECK(is_left_derivation(a, LinOp::zero(a.name(), a.dim())).ok());
      CHECK(is_right_derivation(a, LinOp::zero(a.name(), a.dim())).ok());
    }
  }

  TEST_CASE("bracket") {
    std::mt19937_64 rng(2);
    const auto d = kp_window(1, 1, truncated_poly(3));
    const auto f = testing_support::random_op(d.name(), d.dim(), rng);
    CHECK(bracket(f, f).is_zero());
    const auto a = testing_support::random_vec(d.dim(), rng), b = testing_support::random_vec(d.dim(), rng);
    CHECK(is_derivation(d, bracket(inner_ad(d, a), inner_ad(d, b))).ok());
    CHECK(is_diderivation(d, bracket(inner_ad(d, a), inner_Ad(d, b))).ok());
    CHECK_THROWS_AS(bracket(f, LinOp::zero("other", d.dim())), ContractError);
  }

  TEST_CASE("on ⊢ = ⊣ the checkers accept the same operators") {
    std::mt19937_64 rng(9);
    for (const auto& alg : {truncated_poly(3), matrix_algebra(2)}) {
      const auto d = Dialgebra::from_associative(alg);
      for (int t = 0; t < 40; ++t) {
        const auto op = testing_support::random_op(d.name(), d.dim(), rng, 1);
        CHECK(is_derivation(d, op).ok() == is_diderivation(d, op).ok());
      }
      for (std::size_t i = 0; i < d.dim(); ++i) {
        const auto op = inner_ad(d, basis_vec(d.dim(), i));
        CHECK(is_derivation(d, op).ok());
        CHECK(is_diderivation(d, op).ok());
      }
    }
  }

  TEST_CASE("algebra_inner_ad uses b ↦ ba − ab") {
    const auto m2 = matrix_algebra(2);
    const auto ad = algebra_inner_ad(m2, Mat2::unit(1, 2).vec());
    CHECK(ad.apply(Mat2::unit(2, 1).vec()) == (Mat2::unit(2, 2) - Mat2::unit(1, 1)).vec());
    CHECK(is_derivation(m2, ad).ok());
  }

  TEST_CASE("LinOp basics") {
    const auto id = LinOp::identity("V", 3);
    CHECK(compose(id, id) == id);
    CHECK_THROWS_AS(compose(id, LinOp::identity("W", 3)), ContractError);
    LinOp f = LinOp::zero("V", 3);
    f.at(0, 1) = 2;
    CHECK(f.apply(Vec{0, 1, 0}) == Vec{2, 0, 0});
    CHECK((Rational(3) * f).at(0, 1) == Rational(6));
    CHECK((f - f).is_zero());
  }
}
