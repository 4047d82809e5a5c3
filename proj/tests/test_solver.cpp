#include <doctest.h>

#include <random>

#include "dialg/errors.hpp"
#include "dialg/operators.hpp"
#include "dialg/parallel.hpp"
#include "dialg/solver.hpp"
#include "support.hpp"

using namespace dialg;
using testing_support::naive_rank;

namespace {

SparseVec row(std::initializer_list<std::pair<std::size_t, int>> entries) {
  SparseVec v;
  for (const auto& [i, c] : entries) v.push_back({i, Rational(c)});
  return v;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("nullspace of an empty system is everything") {
    const auto b = nullspace(ConstraintSystem::from_rows(4, {}));
    CHECK(b.dimension() == 4);
  }

  TEST_CASE("nullspace by inspection") {
    std::vector<ConstraintRow> rows{{row({{0, 1}})}, {row({{0, 1}, {1, 1}})}};
    const auto b = nullspace(ConstraintSystem::from_rows(3, rows));
    REQUIRE(b.dimension() == 1);
    CHECK(b.vectors().front() == row({{2, 1}}));
  }

  TEST_CASE("planted kernels are recovered") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t n = 30;
      const std::size_t k = 4 + static_cast<std::size_t>(trial);
      // kernel basis: e_i + sum_{j >= k} K_ij e_j for i < k
      std::vector<Vec> kernel;
      for (std::size_t i = 0; i < k; ++i) {
        Vec v(n);
        v[i] = 1;
        for (std::size_t j = k; j < n; ++j) v[j] = testing_support::small(rng);
        kernel.push_back(v);
      }
      // rows orthogonal to the kernel: pick the tail freely, solve for the head.
      std::vector<ConstraintRow> rows;
      std::vector<Vec> dense_rows;
      for (int r = 0; r < 20; ++r) {
        Vec w(n);
        for (std::size_t j = k; j < n; ++j) w[j] = testing_support::small(rng);
        for (std::size_t i = 0; i < k; ++i) {
          Rational s;
          for (std::size_t j = k; j < n; ++j) s -= kernel[i][j] * w[j];
          w[i] = s;
        }
        dense_rows.push_back(w);
        rows.push_back({to_sparse(w)});
      }
      const auto b = nullspace(ConstraintSystem::from_rows(n, rows));
      CHECK(b.dimension() == n - naive_rank(dense_rows));
      CHECK(b.dimension() >= k);
      for (const auto& v : kernel) {
        std::vector<Vec> both;
        for (const auto& bv : b.vectors()) both.push_back(to_dense(bv, n));
        const auto before = naive_rank(both);
        both.push_back(v);
        CHECK(naive_rank(both) == before);
      }
    }
  }

  TEST_CASE("classical derivation dimensions") {
    CHECK(algebra_derivation_space(matrix_algebra(2), DerivationKind::two_sided).dimension() == 3);
    CHECK(algebra_derivation_space(truncated_poly(3), DerivationKind::two_sided).dimension() == 2);
    CHECK(algebra_derivation_space(group_algebra_c2(), DerivationKind::two_sided).dimension() == 0);
    for (const auto kind : {DerivationKind::two_sided, DerivationKind::left, DerivationKind::right}) {
      CHECK(algebra_derivation_space(field_algebra(), kind).dimension() == 0);
    }
    CHECK(algebra_derivation_space(perm_quotient(1), DerivationKind::two_sided).dimension() == 2);
  }

  TEST_CASE("M2: the four inner derivations span a 3-dimensional space") {
    const auto m2 = matrix_algebra(2);
    std::vector<Vec> flats;
    for (std::size_t i = 0; i < 4; ++i) flats.push_back(testing_support::flat_of(algebra_inner_ad(m2, basis_vec(4, i))));
    CHECK(naive_rank(flats) == 3);
    const auto der = algebra_derivation_space(m2, DerivationKind::two_sided);
    for (std::size_t i = 0; i < 4; ++i) CHECK(span_contains(der, algebra_inner_ad(m2, basis_vec(4, i))).contained);
  }

  TEST_CASE("k[t]/(t^3): d(1) = 0 and d(t) without constant term") {
    // d(t^3) = 3 t^2 d(t) = 0 forces the constant coefficient of d(t) to vanish;
    // d(t^2) = 2 t d(t) is then determined.
    const auto a = truncated_poly(3);
    std::vector<LinOp> ops;
    for (std::size_t c = 1; c <= 2; ++c) {
      LinOp d = LinOp::zero(a.name(), 3);
      d.at(c, 1) = 1;        // d(t) = t^c
      if (c + 1 <= 2) d.at(c + 1, 2) = 2;  // d(t^2) = 2 t^{c+1}
      CHECK(is_derivation(a, d).ok());
      ops.push_back(d);
    }
    LinOp bad = LinOp::zero(a.name(), 3);
    bad.at(0, 1) = 1;
    bad.at(1, 2) = 2;
    CHECK_FALSE(is_derivation(a, bad).ok());
    const auto der = algebra_derivation_space(a, DerivationKind::two_sided);
    CHECK(der == SubspaceBasis::from_ops(a.name(), 3, ops));
  }

  TEST_CASE("k[C2]: the idempotent basis forces d = 0") {
    // e± = (1 ± g)/2 are orthogonal idempotents; d(e) = 2 e d(e) gives d(e) = 0.
    const auto c2 = group_algebra_c2();
    const Vec ep{Rational(1, 2), Rational(1, 2)}, em{Rational(1, 2), Rational(-1, 2)};
    CHECK(algebra_mul(c2, ep, ep) == ep);
    CHECK(algebra_mul(c2, em, em) == em);
    CHECK(is_zero(algebra_mul(c2, ep, em)));
  }

  TEST_CASE("Der(P0[N]) consists of the maps without constant term") {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto p = perm_quotient(n);
      const auto der = algebra_derivation_space(p, DerivationKind::two_sided);
      CHECK(der.dimension() == (n + 1) * n);
      for (const auto& op : der.basis_ops()) {
        for (std::size_t c = 0; c <= n; ++c) CHECK(op.at(0, c).is_zero());
      }
    }
  }

  TEST_CASE("every basis element passes its checker") {
    for (const auto& alg : testing_support::unital_catalog()) {
      const auto d = kp_window(1, 1, alg);
      for (const auto& op : derivation_space(d).basis_ops()) CHECK(is_derivation(d, op).ok());
      for (const auto& op : diderivation_space(d).basis_ops()) CHECK(is_diderivation(d, op).ok());
    }
    const auto p = perm_window(2, 1);
    for (const auto& op : algebra_derivation_space(p, DerivationKind::left).basis_ops()) CHECK(is_left_derivation(p, op).ok());
    for (const auto& op : algebra_derivation_space(p, DerivationKind::right).basis_ops()) CHECK(is_right_derivation(p, op).ok());
    for (const auto& op : algebra_derivation_space(p, DerivationKind::two_sided).basis_ops()) CHECK(is_derivation(p, op).ok());
  }

  TEST_CASE("basis is in reduced row echelon form") {
    const auto b = derivation_space(kp_window(1, 1, truncated_poly(3)));
    for (std::size_t k = 0; k < b.dimension(); ++k) {
      CHECK(b.vectors()[k].front().index == b.pivots()[k]);
      CHECK(b.vectors()[k].front().coeff == Rational(1));
      if (k > 0) CHECK(b.pivots()[k - 1] < b.pivots()[k]);
      for (std::size_t other = 0; other < b.dimension(); ++other) {
        if (other == k) continue;
        for (const auto& t : b.vectors()[other]) CHECK(t.index != b.pivots()[k]);
      }
    }
  }

  TEST_CASE("inner operators lie in the solver spaces") {
    std::mt19937_64 rng(77);
    const auto d = kp_window(1, 1, field_algebra());
    const auto der = derivation_space(d);
    const auto dider = diderivation_space(d);
    for (int t = 0; t < 10; ++t) {
      const auto a = testing_support::random_vec(d.dim(), rng);
      CHECK(span_contains(der, inner_ad(d, a)).contained);
      CHECK(span_contains(dider, inner_Ad(d, a)).contained);
    }
    const auto m = kp_window(1, 1, matrix_algebra(2));
    const auto mdider = diderivation_space(m);
    for (int t = 0; t < 10; ++t) CHECK(span_contains(mdider, inner_Ad(m, testing_support::random_vec(m.dim(), rng))).contained);
  }

  TEST_CASE("span_contains certificates") {
    const auto a = matrix_algebra(2);
    const auto der = algebra_derivation_space(a, DerivationKind::two_sided);
    const auto c0 = span_contains(der, der.basis_op(1));
    CHECK(c0.contained);
    CHECK(c0.coefficients == std::vector<Rational>{0, 1, 0});
    const auto z = span_contains(der, LinOp::zero(a.name(), 4));
    CHECK(z.contained);
    CHECK(z.coefficients == std::vector<Rational>{0, 0, 0});
    const auto id = LinOp::identity(a.name(), 4);
    const auto cert = span_contains(der, id);
    REQUIRE_FALSE(cert.contained);
    // the functional kills every basis element and not the identity
    auto apply = [&](const LinOp& op) {
      Rational s;
      for (const auto& t : cert.separating_functional) s += t.coeff * op.flat()[t.index];
      return s;
    };
    for (const auto& op : der.basis_ops()) CHECK(apply(op).is_zero());
    CHECK_FALSE(apply(id).is_zero());
    CHECK_THROWS_AS(span_contains(der, LinOp::zero("other", 4)), ContractError);
  }

  TEST_CASE("coefficients reproduce the operator") {
    std::mt19937_64 rng(5);
    const auto d = kp_window(1, 1, truncated_poly(3));
    const auto der = derivation_space(d);
    std::vector<Rational> c;
    for (std::size_t k = 0; k < der.dimension(); ++k) c.push_back(testing_support::small(rng));
    const auto op = der.combination(c);
    const auto cert = span_contains(der, op);
    REQUIRE(cert.contained);
    CHECK(cert.coefficients == c);
  }

  TEST_CASE("⊢ = ⊣ gives Der = Dider") {
    for (const auto& alg : testing_support::unital_catalog()) {
      const auto d = Dialgebra::from_associative(alg);
      CHECK(same_subspace(derivation_space(d), diderivation_space(d)));
    }
  }

  TEST_CASE("results do not depend on the thread count") {
    const auto d = kp_window(2, 1, matrix_algebra(2));
    set_thread_count(1);
    const auto one = derivation_space(d);
    const auto one_di = diderivation_space(d);
    set_thread_count(4);
    const auto four = derivation_space(d);
    const auto four_di = diderivation_space(d);
    set_thread_count(0);
    CHECK(one == four);
    CHECK(one_di == four_di);
  }
}
