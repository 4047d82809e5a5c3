#include "dialg/operators.hpp"

#include <functional>

#include "dialg/errors.hpp"
#include "dialg/parallel.hpp"

namespace dialg {

namespace {

void require_endo_of(const LinOp& op, const std::string& tag, std::size_t dim, const char* who) {
  if (!op.is_endomorphism() || op.domain_tag() != tag || op.domain_dim() != dim) {
    throw ContractError(std::string(who) + ": operator on '" + op.domain_tag() + "' does not act on '" + tag + "'");
  }
}

void require_element(std::span<const Rational> a, std::size_t dim, const std::string& tag) {
  if (a.size() != dim) throw ContractError("element does not live in '" + tag + "'");
}

/// op(sum_p v_p e_p) from precomputed columns.
Vec apply_sparse(const std::vector<Vec>& columns, const SparseVec& v, std::size_t dim) {
  Vec out(dim);
  for (const auto& t : v) axpy(out, t.coeff, columns[t.index]);
  return out;
}

std::vector<Vec> columns_of(const LinOp& op) {
  std::vector<Vec> cols;
  cols.reserve(op.domain_dim());
  for (std::size_t c = 0; c < op.domain_dim(); ++c) cols.push_back(op.column(c));
  return cols;
}

/// Evaluates `pair_fn(i, j, report)` over all basis pairs, parallel in i,
/// merging witnesses in pair order.
Report pair_check(const std::string& name, std::size_t dim,
                  const std::function<void(std::size_t, std::size_t, Report&)>& pair_fn) {
  std::vector<Report> parts(dim);
  parallel_for(dim, [&](std::size_t i) {
    parts[i].witness_limit = kCheckerWitnessLimit;
    for (std::size_t j = 0; j < dim; ++j) pair_fn(i, j, parts[i]);
  });
  Report report;
  report.check = name;
  report.witness_limit = kCheckerWitnessLimit;
  for (const auto& p : parts) report.merge(p);
  return report;
}

void record(Report& r, const char* identity, std::size_t i, std::size_t j, const Vec& lhs, const Vec& rhs) {
  ++r.instances_checked;
  if (lhs == rhs) return;
  r.add({identity, {i, j}, to_sparse(lhs - rhs)});
}

}  // namespace

LinOp mult_left(const Dialgebra& d, Product product, std::span<const Rational> a) {
  require_element(a, d.dim(), d.name());
  const auto& t = d.prod(product);
  LinOp op = LinOp::zero(d.name(), d.dim());
  for (std::size_t j = 0; j < d.dim(); ++j) op.set_column(j, t.right_basis(a, j));
  return op;
}

LinOp mult_right(const Dialgebra& d, Product product, std::span<const Rational> a) {
  require_element(a, d.dim(), d.name());
  const auto& t = d.prod(product);
  LinOp op = LinOp::zero(d.name(), d.dim());
  for (std::size_t j = 0; j < d.dim(); ++j) op.set_column(j, t.left_basis(j, a));
  return op;
}

LinOp inner_ad(const Dialgebra& d, std::span<const Rational> a) {
  return mult_right(d, Product::dashv, a) - mult_left(d, Product::vdash, a);
}

LinOp inner_Ad(const Dialgebra& d, std::span<const Rational> a) {
  return mult_right(d, Product::vdash, a) - mult_left(d, Product::dashv, a);
}

LinOp algebra_inner_ad(const FiniteAlgebra& alg, std::span<const Rational> x) {
  require_element(x, alg.dim(), alg.name());
  const auto& t = alg.structure();
  LinOp op = LinOp::zero(alg.name(), alg.dim());
  for (std::size_t j = 0; j < alg.dim(); ++j) op.set_column(j, t.left_basis(j, x) - t.right_basis(x, j));
  return op;
}

Report is_derivation(const Dialgebra& d, const LinOp& op) {
  require_endo_of(op, d.name(), d.dim(), "is_derivation");
  const auto cols = columns_of(op);
  const std::size_t n = d.dim();
  return pair_check("derivation", n, [&](std::size_t i, std::size_t j, Report& r) {
    for (const Product p : {Product::vdash, Product::dashv}) {
      const auto& t = d.prod(p);
      const Vec lhs = apply_sparse(cols, t.product(i, j), n);
      const Vec rhs = t.right_basis(cols[i], j) + t.left_basis(i, cols[j]);
      record(r, p == Product::vdash ? "d(x⊢y) = d(x)⊢y + x⊢d(y)" : "d(x⊣y) = d(x)⊣y + x⊣d(y)", i, j, lhs, rhs);
    }
  });
}

Report is_diderivation(const Dialgebra& d, const LinOp& op) {
  require_endo_of(op, d.name(), d.dim(), "is_diderivation");
  const auto cols = columns_of(op);
  const std::size_t n = d.dim();
  const auto& L = d.left_prod();
  const auto& R = d.right_prod();
  return pair_check("diderivation", n, [&](std::size_t i, std::size_t j, Report& r) {
    const Vec on_vdash = apply_sparse(cols, L.product(i, j), n);
    const Vec on_dashv = apply_sparse(cols, R.product(i, j), n);
    const Vec mixed = R.right_basis(cols[i], j) + L.left_basis(i, cols[j]);
    record(r, "δ(x⊢y) = δ(x⊣y)", i, j, on_vdash, on_dashv);
    record(r, "δ(x⊢y) = δ(x)⊣y + x⊢δ(y)", i, j, on_vdash, mixed);
  });
}

Report is_derivation(const FiniteAlgebra& a, const LinOp& op) {
  require_endo_of(op, a.name(), a.dim(), "is_derivation");
  const auto cols = columns_of(op);
  const auto& t = a.structure();
  return pair_check("algebra derivation", a.dim(), [&](std::size_t i, std::size_t j, Report& r) {
    const Vec lhs = apply_sparse(cols, t.product(i, j), a.dim());
    const Vec rhs = t.right_basis(cols[i], j) + t.left_basis(i, cols[j]);
    record(r, "d(xy) = d(x)y + xd(y)", i, j, lhs, rhs);
  });
}

Report is_left_derivation(const FiniteAlgebra& a, const LinOp& op) {
  require_endo_of(op, a.name(), a.dim(), "is_left_derivation");
  const auto cols = columns_of(op);
  const auto& t = a.structure();
  return pair_check("left derivation", a.dim(), [&](std::size_t i, std::size_t j, Report& r) {
    const Vec lhs = apply_sparse(cols, t.product(i, j), a.dim());
    const Vec rhs = t.left_basis(i, cols[j]) + t.left_basis(j, cols[i]);
    record(r, "δ(xy) = xδ(y) + yδ(x)", i, j, lhs, rhs);
  });
}

Report is_right_derivation(const FiniteAlgebra& a, const LinOp& op) {
  require_endo_of(op, a.name(), a.dim(), "is_right_derivation");
  const auto cols = columns_of(op);
  const auto& t = a.structure();
  return pair_check("right derivation", a.dim(), [&](std::size_t i, std::size_t j, Report& r) {
    const Vec lhs = apply_sparse(cols, t.product(i, j), a.dim());
    const Vec rhs = t.right_basis(cols[i], j) + t.right_basis(cols[j], i);
    record(r, "δ(xy) = δ(x)y + δ(y)x", i, j, lhs, rhs);
  });
}

}  // namespace dialg
