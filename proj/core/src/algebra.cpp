#include "dialg/algebra.hpp"

#include <charconv>

#include "dialg/errors.hpp"
#include "dialg/parallel.hpp"
#include "dialg/poly.hpp"

namespace dialg {

namespace {

/// (sum_p v_p e_p) * e_l
SparseVec sparse_times_basis(const StructureTensor& t, const SparseVec& v, std::size_t l) {
  Vec out(t.dim());
  for (const auto& term : v) {
    for (const auto& r : t.product(term.index, l)) out[r.index].add_product(term.coeff, r.coeff);
  }
  return to_sparse(out);
}

/// e_i * (sum_p v_p e_p)
SparseVec basis_times_sparse(const StructureTensor& t, std::size_t i, const SparseVec& v) {
  Vec out(t.dim());
  for (const auto& term : v) {
    for (const auto& r : t.product(i, term.index)) out[r.index].add_product(term.coeff, r.coeff);
  }
  return to_sparse(out);
}

SparseVec difference(const SparseVec& a, const SparseVec& b, std::size_t dim) {
  return to_sparse(to_dense(a, dim) - to_dense(b, dim));
}

/// Runs `per_triple(i, j, l, report)` over all basis triples, parallel over i,
/// merging in index order.
template <typename Fn>
Report triple_check(const std::string& name, std::size_t dim, Fn per_triple) {
  std::vector<Report> parts(dim);
  parallel_for(dim, [&](std::size_t i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t l = 0; l < dim; ++l) per_triple(i, j, l, parts[i]);
    }
  });
  Report report;
  report.check = name;
  for (const auto& p : parts) report.merge(p);
  return report;
}

std::string power_label(const std::string& var, std::size_t d) {
  if (d == 0) return "1";
  if (d == 1) return var;
  return var + "^" + std::to_string(d);
}

}  // namespace

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::associative: return "associative";
    case Flavor::left_perm: return "left_perm";
    case Flavor::right_perm: return "right_perm";
  }
  return "associative";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "associative") return Flavor::associative;
  if (s == "left_perm") return Flavor::left_perm;
  if (s == "right_perm") return Flavor::right_perm;
  throw FormatError("unknown algebra flavor '" + std::string(s) + "'");
}

FiniteAlgebra::FiniteAlgebra(std::string name, Flavor flavor, std::vector<std::string> basis_labels,
                             StructureTensor structure, std::optional<Vec> unit)
    : name_(std::move(name)),
      flavor_(flavor),
      labels_(std::move(basis_labels)),
      structure_(std::move(structure)),
      unit_(std::move(unit)) {
  if (labels_.empty()) throw ContractError("algebra '" + name_ + "' must have positive dimension");
  if (structure_.dim() != labels_.size()) {
    throw ContractError("algebra '" + name_ + "': structure dimension does not match basis");
  }
  if (unit_ && unit_->size() != labels_.size()) {
    throw ContractError("algebra '" + name_ + "': unit vector has wrong length");
  }
}

Vec algebra_mul(const FiniteAlgebra& a, std::span<const Rational> v, std::span<const Rational> w) {
  if (v.size() != a.dim() || w.size() != a.dim()) {
    throw ContractError("algebra_mul: vector length does not match dim of '" + a.name() + "'");
  }
  return a.structure().multiply(v, w);
}

Report validate_associative(const FiniteAlgebra& a) {
  const auto& t = a.structure();
  return triple_check("associative", a.dim(), [&](std::size_t i, std::size_t j, std::size_t l, Report& r) {
    ++r.instances_checked;
    const auto lhs = sparse_times_basis(t, t.product(i, j), l);
    const auto rhs = basis_times_sparse(t, i, t.product(j, l));
    auto diff = difference(lhs, rhs, a.dim());
    if (!diff.empty()) r.add({"(xy)z = x(yz)", {i, j, l}, std::move(diff)});
  });
}

Report validate_perm(const FiniteAlgebra& a, Side side) {
  const auto& t = a.structure();
  if (side == Side::left) {
    return triple_check("left_perm", a.dim(), [&](std::size_t i, std::size_t j, std::size_t l, Report& r) {
      ++r.instances_checked;
      const auto lhs = sparse_times_basis(t, t.product(i, j), l);
      const auto rhs = sparse_times_basis(t, t.product(j, i), l);
      auto diff = difference(lhs, rhs, a.dim());
      if (!diff.empty()) r.add({"(xy)z = (yx)z", {i, j, l}, std::move(diff)});
    });
  }
  return triple_check("right_perm", a.dim(), [&](std::size_t i, std::size_t j, std::size_t l, Report& r) {
    ++r.instances_checked;
    const auto lhs = basis_times_sparse(t, i, t.product(j, l));
    const auto rhs = basis_times_sparse(t, i, t.product(l, j));
    auto diff = difference(lhs, rhs, a.dim());
    if (!diff.empty()) r.add({"x(yz) = x(zy)", {i, j, l}, std::move(diff)});
  });
}

Report check_unit(const FiniteAlgebra& a) {
  Report r;
  r.check = "unit";
  if (!a.unit()) return r;
  const auto& u = *a.unit();
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const Vec e = basis_vec(a.dim(), j);
    r.instances_checked += 2;
    auto left = to_sparse(algebra_mul(a, u, e) - e);
    if (!left.empty()) r.add({"u x = x", {j}, std::move(left)});
    auto right = to_sparse(algebra_mul(a, e, u) - e);
    if (!right.empty()) r.add({"x u = x", {j}, std::move(right)});
  }
  return r;
}

Report validate_flavor(const FiniteAlgebra& a) {
  Report r = validate_associative(a);
  r.check = std::string(to_string(a.flavor()));
  if (a.flavor() == Flavor::left_perm) r.merge(validate_perm(a, Side::left));
  if (a.flavor() == Flavor::right_perm) r.merge(validate_perm(a, Side::right));
  r.merge(check_unit(a));
  return r;
}

FiniteAlgebra perm_quotient(std::size_t n) {
  const std::size_t dim = n + 1;
  std::vector<std::string> labels;
  std::vector<Poly> monomials;
  for (std::size_t d = 0; d < dim; ++d) {
    labels.push_back(power_label("x", d));
    monomials.push_back(Poly::monomial(d, Rational(1), n));
  }
  StructureTensor t(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Poly prod = perm_circ(monomials[i], monomials[j]);
      for (const auto& [d, c] : prod.coeffs()) t.add(i, j, d, c);
    }
  }
  return FiniteAlgebra("P0[" + std::to_string(n) + "]", Flavor::left_perm, std::move(labels), std::move(t));
}

FiniteAlgebra truncated_poly(std::size_t n, const std::string& var) {
  if (n == 0) throw ContractError("truncated_poly: n must be >= 1");
  const std::size_t bound = n - 1;
  std::vector<std::string> labels;
  std::vector<Poly> monomials;
  for (std::size_t d = 0; d < n; ++d) {
    labels.push_back(power_label(var, d));
    monomials.push_back(Poly::monomial(d, Rational(1), bound));
  }
  StructureTensor t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Poly prod = poly_mul(monomials[i], monomials[j]);
      for (const auto& [d, c] : prod.coeffs()) t.add(i, j, d, c);
    }
  }
  return FiniteAlgebra("k[" + var + "]/(" + var + "^" + std::to_string(n) + ")", Flavor::associative,
                       std::move(labels), std::move(t), basis_vec(n, 0));
}

FiniteAlgebra matrix_algebra(std::size_t n) {
  if (n == 0) throw ContractError("matrix_algebra: n must be >= 1");
  const std::size_t dim = n * n;
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) labels.push_back("E" + std::to_string(r + 1) + std::to_string(c + 1));
  }
  // E_ab E_cd = [b == c] E_ad
  StructureTensor t(dim);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) t.add(a * n + b, b * n + d, a * n + d, Rational(1));
    }
  }
  Vec unit(dim);
  for (std::size_t r = 0; r < n; ++r) unit[r * n + r] = Rational(1);
  return FiniteAlgebra("M" + std::to_string(n), Flavor::associative, std::move(labels), std::move(t),
                       std::move(unit));
}

FiniteAlgebra group_algebra_c2() {
  StructureTensor t(2);
  t.add(0, 0, 0, Rational(1));
  t.add(0, 1, 1, Rational(1));
  t.add(1, 0, 1, Rational(1));
  t.add(1, 1, 0, Rational(1));
  return FiniteAlgebra("k[C2]", Flavor::associative, {"1", "g"}, std::move(t), basis_vec(2, 0));
}

FiniteAlgebra field_algebra() {
  StructureTensor t(1);
  t.add(0, 0, 0, Rational(1));
  return FiniteAlgebra("Q", Flavor::associative, {"1"}, std::move(t), basis_vec(1, 0));
}

FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  std::vector<std::string> labels;
  labels.reserve(da * db);
  for (const auto& la : a.basis_labels()) {
    for (const auto& lb : b.basis_labels()) labels.push_back(la + "⊗" + lb);
  }
  StructureTensor t(da * db);
  for (std::size_t i1 = 0; i1 < da; ++i1) {
    for (std::size_t j1 = 0; j1 < da; ++j1) {
      const auto& pa = a.structure().product(i1, j1);
      if (pa.empty()) continue;
      for (std::size_t i2 = 0; i2 < db; ++i2) {
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          for (const auto& ta : pa) {
            for (const auto& tb : b.structure().product(i2, j2)) {
              t.add(i1 * db + i2, j1 * db + j2, ta.index * db + tb.index, ta.coeff * tb.coeff);
            }
          }
        }
      }
    }
  }
  Flavor flavor = Flavor::associative;
  if (a.flavor() != Flavor::associative) flavor = a.flavor();
  else if (b.flavor() != Flavor::associative) flavor = b.flavor();

  std::optional<Vec> unit;
  if (a.unit() && b.unit()) {
    Vec u(da * db);
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < db; ++j) u[i * db + j] = (*a.unit())[i] * (*b.unit())[j];
    }
    unit = std::move(u);
  }
  return FiniteAlgebra(a.name() + "⊗" + b.name(), flavor, std::move(labels), std::move(t), std::move(unit));
}

FiniteAlgebra perm_window(std::size_t n1, std::size_t n2) {
  const auto p = tensor_algebra(perm_quotient(n1), truncated_poly(n2 + 1, "x"));
  return FiniteAlgebra("P[" + std::to_string(n1) + "," + std::to_string(n2) + "]", Flavor::left_perm,
                       p.basis_labels(), p.structure());
}

FiniteAlgebra catalog_algebra(std::string_view name) {
  auto number_after = [&](std::size_t prefix) -> std::size_t {
    std::size_t n = 0;
    const auto* first = name.data() + prefix;
    const auto* last = name.data() + name.size();
    const auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || ptr != last || prefix == name.size()) {
      throw FormatError("unknown catalog algebra '" + std::string(name) + "'");
    }
    return n;
  };
  if (name == "Q") return field_algebra();
  if (name == "C2") return group_algebra_c2();
  if (name.starts_with("perm")) return perm_quotient(number_after(4));
  if (name.starts_with("M")) return matrix_algebra(number_after(1));
  if (name.starts_with("T")) return truncated_poly(number_after(1));
  throw FormatError("unknown catalog algebra '" + std::string(name) + "'");
}

}  // namespace dialg
