#include "dialg/solver.hpp"

#include <algorithm>

#include "dialg/errors.hpp"
#include "dialg/parallel.hpp"

namespace dialg {

namespace {

/// a + c * b for sorted sparse vectors.
SparseVec sparse_axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < a.size() || ib < b.size()) {
    if (ib == b.size() || (ia < a.size() && a[ia].index < b[ib].index)) {
      out.push_back(a[ia++]);
    } else if (ia == a.size() || b[ib].index < a[ia].index) {
      out.push_back({b[ib].index, c * b[ib].coeff});
      ++ib;
    } else {
      Rational v = a[ia].coeff;
      v.add_product(c, b[ib].coeff);
      if (!v.is_zero()) out.push_back({a[ia].index, std::move(v)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

void make_monic(SparseVec& row) {
  if (row.empty() || row.front().coeff == Rational(1)) return;
  const Rational inv = Rational(1) / row.front().coeff;
  for (auto& t : row) t.coeff *= inv;
}

Rational entry(const SparseVec& row, std::size_t col) {
  const auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const Term& t, std::size_t c) { return t.index < c; });
  return (it != row.end() && it->index == col) ? it->coeff : Rational(0);
}

/// Accumulates the rows of one constraint block: one row per output coordinate.
class RowBuilder {
 public:
  explicit RowBuilder(std::size_t outputs) : rows_(outputs) {}

  void add(std::size_t m, std::size_t unknown, const Rational& c) {
    if (!c.is_zero()) rows_[m].push_back({unknown, c});
  }

  void flush(const char* identity, std::size_t i, std::size_t j, std::vector<ConstraintRow>& out) {
    for (std::size_t m = 0; m < rows_.size(); ++m) {
      auto& r = rows_[m];
      if (r.empty()) continue;
      std::sort(r.begin(), r.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
      SparseVec merged;
      for (auto& t : r) {
        if (!merged.empty() && merged.back().index == t.index) {
          merged.back().coeff += t.coeff;
          if (merged.back().coeff.is_zero()) merged.pop_back();
        } else {
          merged.push_back(std::move(t));
        }
      }
      r.clear();
      if (!merged.empty()) out.push_back({std::move(merged), identity, i, j, m});
    }
  }

 private:
  std::vector<SparseVec> rows_;
};

// Linearized pieces of a Leibniz-type identity evaluated on (e_i, e_j).
// The operator unknown d[r][c] has index r * n + c.
enum class Piece { apply, derived_first, derived_second };

struct PieceSpec {
  Piece kind;
  const StructureTensor* tensor;
  bool swapped;  // use (e_j, e_i) instead of (e_i, e_j)
  int sign;
};

struct IdentitySpec {
  const char* name;
  std::vector<PieceSpec> pieces;
};

void add_piece(RowBuilder& rb, const PieceSpec& piece, std::size_t i, std::size_t j, std::size_t n) {
  const auto& t = *piece.tensor;
  const Rational sign(piece.sign);
  const std::size_t a = piece.swapped ? j : i;
  const std::size_t b = piece.swapped ? i : j;
  switch (piece.kind) {
    case Piece::apply:  // d(e_a * e_b)
      for (const auto& term : t.product(a, b)) {
        const Rational c = sign * term.coeff;
        for (std::size_t m = 0; m < n; ++m) rb.add(m, m * n + term.index, c);
      }
      break;
    case Piece::derived_first:  // d(e_a) * e_b = sum_p d[p][a] (e_p * e_b)
      for (std::size_t p = 0; p < n; ++p) {
        for (const auto& term : t.product(p, b)) rb.add(term.index, p * n + a, sign * term.coeff);
      }
      break;
    case Piece::derived_second:  // e_a * d(e_b) = sum_p d[p][b] (e_a * e_p)
      for (std::size_t p = 0; p < n; ++p) {
        for (const auto& term : t.product(a, p)) rb.add(term.index, p * n + b, sign * term.coeff);
      }
      break;
  }
}

ConstraintSystem leibniz_system(std::string tag, std::size_t n, std::vector<IdentitySpec> identities) {
  ConstraintSystem sys;
  sys.tag = std::move(tag);
  sys.op_dim = n;
  sys.unknowns = n * n;
  sys.block_count = n;
  sys.block = [n, ids = std::move(identities)](std::size_t i) {
    std::vector<ConstraintRow> rows;
    RowBuilder rb(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& id : ids) {
        for (const auto& piece : id.pieces) add_piece(rb, piece, i, j, n);
        rb.flush(id.name, i, j, rows);
      }
    }
    return rows;
  };
  return sys;
}

std::vector<IdentitySpec> derivation_identity(const StructureTensor& t, const char* name) {
  return {{name,
           {{Piece::apply, &t, false, 1}, {Piece::derived_first, &t, false, -1}, {Piece::derived_second, &t, false, -1}}}};
}

}  // namespace

ConstraintSystem ConstraintSystem::from_rows(std::size_t unknowns, std::vector<ConstraintRow> rows) {
  ConstraintSystem sys;
  sys.tag = "raw";
  sys.unknowns = unknowns;
  sys.block_count = 1;
  for (auto& r : rows) {
    std::sort(r.coeffs.begin(), r.coeffs.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    for (const auto& t : r.coeffs) {
      if (t.index >= unknowns) throw ContractError("constraint row refers to an unknown out of range");
    }
  }
  sys.block = [rows = std::move(rows)](std::size_t) { return rows; };
  return sys;
}

// Echelon ---------------------------------------------------------------------

SparseVec Echelon::reduce(SparseVec row, bool full) const {
  if (!full) {
    while (!row.empty() && pivots_[row.front().index]) {
      const Rational c = -row.front().coeff;
      row = sparse_axpy(row, c, *pivots_[row.front().index]);
    }
    return row;
  }
  std::size_t pos = 0;
  while (pos < row.size()) {
    const std::size_t col = row[pos].index;
    if (pivots_[col]) {
      const Rational c = -row[pos].coeff;
      row = sparse_axpy(row, c, *pivots_[col]);
      // entries before `col` are untouched because pivot rows start at their pivot
    } else {
      ++pos;
    }
  }
  return row;
}

bool Echelon::insert(SparseVec row) {
  row = reduce(std::move(row), false);
  if (row.empty()) return false;
  make_monic(row);
  const std::size_t lead = row.front().index;
  pivots_[lead] = std::move(row);
  ++rank_;
  return true;
}

std::vector<SparseVec> Echelon::reduced_rows() const {
  // Back substitution from the highest pivot down; each processed row only
  // keeps entries in non-pivot columns beyond its own pivot.
  std::vector<std::optional<SparseVec>> reduced(columns_);
  for (std::size_t c = columns_; c-- > 0;) {
    if (!pivots_[c]) continue;
    SparseVec row = *pivots_[c];
    std::size_t pos = 1;
    while (pos < row.size()) {
      const std::size_t col = row[pos].index;
      if (reduced[col]) {
        const Rational k = -row[pos].coeff;
        row = sparse_axpy(row, k, *reduced[col]);
      } else {
        ++pos;
      }
    }
    reduced[c] = std::move(row);
  }
  std::vector<SparseVec> out;
  for (auto& r : reduced) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

// SubspaceBasis ----------------------------------------------------------------

SubspaceBasis SubspaceBasis::from_vectors(std::string tag, std::size_t op_dim, std::size_t ambient,
                                          const std::vector<SparseVec>& vectors) {
  if (op_dim != 0 && op_dim * op_dim != ambient) throw ContractError("SubspaceBasis: op_dim^2 != ambient");
  Echelon ech(ambient);
  for (const auto& v : vectors) ech.insert(v);
  SubspaceBasis b;
  b.tag_ = std::move(tag);
  b.op_dim_ = op_dim;
  b.ambient_ = ambient;
  b.rows_ = ech.reduced_rows();
  for (const auto& r : b.rows_) b.pivot_cols_.push_back(r.front().index);
  return b;
}

SubspaceBasis SubspaceBasis::from_ops(const std::string& tag, std::size_t op_dim, const std::vector<LinOp>& ops) {
  std::vector<SparseVec> vecs;
  vecs.reserve(ops.size());
  for (const auto& op : ops) {
    if (op.domain_tag() != tag || !op.is_endomorphism() || op.domain_dim() != op_dim) {
      throw ContractError("SubspaceBasis::from_ops: operator does not act on '" + tag + "'");
    }
    vecs.push_back(flatten(op));
  }
  return from_vectors(tag, op_dim, op_dim * op_dim, vecs);
}

LinOp SubspaceBasis::basis_op(std::size_t k) const {
  if (op_dim_ == 0) throw ContractError("SubspaceBasis: vectors are not operators");
  LinOp op = LinOp::zero(tag_, op_dim_);
  for (const auto& t : rows_.at(k)) op.at(t.index / op_dim_, t.index % op_dim_) = t.coeff;
  return op;
}

std::vector<LinOp> SubspaceBasis::basis_ops() const {
  std::vector<LinOp> ops;
  for (std::size_t k = 0; k < rows_.size(); ++k) ops.push_back(basis_op(k));
  return ops;
}

LinOp SubspaceBasis::combination(const std::vector<Rational>& coeffs) const {
  if (op_dim_ == 0) throw ContractError("SubspaceBasis: vectors are not operators");
  if (coeffs.size() != rows_.size()) throw ContractError("SubspaceBasis::combination: wrong coefficient count");
  LinOp op = LinOp::zero(tag_, op_dim_);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    for (const auto& t : rows_[k]) op.at(t.index / op_dim_, t.index % op_dim_).add_product(coeffs[k], t.coeff);
  }
  return op;
}

bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.tag_ != b.tag_ || a.op_dim_ != b.op_dim_ || a.ambient_ != b.ambient_ || a.rows_.size() != b.rows_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.rows_.size(); ++k) {
    const auto& x = a.rows_[k];
    const auto& y = b.rows_[k];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t].index != y[t].index || x[t].coeff != y[t].coeff) return false;
    }
  }
  return true;
}

// Solving ------------------------------------------------------------------------

SubspaceBasis nullspace(const ConstraintSystem& system) {
  Echelon ech(system.unknowns);
  const std::size_t batch = std::max<std::size_t>(1, thread_count()) * 2;
  for (std::size_t start = 0; start < system.block_count; start += batch) {
    const std::size_t count = std::min(batch, system.block_count - start);
    std::vector<std::vector<ConstraintRow>> blocks(count);
    parallel_for(count, [&](std::size_t k) { blocks[k] = system.block(start + k); });
    for (auto& rows : blocks) {
      for (auto& r : rows) {
        if (ech.rank() == system.unknowns) break;
        ech.insert(std::move(r.coeffs));
      }
    }
  }
  // Kernel: one vector per free column f, x_f = 1, x_pivot = -R[pivot][f].
  const auto rref = ech.reduced_rows();
  std::vector<bool> is_pivot(system.unknowns, false);
  for (const auto& r : rref) is_pivot[r.front().index] = true;
  std::vector<std::size_t> free_index(system.unknowns, 0);
  std::vector<SparseVec> kernel;
  for (std::size_t c = 0; c < system.unknowns; ++c) {
    if (!is_pivot[c]) {
      free_index[c] = kernel.size();
      kernel.push_back({{c, Rational(1)}});
    }
  }
  for (const auto& r : rref) {
    const std::size_t p = r.front().index;
    for (std::size_t t = 1; t < r.size(); ++t) kernel[free_index[r[t].index]].push_back({p, -r[t].coeff});
  }
  for (auto& v : kernel) {
    std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  }
  return SubspaceBasis::from_vectors(system.tag, system.op_dim, system.unknowns, kernel);
}

std::string_view to_string(DerivationKind k) {
  switch (k) {
    case DerivationKind::two_sided: return "two_sided";
    case DerivationKind::left: return "left";
    case DerivationKind::right: return "right";
  }
  return "two_sided";
}

DerivationKind parse_derivation_kind(std::string_view s) {
  if (s == "two_sided") return DerivationKind::two_sided;
  if (s == "left") return DerivationKind::left;
  if (s == "right") return DerivationKind::right;
  throw FormatError("unknown derivation kind '" + std::string(s) + "'");
}

ConstraintSystem derivation_constraints(const Dialgebra& d) {
  auto ids = derivation_identity(d.left_prod(), "d(x⊢y) = d(x)⊢y + x⊢d(y)");
  auto right = derivation_identity(d.right_prod(), "d(x⊣y) = d(x)⊣y + x⊣d(y)");
  ids.insert(ids.end(), right.begin(), right.end());
  return leibniz_system(d.name(), d.dim(), std::move(ids));
}

ConstraintSystem diderivation_constraints(const Dialgebra& d) {
  const auto* L = &d.left_prod();
  const auto* R = &d.right_prod();
  std::vector<IdentitySpec> ids = {
      {"δ(x⊢y) = δ(x⊣y)", {{Piece::apply, L, false, 1}, {Piece::apply, R, false, -1}}},
      {"δ(x⊢y) = δ(x)⊣y + x⊢δ(y)",
       {{Piece::apply, L, false, 1}, {Piece::derived_first, R, false, -1}, {Piece::derived_second, L, false, -1}}},
  };
  return leibniz_system(d.name(), d.dim(), std::move(ids));
}

ConstraintSystem algebra_derivation_constraints(const FiniteAlgebra& a, DerivationKind kind) {
  const auto* t = &a.structure();
  std::vector<IdentitySpec> ids;
  switch (kind) {
    case DerivationKind::two_sided:
      ids = derivation_identity(*t, "d(xy) = d(x)y + xd(y)");
      break;
    case DerivationKind::left:
      ids = {{"δ(xy) = xδ(y) + yδ(x)",
              {{Piece::apply, t, false, 1}, {Piece::derived_second, t, false, -1}, {Piece::derived_second, t, true, -1}}}};
      break;
    case DerivationKind::right:
      ids = {{"δ(xy) = δ(x)y + δ(y)x",
              {{Piece::apply, t, false, 1}, {Piece::derived_first, t, false, -1}, {Piece::derived_first, t, true, -1}}}};
      break;
  }
  return leibniz_system(a.name(), a.dim(), std::move(ids));
}

SubspaceBasis derivation_space(const Dialgebra& d) { return nullspace(derivation_constraints(d)); }

SubspaceBasis diderivation_space(const Dialgebra& d) { return nullspace(diderivation_constraints(d)); }

SubspaceBasis algebra_derivation_space(const FiniteAlgebra& a, DerivationKind kind) {
  return nullspace(algebra_derivation_constraints(a, kind));
}

std::vector<Vec> center_basis(const FiniteAlgebra& a) {
  // Unknown z_p; constraint (z e_j - e_j z)_m = 0 for every j, m.
  const std::size_t n = a.dim();
  const auto& t = a.structure();
  std::vector<ConstraintRow> rows;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<SparseVec> per_m(n);
    for (std::size_t p = 0; p < n; ++p) {
      for (const auto& term : t.product(p, j)) per_m[term.index].push_back({p, term.coeff});
      for (const auto& term : t.product(j, p)) per_m[term.index].push_back({p, -term.coeff});
    }
    for (std::size_t m = 0; m < n; ++m) {
      Vec dense(n);
      for (const auto& term : per_m[m]) dense[term.index] += term.coeff;
      auto sparse = to_sparse(dense);
      if (!sparse.empty()) rows.push_back({std::move(sparse), "za = az", j, j, m});
    }
  }
  const auto basis = nullspace(ConstraintSystem::from_rows(n, std::move(rows)));
  std::vector<Vec> out;
  for (const auto& v : basis.vectors()) out.push_back(to_dense(v, n));
  return out;
}

SparseVec flatten(const LinOp& op) { return to_sparse(op.flat()); }

SpanCertificate span_contains(const SubspaceBasis& basis, const LinOp& op) {
  if (basis.op_dim() == 0 || op.domain_tag() != basis.tag() || !op.is_endomorphism() ||
      op.domain_dim() != basis.op_dim()) {
    throw ContractError("span_contains: operator on '" + op.domain_tag() + "' vs subspace of '" + basis.tag() + "'");
  }
  const SparseVec v = flatten(op);
  SpanCertificate cert;
  SparseVec residual = v;
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    const Rational c = entry(v, basis.pivots()[k]);
    cert.coefficients.push_back(c);
    if (!c.is_zero()) residual = sparse_axpy(residual, -c, basis.vectors()[k]);
  }
  if (residual.empty()) {
    cert.contained = true;
    return cert;
  }
  cert.coefficients.clear();
  // f = e_c* - sum_k R_k[c] e_{pivot_k}*: kills every basis row, f(op) = residual[c].
  const std::size_t c = residual.front().index;
  Vec f(basis.ambient());
  f[c] = Rational(1);
  for (std::size_t k = 0; k < basis.dimension(); ++k) f[basis.pivots()[k]] -= entry(basis.vectors()[k], c);
  cert.separating_functional = to_sparse(f);
  return cert;
}

bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.tag() != b.tag() || a.op_dim() != b.op_dim()) return false;
  if (a.dimension() != b.dimension()) return false;
  for (const auto& op : a.basis_ops()) {
    if (!span_contains(b, op).contained) return false;
  }
  for (const auto& op : b.basis_ops()) {
    if (!span_contains(a, op).contained) return false;
  }
  return true;
}

}  // namespace dialg
