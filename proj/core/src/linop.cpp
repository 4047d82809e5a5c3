#include "dialg/linop.hpp"

#include "dialg/errors.hpp"

namespace dialg {

LinOp::LinOp(std::string domain_tag, std::string codomain_tag, std::size_t domain_dim, std::size_t codomain_dim)
    : domain_tag_(std::move(domain_tag)),
      codomain_tag_(std::move(codomain_tag)),
      rows_(codomain_dim),
      cols_(domain_dim),
      data_(domain_dim * codomain_dim) {
  if (domain_dim == 0 || codomain_dim == 0) throw ContractError("LinOp: dimensions must be positive");
}

LinOp LinOp::zero(const std::string& tag, std::size_t dim) { return LinOp(tag, tag, dim, dim); }

LinOp LinOp::identity(const std::string& tag, std::size_t dim) {
  LinOp op(tag, tag, dim, dim);
  for (std::size_t i = 0; i < dim; ++i) op.at(i, i) = Rational(1);
  return op;
}

LinOp LinOp::from_flat(const std::string& tag, std::size_t dim, std::span<const Rational> flat) {
  if (flat.size() != dim * dim) throw ContractError("LinOp::from_flat: expected dim^2 entries");
  LinOp op(tag, tag, dim, dim);
  std::copy(flat.begin(), flat.end(), op.data_.begin());
  return op;
}

Vec LinOp::column(std::size_t col) const {
  if (col >= cols_) throw ContractError("LinOp::column out of range");
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, col);
  return v;
}

void LinOp::set_column(std::size_t col, std::span<const Rational> values) {
  if (col >= cols_ || values.size() != rows_) throw ContractError("LinOp::set_column shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) at(r, col) = values[r];
}

void LinOp::add_to_column(std::size_t col, std::span<const Rational> values) {
  if (col >= cols_ || values.size() != rows_) throw ContractError("LinOp::add_to_column shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!values[r].is_zero()) at(r, col) += values[r];
  }
}

Vec LinOp::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw ContractError("LinOp::apply: vector length does not match domain");
  Vec out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) out[r].add_product(at(r, c), v[c]);
  }
  return out;
}

bool LinOp::is_zero() const { return dialg::is_zero(data_); }

void LinOp::require_same_shape(const LinOp& o, const char* op) const {
  if (domain_tag_ != o.domain_tag_ || codomain_tag_ != o.codomain_tag_ || rows_ != o.rows_ || cols_ != o.cols_) {
    throw ContractError(std::string("LinOp ") + op + ": operators act on different spaces (" + domain_tag_ +
                        " vs " + o.domain_tag_ + ")");
  }
}

LinOp& LinOp::operator+=(const LinOp& o) {
  require_same_shape(o, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

LinOp& LinOp::operator-=(const LinOp& o) {
  require_same_shape(o, "sub");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

LinOp operator*(const Rational& c, LinOp a) {
  for (auto& x : a.data_) x *= c;
  return a;
}

LinOp compose(const LinOp& f, const LinOp& g) {
  if (g.codomain_tag() != f.domain_tag() || g.codomain_dim() != f.domain_dim()) {
    throw ContractError("compose: '" + g.codomain_tag() + "' does not feed '" + f.domain_tag() + "'");
  }
  LinOp out(g.domain_tag(), f.codomain_tag(), g.domain_dim(), f.codomain_dim());
  for (std::size_t k = 0; k < f.domain_dim(); ++k) {
    for (std::size_t c = 0; c < g.domain_dim(); ++c) {
      const Rational& gk = g.at(k, c);
      if (gk.is_zero()) continue;
      for (std::size_t r = 0; r < f.codomain_dim(); ++r) out.at(r, c).add_product(f.at(r, k), gk);
    }
  }
  return out;
}

LinOp bracket(const LinOp& f, const LinOp& g) {
  if (!f.is_endomorphism() || !g.is_endomorphism() || f.domain_tag() != g.domain_tag() ||
      f.domain_dim() != g.domain_dim()) {
    throw ContractError("bracket: operators must be endomorphisms of the same space");
  }
  return compose(f, g) - compose(g, f);
}

}  // namespace dialg
