#include "dialg/structure.hpp"

#include <algorithm>

#include "dialg/errors.hpp"

namespace dialg {

void StructureTensor::check(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw ContractError("structure tensor index out of range");
}

Rational StructureTensor::coeff(std::size_t i, std::size_t j, std::size_t k) const {
  check(i, j);
  for (const auto& t : product(i, j)) {
    if (t.index == k) return t.coeff;
  }
  return Rational(0);
}

void StructureTensor::add(std::size_t i, std::size_t j, std::size_t k, const Rational& c) {
  check(i, j);
  if (k >= dim_) throw ContractError("structure tensor output index out of range");
  if (c.is_zero()) return;
  auto& entry = table_[i * dim_ + j];
  auto it = std::lower_bound(entry.begin(), entry.end(), k,
                             [](const Term& t, std::size_t idx) { return t.index < idx; });
  if (it != entry.end() && it->index == k) {
    it->coeff += c;
    if (it->coeff.is_zero()) entry.erase(it);
  } else {
    entry.insert(it, Term{k, c});
  }
}

void StructureTensor::set_product(std::size_t i, std::size_t j, const Vec& value) {
  check(i, j);
  if (value.size() != dim_) throw ContractError("structure tensor: product vector has wrong length");
  table_[i * dim_ + j] = to_sparse(value);
}

Vec StructureTensor::multiply(std::span<const Rational> v, std::span<const Rational> w) const {
  if (v.size() != dim_ || w.size() != dim_) throw ContractError("multiply: dimension mismatch");
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (w[j].is_zero()) continue;
      const Rational c = v[i] * w[j];
      for (const auto& t : product(i, j)) out[t.index].add_product(c, t.coeff);
    }
  }
  return out;
}

Vec StructureTensor::left_basis(std::size_t i, std::span<const Rational> w) const {
  if (w.size() != dim_) throw ContractError("multiply: dimension mismatch");
  Vec out(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (w[j].is_zero()) continue;
    for (const auto& t : product(i, j)) out[t.index].add_product(w[j], t.coeff);
  }
  return out;
}

Vec StructureTensor::right_basis(std::span<const Rational> v, std::size_t j) const {
  if (v.size() != dim_) throw ContractError("multiply: dimension mismatch");
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (v[i].is_zero()) continue;
    for (const auto& t : product(i, j)) out[t.index].add_product(v[i], t.coeff);
  }
  return out;
}

StructureTensor StructureTensor::reversed() const {
  StructureTensor r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) r.table_[i * dim_ + j] = product(j, i);
  }
  return r;
}

std::size_t StructureTensor::nonzeros() const {
  std::size_t n = 0;
  for (const auto& e : table_) n += e.size();
  return n;
}

bool operator==(const StructureTensor& a, const StructureTensor& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t idx = 0; idx < a.table_.size(); ++idx) {
    const auto& x = a.table_[idx];
    const auto& y = b.table_[idx];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t].index != y[t].index || x[t].coeff != y[t].coeff) return false;
    }
  }
  return true;
}

}  // namespace dialg
