#include "dialg/vec.hpp"

#include "dialg/errors.hpp"
#include "dialg/report.hpp"

namespace dialg {

void axpy(Vec& y, const Rational& c, std::span<const Rational> x) {
  if (y.size() != x.size()) throw ContractError("axpy: length mismatch");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) y[i].add_product(c, x[i]);
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ContractError("vector add: length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ContractError("vector sub: length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scaled(const Rational& c, std::span<const Rational> v) {
  Vec r(v.begin(), v.end());
  for (auto& x : r) x *= c;
  return r;
}

SparseVec to_sparse(std::span<const Rational> v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) s.push_back({i, v[i]});
  }
  return s;
}

Vec to_dense(const SparseVec& v, std::size_t n) {
  Vec d(n);
  for (const auto& t : v) d.at(t.index) += t.coeff;
  return d;
}

void Report::merge(const Report& other) {
  instances_checked += other.instances_checked;
  for (const auto& w : other.witnesses) {
    if (witnesses.size() < witness_limit) witnesses.push_back(w);
  }
  violation_count += other.violation_count;
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

}  // namespace dialg
