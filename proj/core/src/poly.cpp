#include "dialg/poly.hpp"

#include "dialg/errors.hpp"

namespace dialg {

namespace {

void require_same_bound(const Poly& p, const Poly& q, const char* op) {
  if (p.bound() != q.bound()) {
    throw ContractError(std::string(op) + ": polynomials have different truncation bounds");
  }
}

}  // namespace

Poly::Poly(std::initializer_list<std::pair<Degree, Rational>> terms, std::optional<Degree> bound)
    : bound_(bound) {
  for (const auto& [d, c] : terms) add_term(d, c);
}

Poly Poly::constant(const Rational& c, std::optional<Degree> bound) {
  Poly p(bound);
  p.add_term(0, c);
  return p;
}

Poly Poly::monomial(Degree d, const Rational& c, std::optional<Degree> bound) {
  Poly p(bound);
  p.add_term(d, c);
  return p;
}

Rational Poly::coeff(Degree d) const {
  const auto it = coeffs_.find(d);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::optional<Poly::Degree> Poly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

void Poly::add_term(Degree d, const Rational& c) {
  if (c.is_zero()) return;
  if (bound_ && d > *bound_) return;
  auto [it, inserted] = coeffs_.try_emplace(d, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

std::string Poly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [d, c] : coeffs_) {
    std::string mono = d == 0 ? "" : (d == 1 ? var : var + "^" + std::to_string(d));
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    const Rational mag = c.sign() < 0 ? -c : c;
    if (d == 0) {
      out += mag.to_string();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.to_string() + "*" + mono;
    }
  }
  return out;
}

Poly operator+(const Poly& p, const Poly& q) {
  require_same_bound(p, q, "poly add");
  Poly r = p;
  for (const auto& [d, c] : q.coeffs()) r.add_term(d, c);
  return r;
}

Poly operator-(const Poly& p, const Poly& q) {
  require_same_bound(p, q, "poly sub");
  Poly r = p;
  for (const auto& [d, c] : q.coeffs()) r.add_term(d, -c);
  return r;
}

Poly operator*(const Rational& c, const Poly& p) {
  Poly r(p.bound());
  for (const auto& [d, a] : p.coeffs()) r.add_term(d, c * a);
  return r;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  require_same_bound(p, q, "poly_mul");
  Poly r(p.bound());
  for (const auto& [dp, cp] : p.coeffs()) {
    for (const auto& [dq, cq] : q.coeffs()) r.add_term(dp + dq, cp * cq);
  }
  return r;
}

Rational poly_eval0(const Poly& p) { return p.coeff(0); }

Poly perm_circ(const Poly& p, const Poly& q) {
  require_same_bound(p, q, "perm_circ");
  return poly_eval0(p) * q;
}

}  // namespace dialg
