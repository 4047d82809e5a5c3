#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "dialg/rational.hpp"

namespace dialg {

/// Sparse univariate polynomial over Q, optionally living in k[x]/(x^{N+1}).
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality. With a bound N every stored degree is <= N.
class Poly {
 public:
  using Degree = std::size_t;

  Poly() = default;
  explicit Poly(std::optional<Degree> bound) : bound_(bound) {}
  Poly(std::initializer_list<std::pair<Degree, Rational>> terms, std::optional<Degree> bound = std::nullopt);

  static Poly constant(const Rational& c, std::optional<Degree> bound = std::nullopt);
  static Poly monomial(Degree d, const Rational& c = Rational(1), std::optional<Degree> bound = std::nullopt);

  [[nodiscard]] const std::map<Degree, Rational>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::optional<Degree> bound() const { return bound_; }
  [[nodiscard]] Rational coeff(Degree d) const;
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] std::optional<Degree> degree() const;

  /// Adds c*x^d; terms beyond the bound are discarded.
  void add_term(Degree d, const Rational& c);

  [[nodiscard]] std::string to_string(const std::string& var = "x") const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::map<Degree, Rational> coeffs_;
  std::optional<Degree> bound_;
};

Poly operator+(const Poly& p, const Poly& q);
Poly operator-(const Poly& p, const Poly& q);
Poly operator*(const Rational& c, const Poly& p);

/// Ordinary product, reduced modulo x^{bound+1} when bounded.
/// Throws ContractError if the bounds differ.
Poly poly_mul(const Poly& p, const Poly& q);

/// P(0).
Rational poly_eval0(const Poly& p);

/// The perm product P o Q := P(0) Q.
Poly perm_circ(const Poly& p, const Poly& q);

}  // namespace dialg
