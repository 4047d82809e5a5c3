#include "dialg/dialgebra.hpp"

#include <algorithm>

#include "dialg/errors.hpp"
#include "dialg/parallel.hpp"

namespace dialg {

namespace {

SparseVec times_basis(const StructureTensor& t, const SparseVec& v, std::size_t l) {
  Vec out(t.dim());
  for (const auto& term : v) {
    for (const auto& r : t.product(term.index, l)) out[r.index].add_product(term.coeff, r.coeff);
  }
  return to_sparse(out);
}

SparseVec basis_times(const StructureTensor& t, std::size_t i, const SparseVec& v) {
  Vec out(t.dim());
  for (const auto& term : v) {
    for (const auto& r : t.product(i, term.index)) out[r.index].add_product(term.coeff, r.coeff);
  }
  return to_sparse(out);
}

StructureTensor kp_product(const FiniteAlgebra& perm, const FiniteAlgebra& alg, bool swap_perm) {
  const std::size_t dp = perm.dim();
  const std::size_t da = alg.dim();
  StructureTensor t(dp * da);
  for (std::size_t p = 0; p < dp; ++p) {
    for (std::size_t q = 0; q < dp; ++q) {
      const auto& pq = swap_perm ? perm.structure().product(q, p) : perm.structure().product(p, q);
      if (pq.empty()) continue;
      for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < da; ++b) {
          for (const auto& tp : pq) {
            for (const auto& ta : alg.structure().product(a, b)) {
              t.add(p * da + a, q * da + b, tp.index * da + ta.index, tp.coeff * ta.coeff);
            }
          }
        }
      }
    }
  }
  return t;
}

}  // namespace

Dialgebra::Dialgebra(std::string name, std::vector<std::string> basis_labels, StructureTensor left_prod,
                     StructureTensor right_prod, std::optional<Provenance> provenance)
    : name_(std::move(name)),
      labels_(std::move(basis_labels)),
      left_(std::move(left_prod)),
      right_(std::move(right_prod)),
      provenance_(std::move(provenance)) {
  if (labels_.empty()) throw ContractError("dialgebra '" + name_ + "' must have positive dimension");
  if (left_.dim() != labels_.size() || right_.dim() != labels_.size()) {
    throw ContractError("dialgebra '" + name_ + "': product dimension does not match basis");
  }
  if (provenance_ && provenance_->perm.dim() * provenance_->algebra.dim() != labels_.size()) {
    throw ContractError("dialgebra '" + name_ + "': provenance factors do not match dimension");
  }
  if (provenance_ && provenance_->window && provenance_->window->perm_dim() != provenance_->perm.dim()) {
    throw ContractError("dialgebra '" + name_ + "': window does not match perm factor");
  }
}

Dialgebra Dialgebra::from_associative(const FiniteAlgebra& a) {
  return Dialgebra("assoc(" + a.name() + ")", a.basis_labels(), a.structure(), a.structure());
}

std::size_t Dialgebra::index(std::size_t perm_idx, std::size_t alg_idx) const {
  if (!provenance_) throw ContractError("dialgebra '" + name_ + "' has no tensor provenance");
  const std::size_t da = provenance_->algebra.dim();
  if (perm_idx >= provenance_->perm.dim() || alg_idx >= da) throw ContractError("tensor index out of range");
  return perm_idx * da + alg_idx;
}

Vec Dialgebra::pure_tensor(std::span<const Rational> p, std::span<const Rational> a) const {
  if (!provenance_) throw ContractError("dialgebra '" + name_ + "' has no tensor provenance");
  const std::size_t dp = provenance_->perm.dim();
  const std::size_t da = provenance_->algebra.dim();
  if (p.size() != dp || a.size() != da) throw ContractError("pure_tensor: factor length mismatch");
  Vec v(dp * da);
  for (std::size_t i = 0; i < dp; ++i) {
    if (p[i].is_zero()) continue;
    for (std::size_t k = 0; k < da; ++k) v[i * da + k] = p[i] * a[k];
  }
  return v;
}

Dialgebra kp_dialgebra(const FiniteAlgebra& perm, const FiniteAlgebra& algebra, std::optional<Window> window) {
  Report perm_report = validate_associative(perm);
  perm_report.merge(validate_perm(perm, Side::left));
  perm_report.check = "left perm factor";
  if (!perm_report.ok()) {
    throw RejectedInput("kp_dialgebra: '" + perm.name() + "' is not a left perm algebra", perm_report);
  }
  Report alg_report = validate_associative(algebra);
  alg_report.merge(check_unit(algebra));
  alg_report.check = "unital associative factor";
  if (!algebra.unit()) {
    alg_report.notes.push_back("no unit declared");
    ++alg_report.violation_count;
  }
  if (!alg_report.ok()) {
    throw RejectedInput("kp_dialgebra: '" + algebra.name() + "' is not unital associative", alg_report);
  }

  std::vector<std::string> labels;
  for (const auto& lp : perm.basis_labels()) {
    for (const auto& la : algebra.basis_labels()) labels.push_back(lp + "⊗" + la);
  }
  auto left = kp_product(perm, algebra, false);
  auto right = kp_product(perm, algebra, true);
  return Dialgebra("KP(" + perm.name() + "," + algebra.name() + ")", std::move(labels), std::move(left),
                   std::move(right), Provenance{perm, algebra, window});
}

Dialgebra kp_window(std::size_t n1, std::size_t n2, const FiniteAlgebra& algebra) {
  return kp_dialgebra(perm_window(n1, n2), algebra, Window{n1, n2});
}

Dialgebra kp_single(std::size_t n, const FiniteAlgebra& algebra) {
  return kp_dialgebra(perm_quotient(n), algebra, Window{n, std::nullopt});
}

Report validate_dialgebra(const Dialgebra& d) {
  const auto& L = d.left_prod();   // ⊢
  const auto& R = d.right_prod();  // ⊣
  const std::size_t n = d.dim();
  std::vector<Report> parts(n);
  parallel_for(n, [&](std::size_t i) {
    Report& r = parts[i];
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        auto check = [&](const char* name, const SparseVec& lhs, const SparseVec& rhs) {
          ++r.instances_checked;
          auto diff = to_sparse(to_dense(lhs, n) - to_dense(rhs, n));
          if (!diff.empty()) r.add({name, {i, j, l}, std::move(diff)});
        };
        // associativity of each product
        check("(x⊢y)⊢z = x⊢(y⊢z)", times_basis(L, L.product(i, j), l), basis_times(L, i, L.product(j, l)));
        check("(x⊣y)⊣z = x⊣(y⊣z)", times_basis(R, R.product(i, j), l), basis_times(R, i, R.product(j, l)));
        // compatibility axioms
        check("x⊣(y⊣z) = x⊣(y⊢z)", basis_times(R, i, R.product(j, l)), basis_times(R, i, L.product(j, l)));
        check("(x⊣y)⊢z = (x⊢y)⊢z", times_basis(L, R.product(i, j), l), times_basis(L, L.product(i, j), l));
        check("x⊢(y⊣z) = (x⊢y)⊣z", basis_times(L, i, R.product(j, l)), times_basis(R, L.product(i, j), l));
      }
    }
  });
  Report report;
  report.check = "dialgebra";
  for (const auto& p : parts) report.merge(p);
  return report;
}

bool is_left_unit(const Dialgebra& d, std::span<const Rational> e) {
  if (e.size() != d.dim()) throw ContractError("is_left_unit: element does not live in '" + d.name() + "'");
  for (std::size_t j = 0; j < d.dim(); ++j) {
    const Vec v = basis_vec(d.dim(), j);
    if (d.vdash(e, v) != v) return false;
  }
  return true;
}

std::vector<Vec> find_bar_units(const Dialgebra& d) {
  std::vector<Vec> candidates;
  for (std::size_t i = 0; i < d.dim(); ++i) candidates.push_back(basis_vec(d.dim(), i));
  if (d.provenance() && d.provenance()->algebra.unit()) {
    const auto& prov = *d.provenance();
    for (std::size_t p = 0; p < prov.perm.dim(); ++p) {
      Vec c = d.pure_tensor(basis_vec(prov.perm.dim(), p), *prov.algebra.unit());
      if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) candidates.push_back(std::move(c));
    }
  }
  std::vector<Vec> units;
  for (auto& c : candidates) {
    if (is_left_unit(d, c)) units.push_back(std::move(c));
  }
  return units;
}

}  // namespace dialg
