#include "dialg/decomposition.hpp"

#include "dialg/errors.hpp"
#include "dialg/operators.hpp"

namespace dialg {

namespace {

struct Layout {
  const FiniteAlgebra& perm;
  const FiniteAlgebra& alg;
  Window window;
  std::size_t da;
  Vec unit;

  [[nodiscard]] std::size_t n2() const { return window.slot2_dim() - 1; }
  [[nodiscard]] std::size_t i1_of(std::size_t p) const { return p / window.slot2_dim(); }
  [[nodiscard]] std::size_t i2_of(std::size_t p) const { return p % window.slot2_dim(); }
  [[nodiscard]] std::size_t index(std::size_t p, std::size_t k) const { return p * da + k; }
};

Layout layout_of(const Dialgebra& d) {
  const auto& prov = d.provenance();
  if (!prov || !prov->window) {
    throw ContractError("dialgebra '" + d.name() + "' is not a KP dialgebra over a perm window");
  }
  if (!prov->algebra.unit()) throw ContractError("dialgebra '" + d.name() + "': algebra factor has no unit");
  return Layout{prov->perm, prov->algebra, *prov->window, prov->algebra.dim(), *prov->algebra.unit()};
}

void require_part(const LinOp& op, const FiniteAlgebra& space, const char* what) {
  if (!op.is_endomorphism() || op.domain_tag() != space.name() || op.domain_dim() != space.dim()) {
    throw ContractError(std::string(what) + " must be an endomorphism of '" + space.name() + "', got '" +
                        op.domain_tag() + "'");
  }
}

/// Adds sum_k d_k(e_p) ⊗ u_l u_k to `col` (the R_{u_k} terms).
void add_perm_terms(const Layout& lay, const std::map<std::size_t, LinOp>& parts, std::size_t p, std::size_t l,
                    Vec& col) {
  for (const auto& [k, dk] : parts) {
    const auto& ulk = lay.alg.structure().product(l, k);
    if (ulk.empty()) continue;
    for (std::size_t q = 0; q < lay.perm.dim(); ++q) {
      const Rational& c = dk.at(q, p);
      if (c.is_zero()) continue;
      for (const auto& t : ulk) col[lay.index(q, t.index)].add_product(c, t.coeff);
    }
  }
}

/// Component of d(x) ⊗ ... along perm basis q as an A-endomorphism reading
/// inputs e_{p_in} ⊗ u_l.
LinOp slice(const Layout& lay, const LinOp& op, std::size_t p_out, std::size_t p_in) {
  LinOp part = LinOp::zero(lay.alg.name(), lay.da);
  for (std::size_t k = 0; k < lay.da; ++k) {
    for (std::size_t l = 0; l < lay.da; ++l) part.at(k, l) = op.at(lay.index(p_out, k), lay.index(p_in, l));
  }
  return part;
}

/// d_k(P) = coefficient of u_k in d(P ⊗ 1_A).
std::map<std::size_t, LinOp> extract_perm_parts(const Layout& lay, const LinOp& op) {
  std::map<std::size_t, LinOp> parts;
  for (std::size_t k = 0; k < lay.da; ++k) {
    LinOp dk = LinOp::zero(lay.perm.name(), lay.perm.dim());
    for (std::size_t p = 0; p < lay.perm.dim(); ++p) {
      for (std::size_t l = 0; l < lay.da; ++l) {
        if (lay.unit[l].is_zero()) continue;
        for (std::size_t q = 0; q < lay.perm.dim(); ++q) {
          dk.at(q, p).add_product(lay.unit[l], op.at(lay.index(q, k), lay.index(p, l)));
        }
      }
    }
    if (!dk.is_zero()) parts.emplace(k, std::move(dk));
  }
  return parts;
}

Residual compare_ops(const Layout& lay, const LinOp& rebuilt, const LinOp& original) {
  Residual res;
  res.report.check = "assemble(decompose(d)) = d";
  res.report.witness_limit = kCheckerWitnessLimit;
  const std::size_t n = original.domain_dim();
  for (std::size_t c = 0; c < n; ++c) {
    ++res.report.instances_checked;
    Vec diff(n);
    bool any = false;
    for (std::size_t r = 0; r < n; ++r) {
      diff[r] = rebuilt.at(r, c) - original.at(r, c);
      if (diff[r].is_zero()) continue;
      any = true;
      const bool boundary = lay.window.n2 && (lay.i2_of(r / lay.da) == lay.n2() || lay.i2_of(c / lay.da) == lay.n2());
      ++(boundary ? res.boundary_entries : res.interior_entries);
    }
    if (any) res.report.add({"assemble(decompose(d)) = d", {c}, to_sparse(diff)});
  }
  return res;
}

}  // namespace

std::string_view to_string(Sidedness s) { return s == Sidedness::left ? "left" : "right"; }

Sidedness parse_sidedness(std::string_view s) {
  if (s == "left") return Sidedness::left;
  if (s == "right") return Sidedness::right;
  throw FormatError("unknown sidedness '" + std::string(s) + "'");
}

LinOp realize_derivation(const Dialgebra& d, const DerComponentFamily& fam) {
  const Layout lay = layout_of(d);
  for (const auto& [k, dk] : fam.perm_parts) {
    if (k >= lay.da) throw ContractError("perm part index k=" + std::to_string(k) + " outside the algebra basis");
    require_part(dk, lay.perm, "perm part");
  }
  for (const auto& [j, Dj] : fam.alg_parts) {
    if (j > lay.n2()) throw ContractError("alg part index j=" + std::to_string(j) + " beyond the slot-2 window");
    require_part(Dj, lay.alg, "alg part");
  }
  LinOp out = LinOp::zero(d.name(), d.dim());
  for (std::size_t p = 0; p < lay.perm.dim(); ++p) {
    const std::size_t i1 = lay.i1_of(p);
    const std::size_t i2 = lay.i2_of(p);
    for (std::size_t l = 0; l < lay.da; ++l) {
      Vec col(d.dim());
      // id ⊗ L_{x^j} ⊗ D_j
      for (const auto& [j, Dj] : fam.alg_parts) {
        if (i2 + j > lay.n2()) continue;
        const std::size_t q = lay.window.perm_index(i1, i2 + j);
        for (std::size_t k = 0; k < lay.da; ++k) col[lay.index(q, k)] += Dj.at(k, l);
      }
      add_perm_terms(lay, fam.perm_parts, p, l, col);
      out.set_column(lay.index(p, l), col);
    }
  }
  return out;
}

LinOp realize_diderivation(const Dialgebra& d, const DiderComponentFamily& fam) {
  const Layout lay = layout_of(d);
  for (const auto& [k, dk] : fam.perm_parts) {
    if (k >= lay.da) throw ContractError("perm part index k=" + std::to_string(k) + " outside the algebra basis");
    require_part(dk, lay.perm, "perm part");
  }
  for (const auto& [idx, delta] : fam.alg_parts) {
    if (idx.first > lay.window.n1 || idx.second > lay.n2()) {
      throw ContractError("alg part index (" + std::to_string(idx.first) + "," + std::to_string(idx.second) +
                          ") outside the window");
    }
    require_part(delta, lay.alg, "alg part");
  }
  LinOp out = LinOp::zero(d.name(), d.dim());
  for (std::size_t p = 0; p < lay.perm.dim(); ++p) {
    const std::size_t i1 = lay.i1_of(p);
    const std::size_t i2 = lay.i2_of(p);
    for (std::size_t l = 0; l < lay.da; ++l) {
      Vec col(d.dim());
      // x^{m1} ev_0 ⊗ L_{x^{m2}} ⊗ δ_m: only P(0) survives, which is [i1 == 0] on the basis.
      if (i1 == 0) {
        for (const auto& [m, delta] : fam.alg_parts) {
          if (m.second + i2 > lay.n2()) continue;
          const std::size_t q = lay.window.perm_index(m.first, m.second + i2);
          for (std::size_t k = 0; k < lay.da; ++k) col[lay.index(q, k)] += delta.at(k, l);
        }
      }
      add_perm_terms(lay, fam.perm_parts, p, l, col);
      out.set_column(lay.index(p, l), col);
    }
  }
  return out;
}

LinOp assemble_derivation(const Dialgebra& d, const DerComponentFamily& fam) {
  const Layout lay = layout_of(d);
  for (const auto& [k, dk] : fam.perm_parts) {
    require_part(dk, lay.perm, "perm part");
    auto r = is_derivation(lay.perm, dk);
    if (!r.ok()) throw RejectedInput("perm part k=" + std::to_string(k) + " is not a derivation of " + lay.perm.name(), r);
  }
  for (const auto& [j, Dj] : fam.alg_parts) {
    require_part(Dj, lay.alg, "alg part");
    auto r = is_derivation(lay.alg, Dj);
    if (!r.ok()) throw RejectedInput("alg part j=" + std::to_string(j) + " is not a derivation of " + lay.alg.name(), r);
  }
  return realize_derivation(d, fam);
}

LinOp assemble_diderivation(const Dialgebra& d, const DiderComponentFamily& fam, Sidedness sidedness) {
  const Layout lay = layout_of(d);
  for (const auto& [k, dk] : fam.perm_parts) {
    require_part(dk, lay.perm, "perm part");
    auto r = sidedness == Sidedness::left ? is_left_derivation(lay.perm, dk) : is_right_derivation(lay.perm, dk);
    if (!r.ok()) {
      throw RejectedInput("perm part k=" + std::to_string(k) + " is not a " + std::string(to_string(sidedness)) +
                              " derivation of " + lay.perm.name(),
                          r);
    }
  }
  for (const auto& [idx, delta] : fam.alg_parts) {
    require_part(delta, lay.alg, "alg part");
    auto r = is_derivation(lay.alg, delta);
    if (!r.ok()) throw RejectedInput("alg part is not a derivation of " + lay.alg.name(), r);
  }
  return realize_diderivation(d, fam);
}

DerDecomposition decompose_derivation(const Dialgebra& d, const LinOp& op) {
  const Layout lay = layout_of(d);
  auto check = is_derivation(d, op);
  if (!check.ok()) throw RejectedInput("decompose_derivation: operator is not a derivation", check);

  DerDecomposition out;
  out.family.perm_parts = extract_perm_parts(lay, op);
  const std::size_t one = lay.window.perm_index(0, 0);
  for (std::size_t j = 0; j <= lay.n2(); ++j) {
    LinOp Dj = slice(lay, op, lay.window.perm_index(0, j), one);
    if (!Dj.is_zero()) out.family.alg_parts.emplace(j, std::move(Dj));
  }
  for (std::size_t j1 = 1; j1 <= lay.window.n1; ++j1) {
    for (std::size_t j2 = 0; j2 <= lay.n2(); ++j2) {
      LinOp phi = slice(lay, op, lay.window.perm_index(j1, j2), one);
      // c_j = sum_k d_k(1⊗1)_j u_k; the prediction is φ_j(a) = a c_j.
      Vec c(lay.da);
      for (const auto& [k, dk] : out.family.perm_parts) c[k] = dk.at(lay.window.perm_index(j1, j2), one);
      for (std::size_t l = 0; l < lay.da; ++l) {
        if (phi.column(l) != lay.alg.structure().left_basis(l, c)) {
          out.phi_determined_by_perm_parts = false;
        }
      }
      if (!phi.is_zero()) out.phi_parts.emplace(SlotIndex{j1, j2}, std::move(phi));
    }
  }

  out.perm_part_checks.check = "perm parts in Der(P)";
  for (const auto& [k, dk] : out.family.perm_parts) out.perm_part_checks.merge(is_derivation(lay.perm, dk));
  out.alg_part_checks.check = "alg parts in Der(A)";
  for (const auto& [j, Dj] : out.family.alg_parts) out.alg_part_checks.merge(is_derivation(lay.alg, Dj));

  out.residual = compare_ops(lay, realize_derivation(d, out.family), op);
  return out;
}

DiderDecomposition decompose_diderivation(const Dialgebra& d, const LinOp& op) {
  const Layout lay = layout_of(d);
  auto check = is_diderivation(d, op);
  if (!check.ok()) throw RejectedInput("decompose_diderivation: operator is not a diderivation", check);

  DiderDecomposition out;
  out.family.perm_parts = extract_perm_parts(lay, op);
  const std::size_t one = lay.window.perm_index(0, 0);
  for (std::size_t i1 = 0; i1 <= lay.window.n1; ++i1) {
    for (std::size_t i2 = 0; i2 <= lay.n2(); ++i2) {
      LinOp delta = slice(lay, op, lay.window.perm_index(i1, i2), one);
      if (!delta.is_zero()) out.family.alg_parts.emplace(SlotIndex{i1, i2}, std::move(delta));
    }
  }
  out.alg_part_checks.check = "alg parts in Der(A)";
  for (const auto& [idx, delta] : out.family.alg_parts) out.alg_part_checks.merge(is_derivation(lay.alg, delta));
  for (const auto& [k, dk] : out.family.perm_parts) {
    out.perm_sidedness.push_back({k, is_derivation(lay.perm, dk).ok(), is_left_derivation(lay.perm, dk).ok(),
                                  is_right_derivation(lay.perm, dk).ok()});
  }
  out.residual = compare_ops(lay, realize_diderivation(d, out.family), op);
  return out;
}

Report reconstruct_check(const Dialgebra& d, const LinOp& op) {
  const Layout lay = layout_of(d);
  if (!op.is_endomorphism() || op.domain_tag() != d.name() || op.domain_dim() != d.dim()) {
    throw ContractError("reconstruct_check: operator does not act on '" + d.name() + "'");
  }
  Report r;
  r.check = "d(P⊗a) = d(1⊗a)⊢(P⊗1) + (1⊗a)⊢d(P⊗1)";
  r.witness_limit = kCheckerWitnessLimit;
  const std::size_t dp = lay.perm.dim();
  const Vec one_perm = basis_vec(dp, lay.window.perm_index(0, 0));
  for (std::size_t p = 0; p < dp; ++p) {
    const Vec p_one = d.pure_tensor(basis_vec(dp, p), lay.unit);
    const Vec d_p_one = op.apply(p_one);
    for (std::size_t l = 0; l < lay.da; ++l) {
      ++r.instances_checked;
      const Vec one_a = d.pure_tensor(one_perm, basis_vec(lay.da, l));
      const Vec lhs = op.column(lay.index(p, l));
      const Vec rhs = d.vdash(op.apply(one_a), p_one) + d.vdash(one_a, d_p_one);
      if (lhs != rhs) r.add({r.check, {lay.index(p, l)}, to_sparse(lhs - rhs)});
    }
  }
  return r;
}

}  // namespace dialg
