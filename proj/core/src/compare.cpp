#include "dialg/compare.hpp"

#include <sstream>

#include "dialg/errors.hpp"
#include "dialg/operators.hpp"

namespace dialg {

namespace {

bool has_window_and_unit(const Dialgebra& d) {
  const auto& prov = d.provenance();
  return prov && prov->window && prov->algebra.unit().has_value();
}

std::size_t slot2_max(const Window& w) { return w.slot2_dim() - 1; }

/// dim(U ∩ V) = dim U + dim V - dim(U + V).
std::size_t common_dimension(const SubspaceBasis& u, const SubspaceBasis& v) {
  std::vector<SparseVec> all = u.vectors();
  all.insert(all.end(), v.vectors().begin(), v.vectors().end());
  const auto sum = SubspaceBasis::from_vectors(u.tag(), u.op_dim(), u.ambient(), all);
  return u.dimension() + v.dimension() - sum.dimension();
}

SpanRow span_row(std::string label, const SubspaceBasis& solver, const std::vector<LinOp>& generators) {
  const auto assembled = SubspaceBasis::from_ops(solver.tag(), solver.op_dim(), generators);
  SpanRow row;
  row.label = std::move(label);
  row.solver_dim = solver.dimension();
  row.assembled_dim = assembled.dimension();
  row.common_dim = common_dimension(solver, assembled);
  return row;
}

std::vector<LinOp> der_generators(const Dialgebra& d, const FamilyBases& b) {
  const auto& prov = *d.provenance();
  std::vector<LinOp> gens;
  for (std::size_t k = 0; k < prov.algebra.dim(); ++k) {
    for (const auto& op : b.der_perm.basis_ops()) gens.push_back(realize_derivation(d, {{{k, op}}, {}}));
  }
  for (std::size_t j = 0; j <= slot2_max(*prov.window); ++j) {
    for (const auto& op : b.der_alg.basis_ops()) gens.push_back(realize_derivation(d, {{}, {{j, op}}}));
  }
  return gens;
}

std::vector<LinOp> dider_generators(const Dialgebra& d, const FamilyBases& b, const SubspaceBasis& perm_parts) {
  const auto& prov = *d.provenance();
  std::vector<LinOp> gens;
  for (std::size_t i1 = 0; i1 <= prov.window->n1; ++i1) {
    for (std::size_t i2 = 0; i2 <= slot2_max(*prov.window); ++i2) {
      for (const auto& op : b.der_alg.basis_ops()) {
        gens.push_back(realize_diderivation(d, {{{SlotIndex{i1, i2}, op}}, {}}));
      }
    }
  }
  for (std::size_t k = 0; k < prov.algebra.dim(); ++k) {
    for (const auto& op : perm_parts.basis_ops()) gens.push_back(realize_diderivation(d, {{}, {{k, op}}}));
  }
  return gens;
}

void add_residual(RoundtripSummary& s, const Residual& r) {
  ++s.checked;
  if (r.exact()) ++s.exact;
  s.boundary_entries += r.boundary_entries;
  s.interior_entries += r.interior_entries;
}

Rational draw(Rng& rng, int bound) {
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  return Rational(static_cast<std::int64_t>(rng() % span) - bound);
}

/// Perm parts keyed by k, drawn from `basis` under the given mode.
std::map<std::size_t, LinOp> draw_perm_parts(const FamilyBases& b, const SubspaceBasis& basis, std::size_t da,
                                             DrawMode mode, Rng& rng, int bound) {
  std::map<std::size_t, LinOp> parts;
  if (mode == DrawMode::unrestricted) {
    for (std::size_t k = 0; k < da; ++k) {
      LinOp op = random_element(basis, rng, bound);
      if (!op.is_zero()) parts.emplace(k, std::move(op));
    }
    return parts;
  }
  std::vector<LinOp> per_center;
  for (std::size_t t = 0; t < b.center.size(); ++t) per_center.push_back(random_element(basis, rng, bound));
  for (std::size_t k = 0; k < da; ++k) {
    LinOp op = LinOp::zero(basis.tag(), basis.op_dim());
    for (std::size_t t = 0; t < b.center.size(); ++t) {
      if (!b.center[t][k].is_zero()) op += b.center[t][k] * per_center[t];
    }
    if (!op.is_zero()) parts.emplace(k, std::move(op));
  }
  return parts;
}

Json span_json(const SpanRow& r) {
  Json j;
  j["label"] = r.label;
  j["solver_dim"] = r.solver_dim;
  j["assembled_dim"] = r.assembled_dim;
  j["common_dim"] = r.common_dim;
  j["gap"] = r.gap();
  j["escapes"] = r.escapes();
  return j;
}

Json roundtrip_json(const RoundtripSummary& r) {
  Json j;
  j["kind"] = r.kind;
  j["checked"] = r.checked;
  j["exact"] = r.exact;
  j["boundary_entries"] = r.boundary_entries;
  j["interior_entries"] = r.interior_entries;
  j["component_failures"] = r.component_failures;
  if (r.kind == "derivation") {
    j["reconstruct_failures"] = r.reconstruct_failures;
    j["phi_undetermined"] = r.phi_undetermined;
  }
  return j;
}

}  // namespace

FamilyBases FamilyBases::of(const Dialgebra& d) {
  if (!has_window_and_unit(d)) {
    throw ContractError("'" + d.name() + "' is not a KP dialgebra over a window with a unital algebra factor");
  }
  const auto& prov = *d.provenance();
  return FamilyBases{algebra_derivation_space(prov.perm, DerivationKind::two_sided),
                     algebra_derivation_space(prov.perm, DerivationKind::left),
                     algebra_derivation_space(prov.perm, DerivationKind::right),
                     algebra_derivation_space(prov.algebra, DerivationKind::two_sided), center_basis(prov.algebra)};
}

CompareTable compare_spaces(const Dialgebra& d) {
  CompareTable t;
  t.dialgebra = d.name();
  t.space_dim = d.dim();
  if (d.provenance()) {
    t.window = d.provenance()->window;
    t.algebra = d.provenance()->algebra.name();
  }
  const auto der = derivation_space(d);
  const auto dider = diderivation_space(d);
  t.der_dim = der.dimension();
  t.dider_dim = dider.dimension();
  t.der_equals_dider = same_subspace(der, dider);
  if (!has_window_and_unit(d)) return t;

  t.bases = FamilyBases::of(d);
  const auto& b = *t.bases;
  t.spans.push_back(span_row("derivation", der, der_generators(d, b)));
  t.spans.push_back(span_row("diderivation/left", dider, dider_generators(d, b, b.lder_perm)));
  t.spans.push_back(span_row("diderivation/right", dider, dider_generators(d, b, b.rder_perm)));

  RoundtripSummary der_rt{.kind = "derivation"};
  for (const auto& op : der.basis_ops()) {
    const auto dec = decompose_derivation(d, op);
    add_residual(der_rt, dec.residual);
    if (!dec.perm_part_checks.ok() || !dec.alg_part_checks.ok()) ++der_rt.component_failures;
    if (!dec.phi_determined_by_perm_parts) ++der_rt.phi_undetermined;
    if (!reconstruct_check(d, op).ok()) ++der_rt.reconstruct_failures;
  }
  RoundtripSummary dider_rt{.kind = "diderivation"};
  SidednessSummary sides;
  for (const auto& op : dider.basis_ops()) {
    const auto dec = decompose_diderivation(d, op);
    add_residual(dider_rt, dec.residual);
    if (!dec.alg_part_checks.ok()) ++dider_rt.component_failures;
    for (const auto& s : dec.perm_sidedness) {
      ++sides.parts;
      sides.two_sided += s.two_sided;
      sides.left += s.left;
      sides.right += s.right;
      sides.neither += !s.left && !s.right;
    }
  }
  t.roundtrips = {der_rt, dider_rt};
  t.sidedness = sides;
  return t;
}

std::string_view to_string(DrawMode m) { return m == DrawMode::unrestricted ? "unrestricted" : "central"; }

LinOp random_element(const SubspaceBasis& basis, Rng& rng, int bound) {
  std::vector<Rational> coeffs;
  coeffs.reserve(basis.dimension());
  for (std::size_t k = 0; k < basis.dimension(); ++k) coeffs.push_back(draw(rng, bound));
  return basis.combination(coeffs);
}

DerComponentFamily random_der_family(const Dialgebra& d, const FamilyBases& bases, DrawMode mode, Rng& rng,
                                     int bound) {
  const auto& prov = *d.provenance();
  DerComponentFamily fam;
  fam.perm_parts = draw_perm_parts(bases, bases.der_perm, prov.algebra.dim(), mode, rng, bound);
  for (std::size_t j = 0; j <= slot2_max(*prov.window); ++j) {
    LinOp op = random_element(bases.der_alg, rng, bound);
    if (!op.is_zero()) fam.alg_parts.emplace(j, std::move(op));
  }
  return fam;
}

DiderComponentFamily random_dider_family(const Dialgebra& d, const FamilyBases& bases, Sidedness sidedness,
                                         DrawMode mode, Rng& rng, int bound) {
  const auto& prov = *d.provenance();
  DiderComponentFamily fam;
  for (std::size_t i1 = 0; i1 <= prov.window->n1; ++i1) {
    for (std::size_t i2 = 0; i2 <= slot2_max(*prov.window); ++i2) {
      LinOp op = random_element(bases.der_alg, rng, bound);
      if (!op.is_zero()) fam.alg_parts.emplace(SlotIndex{i1, i2}, std::move(op));
    }
  }
  const auto& perm_basis = sidedness == Sidedness::left ? bases.lder_perm : bases.rder_perm;
  fam.perm_parts = draw_perm_parts(bases, perm_basis, prov.algebra.dim(), mode, rng, bound);
  return fam;
}

TrialSummary der_trials(const Dialgebra& d, const FamilyBases& bases, DrawMode mode, std::uint64_t seed,
                        std::size_t draws) {
  TrialSummary s;
  s.kind = "derivation";
  s.mode = mode;
  Rng rng(seed);
  for (std::size_t n = 0; n < draws; ++n) {
    const auto fam = random_der_family(d, bases, mode, rng);
    ++s.draws;
    if (!fam.perm_parts.empty()) ++s.nonzero_perm_draws;
    auto report = is_derivation(d, assemble_derivation(d, fam));
    if (report.ok()) {
      ++s.passes;
    } else if (!s.first_failure) {
      report.notes.push_back("draw " + std::to_string(n));
      s.first_failure = std::move(report);
    }
  }
  return s;
}

TrialSummary dider_trials(const Dialgebra& d, const FamilyBases& bases, Sidedness sidedness, DrawMode mode,
                          std::uint64_t seed, std::size_t draws) {
  TrialSummary s;
  s.kind = "diderivation";
  s.mode = mode;
  s.sidedness = sidedness;
  Rng rng(seed);
  for (std::size_t n = 0; n < draws; ++n) {
    const auto fam = random_dider_family(d, bases, sidedness, mode, rng);
    ++s.draws;
    if (!fam.perm_parts.empty()) ++s.nonzero_perm_draws;
    auto report = is_diderivation(d, assemble_diderivation(d, fam, sidedness));
    if (report.ok()) {
      ++s.passes;
    } else if (!s.first_failure) {
      report.notes.push_back("draw " + std::to_string(n));
      s.first_failure = std::move(report);
    }
  }
  return s;
}

std::vector<TrialSummary> all_trials(const Dialgebra& d, const FamilyBases& bases, std::uint64_t seed,
                                     std::size_t draws) {
  std::vector<TrialSummary> out;
  for (const DrawMode mode : {DrawMode::unrestricted, DrawMode::central}) {
    out.push_back(der_trials(d, bases, mode, seed, draws));
    for (const Sidedness side : {Sidedness::left, Sidedness::right}) {
      out.push_back(dider_trials(d, bases, side, mode, seed, draws));
    }
  }
  return out;
}

Json to_json(const CompareTable& t) {
  Json j;
  j["dialgebra"] = t.dialgebra;
  if (t.window) {
    j["window"] = Json::array({t.window->n1, t.window->n2 ? Json(*t.window->n2) : Json(nullptr)});
  } else {
    j["window"] = nullptr;
  }
  j["algebra"] = t.algebra.empty() ? Json(nullptr) : Json(t.algebra);
  j["space_dim"] = t.space_dim;
  j["der_dim"] = t.der_dim;
  j["dider_dim"] = t.dider_dim;
  j["der_equals_dider"] = t.der_equals_dider;
  if (t.bases) {
    Json b;
    b["der_perm"] = t.bases->der_perm.dimension();
    b["lder_perm"] = t.bases->lder_perm.dimension();
    b["rder_perm"] = t.bases->rder_perm.dimension();
    b["der_alg"] = t.bases->der_alg.dimension();
    b["center"] = t.bases->center.size();
    j["component_spaces"] = b;
  }
  Json spans = Json::array();
  for (const auto& r : t.spans) spans.push_back(span_json(r));
  j["spans"] = std::move(spans);
  Json rts = Json::array();
  for (const auto& r : t.roundtrips) rts.push_back(roundtrip_json(r));
  j["roundtrips"] = std::move(rts);
  if (t.sidedness) {
    Json s;
    s["parts"] = t.sidedness->parts;
    s["two_sided"] = t.sidedness->two_sided;
    s["left"] = t.sidedness->left;
    s["right"] = t.sidedness->right;
    s["neither"] = t.sidedness->neither;
    j["perm_part_sidedness"] = s;
  } else {
    j["perm_part_sidedness"] = nullptr;
  }
  return j;
}

Json to_json(const TrialSummary& t) {
  Json j;
  j["kind"] = t.kind;
  j["mode"] = std::string(to_string(t.mode));
  j["sidedness"] = t.sidedness ? Json(std::string(to_string(*t.sidedness))) : Json(nullptr);
  j["draws"] = t.draws;
  j["passes"] = t.passes;
  j["nonzero_perm_draws"] = t.nonzero_perm_draws;
  j["first_failure"] = t.first_failure ? to_json(*t.first_failure) : Json(nullptr);
  return j;
}

std::string render_text(const CompareTable& t, const std::vector<TrialSummary>& trials) {
  std::ostringstream os;
  os << t.dialgebra << "  (dim " << t.space_dim << ")\n";
  os << "  Der   " << t.der_dim << "\n  Dider " << t.dider_dim << "\n  Der == Dider: "
     << (t.der_equals_dider ? "yes" : "no") << "\n";
  if (t.bases) {
    os << "  Der(P) " << t.bases->der_perm.dimension() << "  LDer(P) " << t.bases->lder_perm.dimension()
       << "  RDer(P) " << t.bases->rder_perm.dimension() << "  Der(A) " << t.bases->der_alg.dimension()
       << "  Z(A) " << t.bases->center.size() << "\n";
  }
  if (!t.spans.empty()) {
    os << "\n  " << std::left;
    os << "span                   solver  assembled  common  gap  escapes\n";
    for (const auto& r : t.spans) {
      std::string label = r.label;
      label.resize(22, ' ');
      os << "  " << label << " " << r.solver_dim << "\t" << r.assembled_dim << "\t   " << r.common_dim << "\t   "
         << r.gap() << "\t" << r.escapes() << "\n";
    }
  }
  for (const auto& r : t.roundtrips) {
    os << "\n  roundtrip " << r.kind << ": " << r.exact << "/" << r.checked << " exact, boundary entries "
       << r.boundary_entries << ", interior entries " << r.interior_entries << ", component failures "
       << r.component_failures;
    if (r.kind == "derivation") {
      os << ", reconstruct failures " << r.reconstruct_failures << ", phi not determined " << r.phi_undetermined;
    }
  }
  if (t.sidedness) {
    os << "\n  extracted perm parts of diderivations: " << t.sidedness->parts << " (two-sided " << t.sidedness->two_sided
       << ", left " << t.sidedness->left << ", right " << t.sidedness->right << ", neither " << t.sidedness->neither
       << ")";
  }
  if (!trials.empty()) {
    os << "\n\n  trials\n";
    for (const auto& s : trials) {
      os << "  " << s.kind;
      if (s.sidedness) os << "/" << to_string(*s.sidedness);
      os << " " << to_string(s.mode) << ": " << s.passes << "/" << s.draws << " pass (" << s.nonzero_perm_draws
         << " with perm parts)\n";
    }
  } else {
    os << "\n";
  }
  return os.str();
}

}  // namespace dialg
