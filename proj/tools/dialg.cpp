// dialg: command line front end.
//
// Exit codes: 0 pass, 1 mathematical violation, 2 I/O, format or usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dialg/algebra.hpp"
#include "dialg/compare.hpp"
#include "dialg/decomposition.hpp"
#include "dialg/dialgebra.hpp"
#include "dialg/errors.hpp"
#include "dialg/io.hpp"
#include "dialg/operators.hpp"
#include "dialg/solver.hpp"

namespace {

using namespace dialg;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Options {
  std::string algebra;
  std::string dialgebra;
  std::vector<std::size_t> window;
  std::optional<std::size_t> single;
  std::uint64_t seed = 0;
  std::size_t draws = 50;
  std::string out;
  bool pretty = false;
  std::string kind;
  std::string sidedness = "left";
  std::string family;
  std::string op;
  std::string name;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
}

std::string render_report(const Report& r) {
  std::ostringstream os;
  os << r.check << ": " << (r.ok() ? "pass" : "FAIL") << " (" << r.instances_checked << " instances, "
     << r.violation_count << " violations)\n";
  for (const auto& w : r.witnesses) {
    os << "  " << w.identity << " at (";
    for (std::size_t i = 0; i < w.indices.size(); ++i) os << (i ? ", " : "") << w.indices[i];
    os << "):";
    for (const auto& t : w.discrepancy) os << " [" << t.index << "] " << t.coeff;
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

FiniteAlgebra load_algebra(const std::string& path) { return algebra_from_json(read_json_file(path)); }

bool has_window(const Options& o) { return !o.window.empty(); }

/// The dialgebra named by --dialgebra, or KP over --window / --single with --algebra.
Dialgebra load_space(const Options& o) {
  if (!o.dialgebra.empty()) return dialgebra_from_json(read_json_file(o.dialgebra));
  if (o.algebra.empty()) throw FormatError("need --dialgebra, or --algebra with --window");
  const auto a = load_algebra(o.algebra);
  if (has_window(o)) return kp_window(o.window[0], o.window[1], a);
  if (o.single) return kp_single(*o.single, a);
  return Dialgebra::from_associative(a);
}

int cmd_catalog(const Options& o) {
  FiniteAlgebra a = has_window(o) ? perm_window(o.window[0], o.window[1]) : catalog_algebra(o.name);
  emit(o, dump(to_json(a)));
  return kPass;
}

int cmd_kp(const Options& o) {
  emit(o, dump(to_json(load_space(o))));
  return kPass;
}

int cmd_validate(const Options& o) {
  std::vector<Report> reports;
  if (!o.dialgebra.empty() || has_window(o) || o.single) {
    reports.push_back(validate_dialgebra(load_space(o)));
  } else {
    if (o.algebra.empty()) throw FormatError("validate needs --algebra or --dialgebra");
    const auto a = load_algebra(o.algebra);
    reports.push_back(validate_flavor(a));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();
  if (o.pretty) {
    std::string text;
    for (const auto& r : reports) text += render_report(r);
    emit(o, text);
  } else {
    Json j = Json::array();
    for (const auto& r : reports) j.push_back(to_json(r));
    emit(o, dump(j));
  }
  return ok ? kPass : kViolation;
}

int emit_space(const Options& o, const SubspaceBasis& b, const std::string& label) {
  if (o.pretty) {
    emit(o, label + " on '" + b.tag() + "': dimension " + std::to_string(b.dimension()) + "\n");
  } else {
    emit(o, dump(to_json(b)));
  }
  return kPass;
}

int cmd_derspace(const Options& o) {
  if (o.dialgebra.empty() && !has_window(o) && !o.single) {
    if (o.algebra.empty()) throw FormatError("derspace needs --algebra or --dialgebra");
    const auto kind = o.kind.empty() ? DerivationKind::two_sided : parse_derivation_kind(o.kind);
    return emit_space(o, algebra_derivation_space(load_algebra(o.algebra), kind),
                      std::string(to_string(kind)) + " derivations");
  }
  return emit_space(o, derivation_space(load_space(o)), "derivations");
}

int cmd_diderspace(const Options& o) { return emit_space(o, diderivation_space(load_space(o)), "diderivations"); }

int cmd_assemble(const Options& o) {
  const auto d = load_space(o);
  const auto fam_doc = read_json_file(o.family);
  const bool dider = fam_doc.is_object() && fam_doc.value("kind", "") == "diderivation";
  LinOp op;
  Report check;
  if (dider) {
    op = assemble_diderivation(d, dider_family_from_json(fam_doc), parse_sidedness(o.sidedness));
    check = is_diderivation(d, op);
  } else {
    op = assemble_derivation(d, der_family_from_json(fam_doc));
    check = is_derivation(d, op);
  }
  if (o.pretty) {
    emit(o, render_report(check));
  } else {
    Json j;
    j["operator"] = to_json(op);
    j["check"] = to_json(check);
    emit(o, dump(j));
  }
  return check.ok() ? kPass : kViolation;
}

int cmd_decompose(const Options& o) {
  const auto d = load_space(o);
  const LinOp op = linop_from_json(read_json_file(o.op));
  const bool dider = o.kind == "diderivation";
  if (!dider && !o.kind.empty() && o.kind != "derivation") throw FormatError("--kind must be derivation or diderivation");
  Json j;
  bool ok = true;
  std::string text;
  if (dider) {
    const auto dec = decompose_diderivation(d, op);
    ok = dec.residual.exact() && dec.alg_part_checks.ok();
    j["family"] = to_json(dec.family);
    j["alg_part_checks"] = to_json(dec.alg_part_checks);
    Json sides = Json::array();
    for (const auto& s : dec.perm_sidedness) {
      sides.push_back({{"k", s.k}, {"two_sided", s.two_sided}, {"left", s.left}, {"right", s.right}});
    }
    j["perm_sidedness"] = std::move(sides);
    j["residual"] = to_json(dec.residual);
    text = render_report(dec.alg_part_checks) + render_report(dec.residual.report);
    for (const auto& s : dec.perm_sidedness) {
      text += "perm part k=" + std::to_string(s.k) + ": two-sided " + (s.two_sided ? "yes" : "no") + ", left " +
              (s.left ? "yes" : "no") + ", right " + (s.right ? "yes" : "no") + "\n";
    }
  } else {
    const auto dec = decompose_derivation(d, op);
    ok = dec.residual.exact() && dec.perm_part_checks.ok() && dec.alg_part_checks.ok();
    j["family"] = to_json(dec.family);
    Json phi = Json::object();
    for (const auto& [idx, p] : dec.phi_parts) phi[std::to_string(idx.first) + "," + std::to_string(idx.second)] = to_json(p);
    j["phi_parts"] = std::move(phi);
    j["phi_determined_by_perm_parts"] = dec.phi_determined_by_perm_parts;
    j["perm_part_checks"] = to_json(dec.perm_part_checks);
    j["alg_part_checks"] = to_json(dec.alg_part_checks);
    j["residual"] = to_json(dec.residual);
    text = render_report(dec.perm_part_checks) + render_report(dec.alg_part_checks) +
           render_report(dec.residual.report) + "phi determined by perm parts: " +
           (dec.phi_determined_by_perm_parts ? "yes" : "no") + "\n";
  }
  emit(o, o.pretty ? text : dump(j));
  return ok ? kPass : kViolation;
}

int cmd_compare(const Options& o) {
  const auto d = load_space(o);
  const auto table = compare_spaces(d);
  std::vector<TrialSummary> trials;
  if (table.bases) trials = all_trials(d, *table.bases, o.seed, o.draws);

  // Violation: the derivation span or every diderivation variant differs from
  // the solver space, a roundtrip is inexact, or unrestricted trials fail for
  // derivations or for both sidedness choices.
  auto clean = [](const SpanRow& r) { return r.gap() == 0 && r.escapes() == 0; };
  bool ok = true;
  bool dider_span_ok = table.spans.empty();
  for (const auto& r : table.spans) {
    if (r.label == "derivation") {
      ok = ok && clean(r);
    } else {
      dider_span_ok = dider_span_ok || clean(r);
    }
  }
  ok = ok && dider_span_ok;
  for (const auto& r : table.roundtrips) {
    ok = ok && r.exact == r.checked && r.component_failures == 0 && r.reconstruct_failures == 0;
  }
  bool dider_trials_ok = trials.empty();
  for (const auto& t : trials) {
    if (t.mode != DrawMode::unrestricted) continue;
    if (t.kind == "derivation") {
      ok = ok && t.all_pass();
    } else {
      dider_trials_ok = dider_trials_ok || t.all_pass();
    }
  }
  ok = ok && dider_trials_ok;

  if (o.pretty) {
    emit(o, render_text(table, trials));
  } else {
    Json j;
    j["table"] = to_json(table);
    j["seed"] = o.seed;
    Json tj = Json::array();
    for (const auto& t : trials) tj.push_back(to_json(t));
    j["trials"] = std::move(tj);
    emit(o, dump(j));
  }
  return ok ? kPass : kViolation;
}

void add_space_options(CLI::App* sub, Options& o) {
  sub->add_option("--algebra", o.algebra, "algebra JSON file");
  sub->add_option("--dialgebra", o.dialgebra, "dialgebra JSON file");
  sub->add_option("--window", o.window, "perm window N1 N2")->expected(2);
  sub->add_option("--single", o.single, "single-slot perm algebra k[x]/(x^{N+1})");
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "write the result here instead of stdout");
  sub->add_flag("--pretty", o.pretty, "human-readable text instead of JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perm algebras, KP dialgebras and their (di)derivations over Q"};
  app.require_subcommand(1);
  Options o;

  auto* catalog = app.add_subcommand("catalog", "write a stock algebra (Q, C2, M<n>, T<n>, perm<N>)");
  catalog->add_option("name", o.name, "catalog name");
  catalog->add_option("--window", o.window, "perm window algebra P[N1,N2] instead")->expected(2);
  catalog->add_option("--out", o.out, "output file");

  auto* kp = app.add_subcommand("kp", "build the KP dialgebra of --algebra over a perm window");
  add_space_options(kp, o);
  kp->add_option("--out", o.out, "output file");

  auto* validate = app.add_subcommand("validate", "check the identities of an algebra or dialgebra");
  add_space_options(validate, o);
  add_output_options(validate, o);

  auto* derspace = app.add_subcommand("derspace", "derivation space by exact nullspace");
  add_space_options(derspace, o);
  derspace->add_option("--kind", o.kind, "two_sided, left or right (algebras only)");
  add_output_options(derspace, o);

  auto* diderspace = app.add_subcommand("diderspace", "diderivation space by exact nullspace");
  add_space_options(diderspace, o);
  add_output_options(diderspace, o);

  auto* assemble = app.add_subcommand("assemble", "assemble an operator from a component family");
  add_space_options(assemble, o);
  assemble->add_option("--family", o.family, "component family JSON")->required();
  assemble->add_option("--sidedness", o.sidedness, "left or right, for diderivation perm parts");
  add_output_options(assemble, o);

  auto* decompose = app.add_subcommand("decompose", "extract a component family from an operator");
  add_space_options(decompose, o);
  decompose->add_option("--operator", o.op, "operator JSON")->required();
  decompose->add_option("--kind", o.kind, "derivation or diderivation");
  add_output_options(decompose, o);

  auto* compare = app.add_subcommand("compare", "solver spaces against assembled spans, plus seeded trials");
  add_space_options(compare, o);
  compare->add_option("--seed", o.seed, "seed for the random family trials");
  compare->add_option("--draws", o.draws, "draws per trial variant");
  add_output_options(compare, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*catalog) return cmd_catalog(o);
    if (*kp) return cmd_kp(o);
    if (*validate) return cmd_validate(o);
    if (*derspace) return cmd_derspace(o);
    if (*diderspace) return cmd_diderspace(o);
    if (*assemble) return cmd_assemble(o);
    if (*decompose) return cmd_decompose(o);
    if (*compare) return cmd_compare(o);
  } catch (const RejectedInput& e) {
    std::cerr << "dialg: " << e.what() << "\n" << render_report(e.report());
    if (!o.out.empty()) {
      try {
        write_text_file(o.out, dump(to_json(e.report())));
      } catch (const FormatError&) {
      }
    }
    return kViolation;
  } catch (const FormatError& e) {
    std::cerr << "dialg: " << e.what() << "\n";
    return kInputError;
  } catch (const ContractError& e) {
    std::cerr << "dialg: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "dialg: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
