#include "dialg/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "dialg/errors.hpp"

namespace dialg {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> labels_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) bad("basis must be an array of " + std::to_string(dim) + " strings");
  std::vector<std::string> labels;
  for (const auto& l : j) labels.push_back(as_string(l, "basis label"));
  return labels;
}

Json structure_to_json(const StructureTensor& t) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = 0; j < t.dim(); ++j) {
      for (const auto& term : t.product(i, j)) arr.push_back(Json::array({i, j, term.index, to_json(term.coeff)}));
    }
  }
  return arr;
}

StructureTensor structure_from_json(const Json& j, std::size_t dim, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of [i, j, k, \"p/q\"]");
  StructureTensor t(dim);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 4) bad(std::string(what) + " entries must be [i, j, k, \"p/q\"]");
    const std::size_t a = as_index(e[0], "i");
    const std::size_t b = as_index(e[1], "j");
    const std::size_t c = as_index(e[2], "k");
    if (a >= dim || b >= dim || c >= dim) bad(std::string(what) + " index out of range in " + e.dump());
    if (!seen.emplace(a, b, c).second) bad(std::string(what) + " repeats entry " + e.dump());
    t.add(a, b, c, rational_from_json(e[3]));
  }
  return t;
}

std::optional<Vec> unit_from_json(const Json& j, std::size_t dim) {
  if (j.is_null()) return std::nullopt;
  return vec_from_json(j, dim);
}

std::size_t parse_key(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) bad("bad index key '" + std::string(s) + "'");
  return v;
}

SlotIndex parse_slot_key(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) bad("slot key '" + s + "' must look like \"i1,i2\"");
  return {parse_key(std::string_view(s).substr(0, comma)), parse_key(std::string_view(s).substr(comma + 1))};
}

template <class Map, class KeyFn>
Json parts_to_json(const Map& parts, KeyFn key) {
  Json obj = Json::object();
  for (const auto& [k, op] : parts) obj[key(k)] = to_json(op);
  return obj;
}

void expect_kind(const Json& j, const char* kind) {
  if (as_string(field(j, "kind"), "kind") != kind) bad(std::string("expected a family of kind '") + kind + "'");
}

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) bad("rational must be a string \"p/q\", got " + j.dump());
  return Rational::parse(j.get<std::string>());
}

Json to_json(const Poly& p) {
  Json arr = Json::array();
  for (const auto& [d, c] : p.coeffs()) arr.push_back(Json::array({d, to_json(c)}));
  return arr;
}

Poly poly_from_json(const Json& j, std::optional<Poly::Degree> bound) {
  if (!j.is_array()) bad("polynomial must be an array of [degree, \"p/q\"]");
  Poly p(bound);
  std::set<std::size_t> seen;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad("polynomial terms must be [degree, \"p/q\"]");
    const std::size_t d = as_index(e[0], "degree");
    if (!seen.insert(d).second) bad("polynomial repeats degree " + std::to_string(d));
    if (bound && d > *bound) bad("degree " + std::to_string(d) + " exceeds bound " + std::to_string(*bound));
    p.add_term(d, rational_from_json(e[1]));
  }
  return p;
}

Json to_json(const SparseVec& v) {
  Json arr = Json::array();
  for (const auto& t : v) arr.push_back(Json::array({t.index, to_json(t.coeff)}));
  return arr;
}

Json to_json(const Vec& v) {
  Json arr = Json::array();
  for (const auto& c : v) arr.push_back(to_json(c));
  return arr;
}

Vec vec_from_json(const Json& j, std::size_t expected_len) {
  if (!j.is_array() || j.size() != expected_len) {
    bad("expected an array of " + std::to_string(expected_len) + " rationals");
  }
  Vec v;
  v.reserve(expected_len);
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json to_json(const FiniteAlgebra& a) {
  Json j;
  j["name"] = a.name();
  j["flavor"] = std::string(to_string(a.flavor()));
  j["dim"] = a.dim();
  j["basis"] = a.basis_labels();
  j["unit"] = a.unit() ? to_json(*a.unit()) : Json(nullptr);
  j["structure"] = structure_to_json(a.structure());
  return j;
}

FiniteAlgebra algebra_from_json(const Json& j) {
  const std::string name = as_string(field(j, "name"), "name");
  const Flavor flavor = parse_flavor(as_string(field(j, "flavor"), "flavor"));
  const std::size_t dim = as_index(field(j, "dim"), "dim");
  if (dim == 0) bad("dim must be positive");
  auto labels = labels_from_json(field(j, "basis"), dim);
  auto unit = unit_from_json(field(j, "unit"), dim);
  auto structure = structure_from_json(field(j, "structure"), dim, "structure");
  return FiniteAlgebra(name, flavor, std::move(labels), std::move(structure), std::move(unit));
}

Json to_json(const Dialgebra& d) {
  Json j;
  j["name"] = d.name();
  j["dim"] = d.dim();
  j["basis"] = d.basis_labels();
  j["left_prod"] = structure_to_json(d.left_prod());
  j["right_prod"] = structure_to_json(d.right_prod());
  if (const auto& prov = d.provenance()) {
    Json p;
    if (prov->window) {
      p["perm_bounds"] = Json::array({prov->window->n1, prov->window->n2 ? Json(*prov->window->n2) : Json(nullptr)});
    } else {
      p["perm_bounds"] = nullptr;
    }
    p["algebra_name"] = prov->algebra.name();
    p["perm"] = to_json(prov->perm);
    p["algebra"] = to_json(prov->algebra);
    j["provenance"] = p;
  } else {
    j["provenance"] = nullptr;
  }
  return j;
}

Dialgebra dialgebra_from_json(const Json& j) {
  const std::string name = as_string(field(j, "name"), "name");
  const std::size_t dim = as_index(field(j, "dim"), "dim");
  if (dim == 0) bad("dim must be positive");
  auto labels = labels_from_json(field(j, "basis"), dim);
  auto left = structure_from_json(field(j, "left_prod"), dim, "left_prod");
  auto right = structure_from_json(field(j, "right_prod"), dim, "right_prod");
  std::optional<Provenance> prov;
  if (auto it = j.find("provenance"); it != j.end() && !it->is_null()) {
    const Json& p = *it;
    std::optional<Window> window;
    const Json& bounds = field(p, "perm_bounds");
    if (!bounds.is_null()) {
      if (!bounds.is_array() || bounds.size() != 2) bad("perm_bounds must be [N1, N2] or [N1, null]");
      Window w;
      w.n1 = as_index(bounds[0], "N1");
      if (!bounds[1].is_null()) w.n2 = as_index(bounds[1], "N2");
      window = w;
    }
    auto perm = algebra_from_json(field(p, "perm"));
    auto alg = algebra_from_json(field(p, "algebra"));
    if (as_string(field(p, "algebra_name"), "algebra_name") != alg.name()) {
      bad("provenance algebra_name does not match the algebra document");
    }
    if (perm.dim() * alg.dim() != dim) bad("provenance factors do not multiply to dim");
    if (window && window->perm_dim() != perm.dim()) bad("perm_bounds do not match the perm factor");
    prov = Provenance{std::move(perm), std::move(alg), window};
  }
  return Dialgebra(name, std::move(labels), std::move(left), std::move(right), std::move(prov));
}

Json to_json(const LinOp& op) {
  Json j;
  j["domain_tag"] = op.domain_tag();
  j["codomain_tag"] = op.codomain_tag();
  j["domain_dim"] = op.domain_dim();
  j["codomain_dim"] = op.codomain_dim();
  Json entries = Json::array();
  for (const auto& c : op.flat()) entries.push_back(to_json(c));
  j["entries"] = std::move(entries);
  return j;
}

LinOp linop_from_json(const Json& j) {
  LinOp op(as_string(field(j, "domain_tag"), "domain_tag"), as_string(field(j, "codomain_tag"), "codomain_tag"),
           as_index(field(j, "domain_dim"), "domain_dim"), as_index(field(j, "codomain_dim"), "codomain_dim"));
  const Json& entries = field(j, "entries");
  const std::size_t n = op.domain_dim() * op.codomain_dim();
  if (!entries.is_array() || entries.size() != n) bad("entries must hold " + std::to_string(n) + " rationals");
  for (std::size_t r = 0; r < op.codomain_dim(); ++r) {
    for (std::size_t c = 0; c < op.domain_dim(); ++c) op.at(r, c) = rational_from_json(entries[r * op.domain_dim() + c]);
  }
  return op;
}

Json to_json(const SubspaceBasis& b) {
  Json j;
  j["tag"] = b.tag();
  j["op_dim"] = b.op_dim();
  j["dimension"] = b.dimension();
  Json basis = Json::array();
  for (const auto& op : b.basis_ops()) basis.push_back(to_json(op));
  j["basis"] = std::move(basis);
  return j;
}

SubspaceBasis subspace_from_json(const Json& j) {
  const std::string tag = as_string(field(j, "tag"), "tag");
  const std::size_t n = as_index(field(j, "op_dim"), "op_dim");
  const Json& basis = field(j, "basis");
  if (!basis.is_array()) bad("basis must be an array of operators");
  std::vector<LinOp> ops;
  for (const auto& e : basis) {
    LinOp op = linop_from_json(e);
    if (op.domain_tag() != tag || !op.is_endomorphism() || op.domain_dim() != n) {
      bad("basis operator does not act on '" + tag + "'");
    }
    ops.push_back(std::move(op));
  }
  auto b = SubspaceBasis::from_ops(tag, n, ops);
  if (b.dimension() != as_index(field(j, "dimension"), "dimension")) bad("basis operators are not independent");
  return b;
}

Json to_json(const DerComponentFamily& f) {
  Json j;
  j["kind"] = "derivation";
  j["perm_parts"] = parts_to_json(f.perm_parts, [](std::size_t k) { return std::to_string(k); });
  j["alg_parts"] = parts_to_json(f.alg_parts, [](std::size_t k) { return std::to_string(k); });
  return j;
}

DerComponentFamily der_family_from_json(const Json& j) {
  expect_kind(j, "derivation");
  DerComponentFamily f;
  for (const auto& [k, v] : field(j, "perm_parts").items()) f.perm_parts.emplace(parse_key(k), linop_from_json(v));
  for (const auto& [k, v] : field(j, "alg_parts").items()) f.alg_parts.emplace(parse_key(k), linop_from_json(v));
  return f;
}

Json to_json(const DiderComponentFamily& f) {
  Json j;
  j["kind"] = "diderivation";
  j["alg_parts"] = parts_to_json(f.alg_parts, [](const SlotIndex& s) {
    return std::to_string(s.first) + "," + std::to_string(s.second);
  });
  j["perm_parts"] = parts_to_json(f.perm_parts, [](std::size_t k) { return std::to_string(k); });
  return j;
}

DiderComponentFamily dider_family_from_json(const Json& j) {
  expect_kind(j, "diderivation");
  DiderComponentFamily f;
  for (const auto& [k, v] : field(j, "alg_parts").items()) f.alg_parts.emplace(parse_slot_key(k), linop_from_json(v));
  for (const auto& [k, v] : field(j, "perm_parts").items()) f.perm_parts.emplace(parse_key(k), linop_from_json(v));
  return f;
}

Json to_json(const Report& r) {
  Json j;
  j["check"] = r.check;
  j["ok"] = r.ok();
  j["instances_checked"] = r.instances_checked;
  j["violation_count"] = r.violation_count;
  Json w = Json::array();
  for (const auto& v : r.witnesses) {
    Json e;
    e["identity"] = v.identity;
    e["indices"] = v.indices;
    e["discrepancy"] = to_json(v.discrepancy);
    w.push_back(std::move(e));
  }
  j["witnesses"] = std::move(w);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const Residual& r) {
  Json j;
  j["exact"] = r.exact();
  j["boundary_entries"] = r.boundary_entries;
  j["interior_entries"] = r.interior_entries;
  j["report"] = to_json(r.report);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) bad("cannot write '" + path.string() + "'");
  out << text;
  if (!out) bad("write to '" + path.string() + "' failed");
}

}  // namespace dialg
