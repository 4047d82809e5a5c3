#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "dialg/algebra.hpp"
#include "dialg/decomposition.hpp"
#include "dialg/dialgebra.hpp"
#include "dialg/linop.hpp"
#include "dialg/poly.hpp"
#include "dialg/report.hpp"
#include "dialg/solver.hpp"

// JSON interchange. Field order is fixed so that writing the same value twice
// gives identical bytes. Every reader throws FormatError on malformed input.

namespace dialg {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);  // "p/q", or "p" when q == 1
Rational rational_from_json(const Json& j);

Json to_json(const Poly& p);  // [[degree, "p/q"], ...] sorted by degree
Poly poly_from_json(const Json& j, std::optional<Poly::Degree> bound = std::nullopt);

Json to_json(const SparseVec& v);  // [[index, "p/q"], ...]
Json to_json(const Vec& v);        // ["p/q", ...]
Vec vec_from_json(const Json& j, std::size_t expected_len);

/// {name, flavor, dim, basis, unit, structure: [[i, j, k, "p/q"], ...]}
Json to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const Json& j);

/// {name, dim, basis, left_prod, right_prod, provenance}
Json to_json(const Dialgebra& d);
Dialgebra dialgebra_from_json(const Json& j);

/// {domain_tag, codomain_tag, domain_dim, codomain_dim, entries (row-major)}
Json to_json(const LinOp& op);
LinOp linop_from_json(const Json& j);

/// {tag, op_dim, dimension, basis: [operator, ...]}
Json to_json(const SubspaceBasis& b);
SubspaceBasis subspace_from_json(const Json& j);

/// {kind: "derivation", perm_parts: {"k": op}, alg_parts: {"j": op}}
Json to_json(const DerComponentFamily& f);
DerComponentFamily der_family_from_json(const Json& j);
/// {kind: "diderivation", alg_parts: {"i1,i2": op}, perm_parts: {"k": op}}
Json to_json(const DiderComponentFamily& f);
DiderComponentFamily dider_family_from_json(const Json& j);

Json to_json(const Report& r);
Json to_json(const Residual& r);

/// Parses a whole file. Unreadable files and bad JSON both raise FormatError.
Json read_json_file(const std::filesystem::path& path);
/// Canonical text: two-space indent, trailing newline.
std::string dump(const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dialg
