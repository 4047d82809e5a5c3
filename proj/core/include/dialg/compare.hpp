#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dialg/decomposition.hpp"
#include "dialg/dialgebra.hpp"
#include "dialg/io.hpp"
#include "dialg/solver.hpp"

// Solver spaces against the spans reachable from component families, plus
// seeded soundness trials on random families.

namespace dialg {

/// dim(solver), dim(assembled span) and dim of their intersection.
struct SpanRow {
  std::string label;
  std::size_t solver_dim = 0;
  std::size_t assembled_dim = 0;
  std::size_t common_dim = 0;
  [[nodiscard]] std::size_t gap() const { return solver_dim - common_dim; }
  /// Assembled directions that are not in the solver space at all.
  [[nodiscard]] std::size_t escapes() const { return assembled_dim - common_dim; }
};

/// assemble(decompose(b)) against b for every solver basis element b.
struct RoundtripSummary {
  std::string kind;
  std::size_t checked = 0;
  std::size_t exact = 0;
  std::size_t boundary_entries = 0;
  std::size_t interior_entries = 0;
  std::size_t component_failures = 0;   // extracted parts failing their checker
  std::size_t reconstruct_failures = 0;  // derivations only
  std::size_t phi_undetermined = 0;      // derivations only
};

/// Which one-sided identities the extracted ḋ parts satisfy.
struct SidednessSummary {
  std::size_t parts = 0;
  std::size_t two_sided = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t neither = 0;
};

/// Bases the random family sampler draws from.
struct FamilyBases {
  SubspaceBasis der_perm;
  SubspaceBasis lder_perm;
  SubspaceBasis rder_perm;
  SubspaceBasis der_alg;
  std::vector<Vec> center;

  /// Requires a KP dialgebra over a window with a unital second factor.
  static FamilyBases of(const Dialgebra& d);
};

struct CompareTable {
  std::string dialgebra;
  std::optional<Window> window;
  std::string algebra;  // empty without provenance
  std::size_t space_dim = 0;
  std::size_t der_dim = 0;
  std::size_t dider_dim = 0;
  bool der_equals_dider = false;
  std::vector<SpanRow> spans;
  std::vector<RoundtripSummary> roundtrips;
  std::optional<SidednessSummary> sidedness;
  std::optional<FamilyBases> bases;  // set when spans were computed
};

/// Deterministic part of the comparison. Span and roundtrip rows need a KP
/// dialgebra over a window with a unital second factor; otherwise only the
/// solver dimensions are filled in.
CompareTable compare_spaces(const Dialgebra& d);

/// unrestricted: perm parts are arbitrary (one-sided) derivations of P.
/// central: d_k = sum_t z_t[k] e_t with z_t running over a basis of Z(A).
enum class DrawMode { unrestricted, central };
std::string_view to_string(DrawMode m);

using Rng = std::mt19937_64;

/// Uniform integer combination of the basis with coefficients in [-bound, bound].
LinOp random_element(const SubspaceBasis& basis, Rng& rng, int bound);

DerComponentFamily random_der_family(const Dialgebra& d, const FamilyBases& bases, DrawMode mode, Rng& rng,
                                     int bound = 3);
DiderComponentFamily random_dider_family(const Dialgebra& d, const FamilyBases& bases, Sidedness sidedness,
                                         DrawMode mode, Rng& rng, int bound = 3);

struct TrialSummary {
  std::string kind;  // "derivation" or "diderivation"
  DrawMode mode = DrawMode::unrestricted;
  std::optional<Sidedness> sidedness;
  std::size_t draws = 0;
  std::size_t passes = 0;
  std::size_t nonzero_perm_draws = 0;  // draws with at least one nonzero perm part
  std::optional<Report> first_failure;
  [[nodiscard]] bool all_pass() const { return passes == draws; }
};

/// Draws `draws` families with the given seed, realizes them and runs the
/// (di)derivation checker on each result.
TrialSummary der_trials(const Dialgebra& d, const FamilyBases& bases, DrawMode mode, std::uint64_t seed,
                        std::size_t draws);
TrialSummary dider_trials(const Dialgebra& d, const FamilyBases& bases, Sidedness sidedness, DrawMode mode,
                          std::uint64_t seed, std::size_t draws);

/// Every trial variant (derivation and both sidedness choices, both modes).
std::vector<TrialSummary> all_trials(const Dialgebra& d, const FamilyBases& bases, std::uint64_t seed,
                                     std::size_t draws);

Json to_json(const CompareTable& t);
Json to_json(const TrialSummary& t);
std::string render_text(const CompareTable& t, const std::vector<TrialSummary>& trials);

}  // namespace dialg
