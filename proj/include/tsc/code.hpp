#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tsc {

enum class PauliLetter : unsigned char { X, Y, Z };

char letter_char(PauliLetter l);

/// One single-qubit factor of a generator template, at a site offset
/// relative to the generator's anchor site.
struct PauliTerm {
  int dx = 0;
  int dy = 0;
  unsigned qubit = 0;
  PauliLetter letter = PauliLetter::X;

  bool operator==(const PauliTerm&) const = default;
};

struct GeneratorRecipe {
  std::string label;
  std::vector<PauliTerm> terms;

  bool operator==(const GeneratorRecipe&) const = default;
};

/// A translationally invariant code recipe: qubits per site plus
/// stabilizer and (optionally) gauge generator templates. Absent gauge
/// recipes mean a subspace code, whose gauge group is the stabilizer group
/// itself.
struct CodeDefinition {
  std::string name;
  unsigned qubits_per_site = 0;
  std::vector<GeneratorRecipe> stabilizer_recipes;
  std::optional<std::vector<GeneratorRecipe>> gauge_recipes;

  bool operator==(const CodeDefinition&) const = default;

  bool is_subsystem() const { return gauge_recipes.has_value(); }

  /// Gauge-side recipes: the gauge list for subsystem codes, the
  /// stabilizer list for subspace codes.
  const std::vector<GeneratorRecipe>& gauge_side() const {
    return gauge_recipes ? *gauge_recipes : stabilizer_recipes;
  }

  /// Side of the bounding square of a recipe's site offsets, in sites.
  static unsigned recipe_range(const GeneratorRecipe& r);
  /// Maximum recipe_range over all recipes (1 for a code with no recipes).
  unsigned max_range() const;
};

/// Parses the line-oriented code file format. Throws Error{Parse} with a
/// line number on malformed input.
CodeDefinition parse_code_file(const std::string& text);

std::string to_code_file(const CodeDefinition& code);

/// Coarse grains by l: each l x l block of sites becomes one site with
/// l^2 * qubits_per_site qubits, and each recipe yields l^2 shifted copies.
CodeDefinition coarse_grain(const CodeDefinition& code, unsigned l);

/// Disjoint union of the two unit cells; recipes act on their own halves.
CodeDefinition compose(const CodeDefinition& a, const CodeDefinition& b);

struct NormalizedCode {
  CodeDefinition code;
  unsigned coarse_level = 1; // total block size applied to the input
};

/// Coarse grains until every recipe has range <= 2.
NormalizedCode normalize_code(const CodeDefinition& code);

} // namespace tsc
