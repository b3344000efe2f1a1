#pragma once

#include "tsc/code.hpp"
#include "tsc/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsc {

/// Basis of {p : [p, g] = 1 for all generators g}, as flat 2n rows.
/// dim = 2n - rank(gens).
BitMatrix centralizer_basis(const BitMatrix& gen_rows);

/// Coefficient vectors over the generator index whose generator product is
/// (proportional to) the identity. Basis rows are in RREF, so constraint
/// classes are reproducible.
struct ConstraintSpace {
  BitMatrix basis; // rows: coefficient vectors, width = number of generators
  std::size_t dim() const { return basis.n_rows(); }
};

ConstraintSpace constraint_space(const InstantiatedGroup& gens);

/// Sign of the ordered product of the given generators (row-major order),
/// with every generator carrying the default +1 sign and Y counted as iXZ.
/// The product must be proportional to the identity; the result is +1 or
/// -1.
int product_sign(const InstantiatedGroup& gens, const BitVector& subset);

struct StabilizerVerdict {
  bool commuting = true;
  std::optional<std::pair<std::size_t, std::size_t>> anticommuting_pair;
  bool signs_ok = true;       // all constraint products carry +1
  bool sign_fixable = false;  // -1 products repairable by generator sign flips
  std::vector<int> constraint_signs; // per constraint-basis row
};

/// Checks Pauli-level validity of the stabilizer side: pairwise
/// commutation and the sign of every global constraint product.
StabilizerVerdict check_stabilizer(const InstantiatedGroup& stab,
                                   const ConstraintSpace& constraints);

struct WindowReport {
  unsigned window = 0;
  bool passed = false;
  std::optional<PauliVec> witness;
};

/// Windowed reading of the subspace topological condition: every Pauli
/// supported in a w x w window that commutes with all stabilizer
/// generators must lie in the span of the generators whose support meets
/// the thickened window.
WindowReport check_topological_window(const CodeDefinition& code,
                                      const InstantiatedGroups& inst,
                                      unsigned w, Site corner = {0, 0});

/// Subsystem variant: windowed centralizer of the gauge group must lie in
/// the span of nearby stabilizer generators.
WindowReport check_tssg_window(const CodeDefinition& code,
                               const InstantiatedGroups& inst, unsigned w,
                               Site corner = {0, 0});

/// Completeness of the gauge recipes: every windowed Pauli commuting with
/// all stabilizer generators must lie in the span of nearby gauge
/// generators.
WindowReport check_gauge_completeness_window(const CodeDefinition& code,
                                             const InstantiatedGroups& inst,
                                             unsigned w, Site corner = {0, 0});

struct IndependenceReport {
  bool passed = false;
  std::optional<BitVector> witness; // coefficients over windowed generators
  std::vector<GenRef> witness_gens;
};

/// Passes when no nonzero constraint is supported entirely inside a
/// w x w window.
IndependenceReport local_independence_check(const CodeDefinition& code,
                                            const InstantiatedGroups& inst,
                                            unsigned w);

/// k = n - (rank(gauge) + rank(stab)) / 2. Throws on odd rank difference.
std::size_t count_logical_qubits(std::size_t rank_stab, std::size_t rank_gauge,
                                 std::size_t n);

/// Default window size for the topological checks.
unsigned default_window(const CodeDefinition& code);

} // namespace tsc
