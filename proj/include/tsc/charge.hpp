#pragma once

#include "tsc/code.hpp"
#include "tsc/group.hpp"
#include "tsc/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tsc {

/// A charge: membership pattern across the echelonized global-constraint
/// basis of one side's generator set. XOR is the group operation; the zero
/// vector is the trivial charge.
struct Charge {
  BitVector vec;

  bool trivial() const { return !vec.any(); }
  Charge operator^(const Charge& o) const { return Charge{vec ^ o.vec}; }
  bool operator==(const Charge&) const = default;
};

/// Finite set of generator flips: the computational form of a
/// finite-support syndrome morphism.
struct Morphism {
  Side side = Side::Gauge;
  std::vector<GenRef> flips;

  Morphism translated(int dx, int dy) const;
};

struct StringOperator {
  PauliVec pauli;
  std::vector<Site> path;
  Morphism end_a, end_b;
  Charge charge;
};

struct Characteristic {
  unsigned alpha = 0;
  unsigned beta = 0;
  int f1 = 1;
  int f2 = 1;

  bool operator==(const Characteristic&) const = default;
};

Characteristic compose_characteristics(const Characteristic& a,
                                       const Characteristic& b);

/// Number of bosonic charges a gauge charge group with this characteristic
/// contains.
std::size_t expected_boson_count(const Characteristic& ch);

struct CanonicalCharge {
  Charge charge;
  Morphism rep; // endpoint morphism, flips anchored at cell (0,0)
};

struct CanonicalGenerators {
  std::vector<CanonicalCharge> c, d;    // alpha hyperbolic pairs, gauge side
  std::vector<CanonicalCharge> e;       // beta kernel charges, gauge side
  std::vector<CanonicalCharge> e_tilde; // beta duals, stabilizer side
  std::vector<Charge> c_tilde, d_tilde; // iota images of c and d
};

struct ChargeOptions {
  unsigned window = 0; // 0 picks the default window
  unsigned coarse_max = 4;
  unsigned r_max = 4;
  unsigned base_torus = 0; // 0 picks the default base torus
};

struct GuardReports {
  StabilizerVerdict stab;
  IndependenceReport independence;
  WindowReport topological;   // TSG condition for subspace codes
  WindowReport tssg;          // subsystem condition
  WindowReport gauge_complete;
  unsigned window = 0;
};

/// Everything charge analysis needs, built on a torus large enough for the
/// string geometries. The input code is coarse-grained until charges are
/// translation invariant, so charges are per-recipe constants here.
class ChargeContext {
public:
  CodeDefinition base_code;   // normalized input
  CodeDefinition code;        // after charge-step coarse graining
  unsigned charge_step = 1;   // block size applied to base_code
  unsigned extra_coarse = 1;  // escalation factor already folded into charge_step
  unsigned min_torus = 4;     // per axis, base-code units
  ChargeOptions opts;

  TorusLattice lat_a;         // analysis torus (code units)
  InstantiatedGroups inst;    // at lat_a
  ConstraintSpace cons_g, cons_s;
  std::size_t rank_stab = 0, rank_gauge = 0;
  std::vector<BitVector> recipe_charge_g, recipe_charge_s;
  TorusLattice lat_str;       // string torus (code units), rows built lazily
  GuardReports guards;
  std::size_t stability_dim_g = 0, stability_dim_s = 0; // at lat_a + 2

  std::size_t dim_g() const { return cons_g.dim(); }
  std::size_t dim_s() const { return cons_s.dim(); }

  Charge charge_of_gen(Side side, unsigned recipe) const;
  Charge charge_of_morphism(const Morphism& m) const;

  /// All charges of one side (2^dim of them), in binary counting order
  /// over the constraint basis.
  std::vector<Charge> all_charges(Side side) const;

  /// Endpoint morphism with the given charge, flips at one cell.
  Morphism rep_morphism(Side side, const Charge& c, Site cell = {0, 0}) const;

  /// Representative with the additional property that its restriction to
  /// the stabilizer group vanishes identically. Exists exactly for charges
  /// in the kernel of iota.
  Morphism iota_trivial_rep(const Charge& gauge_charge, Site cell = {0,
                                                                     0}) const;

  /// Image of a gauge charge in the stabilizer charge group.
  Charge iota(const Charge& gauge_charge) const;

  int theta(const Charge& gauge_charge) const;
  int kappa(const Charge& a, const Charge& b) const;
  int kappa_mixed(const Charge& gauge_charge,
                  const Charge& stab_charge) const;

  /// Solves for a Pauli whose syndrome against `syndrome_side` generators
  /// is exactly the given flip set, supported near the path. Thickening
  /// escalates internally up to opts.r_max. The lattice may be lat_a or
  /// lat_str; generator rows are built on demand.
  std::optional<PauliVec> solve_string(const TorusLattice& lat,
                                       const std::vector<Site>& path,
                                       Side syndrome_side,
                                       const std::vector<GenRef>& flips,
                                       unsigned r_min = 1,
                                       unsigned r_max = 0) const;

  /// As solve_string, with extra prescribed symplectic products against
  /// arbitrary operators (used to pin segment crossing patterns). Results
  /// are not cached.
  std::optional<PauliVec> solve_string_with(
      const TorusLattice& lat, const std::vector<Site>& path,
      Side syndrome_side, const std::vector<GenRef>& flips,
      const std::vector<std::pair<const PauliVec*, int>>& extra,
      unsigned r_min = 1, unsigned r_max = 0) const;

  /// Public form of the string constructor: both endpoint morphisms must
  /// carry the same charge; the result's syndrome is their union.
  std::optional<StringOperator> build_string(const Morphism& end_a,
                                             const Morphism& end_b,
                                             const std::vector<Site>& path,
                                             unsigned r) const;

  /// Gauge decomposition of a stabilizer generator (coefficients over
  /// gauge generators near its support).
  const std::vector<GenRef>& stab_gauge_decomposition(unsigned recipe) const;

  /// Restriction of a gauge morphism to the stabilizer group, as a
  /// stabilizer flip set.
  std::vector<GenRef> iota_flips(const Morphism& m) const;

  CanonicalGenerators canonical_generators(Characteristic* ch) const;

private:
  friend ChargeContext build_charge_context(const CodeDefinition& normalized,
                                            const ChargeOptions& opts);

  mutable std::map<std::string, PauliVec> string_cache_;
  mutable std::map<std::string, int> theta_cache_, kappa_cache_;
  mutable std::map<unsigned, std::vector<GenRef>> decomp_cache_;
};

/// Runs guards, detects the charge step, coarse-grains, and assembles the
/// context. Throws Error on any failed guard.
ChargeContext build_charge_context(const CodeDefinition& normalized,
                                   const ChargeOptions& opts = {});

struct EquivalenceReport {
  bool both_subspace = false;
  bool equivalent = false;          // meaningful for subspace pairs
  bool charges_isomorphic = false;  // full characteristic comparison
  Characteristic char_a, char_b;
};

EquivalenceReport decide_equivalence(const Characteristic& a, bool a_subspace,
                                     const Characteristic& b, bool b_subspace);

} // namespace tsc
