#pragma once

#include "tsc/charge.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tsc {

/// Smallest valid torus edge per axis: a multiple of the charge step
/// honoring the 2 * range bound, floored at 4.
std::pair<unsigned, unsigned> min_torus_size(const CodeDefinition& normalized,
                                             unsigned charge_step = 1);

struct CommCheck {
  std::string label;
  int expected = 1;
  int got = 1;
  bool pass() const { return expected == got; }
};

struct CommReport {
  bool passed = true;
  std::vector<CommCheck> checks;

  void add(std::string label, int expected, int got) {
    checks.push_back(CommCheck{std::move(label), expected, got});
    passed = passed && expected == got;
  }
};

/// Builds straight segment operators for every canonical charge and checks
/// the segment commutation table: collinear or corner-adjacent segments of
/// one charge commute up to its spin, paired direct/dual segments
/// anticommute exactly when they cross.
CommReport verify_framework_commutation(const ChargeContext& ctx,
                                        const CanonicalGenerators& canon);

/// Homologically nontrivial cycle operators, one quadruple per canonical
/// index: q in [0, alpha) are the hyperbolic pairs, q in [alpha,
/// alpha+beta) the kernel/dual families. z1 and z2s wind horizontally, z2
/// and z1s vertically.
struct HomologyCycles {
  unsigned alpha = 0, beta = 0;
  std::vector<PauliVec> z1, z2;   // direct-charge loops
  std::vector<PauliVec> z1s, z2s; // dual-charge loops
};

HomologyCycles extract_cycles(const ChargeContext& ctx,
                              const CanonicalGenerators& canon,
                              const TorusLattice& lat);

/// The cycle commutation table of the torus reconstruction.
CommReport verify_cycle_table(const HomologyCycles& cycles);

enum class AdjustMode { StabilizerExtended, GaugeExtended };

struct AdjustedCode {
  AdjustMode mode = AdjustMode::StabilizerExtended;
  BitMatrix stab_rows;  // S' rows (mode stab) or S rows
  BitMatrix gauge_rows; // G rows (mode stab) or G' rows
  bool identity_ok = false; // centralizer-of-gauge-in-gauge matches stabilizer
};

/// Extends the stabilizer (or gauge) rows by the kernel-family cycles and
/// verifies the gauge-code identity by explicit GF(2) computation.
AdjustedCode homology_adjust(const InstantiatedGroups& inst,
                             const HomologyCycles& cycles, AdjustMode mode);

struct LogicalOperatorSet {
  std::vector<PauliVec> x_bar, z_bar; // 2 * alpha each
};

LogicalOperatorSet extract_logicals(const HomologyCycles& cycles);

/// Checks the logical pair relations and commutation with the gauge rows.
CommReport verify_logical_relations(const InstantiatedGroups& inst,
                                    const LogicalOperatorSet& logicals);

/// Intersection of two row spaces given by bases.
BitMatrix row_space_intersection(const BitMatrix& a, const BitMatrix& b);

} // namespace tsc
