#pragma once

#include "tsc/charge.hpp"
#include "tsc/torus_code.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tsc {

/// xoshiro256** seeded through splitmix64; per-trial substreams are formed
/// by reseeding with (seed, size index, trial index), so trial order and
/// parallel evaluation cannot change the sampled errors.
class Rng {
public:
  explicit Rng(uint64_t seed);
  uint64_t next();
  double uniform(); // [0, 1)
  static const char* algorithm() { return "xoshiro256** / splitmix64"; }

private:
  uint64_t s_[4];
};

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b);

enum class NoiseKind { IndependentXZ, Depolarizing };

struct NoiseModel {
  NoiseKind kind = NoiseKind::IndependentXZ;
  double p = 0.0;
};

PauliVec sample_error(const NoiseModel& noise, const TorusLattice& lat,
                      Rng& rng);

struct SyndromeSample {
  // Defect generator indices bucketed by the charge class of the flipped
  // stabilizer generator; key 0 collects trivial-charge defects.
  std::map<uint64_t, std::vector<std::size_t>> defects;
  std::size_t total() const;
};

/// Per-size decoding state: instantiated stabilizer rows, charge classes,
/// logical operators, and the pair-correction cache.
class Decoder {
public:
  Decoder(const ChargeContext& ctx, const CanonicalGenerators& canon,
          unsigned edge); // edge in analysis-code units

  const TorusLattice& lat() const { return lat_; }
  const InstantiatedGroups& inst() const { return inst_; }
  const LogicalOperatorSet& logicals() const { return logicals_; }

  SyndromeSample extract_syndrome(const PauliVec& error) const;

  /// Matching decoder. Flipped generators are grouped by cell; each cell
  /// carries the product charge of its flips. Cells are matched per
  /// canonical charge component (greedy, torus L1 metric, lexicographic
  /// tie-break) and joined by strings of the component charge; the
  /// trivial-charge flip pattern left in each cell is erased locally. The
  /// returned correction reproduces the input syndrome exactly.
  PauliVec decode_matching(const SyndromeSample& syndrome) const;

  /// Failure flags per logical pair (X_i, Z_i) of the residual
  /// error * correction.
  std::vector<bool> logical_failure(const PauliVec& residual) const;

  std::size_t n_pairs() const { return logicals_.x_bar.size(); }

private:
  const ChargeContext& ctx_;
  TorusLattice lat_;
  InstantiatedGroups inst_;
  std::vector<BitVector> dual_rows_;
  std::size_t charge_dim_ = 0;
  std::vector<BitVector> recipe_charge_; // per stabilizer recipe, this size
  std::vector<uint64_t> recipe_class_;   // charge key per stabilizer recipe
  std::vector<std::vector<unsigned>> basis_rep_; // recipe flips per basis bit
  HomologyCycles cycles_;
  LogicalOperatorSet logicals_;
  mutable std::map<std::string, PauliVec> string_cache_;

  PauliVec basis_string(std::size_t bit, Site from, Site to) const;
  PauliVec cell_eraser(const std::vector<unsigned>& recipes,
                       Site cell) const;
};

struct TrialStats {
  unsigned edge = 0; // torus edge, analysis-code units
  double p = 0.0;
  std::string noise;
  std::size_t trials = 0;
  uint64_t seed = 0;
  std::vector<std::size_t> failures_per_pair;
  std::size_t failures_any = 0;
  double wall_seconds = 0.0; // excluded from determinism comparisons

  double rate() const {
    return trials ? double(failures_any) / double(trials) : 0.0;
  }
};

struct WilsonInterval {
  double low = 0.0, high = 0.0;
};
WilsonInterval wilson95(std::size_t failures, std::size_t trials);

/// Runs `trials` decoding trials per size. Deterministic for a fixed seed;
/// every trial asserts exact syndrome cancellation.
std::vector<TrialStats> monte_carlo(const ChargeContext& ctx,
                                    const CanonicalGenerators& canon,
                                    const std::vector<unsigned>& edges,
                                    const NoiseModel& noise,
                                    std::size_t trials, uint64_t seed);

} // namespace tsc
