#pragma once

#include "tsc/charge.hpp"
#include "tsc/decode.hpp"
#include "tsc/torus_code.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tsc {

struct AnalysisOptions {
  unsigned torus = 0;      // analysis torus override (edge, input units)
  unsigned window = 0;     // windowed-check size override
  unsigned coarse_max = 4; // escalation cap when string solving fails
  AdjustMode adjust = AdjustMode::StabilizerExtended;
};

struct AnalysisResult {
  std::string code_name;
  bool subsystem = false;
  AnalysisOptions options;

  unsigned normalize_level = 1;
  unsigned charge_step = 1;
  unsigned extra_coarse = 1;
  unsigned total_coarse = 1;
  unsigned range = 1;
  unsigned window = 0;
  unsigned min_torus = 4; // input units

  unsigned torus_analysis = 0; // edge, analysis-code units
  unsigned torus_string = 0;
  unsigned torus_stability = 0;

  std::size_t n_qubits = 0;
  std::size_t rank_stab = 0;
  std::size_t rank_gauge = 0;
  std::size_t rank_stab_adjusted = 0;
  std::size_t rank_gauge_adjusted = 0;
  std::size_t k = 0;

  std::size_t dim_gauge_charges = 0;
  std::size_t dim_stab_charges = 0;

  Characteristic characteristic;
  std::vector<std::string> canon_names; // c1..ca, d1..da, e1..eb
  std::vector<int> theta_table;         // over canon_names
  std::vector<std::vector<int>> kappa_table;
  std::vector<std::vector<int>> kappa_mixed_table; // e rows x e~ cols

  bool stab_signs_ok = true;
  bool stab_sign_fixable = false;
  bool cycle_table_ok = false;
  bool logical_relations_ok = false;
  bool gauge_code_identity_ok = false;
  bool k_equals_2alpha = false;

  double wall_seconds = 0.0; // human report only

  // Live objects for follow-up operations.
  std::shared_ptr<ChargeContext> ctx;
  std::shared_ptr<CanonicalGenerators> canon;
};

/// Full pipeline: normalize, guards, charges, statistics, canonical form,
/// torus assembly. Throws Error with a stage-specific kind on failure.
AnalysisResult analyze_code(const CodeDefinition& input,
                            const AnalysisOptions& opts = {});

AnalysisResult analyze_text(const std::string& text,
                            const AnalysisOptions& opts = {});

/// Canonical JSON serialization (sorted keys, no volatile fields), byte
/// identical across runs.
std::string report_json(const AnalysisResult& r);

/// Human-readable report, timing included.
std::string report_text(const AnalysisResult& r);

std::string decode_report_json(const std::vector<TrialStats>& stats);

} // namespace tsc
