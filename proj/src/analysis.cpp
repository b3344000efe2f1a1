#include "tsc/analysis.hpp"

#include "tsc/error.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

namespace tsc {

namespace {

const char* kVersion = "0.1.0";

std::vector<std::string> canonical_names(const CanonicalGenerators& canon) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < canon.c.size(); ++i)
    names.push_back("c" + std::to_string(i + 1));
  for (std::size_t i = 0; i < canon.d.size(); ++i)
    names.push_back("d" + std::to_string(i + 1));
  for (std::size_t i = 0; i < canon.e.size(); ++i)
    names.push_back("e" + std::to_string(i + 1));
  return names;
}

std::vector<Charge> canonical_charges(const CanonicalGenerators& canon) {
  std::vector<Charge> cs;
  for (const auto& c : canon.c)
    cs.push_back(c.charge);
  for (const auto& d : canon.d)
    cs.push_back(d.charge);
  for (const auto& e : canon.e)
    cs.push_back(e.charge);
  return cs;
}

} // namespace

AnalysisResult analyze_code(const CodeDefinition& input,
                            const AnalysisOptions& opts) {
  auto t_start = std::chrono::steady_clock::now();
  AnalysisResult res;
  res.code_name = input.name;
  res.subsystem = input.is_subsystem();
  res.options = opts;

  NormalizedCode norm = normalize_code(input);
  res.normalize_level = norm.coarse_level;
  res.range = norm.code.max_range();

  ChargeOptions chopts;
  chopts.window = opts.window;
  if (opts.torus) {
    if (opts.torus % norm.coarse_level)
      throw Error(ErrorKind::Usage,
                  "torus override must be a multiple of the normalization "
                  "level " +
                      std::to_string(norm.coarse_level));
    chopts.base_torus = opts.torus / norm.coarse_level;
  }

  // String-solver escalation ladder: coarse grain further and restart when
  // a required string has no solution at any allowed thickening.
  std::shared_ptr<ChargeContext> ctx;
  std::shared_ptr<CanonicalGenerators> canon;
  Characteristic ch;
  unsigned extra_used = 1;
  for (unsigned extra = 1;; ++extra) {
    CodeDefinition attempt =
        extra == 1 ? norm.code : coarse_grain(norm.code, extra);
    try {
      auto c = std::make_shared<ChargeContext>(
          build_charge_context(attempt, chopts));
      Characteristic ch_try;
      auto cn = std::make_shared<CanonicalGenerators>(
          c->canonical_generators(&ch_try));
      ctx = std::move(c);
      canon = std::move(cn);
      ch = ch_try;
      extra_used = extra;
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::StringSolve || extra >= opts.coarse_max)
        throw;
    }
  }
  res.extra_coarse = extra_used;
  res.charge_step = ctx->charge_step * extra_used;
  res.total_coarse = res.normalize_level * res.charge_step;
  res.window = ctx->guards.window;
  res.min_torus =
      min_torus_size(norm.code, res.charge_step).first * res.normalize_level;

  res.torus_analysis = ctx->lat_a.lx;
  res.torus_string = ctx->lat_str.lx;
  res.torus_stability = ctx->lat_a.lx + 2;
  res.n_qubits = ctx->lat_a.n_qubits();
  res.rank_stab = ctx->rank_stab;
  res.rank_gauge = ctx->rank_gauge;
  res.dim_gauge_charges = ctx->dim_g();
  res.dim_stab_charges = ctx->dim_s();
  res.stab_signs_ok = ctx->guards.stab.signs_ok;
  res.stab_sign_fixable = ctx->guards.stab.sign_fixable;
  res.characteristic = ch;

  // Statistics tables over the canonical generators.
  auto charges = canonical_charges(*canon);
  res.canon_names = canonical_names(*canon);
  for (const auto& c : charges)
    res.theta_table.push_back(ctx->theta(c));
  for (const auto& a : charges) {
    std::vector<int> row;
    for (const auto& b : charges)
      row.push_back(ctx->kappa(a, b));
    res.kappa_table.push_back(std::move(row));
  }
  for (const auto& e : canon->e) {
    std::vector<int> row;
    for (const auto& t : canon->e_tilde)
      row.push_back(ctx->kappa_mixed(e.charge, t.charge));
    res.kappa_mixed_table.push_back(std::move(row));
  }

  // Torus assembly: cycles, homology adjustment, logical operators.
  HomologyCycles cycles = extract_cycles(*ctx, *canon, ctx->lat_a);
  CommReport cyc = verify_cycle_table(cycles);
  res.cycle_table_ok = cyc.passed;
  if (!cyc.passed) {
    std::string bad;
    for (const auto& c : cyc.checks)
      if (!c.pass()) {
        bad = c.label;
        break;
      }
    throw Error(ErrorKind::Structural,
                "cycle commutation table failed at: " + bad);
  }
  AdjustedCode adj = homology_adjust(ctx->inst, cycles, opts.adjust);
  res.gauge_code_identity_ok = adj.identity_ok;
  if (!adj.identity_ok)
    throw Error(ErrorKind::Structural,
                "gauge-code identity failed after homology adjustment");
  res.rank_stab_adjusted = adj.stab_rows.rank();
  res.rank_gauge_adjusted = adj.gauge_rows.rank();
  res.k = count_logical_qubits(res.rank_stab_adjusted,
                               res.rank_gauge_adjusted,
                               ctx->lat_a.n_qubits());
  res.k_equals_2alpha = (res.k == 2 * std::size_t(ch.alpha));
  if (!res.k_equals_2alpha)
    throw Error(ErrorKind::Structural,
                "rank-based k = " + std::to_string(res.k) +
                    " disagrees with 2*alpha = " +
                    std::to_string(2 * ch.alpha));
  LogicalOperatorSet logs = extract_logicals(cycles);
  CommReport rels = verify_logical_relations(ctx->inst, logs);
  res.logical_relations_ok = rels.passed;
  if (!rels.passed)
    throw Error(ErrorKind::Structural, "logical relations failed");

  res.ctx = ctx;
  res.canon = canon;
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    t_start)
          .count();
  return res;
}

AnalysisResult analyze_text(const std::string& text,
                            const AnalysisOptions& opts) {
  return analyze_code(parse_code_file(text), opts);
}

std::string report_json(const AnalysisResult& r) {
  nlohmann::json j;
  j["code"] = r.code_name;
  j["version"] = kVersion;
  j["subsystem"] = r.subsystem;
  j["config"] = {
      {"adjust", r.options.adjust == AdjustMode::StabilizerExtended
                     ? "stab"
                     : "gauge"},
      {"coarse_max", r.options.coarse_max},
      {"torus_override", r.options.torus},
      {"window_override", r.options.window},
  };
  j["normalization"] = {
      {"charge_step", r.charge_step},
      {"extra_coarse", r.extra_coarse},
      {"normalize_level", r.normalize_level},
      {"range", r.range},
      {"total_coarse", r.total_coarse},
  };
  j["torus"] = {
      {"analysis", r.torus_analysis},
      {"min", r.min_torus},
      {"stability", r.torus_stability},
      {"string", r.torus_string},
      {"window", r.window},
  };
  j["counts"] = {
      {"k", r.k},
      {"n", r.n_qubits},
      {"rank_gauge", r.rank_gauge},
      {"rank_gauge_adjusted", r.rank_gauge_adjusted},
      {"rank_stabilizer", r.rank_stab},
      {"rank_stabilizer_adjusted", r.rank_stab_adjusted},
  };
  j["charge_groups"] = {
      {"gauge_dim", r.dim_gauge_charges},
      {"stabilizer_dim", r.dim_stab_charges},
  };
  j["characteristic"] = {
      {"alpha", r.characteristic.alpha},
      {"beta", r.characteristic.beta},
      {"f1", r.characteristic.f1},
      {"f2", r.characteristic.f2},
  };
  nlohmann::json canon;
  canon["names"] = r.canon_names;
  nlohmann::json theta;
  for (std::size_t i = 0; i < r.canon_names.size(); ++i)
    theta[r.canon_names[i]] = r.theta_table[i];
  canon["theta"] = theta;
  canon["kappa"] = r.kappa_table;
  canon["kappa_mixed"] = r.kappa_mixed_table;
  j["canonical"] = canon;
  j["logical"] = {
      {"count", r.k},
      {"pairs", r.characteristic.alpha},
  };
  j["verdicts"] = {
      {"cycle_table", r.cycle_table_ok},
      {"gauge_code_identity", r.gauge_code_identity_ok},
      {"k_equals_2alpha", r.k_equals_2alpha},
      {"logical_relations", r.logical_relations_ok},
      {"stabilizer_signs", r.stab_signs_ok},
      {"stabilizer_signs_fixable", r.stab_sign_fixable},
  };
  return j.dump(2) + "\n";
}

std::string report_text(const AnalysisResult& r) {
  std::ostringstream os;
  os << "code: " << r.code_name << (r.subsystem ? " (subsystem)" : "")
     << "\n";
  os << "normalization: level " << r.normalize_level << ", charge step "
     << r.charge_step << ", range " << r.range << "\n";
  os << "torus: analysis " << r.torus_analysis << "x" << r.torus_analysis;
  if (r.total_coarse > 1)
    os << " cells (" << r.torus_analysis * r.total_coarse << "x"
       << r.torus_analysis * r.total_coarse << " input sites)";
  os << ", strings " << r.torus_string << "x" << r.torus_string
     << ", stability check at " << r.torus_stability << "x"
     << r.torus_stability << ", window " << r.window << "\n";
  os << "counts: n=" << r.n_qubits << " rank(S)=" << r.rank_stab
     << " rank(G)=" << r.rank_gauge << " k=" << r.k << "\n";
  os << "charge groups: dim(gauge)=" << r.dim_gauge_charges
     << " dim(stabilizer)=" << r.dim_stab_charges << "\n";
  os << "characteristic: (alpha=" << r.characteristic.alpha
     << ", beta=" << r.characteristic.beta << ", f1=" << r.characteristic.f1
     << ", f2=" << r.characteristic.f2 << ")\n";
  os << "canonical generators:";
  for (std::size_t i = 0; i < r.canon_names.size(); ++i)
    os << ' ' << r.canon_names[i] << "(theta=" << r.theta_table[i] << ")";
  os << "\n";
  if (!r.kappa_table.empty()) {
    os << "kappa:\n";
    for (std::size_t i = 0; i < r.kappa_table.size(); ++i) {
      os << "  " << r.canon_names[i] << ":";
      for (int v : r.kappa_table[i])
        os << ' ' << (v > 0 ? "+1" : "-1");
      os << "\n";
    }
  }
  if (!r.kappa_mixed_table.empty()) {
    os << "kappa (e x e~):\n";
    for (const auto& row : r.kappa_mixed_table) {
      os << " ";
      for (int v : row)
        os << ' ' << (v > 0 ? "+1" : "-1");
      os << "\n";
    }
  }
  os << "verdicts: signs " << (r.stab_signs_ok ? "ok" : "fixable")
     << ", cycle table " << (r.cycle_table_ok ? "ok" : "FAILED")
     << ", gauge-code identity "
     << (r.gauge_code_identity_ok ? "ok" : "FAILED") << ", k == 2*alpha "
     << (r.k_equals_2alpha ? "ok" : "FAILED") << "\n";
  os << "logical qubits: " << r.k << "\n";
  os << "elapsed: " << r.wall_seconds << " s\n";
  return os.str();
}

std::string decode_report_json(const std::vector<TrialStats>& stats) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& st : stats) {
    WilsonInterval w = wilson95(st.failures_any, st.trials);
    nlohmann::json row;
    row["size"] = st.edge;
    row["p"] = st.p;
    row["noise"] = st.noise;
    row["trials"] = st.trials;
    row["failures"] = st.failures_any;
    row["failures_per_pair"] = st.failures_per_pair;
    row["rate"] = st.rate();
    row["ci_low"] = w.low;
    row["ci_high"] = w.high;
    row["seed"] = st.seed;
    rows.push_back(row);
  }
  nlohmann::json j;
  j["results"] = rows;
  j["rng"] = Rng::algorithm();
  j["version"] = kVersion;
  return j.dump(2) + "\n";
}

} // namespace tsc
