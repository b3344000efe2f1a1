#include "tsc/analysis.hpp"
#include "tsc/error.hpp"
#include "tsc/fixtures.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw tsc::Error(tsc::ErrorKind::Usage, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

tsc::AnalysisOptions make_options(unsigned torus, unsigned window,
                                  unsigned coarse_max,
                                  const std::string& adjust) {
  tsc::AnalysisOptions opts;
  opts.torus = torus;
  opts.window = window;
  opts.coarse_max = coarse_max;
  opts.adjust = adjust == "gauge" ? tsc::AdjustMode::GaugeExtended
                                  : tsc::AdjustMode::StabilizerExtended;
  return opts;
}

unsigned parse_torus(const std::string& spec) {
  if (spec.empty())
    return 0;
  auto x = spec.find('x');
  if (x == std::string::npos)
    return unsigned(std::stoul(spec));
  unsigned w = unsigned(std::stoul(spec.substr(0, x)));
  unsigned h = unsigned(std::stoul(spec.substr(x + 1)));
  if (w != h)
    throw tsc::Error(tsc::ErrorKind::Usage,
                     "only square tori are supported");
  return w;
}

std::vector<unsigned> parse_sizes(const std::string& spec) {
  std::vector<unsigned> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty())
      out.push_back(unsigned(std::stoul(tok)));
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of translationally invariant 2D stabilizer and "
               "subsystem codes"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::string torus_spec, adjust = "stab";
  unsigned window = 0, coarse_max = 4;
  bool json = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--torus", torus_spec,
                    "analysis torus override, e.g. 12 or 12x12");
    cmd->add_option("--window", window, "windowed-check size override");
    cmd->add_option("--coarse-max", coarse_max,
                    "cap on coarse-grain escalation (default 4)");
    cmd->add_option("--adjust", adjust,
                    "homology adjustment: stab (default) or gauge")
        ->check(CLI::IsMember({"stab", "gauge"}));
  };

  // analyze
  std::string analyze_file;
  auto* cmd_analyze =
      app.add_subcommand("analyze", "analyze one code definition file");
  cmd_analyze->add_option("file", analyze_file, "code definition file")
      ->required();
  cmd_analyze->add_flag("--json", json, "emit the canonical JSON report");
  add_common(cmd_analyze);

  // equiv
  std::string equiv_a, equiv_b;
  auto* cmd_equiv = app.add_subcommand(
      "equiv", "decide topological equivalence of two codes");
  cmd_equiv->add_option("fileA", equiv_a)->required();
  cmd_equiv->add_option("fileB", equiv_b)->required();
  add_common(cmd_equiv);

  // decode
  std::string decode_file, sizes_spec = "4,8", noise_name = "independent-xz";
  double p = 0.01;
  std::size_t trials = 1000;
  uint64_t seed = 1;
  auto* cmd_decode = app.add_subcommand(
      "decode", "Monte Carlo benchmark of the matching decoder");
  cmd_decode->add_option("file", decode_file)->required();
  cmd_decode->add_option("--p", p, "error probability per qubit");
  cmd_decode->add_option("--sizes", sizes_spec,
                         "comma-separated torus edges (input units)");
  cmd_decode->add_option("--trials", trials, "trials per size");
  cmd_decode->add_option("--seed", seed, "RNG seed");
  cmd_decode->add_option("--noise", noise_name,
                         "independent-xz or depolarizing")
      ->check(CLI::IsMember({"independent-xz", "depolarizing"}));
  add_common(cmd_decode);

  // fixtures
  std::string dump_name;
  auto* cmd_fixtures =
      app.add_subcommand("fixtures", "list bundled code definitions");
  cmd_fixtures->add_option("--dump", dump_name,
                           "print one bundled definition");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_analyze->parsed()) {
      auto opts =
          make_options(parse_torus(torus_spec), window, coarse_max, adjust);
      auto res = tsc::analyze_text(read_file(analyze_file), opts);
      if (json)
        std::cout << tsc::report_json(res);
      else
        std::cout << tsc::report_text(res);
      return 0;
    }
    if (cmd_equiv->parsed()) {
      auto opts =
          make_options(parse_torus(torus_spec), window, coarse_max, adjust);
      auto ra = tsc::analyze_text(read_file(equiv_a), opts);
      auto rb = tsc::analyze_text(read_file(equiv_b), opts);
      auto rep = tsc::decide_equivalence(ra.characteristic, !ra.subsystem,
                                         rb.characteristic, !rb.subsystem);
      auto show = [](const tsc::AnalysisResult& r) {
        std::cout << r.code_name << ": (alpha=" << r.characteristic.alpha
                  << ", beta=" << r.characteristic.beta
                  << ", f1=" << r.characteristic.f1
                  << ", f2=" << r.characteristic.f2 << ")\n";
      };
      show(ra);
      show(rb);
      if (rep.both_subspace)
        std::cout << "verdict: "
                  << (rep.equivalent ? "equivalent" : "not equivalent")
                  << "\n";
      else
        std::cout << "topological charges isomorphic: "
                  << (rep.charges_isomorphic ? "yes" : "no") << "\n";
      return 0;
    }
    if (cmd_decode->parsed()) {
      auto opts =
          make_options(parse_torus(torus_spec), window, coarse_max, adjust);
      auto res = tsc::analyze_text(read_file(decode_file), opts);
      if (res.characteristic.alpha == 0)
        throw tsc::Error(tsc::ErrorKind::NoLogicals,
                         "no logical qubits to protect (alpha = 0)");
      tsc::NoiseModel noise;
      noise.kind = noise_name == "depolarizing"
                       ? tsc::NoiseKind::Depolarizing
                       : tsc::NoiseKind::IndependentXZ;
      noise.p = p;
      std::vector<unsigned> edges;
      for (unsigned s : parse_sizes(sizes_spec)) {
        if (s % res.total_coarse)
          throw tsc::Error(tsc::ErrorKind::Usage,
                           "size " + std::to_string(s) +
                               " is not a multiple of the coarse factor " +
                               std::to_string(res.total_coarse));
        edges.push_back(s / res.total_coarse);
      }
      auto stats =
          tsc::monte_carlo(*res.ctx, *res.canon, edges, noise, trials, seed);
      for (auto& st : stats)
        st.edge *= res.total_coarse; // report sizes in input units
      std::cout << tsc::decode_report_json(stats);
      return 0;
    }
    if (cmd_fixtures->parsed()) {
      if (!dump_name.empty()) {
        std::cout << tsc::fixture(dump_name).text;
        return 0;
      }
      for (const auto& f : tsc::fixtures()) {
        auto def = tsc::parse_code_file(f.text);
        std::cout << f.name << ": " << def.qubits_per_site
                  << " qubit(s) per site, " << def.stabilizer_recipes.size()
                  << " stabilizer recipe(s)";
        if (def.is_subsystem())
          std::cout << ", " << def.gauge_recipes->size()
                    << " gauge recipe(s)";
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const tsc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
