#include "tsc/lattice.hpp"

#include "tsc/error.hpp"

#include <sstream>

namespace tsc {

PauliVec build_generator(const CodeDefinition& code, const TorusLattice& lat,
                         Side side, unsigned recipe, Site site) {
  const auto& recipes = side == Side::Stabilizer ? code.stabilizer_recipes
                                                 : code.gauge_side();
  const auto& rec = recipes.at(recipe);
  PauliVec p(lat.n_qubits());
  for (const auto& t : rec.terms) {
    std::size_t q = lat.qubit_index(site.x + t.dx, site.y + t.dy, t.qubit);
    if (t.letter != PauliLetter::Z)
      p.x.flip(q);
    if (t.letter != PauliLetter::X)
      p.z.flip(q);
  }
  return p;
}

std::string InstantiatedGroup::describe(std::size_t index,
                                        const CodeDefinition& code) const {
  GenRef g = gen_ref(index);
  const auto& recipes = side == Side::Stabilizer ? code.stabilizer_recipes
                                                 : code.gauge_side();
  std::ostringstream os;
  os << recipes.at(g.recipe).label << "@(" << g.site.x << "," << g.site.y
     << ")";
  return os.str();
}

namespace {

InstantiatedGroup instantiate_side(const CodeDefinition& code,
                                   const TorusLattice& lat, Side side) {
  const auto& recipes = side == Side::Stabilizer ? code.stabilizer_recipes
                                                 : code.gauge_side();
  InstantiatedGroup g;
  g.lat = lat;
  g.side = side;
  g.n_recipes = recipes.size();
  g.rows = BitMatrix(2 * lat.n_qubits());
  for (unsigned r = 0; r < recipes.size(); ++r) {
    for (unsigned y = 0; y < lat.ly; ++y) {
      for (unsigned x = 0; x < lat.lx; ++x) {
        PauliVec p =
            build_generator(code, lat, side, r, Site{int(x), int(y)});
        g.rows.add_row(to_flat(p));
        g.paulis.push_back(std::move(p));
      }
    }
  }
  return g;
}

} // namespace

InstantiatedGroups instantiate(const CodeDefinition& code,
                               const TorusLattice& lat) {
  unsigned need = 2 * code.max_range();
  if (lat.lx < need || lat.ly < need) {
    std::ostringstream os;
    os << "torus " << lat.lx << "x" << lat.ly << " too small for code '"
       << code.name << "' (needs at least " << need << " per axis)";
    throw Error(ErrorKind::Usage, os.str());
  }
  if (lat.qubits_per_site != code.qubits_per_site)
    throw Error(ErrorKind::Usage, "lattice qubit count mismatch");
  InstantiatedGroups out;
  out.lat = lat;
  out.subsystem = code.is_subsystem();
  out.stab = instantiate_side(code, lat, Side::Stabilizer);
  out.gauge = out.subsystem ? instantiate_side(code, lat, Side::Gauge)
                            : out.stab;
  return out;
}

PauliVec translate(const PauliVec& p, const TorusLattice& lat, int dx,
                   int dy) {
  PauliVec out(p.n());
  for (unsigned y = 0; y < lat.ly; ++y) {
    for (unsigned x = 0; x < lat.lx; ++x) {
      for (unsigned q = 0; q < lat.qubits_per_site; ++q) {
        std::size_t from = lat.qubit_index(int(x), int(y), q);
        if (!p.x.get(from) && !p.z.get(from))
          continue;
        std::size_t to = lat.qubit_index(int(x) + dx, int(y) + dy, q);
        if (p.x.get(from))
          out.x.set(to);
        if (p.z.get(from))
          out.z.set(to);
      }
    }
  }
  return out;
}

std::vector<Site> support_sites(const PauliVec& p, const TorusLattice& lat) {
  std::vector<Site> out;
  for (unsigned y = 0; y < lat.ly; ++y)
    for (unsigned x = 0; x < lat.lx; ++x) {
      bool hit = false;
      for (unsigned q = 0; q < lat.qubits_per_site && !hit; ++q) {
        std::size_t i = lat.qubit_index(int(x), int(y), q);
        hit = p.x.get(i) || p.z.get(i);
      }
      if (hit)
        out.push_back(Site{int(x), int(y)});
    }
  return out;
}

} // namespace tsc
