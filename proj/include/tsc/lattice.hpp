#pragma once

#include "tsc/code.hpp"
#include "tsc/gf2.hpp"
#include "tsc/pauli.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tsc {

/// Finite periodic square lattice of sites, each holding qubits_per_site
/// qubits. Qubit index order is (y, then x, then qubit): qubit varies
/// fastest, then x, then y.
struct TorusLattice {
  unsigned lx = 0, ly = 0;
  unsigned qubits_per_site = 0;

  std::size_t n_sites() const { return std::size_t(lx) * ly; }
  std::size_t n_qubits() const { return n_sites() * qubits_per_site; }

  unsigned wrap_x(int x) const {
    int m = x % int(lx);
    return unsigned(m < 0 ? m + int(lx) : m);
  }
  unsigned wrap_y(int y) const {
    int m = y % int(ly);
    return unsigned(m < 0 ? m + int(ly) : m);
  }
  std::size_t site_index(int x, int y) const {
    return std::size_t(wrap_y(y)) * lx + wrap_x(x);
  }
  std::size_t qubit_index(int x, int y, unsigned q) const {
    return site_index(x, y) * qubits_per_site + q;
  }

  bool operator==(const TorusLattice&) const = default;
};

struct Site {
  int x = 0, y = 0;
  bool operator==(const Site&) const = default;
  bool operator<(const Site& o) const {
    return y != o.y ? y < o.y : x < o.x;
  }
};

enum class Side : unsigned char { Stabilizer, Gauge };

/// Identifies one instantiated generator: a recipe anchored at a site.
struct GenRef {
  unsigned recipe = 0;
  Site site;
  bool operator==(const GenRef&) const = default;
  bool operator<(const GenRef& o) const {
    return recipe != o.recipe ? recipe < o.recipe : site < o.site;
  }
};

/// Builds the Pauli vector of one generator on the torus.
PauliVec build_generator(const CodeDefinition& code, const TorusLattice& lat,
                         Side side, unsigned recipe, Site site);

/// All generators of one side instantiated on the torus.
///
/// Generator index order is recipe-major: index = recipe * n_sites +
/// site_index, so translates of one recipe are contiguous.
struct InstantiatedGroup {
  TorusLattice lat;
  Side side = Side::Stabilizer;
  std::size_t n_recipes = 0;
  BitMatrix rows; // flat 2n layout
  std::vector<PauliVec> paulis;

  std::size_t gen_index(const GenRef& g) const {
    return std::size_t(g.recipe) * lat.n_sites() +
           lat.site_index(g.site.x, g.site.y);
  }
  GenRef gen_ref(std::size_t index) const {
    GenRef g;
    g.recipe = unsigned(index / lat.n_sites());
    std::size_t s = index % lat.n_sites();
    g.site = {int(s % lat.lx), int(s / lat.lx)};
    return g;
  }
  std::size_t n_gens() const { return paulis.size(); }
  std::string describe(std::size_t index, const CodeDefinition& code) const;
};

struct InstantiatedGroups {
  TorusLattice lat;
  InstantiatedGroup stab;
  InstantiatedGroup gauge; // equals stab for subspace codes
  bool subsystem = false;
};

/// Instantiates both sides on the torus. Requires lx, ly >= 2 * max range.
InstantiatedGroups instantiate(const CodeDefinition& code,
                               const TorusLattice& lat);

/// Shifts a Pauli by (dx, dy) sites; an automorphism of the symplectic
/// space.
PauliVec translate(const PauliVec& p, const TorusLattice& lat, int dx,
                   int dy);

/// Sites whose support a Pauli touches.
std::vector<Site> support_sites(const PauliVec& p, const TorusLattice& lat);

} // namespace tsc
