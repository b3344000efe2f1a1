#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsc/code.hpp"
#include "tsc/error.hpp"
#include "tsc/fixtures.hpp"
#include "tsc/lattice.hpp"

#include <random>

using namespace tsc;

TEST_CASE("parse toric fixture") {
  auto code = parse_code_file(fixture("toric").text);
  CHECK(code.name == "toric");
  CHECK(code.qubits_per_site == 2);
  CHECK(code.stabilizer_recipes.size() == 2);
  CHECK(!code.is_subsystem());
  CHECK(code.max_range() == 2);
}

TEST_CASE("parse subsystem trivial fixture") {
  auto code = parse_code_file(fixture("subsystem-trivial").text);
  CHECK(code.qubits_per_site == 1);
  CHECK(code.stabilizer_recipes.empty());
  REQUIRE(code.is_subsystem());
  CHECK(code.gauge_recipes->size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(
      parse_code_file("code x\nqubits 1\nstab A: Z(0,0)\n"),
      doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(
      parse_code_file("code x\nqubits 1\nstab A: Z(0,0,3)\n"),
      doctest::Contains("out of range"), Error);
  CHECK_THROWS_WITH_AS(
      parse_code_file("code x\nqubits 1\nstab A: Z(0,0,0) Z(0,0,0)\n"),
      doctest::Contains("duplicate term"), Error);
}

TEST_CASE("round trip through to_code_file") {
  auto code = parse_code_file(fixture("subsystem-color").text);
  auto again = parse_code_file(to_code_file(code));
  CHECK(code.stabilizer_recipes == again.stabilizer_recipes);
  CHECK(*code.gauge_recipes == *again.gauge_recipes);
}

TEST_CASE("instantiate counts rows") {
  auto toric = parse_code_file(fixture("toric").text);
  TorusLattice lat{4, 4, 2};
  auto inst = instantiate(toric, lat);
  CHECK(inst.stab.n_gens() == 32);
  CHECK(inst.stab.rows.n_cols() == 64);

  auto trivial = parse_code_file(fixture("trivial").text);
  TorusLattice lat3{3, 3, 1};
  auto i3 = instantiate(trivial, lat3);
  CHECK(i3.stab.n_gens() == 9);
  for (const auto& p : i3.stab.paulis) {
    CHECK(p.weight() == 1);
    CHECK(!p.x.any());
  }

  auto honey = parse_code_file(fixture("honeycomb").text);
  TorusLattice lat6{6, 6, 2};
  auto i6 = instantiate(honey, lat6);
  CHECK(i6.stab.n_gens() == 36);
  CHECK(i6.gauge.n_gens() == 108);
}

TEST_CASE("instantiate rejects a too-small torus") {
  auto toric = parse_code_file(fixture("toric").text);
  CHECK_THROWS_AS(instantiate(toric, TorusLattice{3, 3, 2}), Error);
}

TEST_CASE("instantiated rows are translates of the anchor row") {
  auto code = parse_code_file(fixture("subsystem-toric").text);
  TorusLattice lat{6, 6, 2};
  auto inst = instantiate(code, lat);
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    unsigned r = rng() % unsigned(inst.gauge.n_recipes);
    int x = int(rng() % 6), y = int(rng() % 6);
    PauliVec anchor = inst.gauge.paulis[inst.gauge.gen_index(
        GenRef{r, Site{0, 0}})];
    PauliVec there =
        inst.gauge.paulis[inst.gauge.gen_index(GenRef{r, Site{x, y}})];
    CHECK(translate(anchor, lat, x, y) == there);
  }
}

TEST_CASE("translate is periodic and preserves the symplectic product") {
  TorusLattice lat{5, 7, 2};
  std::mt19937 rng(4);
  std::bernoulli_distribution coin(0.2);
  for (int t = 0; t < 20; ++t) {
    PauliVec u(lat.n_qubits()), v(lat.n_qubits());
    for (std::size_t q = 0; q < lat.n_qubits(); ++q) {
      if (coin(rng)) u.x.set(q);
      if (coin(rng)) u.z.set(q);
      if (coin(rng)) v.x.set(q);
      if (coin(rng)) v.z.set(q);
    }
    CHECK(translate(u, lat, 0, 0) == u);
    CHECK(translate(u, lat, 5, 0) == u);
    CHECK(translate(u, lat, 0, 7) == u);
    int dx = int(rng() % 5), dy = int(rng() % 7);
    CHECK(symplectic_product(translate(u, lat, dx, dy),
                             translate(v, lat, dx, dy)) ==
          symplectic_product(u, v));
  }
}

TEST_CASE("coarse grain: level 1 is identity, counts scale") {
  auto toric = parse_code_file(fixture("toric").text);
  CHECK(coarse_grain(toric, 1) == coarse_grain(toric, 1));
  auto c2 = coarse_grain(toric, 2);
  CHECK(c2.qubits_per_site == 8);
  CHECK(c2.stabilizer_recipes.size() == 8);
}

namespace {

// Canonical index map: coarse site (X, Y), block position (bx, by),
// original qubit q -> fine qubit at (lX+bx, lY+by).
PauliVec map_coarse_row(const PauliVec& cp, const TorusLattice& coarse,
                        const TorusLattice& fine, unsigned l, unsigned qps) {
  PauliVec fp(fine.n_qubits());
  for (unsigned Y = 0; Y < coarse.ly; ++Y)
    for (unsigned X = 0; X < coarse.lx; ++X)
      for (unsigned cq = 0; cq < coarse.qubits_per_site; ++cq) {
        std::size_t ci_q = coarse.qubit_index(int(X), int(Y), cq);
        if (!cp.x.get(ci_q) && !cp.z.get(ci_q))
          continue;
        unsigned q = cq % qps;
        unsigned bx = (cq / qps) % l, by = cq / (qps * l);
        std::size_t fi_q =
            fine.qubit_index(int(l * X + bx), int(l * Y + by), q);
        if (cp.x.get(ci_q))
          fp.x.set(fi_q);
        if (cp.z.get(ci_q))
          fp.z.set(fi_q);
      }
  return fp;
}

} // namespace

TEST_CASE("coarse grain preserves the generated row space") {
  for (const char* name :
       {"trivial", "toric", "subsystem-toric", "honeycomb"}) {
    auto code = parse_code_file(fixture(name).text);
    for (unsigned l : {2u, 3u}) {
      auto cg = coarse_grain(code, l);
      unsigned edge = 4 * l;
      TorusLattice fine{edge, edge, code.qubits_per_site};
      TorusLattice coarse{4, 4, cg.qubits_per_site};
      auto fi = instantiate(code, fine);
      auto ci = instantiate(cg, coarse);
      auto check_side = [&](const InstantiatedGroup& cs,
                            const InstantiatedGroup& fs) {
        BitMatrix mapped(2 * fine.n_qubits());
        for (const auto& cp : cs.paulis)
          mapped.add_row(to_flat(
              map_coarse_row(cp, coarse, fine, l, code.qubits_per_site)));
        CHECK_MESSAGE(BitMatrix::same_row_space(mapped, fs.rows),
                      name << " l=" << l);
      };
      check_side(ci.stab, fi.stab);
      if (code.is_subsystem())
        check_side(ci.gauge, fi.gauge);
    }
  }
}

TEST_CASE("compose: unit cell union and identity element") {
  auto toric = parse_code_file(fixture("toric").text);
  auto trivial = parse_code_file(fixture("trivial").text);
  auto both = compose(toric, trivial);
  CHECK(both.qubits_per_site == 3);
  CHECK(both.stabilizer_recipes.size() == 3);
  CHECK(!both.is_subsystem());

  auto empty = parse_code_file(fixture("empty").text);
  auto same = compose(empty, toric);
  CHECK(same.qubits_per_site == toric.qubits_per_site);
  CHECK(same.stabilizer_recipes.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(same.stabilizer_recipes[i].terms ==
          toric.stabilizer_recipes[i].terms);
}

TEST_CASE("compose instantiates block-diagonally") {
  auto toric = parse_code_file(fixture("toric").text);
  auto trivial = parse_code_file(fixture("trivial").text);
  auto both = compose(toric, trivial);
  TorusLattice lat{4, 4, 3};
  auto inst = instantiate(both, lat);
  // Rows from the first half act on qubits 0,1 of each site only.
  for (std::size_t i = 0; i < inst.stab.n_gens(); ++i) {
    GenRef g = inst.stab.gen_ref(i);
    const PauliVec& p = inst.stab.paulis[i];
    for (unsigned y = 0; y < 4; ++y)
      for (unsigned x = 0; x < 4; ++x) {
        bool third = p.x.get(lat.qubit_index(int(x), int(y), 2)) ||
                     p.z.get(lat.qubit_index(int(x), int(y), 2));
        if (g.recipe < 2)
          CHECK(!third);
      }
  }
}

TEST_CASE("normalize: wide recipes get coarse grained to range 2") {
  CodeDefinition wide;
  wide.name = "wide";
  wide.qubits_per_site = 1;
  wide.stabilizer_recipes.push_back(
      GeneratorRecipe{"W", {PauliTerm{0, 0, 0, PauliLetter::Z},
                            PauliTerm{3, 0, 0, PauliLetter::Z}}});
  auto norm = normalize_code(wide);
  CHECK(norm.code.max_range() <= 2);
  CHECK(norm.coarse_level > 1);
  // Row spaces agree on a compatible torus under the canonical map.
  auto fixtures_ok = parse_code_file(fixture("toric").text);
  CHECK(normalize_code(fixtures_ok).coarse_level == 1);
}
