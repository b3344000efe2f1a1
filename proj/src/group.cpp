#include "tsc/group.hpp"

#include "tsc/error.hpp"

#include <algorithm>
#include <set>

namespace tsc {

BitMatrix centralizer_basis(const BitMatrix& gen_rows) {
  // [p, g] = dot(flat(p), dual_flat(g)), so the centralizer is the kernel
  // of the matrix whose rows are the duals of the generators.
  BitMatrix duals(gen_rows.n_cols());
  for (const auto& r : gen_rows.rows())
    duals.add_row(dual_flat(from_flat(r)));
  return duals.kernel_basis();
}

ConstraintSpace constraint_space(const InstantiatedGroup& gens) {
  ConstraintSpace out;
  out.basis = gens.rows.left_kernel_basis();
  return out;
}

int product_sign(const InstantiatedGroup& gens, const BitVector& subset) {
  // Normal form bookkeeping: each generator is X^x Z^z times i^(#Y), and
  // (X^a Z^b)(X^c Z^d) = (-1)^(b.c) X^(a+c) Z^(b+d) per qubit.
  std::size_t n = gens.lat.n_qubits();
  BitVector ax(n), az(n);
  unsigned iexp = 0;
  for (std::size_t i = 0; i < gens.n_gens(); ++i) {
    if (!subset.get(i))
      continue;
    const PauliVec& p = gens.paulis[i];
    // count Y letters: popcount(x & z)
    unsigned cnt = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (p.x.get(q) && p.z.get(q))
        ++cnt;
    iexp = (iexp + cnt) % 4;
    if (az.dot(p.x))
      iexp = (iexp + 2) % 4;
    ax ^= p.x;
    az ^= p.z;
  }
  if (ax.any() || az.any())
    throw Error(ErrorKind::Structural,
                "product_sign: subset is not a constraint");
  if (iexp % 2 != 0)
    throw Error(ErrorKind::Structural,
                "product_sign: non-Hermitian constraint product");
  return iexp == 0 ? 1 : -1;
}

StabilizerVerdict check_stabilizer(const InstantiatedGroup& stab,
                                   const ConstraintSpace& constraints) {
  StabilizerVerdict v;
  // Pairwise commutation; only overlapping pairs can fail, but the dot is
  // cheap enough to scan all pairs at analysis sizes.
  for (std::size_t i = 0; i < stab.n_gens() && v.commuting; ++i) {
    BitVector di = dual_flat(stab.paulis[i]);
    for (std::size_t j = i + 1; j < stab.n_gens(); ++j) {
      if (stab.rows.row(j).dot(di)) {
        v.commuting = false;
        v.anticommuting_pair = {i, j};
        break;
      }
    }
  }
  if (!v.commuting)
    return v;
  for (const auto& c : constraints.basis.rows()) {
    int s = product_sign(stab, c);
    v.constraint_signs.push_back(s);
    if (s != 1)
      v.signs_ok = false;
  }
  // Basis constraints are independent, so a sign assignment flipping any
  // prescribed subset of them always exists.
  v.sign_fixable = !v.signs_ok;
  return v;
}

namespace {

struct WindowFrame {
  std::vector<std::size_t> qubits;      // global qubit indices inside window
  std::vector<std::size_t> near_rows;   // generators meeting the thickened window
  std::vector<std::size_t> touch_rows;  // generators meeting the window itself
};

bool site_in_window(const TorusLattice& lat, Site corner, unsigned w, int x,
                    int y) {
  unsigned rx = lat.wrap_x(x - corner.x);
  unsigned ry = lat.wrap_y(y - corner.y);
  return rx < w && ry < w;
}

WindowFrame make_frame(const InstantiatedGroup& gens, unsigned w,
                       Site corner, unsigned thicken) {
  const TorusLattice& lat = gens.lat;
  WindowFrame f;
  for (unsigned dy = 0; dy < w; ++dy)
    for (unsigned dx = 0; dx < w; ++dx)
      for (unsigned q = 0; q < lat.qubits_per_site; ++q)
        f.qubits.push_back(
            lat.qubit_index(corner.x + int(dx), corner.y + int(dy), q));
  for (std::size_t i = 0; i < gens.n_gens(); ++i) {
    bool near = false, touch = false;
    for (const Site& s : support_sites(gens.paulis[i], lat)) {
      for (int ty = -int(thicken); ty <= int(thicken) && !near; ++ty)
        for (int tx = -int(thicken); tx <= int(thicken) && !near; ++tx)
          if (site_in_window(lat, corner, w, s.x + tx, s.y + ty))
            near = true;
      if (site_in_window(lat, corner, w, s.x, s.y))
        touch = true;
    }
    if (near)
      f.near_rows.push_back(i);
    if (touch)
      f.touch_rows.push_back(i);
  }
  return f;
}

/// Basis of Paulis supported in the window commuting with every generator
/// of `gens`, as full-width flat vectors.
std::vector<BitVector> windowed_centralizer(const InstantiatedGroup& gens,
                                            const WindowFrame& f) {
  std::size_t n = gens.lat.n_qubits();
  std::size_t u = 2 * f.qubits.size(); // local x bits then local z bits
  // Equations: one per generator meeting the window (others commute
  // automatically by disjoint support).
  BitMatrix eqs(u);
  for (std::size_t row : f.touch_rows) {
    const PauliVec& g = gens.paulis[row];
    BitVector e(u);
    for (std::size_t k = 0; k < f.qubits.size(); ++k) {
      if (g.z.get(f.qubits[k]))
        e.set(k); // local x bit couples to generator z
      if (g.x.get(f.qubits[k]))
        e.set(f.qubits.size() + k);
    }
    eqs.add_row(std::move(e));
  }
  BitMatrix ker = eqs.kernel_basis();
  std::vector<BitVector> out;
  for (const auto& kv : ker.rows()) {
    PauliVec p(n);
    for (std::size_t k = 0; k < f.qubits.size(); ++k) {
      if (kv.get(k))
        p.x.set(f.qubits[k]);
      if (kv.get(f.qubits.size() + k))
        p.z.set(f.qubits[k]);
    }
    out.push_back(to_flat(p));
  }
  return out;
}

WindowReport containment_check(const InstantiatedGroup& inner_gens,
                               const InstantiatedGroup& span_gens,
                               const CodeDefinition& code, unsigned w,
                               Site corner) {
  WindowReport rep;
  rep.window = w;
  unsigned range = code.max_range();
  const TorusLattice& lat = inner_gens.lat;
  if (w + 2 * range > std::min(lat.lx, lat.ly))
    throw Error(ErrorKind::Usage, "window too large for torus");
  WindowFrame f_inner = make_frame(inner_gens, w, corner, 0);
  WindowFrame f_span = make_frame(span_gens, w, corner, 1);
  auto cent = windowed_centralizer(inner_gens, f_inner);
  Gf2Echelon span(2 * lat.n_qubits());
  for (std::size_t row : f_span.near_rows)
    span.add_row(span_gens.rows.row(row));
  rep.passed = true;
  for (const auto& v : cent) {
    if (!span.contains(v)) {
      rep.passed = false;
      rep.witness = from_flat(v);
      break;
    }
  }
  return rep;
}

} // namespace

WindowReport check_topological_window(const CodeDefinition& code,
                                      const InstantiatedGroups& inst,
                                      unsigned w, Site corner) {
  return containment_check(inst.stab, inst.stab, code, w, corner);
}

WindowReport check_tssg_window(const CodeDefinition& code,
                               const InstantiatedGroups& inst, unsigned w,
                               Site corner) {
  return containment_check(inst.gauge, inst.stab, code, w, corner);
}

WindowReport check_gauge_completeness_window(const CodeDefinition& code,
                                             const InstantiatedGroups& inst,
                                             unsigned w, Site corner) {
  return containment_check(inst.stab, inst.gauge, code, w, corner);
}

IndependenceReport local_independence_check(const CodeDefinition& code,
                                            const InstantiatedGroups& inst,
                                            unsigned w) {
  IndependenceReport rep;
  const TorusLattice& lat = inst.lat;
  auto check_side = [&](const InstantiatedGroup& gens) -> bool {
    // Generators supported entirely inside the window must be linearly
    // independent.
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < gens.n_gens(); ++i) {
      bool ok = true;
      for (const Site& s : support_sites(gens.paulis[i], lat))
        if (!site_in_window(lat, Site{0, 0}, w, s.x, s.y)) {
          ok = false;
          break;
        }
      if (ok)
        inside.push_back(i);
    }
    BitMatrix sub(2 * lat.n_qubits());
    for (std::size_t i : inside)
      sub.add_row(gens.rows.row(i));
    BitMatrix ker = sub.left_kernel_basis();
    if (ker.n_rows() == 0)
      return true;
    rep.witness = ker.row(0);
    for (std::size_t k = 0; k < inside.size(); ++k)
      if (ker.row(0).get(k))
        rep.witness_gens.push_back(gens.gen_ref(inside[k]));
    return false;
  };
  rep.passed = check_side(inst.stab) &&
               (!inst.subsystem || check_side(inst.gauge));
  (void)code;
  return rep;
}

std::size_t count_logical_qubits(std::size_t rank_stab, std::size_t rank_gauge,
                                 std::size_t n) {
  if ((rank_gauge - rank_stab) % 2 != 0)
    throw Error(ErrorKind::Structural,
                "count_logical_qubits: rank(gauge) - rank(stab) is odd");
  std::size_t sum = rank_gauge + rank_stab;
  if (sum % 2 != 0)
    throw Error(ErrorKind::Structural,
                "count_logical_qubits: rank sum is odd");
  if (sum / 2 > n)
    throw Error(ErrorKind::Structural,
                "count_logical_qubits: ranks exceed qubit count");
  return n - sum / 2;
}

unsigned default_window(const CodeDefinition& code) {
  return 2 * code.max_range() + 2;
}

} // namespace tsc
