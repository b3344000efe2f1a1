#include "tsc/torus_code.hpp"

#include "tsc/error.hpp"

#include <algorithm>
#include <sstream>

namespace tsc {

std::pair<unsigned, unsigned> min_torus_size(const CodeDefinition& normalized,
                                             unsigned charge_step) {
  unsigned base = std::max(4u, 2 * normalized.max_range());
  unsigned m = ((base + charge_step - 1) / charge_step) * charge_step;
  return {m, m};
}

namespace {

std::vector<Site> seg_path(Site a, Site b) {
  std::vector<Site> p;
  int dx = (b.x > a.x) - (b.x < a.x);
  int dy = (b.y > a.y) - (b.y < a.y);
  Site cur = a;
  p.push_back(cur);
  while (!(cur == b)) {
    cur.x += dx;
    cur.y += dy;
    p.push_back(cur);
  }
  return p;
}

PauliVec segment_string(const ChargeContext& ctx, const TorusLattice& lat,
                        const Morphism& rep, Site from, Site to) {
  Morphism ma = rep.translated(from.x, from.y);
  Morphism mb = rep.translated(to.x, to.y);
  std::vector<GenRef> flips = ma.flips;
  flips.insert(flips.end(), mb.flips.begin(), mb.flips.end());
  auto p = ctx.solve_string(lat, seg_path(from, to), rep.side, flips);
  if (!p)
    throw Error(ErrorKind::StringSolve,
                "segment string construction failed");
  return *p;
}

/// Plain translation-covariant unit segments of one charge; enough for
/// winding cycles, whose commutation is set by loop intersection parity.
struct SegmentFamily {
  TorusLattice lat;
  int step = 1;
  PauliVec h0, v0;

  PauliVec H(int i, int j) const {
    return translate(h0, lat, step * i, step * j);
  }
  PauliVec V(int i, int j) const {
    return translate(v0, lat, step * i, step * j);
  }
};

SegmentFamily build_raw_family(const ChargeContext& ctx,
                               const TorusLattice& lat, const Morphism& rep,
                               Site anchor) {
  SegmentFamily f;
  f.lat = lat;
  f.step = 1;
  f.h0 = segment_string(ctx, lat, rep, anchor,
                        Site{anchor.x + 1, anchor.y});
  f.v0 = segment_string(ctx, lat, rep, anchor,
                        Site{anchor.x, anchor.y + 1});
  return f;
}

// ---------------------------------------------------------------------
// Framework of segment operators
// ---------------------------------------------------------------------

/// Junction geometry of one family pair at a given framework step. Both
/// families use outgoing edges from their own vertex lattice; at step 1
/// the two vertex lattices coincide, at step 2 the dual one interleaves
/// half a step off. With this indexing, the dual of the direct H edge at
/// (i, j) is always the dual V segment at (i, j-1), and the dual of V at
/// (i, j) is the dual H segment at (i-1, j).
struct SegGeom {
  int step = 1;
  Site dh_a{0, 0}, dh_b{1, 0};
  Site dv_a{0, 0}, dv_b{0, 1};
  Site uh_a{0, 0}, uh_b{1, 0};
  Site uv_a{0, 0}, uv_b{0, 1};

  static SegGeom for_step(int step) {
    SegGeom g;
    g.step = step;
    if (step == 1)
      return g;
    int h = step / 2;
    g.dh_b = {step, 0};
    g.dv_b = {0, step};
    g.uh_a = {h, h};
    g.uh_b = {step + h, h};
    g.uv_a = {h, h};
    g.uv_b = {h, step + h};
    return g;
  }
};

/// Segment reference: family half, orientation, translation in framework
/// steps.
struct SegRef {
  bool dual = false;
  bool vertical = false;
  int i = 0, j = 0;
};

struct TableEntry {
  SegRef a, b;
  int expected = 1;
  const char* label = "";
};

std::vector<TableEntry> same_charge_entries(bool dual, int spin) {
  auto S = [dual](bool vert, int i, int j) {
    return SegRef{dual, vert, i, j};
  };
  return {
      {S(false, 0, 0), S(false, 1, 0), spin, "H00-H10 shared junction"},
      {S(false, 0, 0), S(false, 2, 0), 1, "H00-H20 disjoint"},
      {S(false, 0, 0), S(false, 0, 1), 1, "H00-H01 parallel"},
      {S(true, 0, 0), S(true, 0, 1), spin, "V00-V01 shared junction"},
      {S(true, 0, 0), S(true, 0, 2), 1, "V00-V02 disjoint"},
      {S(false, 0, 0), S(true, 0, 0), spin, "H00-V00 shared junction"},
      {S(false, 0, 0), S(true, 1, 0), spin, "H00-V10 shared junction"},
      {S(false, 0, 0), S(true, 0, -1), spin, "H00-V0-1 shared junction"},
      {S(false, 0, 0), S(true, 1, -1), spin, "H00-V1-1 shared junction"},
      {S(false, 0, 0), S(true, 2, 2), 1, "H00-V22 disjoint"},
  };
}

std::vector<TableEntry> pairing_entries() {
  auto D = [](bool vert, int i, int j) { return SegRef{false, vert, i, j}; };
  auto U = [](bool vert, int i, int j) { return SegRef{true, vert, i, j}; };
  return {
      {D(false, 0, 0), U(true, 0, -1), -1, "H00 x dualV0-1 crossing"},
      {D(true, 0, 0), U(false, -1, 0), -1, "V00 x dualH-10 crossing"},
      {D(false, 0, 0), U(true, 0, 0), 1, "H00 x dualV00"},
      {D(false, 0, 0), U(true, 1, -1), 1, "H00 x dualV1-1"},
      {D(false, 0, 0), U(true, -1, -1), 1, "H00 x dualV-1-1"},
      {D(false, 0, 0), U(true, 0, -2), 1, "H00 x dualV0-2"},
      {D(false, 0, 0), U(false, -1, 0), 1, "H00 x dualH-10"},
      {D(false, 0, 0), U(false, 0, 0), 1, "H00 x dualH00"},
      {D(true, 0, 0), U(true, 0, -1), 1, "V00 x dualV0-1"},
      {D(true, 0, 0), U(false, -1, 1), 1, "V00 x dualH-11"},
      {D(false, 0, 0), U(true, 2, 2), 1, "H00 x dualV far"},
      {D(true, 0, 0), U(false, 2, 2), 1, "V00 x dualH far"},
  };
}

struct FamilyBundle {
  SegmentFamily direct, dual;
  int spin_direct = 1;
  int spin_dual = 1;
  bool dual_theta_defined = true;
  int step = 1;
  std::string name;
};

/// Anchor generator whose syndrome a family string flips at each of its
/// junctions: a stabilizer generator from the string's stabilizer
/// restriction when one exists, else a generator from the endpoint
/// morphism itself.
PauliVec family_adjuster(const ChargeContext& ctx, const TorusLattice& lat,
                         const Morphism& rep_at_anchor) {
  if (rep_at_anchor.side == Side::Gauge) {
    auto fl = ctx.iota_flips(rep_at_anchor);
    if (!fl.empty()) {
      GenRef g = *std::min_element(fl.begin(), fl.end());
      return build_generator(ctx.code, lat, Side::Stabilizer, g.recipe,
                             g.site);
    }
  }
  if (rep_at_anchor.flips.empty())
    return PauliVec();
  GenRef g = *std::min_element(rep_at_anchor.flips.begin(),
                               rep_at_anchor.flips.end());
  return build_generator(ctx.code, lat, rep_at_anchor.side, g.recipe,
                         g.site);
}

/// Builds one family pair at the given framework step: solves raw
/// segments (the dual ones with the crossing pattern imposed when the
/// unconstrained solution misses it), then fixes the remaining table
/// entries by multiplying junction adjusters chosen through a GF(2)
/// system with measured coefficients. Throws Error{StringSolve} when no
/// segments exist at this step.
FamilyBundle build_bundle(const ChargeContext& ctx, const TorusLattice& lat,
                          const Morphism& rep_direct,
                          const Morphism& rep_dual, int spin_direct,
                          int spin_dual, bool dual_theta_defined,
                          Site anchor, int step, const std::string& name) {
  if (lat.lx % step || lat.ly % step || lat.lx < unsigned(4 * step))
    throw Error(ErrorKind::Usage, "framework lattice too small for step");
  FamilyBundle fb;
  fb.name = name;
  fb.spin_direct = spin_direct;
  fb.spin_dual = spin_dual;
  fb.dual_theta_defined = dual_theta_defined;
  fb.step = step;
  SegGeom geom = SegGeom::for_step(step);

  auto at = [&](Site s) { return Site{anchor.x + s.x, anchor.y + s.y}; };
  PauliVec rawH =
      segment_string(ctx, lat, rep_direct, at(geom.dh_a), at(geom.dh_b));
  PauliVec rawV =
      segment_string(ctx, lat, rep_direct, at(geom.dv_a), at(geom.dv_b));

  // Dual segments: prefer the plain solution; impose the crossing pattern
  // against the direct family only when it misses.
  auto dual_segment = [&](Site from, Site to, bool vertical) {
    Morphism ma = rep_dual.translated(from.x, from.y);
    Morphism mb = rep_dual.translated(to.x, to.y);
    std::vector<GenRef> flips = ma.flips;
    flips.insert(flips.end(), mb.flips.begin(), mb.flips.end());
    auto path = seg_path(from, to);
    // The base dual V segment (at index (0,0)) is the dual of the direct
    // H edge at (0,1); the base dual H pairs with direct V at (1,0).
    auto want = [&](bool direct_h, int i, int j) {
      if (vertical)
        return (direct_h && i == 0 && j == 1) ? 1 : 0;
      return (!direct_h && i == 1 && j == 0) ? 1 : 0;
    };
    auto pattern_ok = [&](const PauliVec& cand) {
      for (int j = 0; j < int(lat.ly) / step; ++j)
        for (int i = 0; i < int(lat.lx) / step; ++i) {
          if (symplectic_product(cand, translate(rawH, lat, step * i,
                                                 step * j)) != want(true, i, j))
            return false;
          if (symplectic_product(cand, translate(rawV, lat, step * i,
                                                 step * j)) !=
              want(false, i, j))
            return false;
        }
      return true;
    };
    auto plain = ctx.solve_string(lat, path, rep_dual.side, flips);
    if (plain && pattern_ok(*plain))
      return *plain;
    std::vector<PauliVec> ops;
    for (int j = 0; j < int(lat.ly) / step; ++j)
      for (int i = 0; i < int(lat.lx) / step; ++i) {
        ops.push_back(translate(rawH, lat, step * i, step * j));
        ops.push_back(translate(rawV, lat, step * i, step * j));
      }
    std::vector<std::pair<const PauliVec*, int>> extra;
    std::size_t idx = 0;
    for (int j = 0; j < int(lat.ly) / step; ++j)
      for (int i = 0; i < int(lat.lx) / step; ++i) {
        extra.push_back({&ops[idx++], want(true, i, j)});
        extra.push_back({&ops[idx++], want(false, i, j)});
      }
    auto p = ctx.solve_string_with(lat, path, rep_dual.side, flips, extra);
    if (!p)
      throw Error(ErrorKind::StringSolve,
                  "dual segment with prescribed crossings failed for "
                  "family " +
                      name);
    return *p;
  };
  PauliVec rawHd = dual_segment(at(geom.uh_a), at(geom.uh_b), false);
  PauliVec rawVd = dual_segment(at(geom.uv_a), at(geom.uv_b), true);

  PauliVec adjD =
      family_adjuster(ctx, lat, rep_direct.translated(anchor.x, anchor.y));
  PauliVec adjU =
      family_adjuster(ctx, lat, rep_dual.translated(anchor.x, anchor.y));

  // Unknowns: adjuster exponents at the two junctions of each base
  // segment. 0,1: direct H; 2,3: direct V; 4,5: dual H; 6,7: dual V.
  struct JPos {
    bool dual;
    Site s;
  };
  JPos pos_tab[8] = {
      {false, at(geom.dh_a)}, {false, at(geom.dh_b)},
      {false, at(geom.dv_a)}, {false, at(geom.dv_b)},
      {true, at(geom.uh_a)},  {true, at(geom.uh_b)},
      {true, at(geom.uv_a)},  {true, at(geom.uv_b)},
  };
  auto raw_of = [&](const SegRef& s) {
    const PauliVec& base = s.dual ? (s.vertical ? rawVd : rawHd)
                                  : (s.vertical ? rawV : rawH);
    return translate(base, lat, step * s.i, step * s.j);
  };
  auto unknowns_of = [&](const SegRef& s, int out[2]) {
    int start = (s.dual ? 4 : 0) + (s.vertical ? 2 : 0);
    out[0] = start;
    out[1] = start + 1;
  };
  // Adjuster operator attached to junction `unknown` of a segment
  // translated by (i, j) framework steps.
  auto adjuster_vec = [&](int unknown, int i, int j) -> PauliVec {
    const PauliVec& a = unknown >= 4 ? adjU : adjD;
    if (a.n() == 0)
      return PauliVec();
    return translate(a, lat,
                     pos_tab[unknown].s.x - anchor.x + step * i,
                     pos_tab[unknown].s.y - anchor.y + step * j);
  };

  std::vector<TableEntry> entries = same_charge_entries(false, spin_direct);
  if (dual_theta_defined)
    for (auto e : same_charge_entries(true, spin_dual))
      entries.push_back(e);
  for (auto e : pairing_entries())
    entries.push_back(e);

  BitMatrix system(8);
  std::vector<bool> rhs_bits;
  for (const auto& e : entries) {
    PauliVec ra = raw_of(e.a), rb = raw_of(e.b);
    BitVector row(8);
    int idx[2];
    unknowns_of(e.a, idx);
    for (int k = 0; k < 2; ++k) {
      PauliVec aop = adjuster_vec(idx[k], e.a.i, e.a.j);
      if (aop.n() && symplectic_product(aop, rb))
        row.flip(std::size_t(idx[k]));
    }
    unknowns_of(e.b, idx);
    for (int k = 0; k < 2; ++k) {
      PauliVec aop = adjuster_vec(idx[k], e.b.i, e.b.j);
      if (aop.n() && symplectic_product(ra, aop))
        row.flip(std::size_t(idx[k]));
    }
    int raw = symplectic_product(ra, rb);
    int want = e.expected == -1 ? 1 : 0;
    system.add_row(std::move(row));
    rhs_bits.push_back((raw ^ want) != 0);
  }
  BitVector rhs(rhs_bits.size());
  for (std::size_t i = 0; i < rhs_bits.size(); ++i)
    if (rhs_bits[i])
      rhs.set(i);
  auto sol = system.solve(rhs);
  if (!sol) {
    std::ostringstream os;
    os << "segment table is not adjustable for family " << name
       << " at step " << step << "; unfixable entries:";
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (rhs.get(i) && !system.row(i).any())
        os << " [" << entries[i].label << "]";
    throw Error(ErrorKind::StringSolve, os.str());
  }

  auto dress = [&](const PauliVec& raw, int u0, int u1) {
    PauliVec out = raw;
    for (int u : {u0, u1}) {
      if (!sol->particular.get(std::size_t(u)))
        continue;
      PauliVec aop = adjuster_vec(u, 0, 0);
      if (aop.n() == 0)
        throw Error(ErrorKind::StringSolve,
                    "segment adjustment required but no adjuster exists "
                    "for family " +
                        name);
      out ^= aop;
    }
    return out;
  };
  fb.direct.lat = lat;
  fb.direct.step = step;
  fb.direct.h0 = dress(rawH, 0, 1);
  fb.direct.v0 = dress(rawV, 2, 3);
  fb.dual.lat = lat;
  fb.dual.step = step;
  fb.dual.h0 = dress(rawHd, 4, 5);
  fb.dual.v0 = dress(rawVd, 6, 7);
  return fb;
}

FamilyBundle build_bundle_escalating(const ChargeContext& ctx,
                                     const TorusLattice& lat_base,
                                     const Morphism& rep_direct,
                                     const Morphism& rep_dual,
                                     int spin_direct, int spin_dual,
                                     bool dual_theta_defined, Site anchor,
                                     const std::string& name) {
  for (int step = 1; step <= 2; ++step) {
    unsigned edge = std::max(lat_base.lx, unsigned(4 * step));
    edge = ((edge + unsigned(2 * step) - 1) / unsigned(2 * step)) *
           unsigned(2 * step);
    TorusLattice lat{edge, edge, lat_base.qubits_per_site};
    try {
      return build_bundle(ctx, lat, rep_direct, rep_dual, spin_direct,
                          spin_dual, dual_theta_defined, anchor, step, name);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::StringSolve || step == 2)
        throw;
    }
  }
  throw Error(ErrorKind::StringSolve, "unreachable");
}

std::vector<FamilyBundle> build_bundles(const ChargeContext& ctx,
                                        const CanonicalGenerators& canon,
                                        const TorusLattice& lat) {
  std::vector<FamilyBundle> out;
  unsigned alpha = unsigned(canon.c.size());
  unsigned beta = unsigned(canon.e.size());
  for (unsigned q = 0; q < alpha + beta; ++q) {
    Site anchor{int((3 * q) % lat.lx), int((3 * q) % lat.ly)};
    if (q < alpha) {
      out.push_back(build_bundle_escalating(
          ctx, lat, canon.c[q].rep, canon.d[q].rep,
          ctx.theta(canon.c[q].charge), ctx.theta(canon.d[q].charge), true,
          anchor, "pair" + std::to_string(q + 1)));
    } else {
      unsigned k = q - alpha;
      out.push_back(build_bundle_escalating(
          ctx, lat, canon.e[k].rep, canon.e_tilde[k].rep,
          ctx.theta(canon.e[k].charge), 1, false, anchor,
          "kernel" + std::to_string(k + 1)));
    }
  }
  return out;
}

void check_bundle(CommReport* rep, const FamilyBundle& fb) {
  auto seg = [&](const SegRef& s) {
    const SegmentFamily& f = s.dual ? fb.dual : fb.direct;
    return s.vertical ? f.V(s.i, s.j) : f.H(s.i, s.j);
  };
  std::vector<TableEntry> entries = same_charge_entries(false,
                                                        fb.spin_direct);
  if (fb.dual_theta_defined)
    for (auto e : same_charge_entries(true, fb.spin_dual))
      entries.push_back(e);
  for (auto e : pairing_entries())
    entries.push_back(e);
  for (const auto& e : entries)
    rep->add(fb.name + ":" + e.label, e.expected,
             comm_sign(seg(e.a), seg(e.b)));
}

} // namespace

CommReport verify_framework_commutation(const ChargeContext& ctx,
                                        const CanonicalGenerators& canon) {
  CommReport rep;
  const TorusLattice& lat = ctx.lat_a;
  auto fams = build_bundles(ctx, canon, lat);
  for (const auto& fb : fams)
    check_bundle(&rep, fb);
  // Segments of distinct canonical indices commute (only comparable when
  // the bundles share one lattice).
  for (std::size_t a = 0; a < fams.size(); ++a)
    for (std::size_t b = a + 1; b < fams.size(); ++b) {
      if (!(fams[a].direct.lat == fams[b].direct.lat))
        continue;
      std::string tag = fams[a].name + "x" + fams[b].name;
      rep.add(tag + ":H-H", 1,
              comm_sign(fams[a].direct.H(0, 0), fams[b].direct.H(0, 0)));
      rep.add(tag + ":H-dualV", 1,
              comm_sign(fams[a].direct.H(0, 0), fams[b].dual.V(0, 0)));
      rep.add(tag + ":dual-dual", 1,
              comm_sign(fams[a].dual.H(0, 0), fams[b].dual.H(0, 0)));
    }
  return rep;
}

HomologyCycles extract_cycles(const ChargeContext& ctx,
                              const CanonicalGenerators& canon,
                              const TorusLattice& lat) {
  HomologyCycles out;
  out.alpha = unsigned(canon.c.size());
  out.beta = unsigned(canon.e.size());
  int mid_x = int(lat.lx / 2);
  int mid_y = int(lat.ly / 2);
  for (unsigned q = 0; q < out.alpha + out.beta; ++q) {
    Site anchor{int((3 * q) % lat.lx), int((3 * q) % lat.ly)};
    const Morphism& rep_d =
        q < out.alpha ? canon.c[q].rep : canon.e[q - out.alpha].rep;
    const Morphism& rep_u =
        q < out.alpha ? canon.d[q].rep : canon.e_tilde[q - out.alpha].rep;
    SegmentFamily dir = build_raw_family(ctx, lat, rep_d, anchor);
    SegmentFamily du = build_raw_family(ctx, lat, rep_u, anchor);
    PauliVec z1(lat.n_qubits()), z2(lat.n_qubits());
    PauliVec z1s(lat.n_qubits()), z2s(lat.n_qubits());
    // Wrap lines default to the family anchor's row/column; the orthogonal
    // partners sit half a torus away.
    for (unsigned i = 0; i < lat.lx; ++i)
      z1 ^= dir.H(int(i), 0);
    for (unsigned j = 0; j < lat.ly; ++j)
      z2 ^= dir.V(mid_x, int(j));
    for (unsigned j = 0; j < lat.ly; ++j)
      z1s ^= du.V(0, int(j));
    for (unsigned i = 0; i < lat.lx; ++i)
      z2s ^= du.H(int(i), mid_y);
    out.z1.push_back(std::move(z1));
    out.z2.push_back(std::move(z2));
    out.z1s.push_back(std::move(z1s));
    out.z2s.push_back(std::move(z2s));
  }
  return out;
}

CommReport verify_cycle_table(const HomologyCycles& cycles) {
  CommReport rep;
  unsigned nq = cycles.alpha + cycles.beta;
  auto zi = [&](unsigned i, unsigned q) -> const PauliVec& {
    return i == 1 ? cycles.z1[q] : cycles.z2[q];
  };
  auto zs = [&](unsigned i, unsigned q) -> const PauliVec& {
    return i == 1 ? cycles.z1s[q] : cycles.z2s[q];
  };
  for (unsigned q = 0; q < nq; ++q)
    for (unsigned qp = 0; qp < nq; ++qp)
      for (unsigned i = 1; i <= 2; ++i)
        for (unsigned j = 1; j <= 2; ++j) {
          std::ostringstream lbl;
          lbl << "z" << i << "," << q + 1 << " x z*" << j << "," << qp + 1;
          int expected = (i == j && q == qp) ? -1 : 1;
          rep.add(lbl.str(), expected, comm_sign(zi(i, q), zs(j, qp)));
        }
  for (unsigned q = 0; q < nq; ++q)
    for (unsigned qp = q; qp < nq; ++qp)
      for (unsigned i = 1; i <= 2; ++i)
        for (unsigned j = 1; j <= 2; ++j) {
          if (q == qp && i == j)
            continue;
          std::ostringstream lbl;
          lbl << "z" << i << "," << q + 1 << " x z" << j << "," << qp + 1;
          rep.add(lbl.str(), 1, comm_sign(zi(i, q), zi(j, qp)));
          // z* pairs: asserted when at least one index is hyperbolic.
          if (q < cycles.alpha || qp < cycles.alpha) {
            std::ostringstream lbl2;
            lbl2 << "z*" << i << "," << q + 1 << " x z*" << j << ","
                 << qp + 1;
            rep.add(lbl2.str(), 1, comm_sign(zs(i, q), zs(j, qp)));
          }
        }
  return rep;
}

BitMatrix row_space_intersection(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix stacked(a.n_cols());
  for (const auto& r : a.rows())
    stacked.add_row(r);
  for (const auto& r : b.rows())
    stacked.add_row(r);
  BitMatrix combos = stacked.left_kernel_basis();
  BitMatrix out(a.n_cols());
  for (const auto& c : combos.rows()) {
    BitVector v(a.n_cols());
    for (std::size_t i = 0; i < a.n_rows(); ++i)
      if (c.get(i))
        v ^= a.row(i);
    if (v.any())
      out.add_row(std::move(v));
  }
  return out.rref();
}

AdjustedCode homology_adjust(const InstantiatedGroups& inst,
                             const HomologyCycles& cycles, AdjustMode mode) {
  AdjustedCode out;
  out.mode = mode;
  out.stab_rows = inst.stab.rows;
  out.gauge_rows = inst.gauge.rows;
  for (unsigned q = cycles.alpha; q < cycles.alpha + cycles.beta; ++q) {
    if (mode == AdjustMode::StabilizerExtended) {
      out.stab_rows.add_row(to_flat(cycles.z1[q]));
      out.stab_rows.add_row(to_flat(cycles.z2[q]));
    } else {
      out.gauge_rows.add_row(to_flat(cycles.z1s[q]));
      out.gauge_rows.add_row(to_flat(cycles.z2s[q]));
    }
  }
  // Gauge-code identity: the centralizer of the gauge group inside itself
  // must match the stabilizer rows.
  BitMatrix cent = centralizer_basis(out.gauge_rows);
  BitMatrix inner = row_space_intersection(cent, out.gauge_rows);
  out.identity_ok = BitMatrix::same_row_space(inner, out.stab_rows);
  return out;
}

LogicalOperatorSet extract_logicals(const HomologyCycles& cycles) {
  LogicalOperatorSet out;
  for (unsigned q = 0; q < cycles.alpha; ++q) {
    out.x_bar.push_back(cycles.z1[q]);
    out.z_bar.push_back(cycles.z1s[q]);
  }
  for (unsigned q = 0; q < cycles.alpha; ++q) {
    out.x_bar.push_back(cycles.z2[q]);
    out.z_bar.push_back(cycles.z2s[q]);
  }
  return out;
}

CommReport verify_logical_relations(const InstantiatedGroups& inst,
                                    const LogicalOperatorSet& logicals) {
  CommReport rep;
  std::size_t k = logicals.x_bar.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::ostringstream lbl;
      lbl << "Xbar" << i + 1 << " x Zbar" << j + 1;
      rep.add(lbl.str(), i == j ? -1 : 1,
              comm_sign(logicals.x_bar[i], logicals.z_bar[j]));
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      std::ostringstream l1, l2;
      l1 << "Xbar" << i + 1 << " x Xbar" << j + 1;
      l2 << "Zbar" << i + 1 << " x Zbar" << j + 1;
      rep.add(l1.str(), 1, comm_sign(logicals.x_bar[i], logicals.x_bar[j]));
      rep.add(l2.str(), 1, comm_sign(logicals.z_bar[i], logicals.z_bar[j]));
    }
  // Logical operators commute with every gauge generator.
  for (std::size_t g = 0; g < inst.gauge.n_gens(); ++g) {
    const PauliVec& gen = inst.gauge.paulis[g];
    for (std::size_t i = 0; i < k; ++i) {
      if (symplectic_product(logicals.x_bar[i], gen)) {
        rep.add("Xbar" + std::to_string(i + 1) + " x gauge", 1, -1);
        break;
      }
      if (symplectic_product(logicals.z_bar[i], gen)) {
        rep.add("Zbar" + std::to_string(i + 1) + " x gauge", 1, -1);
        break;
      }
    }
  }
  return rep;
}

} // namespace tsc
