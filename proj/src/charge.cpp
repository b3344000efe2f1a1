#include "tsc/charge.hpp"

#include "tsc/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tsc {

namespace {

std::string key_of(const BitVector& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (v.get(i) ? '1' : '0');
  return os.str();
}

std::vector<Site> straight_path(Site a, Site b) {
  std::vector<Site> out;
  if (a.x != b.x && a.y != b.y)
    throw Error(ErrorKind::Usage, "straight_path: not axis aligned");
  int dx = (b.x > a.x) - (b.x < a.x);
  int dy = (b.y > a.y) - (b.y < a.y);
  Site cur = a;
  out.push_back(cur);
  while (!(cur == b)) {
    cur.x += dx;
    cur.y += dy;
    out.push_back(cur);
  }
  return out;
}

unsigned gcd_u(unsigned a, unsigned b) { return std::gcd(a, b); }
unsigned lcm_u(unsigned a, unsigned b) {
  if (a == 0 || b == 0)
    return std::max(a, b);
  return a / gcd_u(a, b) * b;
}

uint64_t charge_bits(const ConstraintSpace& cons, std::size_t gen_index) {
  if (cons.dim() > 64)
    throw Error(ErrorKind::Structural, "constraint dimension too large");
  uint64_t bits = 0;
  for (std::size_t j = 0; j < cons.dim(); ++j)
    if (cons.basis.row(j).get(gen_index))
      bits |= uint64_t(1) << j;
  return bits;
}

/// Smallest per-axis translation period of the generator charge
/// assignment, among divisors of the torus dimension.
std::pair<unsigned, unsigned> charge_period(const InstantiatedGroup& gens,
                                            const ConstraintSpace& cons) {
  const TorusLattice& lat = gens.lat;
  std::vector<uint64_t> ch(gens.n_gens());
  for (std::size_t i = 0; i < gens.n_gens(); ++i)
    ch[i] = charge_bits(cons, i);
  auto period = [&](bool axis_x) {
    unsigned L = axis_x ? lat.lx : lat.ly;
    for (unsigned p = 1; p <= L; ++p) {
      if (L % p != 0)
        continue;
      bool ok = true;
      for (unsigned r = 0; r < gens.n_recipes && ok; ++r)
        for (unsigned y = 0; y < lat.ly && ok; ++y)
          for (unsigned x = 0; x < lat.lx && ok; ++x) {
            GenRef g1{r, Site{int(x), int(y)}};
            GenRef g2{r, axis_x ? Site{int(x + p), int(y)}
                                : Site{int(x), int(y + p)}};
            if (ch[gens.gen_index(g1)] != ch[gens.gen_index(g2)])
              ok = false;
          }
      if (ok)
        return p;
    }
    return L;
  };
  return {period(true), period(false)};
}

} // namespace

Morphism Morphism::translated(int dx, int dy) const {
  Morphism out;
  out.side = side;
  out.flips = flips;
  for (auto& g : out.flips) {
    g.site.x += dx;
    g.site.y += dy;
  }
  return out;
}

Characteristic compose_characteristics(const Characteristic& a,
                                       const Characteristic& b) {
  Characteristic out;
  out.alpha = a.alpha + b.alpha;
  out.beta = a.beta + b.beta;
  out.f1 = a.f1 * b.f1;
  out.f2 = (1 + a.f2) * (1 + b.f2) / 2 - 1;
  return out;
}

std::size_t expected_boson_count(const Characteristic& ch) {
  // Derivation: the hyperbolic part contributes 2^(2a-1) + f1 2^(a-1)
  // bosons, the kernel part 2^b (f2 = 1) or 2^(b-1) (f2 = -1) with the
  // complementary split for fermions.
  if (ch.alpha == 0 && ch.beta == 0)
    return 1;
  std::size_t total_half = std::size_t(1) << (2 * ch.alpha + ch.beta - 1);
  if (ch.f2 == -1)
    return total_half;
  long bias = long(1) << (ch.alpha + ch.beta - 1);
  return std::size_t(long(total_half) + ch.f1 * bias);
}

Charge ChargeContext::charge_of_gen(Side side, unsigned recipe) const {
  const auto& rc =
      side == Side::Gauge ? recipe_charge_g : recipe_charge_s;
  return Charge{rc.at(recipe)};
}

Charge ChargeContext::charge_of_morphism(const Morphism& m) const {
  const auto& rc =
      m.side == Side::Gauge ? recipe_charge_g : recipe_charge_s;
  std::size_t dim = m.side == Side::Gauge ? dim_g() : dim_s();
  Charge out{BitVector(dim)};
  for (const auto& g : m.flips)
    out.vec ^= rc.at(g.recipe);
  return out;
}

std::vector<Charge> ChargeContext::all_charges(Side side) const {
  std::size_t dim = side == Side::Gauge ? dim_g() : dim_s();
  if (dim > 16)
    throw Error(ErrorKind::Structural,
                "charge group too large to enumerate");
  std::vector<Charge> out;
  for (std::size_t bits = 0; bits < (std::size_t(1) << dim); ++bits) {
    BitVector v(dim);
    for (std::size_t j = 0; j < dim; ++j)
      if ((bits >> j) & 1)
        v.set(j);
    out.push_back(Charge{std::move(v)});
  }
  return out;
}

Morphism ChargeContext::rep_morphism(Side side, const Charge& c,
                                     Site cell) const {
  const auto& rc =
      side == Side::Gauge ? recipe_charge_g : recipe_charge_s;
  std::size_t dim = side == Side::Gauge ? dim_g() : dim_s();
  if (c.vec.size() != dim)
    throw Error(ErrorKind::Usage, "rep_morphism: charge dimension mismatch");
  BitMatrix M(dim, rc.size());
  for (std::size_t r = 0; r < rc.size(); ++r)
    for (std::size_t j = 0; j < dim; ++j)
      if (rc[r].get(j))
        M.row(j).set(r);
  auto sol = M.solve(c.vec);
  if (!sol)
    throw Error(ErrorKind::Structural,
                "rep_morphism: charge not realizable by one cell");
  Morphism m;
  m.side = side;
  for (std::size_t r = 0; r < rc.size(); ++r)
    if (sol->particular.get(r))
      m.flips.push_back(GenRef{unsigned(r), cell});
  return m;
}

// ---------------------------------------------------------------------
// String solving
// ---------------------------------------------------------------------

std::optional<PauliVec> ChargeContext::solve_string(
    const TorusLattice& lat, const std::vector<Site>& path,
    Side syndrome_side, const std::vector<GenRef>& flips, unsigned r_min,
    unsigned r_max) const {
  std::ostringstream ks;
  ks << lat.lx << 'x' << lat.ly << '|' << int(syndrome_side) << '|' << r_min
     << '-' << r_max << "|p";
  for (const auto& s : path)
    ks << s.x << ',' << s.y << ';';
  ks << "|f";
  for (const auto& g : flips)
    ks << g.recipe << '@' << lat.site_index(g.site.x, g.site.y) << ';';
  std::string key = ks.str();
  auto it = string_cache_.find(key);
  if (it != string_cache_.end())
    return it->second;
  auto p = solve_string_with(lat, path, syndrome_side, flips, {}, r_min,
                             r_max);
  if (p)
    string_cache_[key] = *p;
  return p;
}

std::optional<PauliVec> ChargeContext::solve_string_with(
    const TorusLattice& lat, const std::vector<Site>& path,
    Side syndrome_side, const std::vector<GenRef>& flips,
    const std::vector<std::pair<const PauliVec*, int>>& extra,
    unsigned r_min, unsigned r_max) const {
  unsigned range = code.max_range();
  if (r_max < r_min)
    r_max = std::max(opts.r_max, r_min);
  const auto& recipes = syndrome_side == Side::Stabilizer
                            ? code.stabilizer_recipes
                            : code.gauge_side();
  for (unsigned r = r_min; r <= r_max; ++r) {
    // Unknown support: thickened path, deduplicated by wrapped site.
    std::set<std::size_t> region;
    for (const auto& s : path)
      for (int dy = -int(r); dy <= int(r); ++dy)
        for (int dx = -int(r); dx <= int(r); ++dx)
          region.insert(lat.site_index(s.x + dx, s.y + dy));
    std::vector<std::size_t> qubits;
    for (std::size_t si : region)
      for (unsigned q = 0; q < lat.qubits_per_site; ++q)
        qubits.push_back(si * lat.qubits_per_site + q);
    std::size_t nq = qubits.size();

    // Equations: every generator whose support can meet the region.
    std::set<std::size_t> eq_sites;
    unsigned reach = r + range;
    for (const auto& s : path)
      for (int dy = -int(reach); dy <= int(reach); ++dy)
        for (int dx = -int(reach); dx <= int(reach); ++dx)
          eq_sites.insert(lat.site_index(s.x + dx, s.y + dy));
    std::set<std::size_t> flip_idx;
    for (const auto& g : flips)
      flip_idx.insert(std::size_t(g.recipe) * lat.n_sites() +
                      lat.site_index(g.site.x, g.site.y));

    BitMatrix eqs(2 * nq);
    std::vector<bool> rhs_bits;
    bool unreachable = false;
    for (unsigned rec = 0; rec < recipes.size() && !unreachable; ++rec) {
      for (std::size_t si : eq_sites) {
        Site site{int(si % lat.lx), int(si / lat.lx)};
        PauliVec gp = build_generator(code, lat, syndrome_side, rec, site);
        BitVector row(2 * nq);
        bool nonzero = false;
        for (std::size_t k = 0; k < nq; ++k) {
          if (gp.z.get(qubits[k])) {
            row.set(k);
            nonzero = true;
          }
          if (gp.x.get(qubits[k])) {
            row.set(nq + k);
            nonzero = true;
          }
        }
        bool target = flip_idx.count(std::size_t(rec) * lat.n_sites() + si);
        if (!nonzero && !target)
          continue;
        if (!nonzero && target) {
          unreachable = true; // flipped generator out of reach at this r
          break;
        }
        eqs.add_row(std::move(row));
        rhs_bits.push_back(target);
      }
    }
    if (unreachable)
      continue;
    for (const auto& [op, target] : extra) {
      BitVector row(2 * nq);
      for (std::size_t k = 0; k < nq; ++k) {
        if (op->z.get(qubits[k]))
          row.set(k);
        if (op->x.get(qubits[k]))
          row.set(nq + k);
      }
      eqs.add_row(std::move(row));
      rhs_bits.push_back(target != 0);
    }
    BitVector rhs(rhs_bits.size());
    for (std::size_t i = 0; i < rhs_bits.size(); ++i)
      if (rhs_bits[i])
        rhs.set(i);
    auto sol = eqs.solve(rhs);
    if (!sol)
      continue; // thicken and retry
    PauliVec p(lat.n_qubits());
    for (std::size_t k = 0; k < nq; ++k) {
      if (sol->particular.get(k))
        p.x.set(qubits[k]);
      if (sol->particular.get(nq + k))
        p.z.set(qubits[k]);
    }
    return p;
  }
  return std::nullopt;
}

std::optional<StringOperator> ChargeContext::build_string(
    const Morphism& end_a, const Morphism& end_b,
    const std::vector<Site>& path, unsigned r) const {
  if (end_a.side != end_b.side)
    throw Error(ErrorKind::Usage, "build_string: mixed sides");
  Charge ca = charge_of_morphism(end_a);
  Charge cb = charge_of_morphism(end_b);
  if (!(ca == cb))
    throw Error(ErrorKind::Usage,
                "build_string: endpoint charges differ");
  std::vector<GenRef> flips = end_a.flips;
  for (const auto& g : end_b.flips) {
    auto it = std::find(flips.begin(), flips.end(), g);
    if (it != flips.end())
      flips.erase(it);
    else
      flips.push_back(g);
  }
  // Exact thickening radius: callers drive the escalation ladder.
  auto p = solve_string(lat_str, path, end_a.side, flips, r, r);
  if (!p)
    return std::nullopt;
  StringOperator s;
  s.pauli = *p;
  s.path = path;
  s.end_a = end_a;
  s.end_b = end_b;
  s.charge = ca;
  return s;
}

// ---------------------------------------------------------------------
// iota
// ---------------------------------------------------------------------

const std::vector<GenRef>& ChargeContext::stab_gauge_decomposition(
    unsigned recipe) const {
  auto it = decomp_cache_.find(recipe);
  if (it != decomp_cache_.end())
    return it->second;
  if (!inst.subsystem) {
    decomp_cache_[recipe] = {GenRef{recipe, Site{0, 0}}};
    return decomp_cache_[recipe];
  }
  const TorusLattice& lat = lat_a;
  PauliVec target =
      build_generator(code, lat, Side::Stabilizer, recipe, Site{0, 0});
  for (unsigned R = 1; R <= opts.r_max + 2; ++R) {
    // Candidate gauge generators near the stabilizer's support.
    std::vector<GenRef> cands;
    std::vector<PauliVec> cand_rows;
    std::set<std::size_t> seen;
    for (const Site& s : support_sites(target, lat)) {
      for (int dy = -int(R); dy <= int(R); ++dy)
        for (int dx = -int(R); dx <= int(R); ++dx) {
          std::size_t si = lat.site_index(s.x + dx, s.y + dy);
          if (!seen.insert(si).second)
            continue;
          Site site{s.x + dx, s.y + dy};
          for (unsigned rec = 0; rec < code.gauge_side().size(); ++rec) {
            cands.push_back(GenRef{rec, site});
            cand_rows.push_back(
                build_generator(code, lat, Side::Gauge, rec, site));
          }
        }
    }
    // Coordinates: union of candidate supports and the target support.
    std::set<std::size_t> coords;
    auto collect = [&coords](const PauliVec& p) {
      for (std::size_t i = 0; i < p.n(); ++i)
        if (p.x.get(i) || p.z.get(i))
          coords.insert(i);
    };
    collect(target);
    for (const auto& cr : cand_rows)
      collect(cr);
    std::vector<std::size_t> cv(coords.begin(), coords.end());
    BitMatrix M(2 * cv.size(), cands.size());
    BitVector b(2 * cv.size());
    for (std::size_t k = 0; k < cv.size(); ++k) {
      if (target.x.get(cv[k]))
        b.set(k);
      if (target.z.get(cv[k]))
        b.set(cv.size() + k);
      for (std::size_t c = 0; c < cands.size(); ++c) {
        if (cand_rows[c].x.get(cv[k]))
          M.row(k).set(c);
        if (cand_rows[c].z.get(cv[k]))
          M.row(cv.size() + k).set(c);
      }
    }
    auto sol = M.solve(b);
    if (!sol)
      continue;
    std::vector<GenRef> out;
    for (std::size_t c = 0; c < cands.size(); ++c)
      if (sol->particular.get(c))
        out.push_back(cands[c]);
    decomp_cache_[recipe] = std::move(out);
    return decomp_cache_[recipe];
  }
  throw Error(ErrorKind::Structural,
              "stabilizer generator not locally expressible in gauge "
              "generators");
}

std::vector<GenRef> ChargeContext::iota_flips(const Morphism& m) const {
  if (m.side != Side::Gauge)
    throw Error(ErrorKind::Usage, "iota_flips: gauge morphism expected");
  // Reach of any decomposition, to bound the stabilizer rows that can see
  // the flip set.
  int reach = 1;
  for (unsigned rec = 0; rec < code.stabilizer_recipes.size(); ++rec)
    for (const auto& g : stab_gauge_decomposition(rec)) {
      reach = std::max(reach, std::abs(g.site.x) + 1);
      reach = std::max(reach, std::abs(g.site.y) + 1);
    }
  std::set<std::pair<int, int>> flip_sites;
  for (const auto& g : m.flips)
    flip_sites.insert({g.site.x, g.site.y});
  std::set<std::pair<unsigned, std::pair<int, int>>> cand;
  for (const auto& [fx, fy] : flip_sites)
    for (int dy = -reach; dy <= reach; ++dy)
      for (int dx = -reach; dx <= reach; ++dx)
        for (unsigned rec = 0; rec < code.stabilizer_recipes.size(); ++rec)
          cand.insert({rec, {fx + dx, fy + dy}});
  auto in_flips = [&](const GenRef& g) {
    for (const auto& f : m.flips)
      if (f.recipe == g.recipe && f.site.x == g.site.x &&
          f.site.y == g.site.y)
        return true;
    return false;
  };
  std::vector<GenRef> out;
  for (const auto& [rec, xy] : cand) {
    unsigned overlap = 0;
    for (const auto& g : stab_gauge_decomposition(rec)) {
      GenRef t{g.recipe, Site{g.site.x + xy.first, g.site.y + xy.second}};
      if (in_flips(t))
        ++overlap;
    }
    if (overlap % 2)
      out.push_back(GenRef{rec, Site{xy.first, xy.second}});
  }
  return out;
}

Charge ChargeContext::iota(const Charge& gauge_charge) const {
  Morphism m = rep_morphism(Side::Gauge, gauge_charge);
  Charge out{BitVector(dim_s())};
  for (const auto& g : iota_flips(m))
    out.vec ^= recipe_charge_s[g.recipe];
  return out;
}

Morphism ChargeContext::iota_trivial_rep(const Charge& gauge_charge,
                                         Site cell) const {
  Morphism m = rep_morphism(Side::Gauge, gauge_charge, cell);
  auto fl = iota_flips(m);
  if (fl.empty())
    return m;
  // The restriction has trivial stabilizer charge exactly when the gauge
  // charge lies in ker(iota); realize it by a local Pauli and absorb that
  // Pauli's gauge syndrome into the morphism.
  std::vector<Site> sites;
  for (const auto& g : fl)
    sites.push_back(g.site);
  for (const auto& g : m.flips)
    sites.push_back(g.site);
  auto p = solve_string(lat_str, sites, Side::Stabilizer, fl, 1);
  if (!p)
    throw Error(ErrorKind::StringSolve,
                "iota_trivial_rep: no local Pauli realizes the stabilizer "
                "restriction (charge not in ker iota?)");
  // Gauge generators anticommuting with p, near its support.
  Morphism out = m;
  unsigned range = code.max_range();
  std::set<std::size_t> seen;
  for (const Site& s : support_sites(*p, lat_str)) {
    for (int dy = -int(range); dy <= int(range); ++dy)
      for (int dx = -int(range); dx <= int(range); ++dx) {
        std::size_t si = lat_str.site_index(s.x + dx, s.y + dy);
        if (!seen.insert(si).second)
          continue;
        Site site{s.x + dx, s.y + dy};
        for (unsigned rec = 0; rec < code.gauge_side().size(); ++rec) {
          PauliVec g = build_generator(code, lat_str, Side::Gauge, rec, site);
          if (symplectic_product(*p, g)) {
            GenRef ref{rec, site};
            auto it = std::find(out.flips.begin(), out.flips.end(), ref);
            if (it != out.flips.end())
              out.flips.erase(it);
            else
              out.flips.push_back(ref);
          }
        }
      }
  }
  if (!iota_flips(out).empty())
    throw Error(ErrorKind::Structural,
                "iota_trivial_rep: residual stabilizer restriction");
  return out;
}

// ---------------------------------------------------------------------
// theta / kappa
// ---------------------------------------------------------------------

namespace {
int sign_from(int bit) { return bit ? -1 : 1; }
} // namespace

int ChargeContext::theta(const Charge& c) const {
  std::string key = key_of(c.vec);
  auto it = theta_cache_.find(key);
  if (it != theta_cache_.end())
    return it->second;
  if (c.trivial()) {
    theta_cache_[key] = 1;
    return 1;
  }
  Morphism phi0 = rep_morphism(Side::Gauge, c);
  const int a = 3;
  auto leg = [&](Site to) {
    std::vector<GenRef> flips = phi0.flips;
    Morphism shifted = phi0.translated(to.x, to.y);
    flips.insert(flips.end(), shifted.flips.begin(), shifted.flips.end());
    auto p = solve_string(lat_str, straight_path(Site{0, 0}, to),
                          Side::Gauge, flips);
    if (!p)
      throw Error(ErrorKind::StringSolve,
                  "theta: string construction failed for charge " + key);
    return *p;
  };
  PauliVec p = leg(Site{-a, 0});
  PauliVec q = leg(Site{a, 0});
  PauliVec r1 = leg(Site{0, -a});
  PauliVec r2 = leg(Site{0, a});
  int t1 = sign_from(symplectic_product(p ^ q, p ^ r1));
  int t2 = sign_from(symplectic_product(p ^ q, p ^ r2));
  if (t1 != t2)
    throw Error(ErrorKind::Structural,
                "theta: value depends on geometry for charge " + key);
  theta_cache_[key] = t1;
  return t1;
}

int ChargeContext::kappa(const Charge& a, const Charge& b) const {
  std::string key = "g:" + key_of(a.vec) + "|g:" + key_of(b.vec);
  auto it = kappa_cache_.find(key);
  if (it != kappa_cache_.end())
    return it->second;
  int result;
  if (a.trivial() || b.trivial()) {
    result = 1;
  } else {
    const int l = 3;
    auto cross_string = [&](const Charge& c, bool horizontal) {
      Morphism rep = rep_morphism(Side::Gauge, c);
      Site from = horizontal ? Site{-l, 0} : Site{0, -l};
      Site to = horizontal ? Site{l, 0} : Site{0, l};
      std::vector<GenRef> flips = rep.translated(from.x, from.y).flips;
      Morphism m2 = rep.translated(to.x, to.y);
      flips.insert(flips.end(), m2.flips.begin(), m2.flips.end());
      auto p =
          solve_string(lat_str, straight_path(from, to), Side::Gauge, flips);
      if (!p)
        throw Error(ErrorKind::StringSolve,
                    "kappa: string construction failed");
      return *p;
    };
    int k1 = sign_from(
        symplectic_product(cross_string(a, true), cross_string(b, false)));
    int k2 = sign_from(
        symplectic_product(cross_string(b, true), cross_string(a, false)));
    if (k1 != k2)
      throw Error(ErrorKind::Structural,
                  "kappa: value depends on geometry (symmetry violated)");
    result = k1;
  }
  kappa_cache_[key] = result;
  return result;
}

int ChargeContext::kappa_mixed(const Charge& gauge_charge,
                               const Charge& stab_charge) const {
  std::string key =
      "m:" + key_of(gauge_charge.vec) + "|s:" + key_of(stab_charge.vec);
  auto it = kappa_cache_.find(key);
  if (it != kappa_cache_.end())
    return it->second;
  int result;
  if (gauge_charge.trivial() || stab_charge.trivial()) {
    result = 1;
  } else {
    const int l = 3;
    auto side_string = [&](Side side, const Charge& c, bool horizontal) {
      Morphism rep = rep_morphism(side, c);
      Site from = horizontal ? Site{-l, 0} : Site{0, -l};
      Site to = horizontal ? Site{l, 0} : Site{0, l};
      std::vector<GenRef> flips = rep.translated(from.x, from.y).flips;
      Morphism m2 = rep.translated(to.x, to.y);
      flips.insert(flips.end(), m2.flips.begin(), m2.flips.end());
      auto p = solve_string(lat_str, straight_path(from, to), side, flips);
      if (!p)
        throw Error(ErrorKind::StringSolve,
                    "kappa_mixed: string construction failed");
      return *p;
    };
    int k1 = sign_from(symplectic_product(
        side_string(Side::Gauge, gauge_charge, true),
        side_string(Side::Stabilizer, stab_charge, false)));
    int k2 = sign_from(symplectic_product(
        side_string(Side::Gauge, gauge_charge, false),
        side_string(Side::Stabilizer, stab_charge, true)));
    if (k1 != k2)
      throw Error(ErrorKind::Structural,
                  "kappa_mixed: value depends on geometry");
    result = k1;
  }
  kappa_cache_[key] = result;
  return result;
}

// ---------------------------------------------------------------------
// Canonical generators
// ---------------------------------------------------------------------

CanonicalGenerators ChargeContext::canonical_generators(
    Characteristic* ch_out) const {
  std::size_t m = dim_g();
  // Matrix of iota on the basis charges.
  BitMatrix iota_m(dim_s(), m);
  for (std::size_t j = 0; j < m; ++j) {
    BitVector v(m);
    v.set(j);
    Charge img = iota(Charge{v});
    for (std::size_t i = 0; i < dim_s(); ++i)
      if (img.vec.get(i))
        iota_m.row(i).set(j);
  }
  BitMatrix kerb = iota_m.kernel_basis();
  std::vector<Charge> es;
  for (const auto& r : kerb.rows())
    es.push_back(Charge{r});
  unsigned beta = unsigned(es.size());

  // Step 1: concentrate fermionic kernel charges onto e_1.
  int f2 = 1;
  {
    std::size_t first_fermion = es.size();
    for (std::size_t k = 0; k < es.size(); ++k)
      if (theta(es[k]) == -1) {
        first_fermion = k;
        break;
      }
    if (first_fermion < es.size()) {
      f2 = -1;
      std::swap(es[0], es[first_fermion]);
      for (std::size_t k = 1; k < es.size(); ++k)
        if (theta(es[k]) == -1)
          es[k] = es[k] ^ es[0];
    }
  }

  // Step 2: hyperbolic pairs on a complement of the kernel.
  Gf2Echelon span(m);
  for (const auto& e : es)
    span.add_row(e.vec);
  std::vector<Charge> pool;
  for (std::size_t j = 0; j < m; ++j) {
    BitVector v(m);
    v.set(j);
    if (span.add_row(v))
      pool.push_back(Charge{v});
  }
  auto b_form = [&](const Charge& x, const Charge& y) {
    return kappa(x, y) == -1 ? 1 : 0;
  };
  std::vector<Charge> cs, ds;
  while (!pool.empty()) {
    Charge u = pool.front();
    pool.erase(pool.begin());
    std::size_t partner = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (b_form(u, pool[i])) {
        partner = i;
        break;
      }
    if (partner == pool.size()) {
      // Orthogonalization may have pushed u into the span of the kernel
      // and the pairs already extracted; such residue carries nothing.
      Gf2Echelon seen(m);
      for (const auto& e : es)
        seen.add_row(e.vec);
      for (const auto& x : cs)
        seen.add_row(x.vec);
      for (const auto& x : ds)
        seen.add_row(x.vec);
      if (seen.contains(u.vec))
        continue;
      throw Error(ErrorKind::Structural,
                  "canonical_generators: no anticommuting partner (dual "
                  "charge missing)");
    }
    Charge v = pool[partner];
    pool.erase(pool.begin() + partner);
    for (auto& x : pool) {
      if (b_form(x, v))
        x = x ^ u;
      if (b_form(x, u))
        x = x ^ v;
    }
    cs.push_back(u);
    ds.push_back(v);
  }
  unsigned alpha = unsigned(cs.size());
  if (2 * alpha + beta != m)
    throw Error(ErrorKind::Structural,
                "canonical_generators: dimension bookkeeping failed");

  // Equalize spins within each pair.
  for (std::size_t i = 0; i < cs.size(); ++i) {
    int tc = theta(cs[i]), td = theta(ds[i]);
    if (tc == td)
      continue;
    if (tc == 1)
      ds[i] = cs[i] ^ ds[i];
    else
      cs[i] = cs[i] ^ ds[i];
  }
  // Cancel fermionic pairs two at a time.
  auto fermionic = [&](std::size_t i) { return theta(cs[i]) == -1; };
  for (std::size_t pass = 0; pass <= cs.size() + 1; ++pass) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (fermionic(i))
        bad.push_back(i);
    if (bad.size() < 2)
      break;
    if (pass == cs.size() + 1)
      throw Error(ErrorKind::Structural,
                  "canonical_generators: fermion cancellation did not "
                  "converge");
    std::size_t i = bad[0], j = bad[1];
    Charge ci = cs[i], di = ds[i], cj = cs[j], dj = ds[j];
    cs[i] = ci ^ cj;
    ds[i] = di ^ cj;
    cs[j] = ci ^ di ^ dj;
    ds[j] = ci ^ di ^ cj ^ dj;
  }
  // Move the remaining fermionic pair (if any) to the front.
  int f1 = 1;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (fermionic(i)) {
      std::swap(cs[0], cs[i]);
      std::swap(ds[0], ds[i]);
      f1 = -1;
      break;
    }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (theta(cs[i]) != theta(ds[i]))
      throw Error(ErrorKind::Structural,
                  "canonical_generators: pair spins differ after "
                  "adjustment");
    if (i > 0 || f1 == 1) {
      if (theta(cs[i]) != 1)
        throw Error(ErrorKind::Structural,
                    "canonical_generators: stray fermionic pair");
    }
  }

  // Step 3: duals in the stabilizer charge group for the kernel charges.
  std::vector<Charge> ets;
  auto all_s = all_charges(Side::Stabilizer);
  for (const auto& e : es) {
    std::size_t found = all_s.size();
    for (std::size_t t = 0; t < all_s.size(); ++t)
      if (!all_s[t].trivial() && kappa_mixed(e, all_s[t]) == -1) {
        found = t;
        break;
      }
    if (found == all_s.size())
      throw Error(ErrorKind::Structural,
                  "canonical_generators: no stabilizer dual for kernel "
                  "charge");
    ets.push_back(all_s[found]);
  }
  // Biorthogonalize: make kappa(e_k, et_l) = -delta_kl.
  for (std::size_t k = 0; k < es.size(); ++k) {
    if (kappa_mixed(es[k], ets[k]) != -1)
      throw Error(ErrorKind::Structural, "canonical_generators: lost dual");
    for (std::size_t l = 0; l < ets.size(); ++l) {
      if (l == k)
        continue;
      if (kappa_mixed(es[k], ets[l]) == -1)
        ets[l] = ets[l] ^ ets[k];
    }
  }
  // Decouple the duals from the hyperbolic pairs.
  for (std::size_t k = 0; k < ets.size(); ++k) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (kappa_mixed(cs[i], ets[k]) == -1)
        ets[k] = ets[k] ^ iota(ds[i]);
      if (kappa_mixed(ds[i], ets[k]) == -1)
        ets[k] = ets[k] ^ iota(cs[i]);
    }
  }

  CanonicalGenerators out;
  for (const auto& c : cs)
    out.c.push_back(CanonicalCharge{c, rep_morphism(Side::Gauge, c)});
  for (const auto& d : ds)
    out.d.push_back(CanonicalCharge{d, rep_morphism(Side::Gauge, d)});
  for (const auto& e : es)
    out.e.push_back(CanonicalCharge{e, iota_trivial_rep(e)});
  for (const auto& t : ets)
    out.e_tilde.push_back(
        CanonicalCharge{t, rep_morphism(Side::Stabilizer, t)});
  for (const auto& c : cs)
    out.c_tilde.push_back(iota(c));
  for (const auto& d : ds)
    out.d_tilde.push_back(iota(d));

  // The stabilizer-side images together with the duals must span the
  // stabilizer charge group.
  {
    Gf2Echelon es_span(dim_s());
    std::size_t cnt = 0;
    for (const auto& t : out.c_tilde)
      cnt += es_span.add_row(t.vec);
    for (const auto& t : out.d_tilde)
      cnt += es_span.add_row(t.vec);
    for (const auto& t : out.e_tilde)
      cnt += es_span.add_row(t.charge.vec);
    if (cnt != dim_s())
      throw Error(ErrorKind::Structural,
                  "canonical_generators: stabilizer images do not span");
  }

  if (ch_out) {
    ch_out->alpha = alpha;
    ch_out->beta = beta;
    ch_out->f1 = alpha ? f1 : 1;
    ch_out->f2 = beta ? f2 : 1;
  }
  return out;
}

// ---------------------------------------------------------------------
// Context construction
// ---------------------------------------------------------------------

namespace {

std::vector<BitVector> recipe_charges(const InstantiatedGroup& gens,
                                      const ConstraintSpace& cons) {
  std::vector<BitVector> out;
  for (unsigned r = 0; r < gens.n_recipes; ++r) {
    BitVector v(cons.dim());
    std::size_t idx = gens.gen_index(GenRef{r, Site{0, 0}});
    for (std::size_t j = 0; j < cons.dim(); ++j)
      if (cons.basis.row(j).get(idx))
        v.set(j);
    // Charges must be site independent at this stage.
    for (unsigned y = 0; y < gens.lat.ly; ++y)
      for (unsigned x = 0; x < gens.lat.lx; ++x) {
        std::size_t i = gens.gen_index(GenRef{r, Site{int(x), int(y)}});
        for (std::size_t j = 0; j < cons.dim(); ++j)
          if (cons.basis.row(j).get(i) != v.get(j))
            throw Error(ErrorKind::Structural,
                        "recipe charge not translation invariant after "
                        "coarse graining");
      }
    out.push_back(std::move(v));
  }
  return out;
}

void run_guards(const CodeDefinition& code, const InstantiatedGroups& inst,
                unsigned window, GuardReports* guards) {
  guards->window = window;
  // Pauli-level validity first: stabilizer generators commute pairwise and
  // with every gauge generator.
  ConstraintSpace cons_s = constraint_space(inst.stab);
  guards->stab = check_stabilizer(inst.stab, cons_s);
  if (!guards->stab.commuting) {
    auto [i, j] = *guards->stab.anticommuting_pair;
    throw Error(ErrorKind::Validation,
                "anticommuting stabilizer generators: " +
                    inst.stab.describe(i, code) + " vs " +
                    inst.stab.describe(j, code));
  }
  if (inst.subsystem) {
    for (std::size_t i = 0; i < inst.stab.n_gens(); ++i) {
      BitVector d = dual_flat(inst.stab.paulis[i]);
      for (std::size_t j = 0; j < inst.gauge.n_gens(); ++j)
        if (inst.gauge.rows.row(j).dot(d))
          throw Error(ErrorKind::Validation,
                      "stabilizer generator " + inst.stab.describe(i, code) +
                          " anticommutes with gauge generator " +
                          inst.gauge.describe(j, code));
    }
  }
  guards->independence = local_independence_check(code, inst, window);
  if (!guards->independence.passed) {
    std::ostringstream os;
    os << "local constraint found (window " << window << "):";
    for (const auto& g : guards->independence.witness_gens)
      os << ' ' << g.recipe << "@(" << g.site.x << ',' << g.site.y << ')';
    throw Error(ErrorKind::Independence, os.str());
  }
  if (!inst.subsystem) {
    guards->topological = check_topological_window(code, inst, window);
    if (!guards->topological.passed)
      throw Error(ErrorKind::Window,
                  "windowed topological condition failed: local "
                  "undetectable operator outside the stabilizer span");
  } else {
    guards->tssg = check_tssg_window(code, inst, window);
    if (!guards->tssg.passed)
      throw Error(ErrorKind::Window,
                  "windowed subsystem condition failed: local gauge "
                  "centralizer outside the stabilizer span");
    guards->gauge_complete = check_gauge_completeness_window(code, inst,
                                                             window);
    if (!guards->gauge_complete.passed)
      throw Error(ErrorKind::Window,
                  "gauge recipes incomplete: windowed stabilizer "
                  "centralizer exceeds the gauge span");
  }
}

unsigned round_up_multiple(unsigned v, unsigned m) {
  return ((v + m - 1) / m) * m;
}

} // namespace

ChargeContext build_charge_context(const CodeDefinition& normalized,
                                   const ChargeOptions& opts) {
  ChargeContext ctx;
  ctx.base_code = normalized;
  ctx.opts = opts;
  unsigned range = std::max(1u, normalized.max_range());
  unsigned base_min = std::max(4u, 2 * range);
  unsigned window = opts.window ? opts.window : default_window(normalized);
  unsigned t0 = std::max({12u, 2 * base_min, opts.base_torus});
  t0 = round_up_multiple(t0, 2);
  while (t0 < window + 2 * range)
    t0 += 2;

  TorusLattice lat0{t0, t0, normalized.qubits_per_site};
  InstantiatedGroups inst0 = instantiate(normalized, lat0);
  run_guards(normalized, inst0, window, &ctx.guards);

  // Detect the translation period of the charge assignment and coarse
  // grain it away. Later rounds run on the coarse code, where a small
  // divisor-rich torus suffices.
  CodeDefinition cur = normalized;
  unsigned step_total = 1;
  for (int round = 0; round < 3; ++round) {
    unsigned td = round == 0 ? t0 : std::max(6u, 2 * cur.max_range());
    TorusLattice latd{td, td, cur.qubits_per_site};
    InstantiatedGroups instd =
        (round == 0) ? inst0 : instantiate(cur, latd);
    ConstraintSpace cg = constraint_space(instd.gauge);
    ConstraintSpace cs =
        instd.subsystem ? constraint_space(instd.stab) : cg;
    auto [gx, gy] = charge_period(instd.gauge, cg);
    auto [sx, sy] = charge_period(instd.stab, cs);
    unsigned s = lcm_u(lcm_u(gx, gy), lcm_u(sx, sy));
    if (s >= td)
      throw Error(ErrorKind::Instability,
                  "charge assignment has no period below the torus size");
    if (s == 1)
      break;
    cur = coarse_grain(cur, s);
    step_total *= s;
    if (round == 2)
      throw Error(ErrorKind::Instability,
                  "charge step did not stabilize under coarse graining");
  }
  ctx.code = cur;
  ctx.charge_step = step_total;
  ctx.min_torus = round_up_multiple(base_min, step_total);

  // Analysis torus, in coarse units.
  unsigned ta = std::max({(12 + step_total - 1) / step_total, 6u,
                          2 * (ctx.min_torus / step_total)});
  if (opts.base_torus)
    ta = std::max(ta, (opts.base_torus + step_total - 1) / step_total);
  ta = round_up_multiple(ta, 2);
  ctx.lat_a = TorusLattice{ta, ta, cur.qubits_per_site};
  ctx.inst = instantiate(cur, ctx.lat_a);
  ctx.cons_g = constraint_space(ctx.inst.gauge);
  ctx.cons_s = ctx.inst.subsystem ? constraint_space(ctx.inst.stab)
                                  : ctx.cons_g;
  ctx.rank_stab = ctx.inst.stab.n_gens() - ctx.cons_s.dim();
  ctx.rank_gauge = ctx.inst.gauge.n_gens() - ctx.cons_g.dim();
  ctx.recipe_charge_g = recipe_charges(ctx.inst.gauge, ctx.cons_g);
  ctx.recipe_charge_s = recipe_charges(ctx.inst.stab, ctx.cons_s);

  if (ctx.dim_g() != ctx.dim_s())
    throw Error(ErrorKind::Structural,
                "gauge and stabilizer charge groups differ in size");

  // Constraint dimensions must agree at a second torus size.
  {
    TorusLattice lat2{ta + 2, ta + 2, cur.qubits_per_site};
    InstantiatedGroups inst2 = instantiate(cur, lat2);
    ConstraintSpace cg2 = constraint_space(inst2.gauge);
    ConstraintSpace cs2 =
        inst2.subsystem ? constraint_space(inst2.stab) : cg2;
    ctx.stability_dim_g = cg2.dim();
    ctx.stability_dim_s = cs2.dim();
    if (cg2.dim() != ctx.cons_g.dim() || cs2.dim() != ctx.cons_s.dim()) {
      std::ostringstream os;
      os << "constraint dimension unstable across torus sizes: gauge "
         << ctx.cons_g.dim() << " -> " << cg2.dim() << ", stabilizer "
         << ctx.cons_s.dim() << " -> " << cs2.dim();
      throw Error(ErrorKind::Instability, os.str());
    }
  }

  unsigned ts = std::max(ta, 12u);
  ctx.lat_str = TorusLattice{ts, ts, cur.qubits_per_site};
  return ctx;
}

EquivalenceReport decide_equivalence(const Characteristic& a, bool a_subspace,
                                     const Characteristic& b,
                                     bool b_subspace) {
  EquivalenceReport rep;
  rep.char_a = a;
  rep.char_b = b;
  rep.both_subspace = a_subspace && b_subspace;
  rep.charges_isomorphic = a == b;
  rep.equivalent =
      rep.both_subspace && a.alpha == b.alpha && a.f1 == b.f1;
  return rep;
}

} // namespace tsc
