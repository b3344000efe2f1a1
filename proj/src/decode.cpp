#include "tsc/decode.hpp"

#include "tsc/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace tsc {

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Rng::Rng(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& s : s_)
    s = splitmix64(sm);
}

uint64_t Rng::next() {
  uint64_t result = rotl(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return double(next() >> 11) * 0x1.0p-53; }

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t s = seed;
  uint64_t x = splitmix64(s);
  s ^= a * 0x9e3779b97f4a7c15ULL + x;
  x = splitmix64(s);
  s ^= b * 0xd1342543de82ef95ULL + x;
  return splitmix64(s);
}

PauliVec sample_error(const NoiseModel& noise, const TorusLattice& lat,
                      Rng& rng) {
  PauliVec e(lat.n_qubits());
  for (std::size_t q = 0; q < lat.n_qubits(); ++q) {
    if (noise.kind == NoiseKind::IndependentXZ) {
      if (rng.uniform() < noise.p)
        e.x.set(q);
      if (rng.uniform() < noise.p)
        e.z.set(q);
    } else {
      double u = rng.uniform();
      if (u < noise.p) {
        double third = noise.p / 3.0;
        if (u < third) {
          e.x.set(q);
        } else if (u < 2 * third) {
          e.x.set(q);
          e.z.set(q);
        } else {
          e.z.set(q);
        }
      }
    }
  }
  return e;
}

std::size_t SyndromeSample::total() const {
  std::size_t n = 0;
  for (const auto& [k, v] : defects)
    n += v.size();
  return n;
}

namespace {

uint64_t charge_key(const BitVector& v) {
  uint64_t k = 0;
  for (std::size_t i = 0; i < v.size() && i < 64; ++i)
    if (v.get(i))
      k |= uint64_t(1) << i;
  return k;
}

int torus_delta(int a, int b, unsigned l) {
  // shortest signed displacement a -> b
  int d = (b - a) % int(l);
  if (d < 0)
    d += int(l);
  if (d > int(l) / 2)
    d -= int(l);
  return d;
}

unsigned torus_dist(Site a, Site b, const TorusLattice& lat) {
  return unsigned(std::abs(torus_delta(a.x, b.x, lat.lx)) +
                  std::abs(torus_delta(a.y, b.y, lat.ly)));
}

} // namespace

Decoder::Decoder(const ChargeContext& ctx, const CanonicalGenerators& canon,
                 unsigned edge)
    : ctx_(ctx) {
  lat_ = TorusLattice{edge, edge, ctx.code.qubits_per_site};
  inst_ = instantiate(ctx.code, lat_);
  for (const auto& p : inst_.stab.paulis)
    dual_rows_.push_back(dual_flat(p));
  // Charge classes of the stabilizer recipes at this size.
  ConstraintSpace cons = constraint_space(inst_.stab);
  charge_dim_ = cons.dim();
  for (unsigned r = 0; r < inst_.stab.n_recipes; ++r) {
    BitVector v(charge_dim_);
    std::size_t idx = inst_.stab.gen_index(GenRef{r, Site{0, 0}});
    for (std::size_t j = 0; j < charge_dim_; ++j)
      if (cons.basis.row(j).get(idx))
        v.set(j);
    recipe_class_.push_back(charge_key(v));
    recipe_charge_.push_back(std::move(v));
  }
  // One-cell representative flip set for each charge basis vector.
  BitMatrix M(charge_dim_, inst_.stab.n_recipes);
  for (std::size_t r = 0; r < recipe_charge_.size(); ++r)
    for (std::size_t j = 0; j < charge_dim_; ++j)
      if (recipe_charge_[r].get(j))
        M.row(j).set(r);
  for (std::size_t j = 0; j < charge_dim_; ++j) {
    BitVector e(charge_dim_);
    e.set(j);
    auto sol = M.solve(e);
    if (!sol)
      throw Error(ErrorKind::Structural,
                  "decoder setup: charge basis not realizable in one cell");
    std::vector<unsigned> flips;
    for (std::size_t r = 0; r < recipe_charge_.size(); ++r)
      if (sol->particular.get(r))
        flips.push_back(unsigned(r));
    basis_rep_.push_back(std::move(flips));
  }
  cycles_ = extract_cycles(ctx, canon, lat_);
  logicals_ = extract_logicals(cycles_);
  CommReport rels = verify_logical_relations(inst_, logicals_);
  if (!rels.passed)
    throw Error(ErrorKind::Structural,
                "decoder setup: logical relations failed at size " +
                    std::to_string(edge));
}

SyndromeSample Decoder::extract_syndrome(const PauliVec& error) const {
  SyndromeSample s;
  BitVector ef = to_flat(error);
  for (std::size_t i = 0; i < inst_.stab.n_gens(); ++i)
    if (ef.dot(dual_rows_[i])) {
      unsigned recipe = inst_.stab.gen_ref(i).recipe;
      s.defects[recipe_class_[recipe]].push_back(i);
    }
  return s;
}

PauliVec Decoder::basis_string(std::size_t bit, Site from, Site to) const {
  int dx = torus_delta(from.x, to.x, lat_.lx);
  int dy = torus_delta(from.y, to.y, lat_.ly);
  std::ostringstream ks;
  ks << "s|" << bit << '|' << dx << '|' << dy;
  std::string key = ks.str();
  auto it = string_cache_.find(key);
  if (it == string_cache_.end()) {
    // Solve the canonical displacement anchored at the origin, then
    // translate.
    std::vector<Site> path;
    Site cur{0, 0};
    path.push_back(cur);
    while (cur.x != dx) {
      cur.x += dx > 0 ? 1 : -1;
      path.push_back(cur);
    }
    while (cur.y != dy) {
      cur.y += dy > 0 ? 1 : -1;
      path.push_back(cur);
    }
    std::vector<GenRef> flips;
    for (unsigned r : basis_rep_[bit]) {
      flips.push_back(GenRef{r, Site{0, 0}});
      flips.push_back(GenRef{r, Site{dx, dy}});
    }
    auto p = ctx_.solve_string(lat_, path, Side::Stabilizer, flips);
    if (!p)
      throw Error(ErrorKind::StringSolve,
                  "matching: no correction string for defect pair");
    it = string_cache_.emplace(key, *p).first;
  }
  return translate(it->second, lat_, from.x, from.y);
}

PauliVec Decoder::cell_eraser(const std::vector<unsigned>& recipes,
                              Site cell) const {
  std::ostringstream ks;
  ks << "e|";
  for (unsigned r : recipes)
    ks << r << ',';
  std::string key = ks.str();
  auto it = string_cache_.find(key);
  if (it == string_cache_.end()) {
    std::vector<GenRef> flips;
    for (unsigned r : recipes)
      flips.push_back(GenRef{r, Site{0, 0}});
    auto p = ctx_.solve_string(lat_, {Site{0, 0}}, Side::Stabilizer, flips);
    if (!p)
      throw Error(ErrorKind::StringSolve,
                  "matching: no local eraser for a trivial-charge defect "
                  "cluster");
    it = string_cache_.emplace(key, *p).first;
  }
  return translate(it->second, lat_, cell.x, cell.y);
}

PauliVec Decoder::decode_matching(const SyndromeSample& syndrome) const {
  // Regroup the flipped generators by cell; the charge of a cell is the
  // product of its flips' charges.
  std::map<std::size_t, std::vector<unsigned>> cell_flips;
  for (const auto& [cls, defects] : syndrome.defects)
    for (std::size_t g : defects) {
      GenRef ref = inst_.stab.gen_ref(g);
      cell_flips[lat_.site_index(ref.site.x, ref.site.y)].push_back(
          ref.recipe);
    }
  std::map<std::size_t, BitVector> cell_charge;
  for (const auto& [si, recipes] : cell_flips) {
    BitVector v(charge_dim_);
    for (unsigned r : recipes)
      v ^= recipe_charge_[r];
    cell_charge.emplace(si, std::move(v));
  }
  auto site_of = [&](std::size_t si) {
    return Site{int(si % lat_.lx), int(si / lat_.lx)};
  };

  // Per canonical charge component: greedy minimum-distance matching of
  // the cells carrying that component; a matched pair is joined by a
  // string transporting the basis charge. The component parity is even on
  // the torus because the component's generator class is a global
  // constraint.
  PauliVec correction(lat_.n_qubits());
  for (std::size_t bit = 0; bit < charge_dim_; ++bit) {
    std::vector<std::size_t> anyons;
    for (const auto& [si, v] : cell_charge)
      if (v.get(bit))
        anyons.push_back(si);
    if (anyons.size() % 2 != 0)
      throw Error(ErrorKind::Structural,
                  "matching: odd defect parity in a charge class");
    struct Cand {
      unsigned dist;
      std::size_t i, j;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < anyons.size(); ++i)
      for (std::size_t j = i + 1; j < anyons.size(); ++j)
        cands.push_back(Cand{
            torus_dist(site_of(anyons[i]), site_of(anyons[j]), lat_), i,
            j});
    std::sort(cands.begin(), cands.end(),
              [&](const Cand& a, const Cand& b) {
                if (a.dist != b.dist)
                  return a.dist < b.dist;
                if (a.i != b.i)
                  return a.i < b.i;
                return a.j < b.j;
              });
    std::vector<bool> used(anyons.size(), false);
    for (const auto& c : cands) {
      if (used[c.i] || used[c.j])
        continue;
      used[c.i] = used[c.j] = true;
      Site a = site_of(anyons[c.i]), b = site_of(anyons[c.j]);
      correction ^= basis_string(bit, a, b);
      // The string endpoints change the residual flip pattern at both
      // cells.
      for (unsigned r : basis_rep_[bit]) {
        for (Site s : {a, b}) {
          auto& fl = cell_flips[lat_.site_index(s.x, s.y)];
          auto it = std::find(fl.begin(), fl.end(), r);
          if (it != fl.end())
            fl.erase(it);
          else
            fl.push_back(r);
        }
      }
    }
  }
  // What is left in every cell carries trivial charge and is erased
  // locally.
  for (auto& [si, recipes] : cell_flips) {
    if (recipes.empty())
      continue;
    std::sort(recipes.begin(), recipes.end());
    correction ^= cell_eraser(recipes, site_of(si));
  }
  return correction;
}

std::vector<bool> Decoder::logical_failure(const PauliVec& residual) const {
  std::size_t pairs = logicals_.x_bar.size();
  std::vector<bool> flags(pairs, false);
  for (std::size_t i = 0; i < pairs; ++i)
    flags[i] = symplectic_product(residual, logicals_.x_bar[i]) ||
               symplectic_product(residual, logicals_.z_bar[i]);
  return flags;
}

WilsonInterval wilson95(std::size_t failures, std::size_t trials) {
  WilsonInterval w;
  if (trials == 0)
    return w;
  const double z = 1.959963984540054;
  double n = double(trials);
  double ph = double(failures) / n;
  double denom = 1.0 + z * z / n;
  double center = (ph + z * z / (2 * n)) / denom;
  double half =
      z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
  w.low = std::max(0.0, center - half);
  w.high = std::min(1.0, center + half);
  return w;
}

std::vector<TrialStats> monte_carlo(const ChargeContext& ctx,
                                    const CanonicalGenerators& canon,
                                    const std::vector<unsigned>& edges,
                                    const NoiseModel& noise,
                                    std::size_t trials, uint64_t seed) {
  std::vector<TrialStats> out;
  for (std::size_t si = 0; si < edges.size(); ++si) {
    auto t0 = std::chrono::steady_clock::now();
    Decoder dec(ctx, canon, edges[si]);
    TrialStats st;
    st.edge = edges[si];
    st.p = noise.p;
    st.noise = noise.kind == NoiseKind::IndependentXZ ? "independent-xz"
                                                      : "depolarizing";
    st.trials = trials;
    st.seed = seed;
    st.failures_per_pair.assign(dec.logicals().x_bar.size(), 0);
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(mix_seed(seed, si, t));
      PauliVec err = sample_error(noise, dec.lat(), rng);
      SyndromeSample syn = dec.extract_syndrome(err);
      PauliVec corr = dec.decode_matching(syn);
      PauliVec residual = err ^ corr;
      // The correction must cancel the syndrome exactly.
      SyndromeSample res_syn = dec.extract_syndrome(residual);
      if (res_syn.total() != 0)
        throw Error(ErrorKind::Structural,
                    "decoder: correction does not cancel the syndrome");
      auto flags = dec.logical_failure(residual);
      bool any = false;
      for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) {
          ++st.failures_per_pair[i];
          any = true;
        }
      if (any)
        ++st.failures_any;
    }
    st.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    out.push_back(std::move(st));
  }
  return out;
}

} // namespace tsc
