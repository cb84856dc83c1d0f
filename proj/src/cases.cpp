#include "sandwich/cases.hpp"

#include <algorithm>
#include <random>

#include "sandwich/gf2.hpp"

namespace sandwich {

std::optional<Folding> make_folding(const StructureConstants& sc, const Subsystem& delta, int order) {
  const RootSystem& P = sc.phi();
  auto tau = diagram_automorphism(P, order);
  if (!tau) return std::nullopt;
  for (int a : delta.roots())
    if (!delta.contains(tau->root_perm[a])) return std::nullopt;
  const int M = P.size();
  const int W = (M + 64) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  auto eq = [&](std::vector<int> vars, int rhs) {
    std::vector<std::uint64_t> row(W, 0);
    for (int v : vars) row[v / 64] ^= std::uint64_t{1} << (v % 64);
    if (rhs) row[M / 64] ^= std::uint64_t{1} << (M % 64);
    rows.push_back(std::move(row));
  };
  const auto& t = tau->root_perm;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      int s = P.sum(a, b);
      if (s >= 0) eq({a, b, s}, sc.n(a, b) != sc.n(t[a], t[b]));
    }
  for (int a = 0; a < M; ++a)
    if (a < P.neg(a)) eq({a, P.neg(a)}, 0);
  for (int a : delta.roots()) eq({a}, 0);
  std::vector<char> seen(M, 0);
  for (int a = 0; a < M; ++a) {
    if (seen[a]) continue;
    std::vector<int> cyc;
    for (int r = a; !seen[r]; r = t[r]) {
      seen[r] = 1;
      cyc.push_back(r);
    }
    if ((order / static_cast<int>(cyc.size())) % 2 == 1) eq(cyc, 0);
  }
  auto sol = solve_gf2(rows, M);
  if (!sol) return std::nullopt;
  Folding f;
  f.order = order;
  f.perm = t;
  for (int r = 0; r < M; ++r) f.sign.push_back((*sol)[r] ? -1 : 1);
  return f;
}

RingVector diagonal_vector(const Context& ctx, const Folding& f, int block) {
  const auto& R = ctx.ring();
  const auto& B = ctx.blocks();
  const auto& mem = B.block(block).members;
  RingVector v(mem.size(), R.zero());
  int m = mem[0];
  v[0] = R.one();
  size_t visited = 1;
  for (;;) {
    int next = f.perm[m];
    if (B.block_of(next) != block) throw Error("block is not stable under the diagram automorphism");
    Elem val = f.sign[m] > 0 ? v[B.position_in_block(m)] : R.neg(v[B.position_in_block(m)]);
    if (next == mem[0]) {
      if (val != R.one()) throw Error("folding signs do not close up on a block");
      break;
    }
    v[B.position_in_block(next)] = val;
    ++visited;
    m = next;
  }
  if (visited != mem.size()) throw Error("block is not a single orbit of the diagram automorphism");
  return v;
}

PropagationResult diagonal_prelevel(const ContextPtr& ctx, const Folding& f, const IdealCollection& ideals) {
  std::map<int, Submodule> seeds;
  for (int o : ctx->non_delta_orbits()) {
    auto it = ideals.find(o);
    if (it == ideals.end()) throw Error("missing ideal for orbit " + std::to_string(o));
    if (it->second.rank() != 1) throw Error("rank mismatch: ideals are rank one submodules");
    int b = ctx->orbits()[o].blocks[0];
    auto v = diagonal_vector(*ctx, f, b);
    std::vector<RingVector> gens;
    for (const auto& x : it->second.generators()) {
      RingVector g(v.size());
      for (size_t i = 0; i < v.size(); ++i) g[i] = ctx->ring().mul(x[0], v[i]);
      gens.push_back(std::move(g));
    }
    seeds.emplace(o, Submodule::span(ctx->ring_ptr(), static_cast<int>(v.size()), gens));
  }
  return prelevel_from_orbit_seeds(ctx, seeds);
}

namespace {

struct FoldedRoots {
  std::vector<std::vector<int>> vec;  // scaled projection of each tau-orbit
  std::vector<int> size;
  std::vector<int> block;
  std::map<std::vector<int>, int> index;
};

FoldedRoots folded_roots(const Context& ctx, const Folding& f) {
  const auto& P = ctx.phi();
  FoldedRoots fr;
  std::vector<char> seen(P.size(), 0);
  for (int a = 0; a < P.size(); ++a) {
    if (seen[a]) continue;
    std::vector<int> orb;
    for (int r = a; !seen[r]; r = f.perm[r]) {
      seen[r] = 1;
      orb.push_back(r);
    }
    std::vector<int> v(P.dim(), 0);
    for (int r : orb)
      for (int i = 0; i < P.dim(); ++i) v[i] += P.coords(r)[i] * (f.order / static_cast<int>(orb.size()));
    fr.index[v] = static_cast<int>(fr.vec.size());
    fr.vec.push_back(v);
    fr.size.push_back(static_cast<int>(orb.size()));
    fr.block.push_back(ctx.blocks().block_of(a));
  }
  return fr;
}

Submodule ideal_of_block(const Context& ctx, const IdealCollection& ideals, int block) {
  if (ctx.blocks().block(block).in_delta) return Submodule::full(ctx.ring_ptr(), 1);
  auto it = ideals.find(ctx.orbit_of(block));
  if (it == ideals.end()) throw Error("missing class for orbit " + std::to_string(ctx.orbit_of(block)));
  return it->second;
}

}  // namespace

bool folded_net_predicate(const Context& ctx, const Folding& f, const IdealCollection& ideals) {
  auto fr = folded_roots(ctx, f);
  const int n = static_cast<int>(fr.vec.size());
  std::vector<Submodule> sig;
  for (int i = 0; i < n; ++i) sig.push_back(ideal_of_block(ctx, ideals, fr.block[i]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> s(fr.vec[i].size());
      long dot = 0;
      for (size_t k = 0; k < s.size(); ++k) {
        s[k] = fr.vec[i][k] + fr.vec[j][k];
        dot += static_cast<long>(fr.vec[i][k]) * fr.vec[j][k];
      }
      auto it = fr.index.find(s);
      if (it == fr.index.end()) continue;
      const auto& target = sig[it->second];
      if (dot < 0 && !ideal_product(sig[i], sig[j]).subset_of(target)) return false;
      if (dot == 0 && fr.size[i] > 1 && fr.size[j] > 1 &&
          !ideal_times(ideal_product(sig[i], sig[j]), 2).subset_of(target))
        return false;
    }
  return true;
}

PairPredicates a2d4_pair_predicates(const Submodule& A, const Submodule& B) {
  PairPredicates p;
  p.almost_level = ideal_times(ideal_product(A, A), 2).subset_of(B) && ideal_times(ideal_product(B, B), 2).subset_of(A);
  p.level = p.almost_level && squares_contained(B, A) && squares_contained(A, B);
  return p;
}

std::string folded_orbit_label(const Context& ctx, const Folding& f, int orbit) {
  int b = ctx.orbits()[orbit].blocks[0];
  const auto& mem = ctx.blocks().block(b).members;
  bool fixed = f.perm[mem[0]] == mem[0];
  return std::string(fixed ? "long:" : "short:") + ctx.phi().render(mem[0]);
}

namespace {

CaseContext make_case(const std::string& sys, const std::string& sub, const std::string& ring, int order) {
  CaseContext c;
  c.ctx = Context::make(sys, sub, ring);
  auto f = make_folding(c.ctx->sc(), c.ctx->delta(), order);
  if (!f) throw Error("no folding of " + sys + " compatible with " + sub);
  c.folding = std::move(*f);
  return c;
}

Json ideals_json(const Context& ctx, const Folding& f, const IdealCollection& ideals) {
  Json j = Json::object();
  for (auto& [o, I] : ideals) j[folded_orbit_label(ctx, f, o)] = I.render();
  return j;
}

// every assignment of an ideal to each non-delta orbit, in lexicographic order
std::vector<IdealCollection> all_collections(const Context& ctx, const std::vector<Submodule>& ideals) {
  auto orbs = ctx.non_delta_orbits();
  std::vector<IdealCollection> out;
  std::vector<size_t> idx(orbs.size(), 0);
  for (;;) {
    IdealCollection c;
    for (size_t i = 0; i < orbs.size(); ++i) c.emplace(orbs[i], ideals[idx[i]]);
    out.push_back(std::move(c));
    size_t i = orbs.size();
    while (i > 0 && ++idx[i - 1] == ideals.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace

CaseContext f4_case(const std::string& ring) { return make_case("E6", "4A1", ring, 2); }
CaseContext cl_case(int l, const std::string& ring) {
  return make_case("A" + std::to_string(2 * l - 1), std::to_string(l) + "A1", ring, 2);
}
CaseContext a2d4_case(const std::string& ring) { return make_case("D4", "A2", ring, 3); }
CaseContext bn_case(int n, const std::string& ring) {
  return make_case("D" + std::to_string(n), "D" + std::to_string(n - 1), ring, 2);
}

std::vector<Check> a2d4_correspondence_scan(RingPtr ring) {
  Stopwatch sw;
  auto cc = a2d4_case(ring->spec());
  const auto& ctx = cc.ctx;
  auto orbs = ctx->non_delta_orbits();
  if (orbs.size() != 2) throw Error("expected two orbits of three-root blocks");
  Json table = Json::array();
  bool all = true;
  std::optional<PairPredicates> example;
  std::optional<PairPredicates> example_machine;
  auto ideals = enumerate_ideals(ring);
  for (const auto& A : ideals)
    for (const auto& B : ideals) {
      auto r = diagonal_prelevel(ctx, cc.folding, {{orbs[0], A}, {orbs[1], B}});
      auto pred = a2d4_pair_predicates(A, B);
      Json row = {{"A", A.render()}, {"B", B.render()}, {"pred_almost", pred.almost_level}, {"pred_level", pred.level}};
      if (!r.prelevel) {
        row["inconsistent"] = r.witness->describe(*ctx);
        all = false;
        table.push_back(row);
        continue;
      }
      LevelAnalysis la(*r.prelevel);
      const bool almost = la.almost_level();
      const bool level = almost && la.is_level();
      const bool agree = almost == pred.almost_level && level == pred.level;
      row["almost"] = almost;
      row["level"] = level;
      row["agree"] = agree;
      all = all && agree;
      table.push_back(row);
      if (A.is_full() && B.is_zero()) {
        example = pred;
        example_machine = PairPredicates{almost, level};
      }
    }
  std::vector<Check> out;
  auto c = make_check("A2<=D4 ideal pairs (" + ring->spec() + ")",
                      "diagonal almost levels <-> 2A^2<=B, 2B^2<=A; levels <-> squares of each ideal in the other",
                      all, {{"ring", ring->spec()}, {"pairs", table}});
  c.seconds = sw.seconds();
  out.push_back(std::move(c));
  if (ring->from_int(2) == ring->zero() && example) {
    out.push_back(make_check("almost level that is not a level (" + ring->spec() + ")",
                             "with 2 = 0, the pair (R,0) is an almost level but not a level",
                             example_machine->almost_level && !example_machine->level && example->almost_level &&
                                 !example->level,
                             {{"almost", example_machine->almost_level}, {"level", example_machine->level}}));
  }
  return out;
}

std::vector<Check> cl_diagonal_scan(int l, RingPtr ring) {
  if (l < 2 || l > 3) throw Error("cl scan supports l = 2, 3");
  Stopwatch sw;
  auto cc = cl_case(l, ring->spec());
  const auto& ctx = cc.ctx;
  Json table = Json::array();
  bool ok = true;
  int levels = 0, consistent = 0;
  for (const auto& coll : all_collections(*ctx, enumerate_ideals(ring))) {
    auto r = diagonal_prelevel(ctx, cc.folding, coll);
    Json row = {{"ideals", ideals_json(*ctx, cc.folding, coll)}};
    bool pred = folded_net_predicate(*ctx, cc.folding, coll);
    row["net"] = pred;
    if (!r.prelevel) {
      row["inconsistent"] = r.witness->describe(*ctx);
      ok = false;
      table.push_back(row);
      continue;
    }
    ++consistent;
    LevelAnalysis la(*r.prelevel);
    bool almost = la.almost_level();
    bool level = almost && la.is_level();
    levels += level;
    row["almost"] = almost;
    row["level"] = level;
    ok = ok && pred == almost && (!almost || level);
    table.push_back(row);
  }
  std::vector<Check> out;
  auto c = make_check("C" + std::to_string(l) + " nets from " + std::to_string(l) + "A1<=A" + std::to_string(2 * l - 1) +
                          " (" + ring->spec() + ")",
                      "diagonal almost levels are nets of ideals of C_l and every one is a level", ok,
                      {{"consistent", consistent}, {"levels", levels}, {"table", table}});
  c.seconds = sw.seconds();
  out.push_back(std::move(c));

  // the folded elementary generators of the full level lie in E(sigma)
  IdealCollection fullc;
  for (int o : ctx->non_delta_orbits()) fullc.emplace(o, Submodule::full(ring, 1));
  auto full = diagonal_prelevel(ctx, cc.folding, fullc);
  bool gens_ok = full.prelevel.has_value();
  if (gens_ok) {
    const auto& A = ctx->algebra();
    auto E = e_sigma_generators(*full.prelevel);
    for (int b = 0; b < ctx->blocks().size() && gens_ok; ++b) {
      if (ctx->blocks().block(b).in_delta) continue;
      auto v = diagonal_vector(*ctx, cc.folding, b);
      const auto& mem = ctx->blocks().block(b).members;
      for (Elem xi : ring->elements()) {
        if (xi == ring->zero()) continue;
        AdjointElement g = A.identity();
        for (size_t i = 0; i < mem.size(); ++i) g = g * A.unipotent(mem[i], ring->mul(xi, v[i]));
        gens_ok = gens_ok && std::find(E.begin(), E.end(), g) != E.end();
      }
    }
  }
  out.push_back(make_check("folded C" + std::to_string(l) + " generators (" + ring->spec() + ")",
                           "x_g(xi) x_g'(+-xi) lie in E(sigma) for the full diagonal level", gens_ok));
  return out;
}

std::vector<Check> f4_diagonal_scan(RingPtr ring, std::uint64_t bound, std::uint64_t seed) {
  Stopwatch sw;
  auto cc = f4_case(ring->spec());
  const auto& ctx = cc.ctx;
  auto ideals = enumerate_ideals(ring);
  auto orbs = ctx->non_delta_orbits();
  std::uint64_t total = 1;
  for (size_t i = 0; i < orbs.size(); ++i) total *= ideals.size();
  std::vector<IdealCollection> colls;
  if (total <= bound) {
    colls = all_collections(*ctx, ideals);
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t k = 0; k < bound; ++k) {
      IdealCollection c;
      for (int o : orbs) c.emplace(o, ideals[rng() % ideals.size()]);
      colls.push_back(std::move(c));
    }
  }
  const bool two_unit = ring->is_unit(ring->from_int(2));
  int inconsistent = 0, pred_not_almost = 0, almost_not_pred = 0, almost_not_level = 0, nets = 0, almosts = 0;
  Json mismatches = Json::array();
  for (const auto& coll : colls) {
    auto r = diagonal_prelevel(ctx, cc.folding, coll);
    if (!r.prelevel) {
      ++inconsistent;
      continue;
    }
    bool pred = folded_net_predicate(*ctx, cc.folding, coll);
    LevelAnalysis la(*r.prelevel);
    bool almost = la.almost_level();
    nets += pred;
    almosts += almost;
    if (pred && !almost) ++pred_not_almost;
    if (almost && !pred) ++almost_not_pred;
    if (two_unit && almost && !la.is_level()) ++almost_not_level;
    if (pred != almost && mismatches.size() < 8)
      mismatches.push_back({{"ideals", ideals_json(*ctx, cc.folding, coll)}, {"net", pred}, {"almost", almost}});
  }
  Json labels = Json::array();
  for (int o : orbs) labels.push_back(folded_orbit_label(*ctx, cc.folding, o));
  std::vector<Check> out;
  auto c = make_check("F4 nets from 4A1<=E6 (" + ring->spec() + ")",
                      "diagonal collections satisfying the F4 conditions are almost levels",
                      inconsistent == 0 && pred_not_almost == 0 && almost_not_level == 0,
                      {{"ring", ring->spec()},
                       {"classes", labels},
                       {"tuples", colls.size()},
                       {"exhaustive", total <= bound},
                       {"nets", nets},
                       {"almost_levels", almosts},
                       {"inconsistent", inconsistent},
                       {"net_but_not_almost", pred_not_almost},
                       {"almost_but_not_net", almost_not_pred},
                       {"almost_not_level_with_2_invertible", almost_not_level},
                       {"mismatches", mismatches}});
  c.seconds = sw.seconds();
  out.push_back(std::move(c));
  return out;
}

std::vector<Check> folded_diagonal_check(int n, RingPtr ring, std::uint64_t bound) {
  Stopwatch sw;
  auto cc = bn_case(n, ring->spec());
  const auto& ctx = cc.ctx;
  IdealCollection all;
  for (int o : ctx->non_delta_orbits()) all.emplace(o, Submodule::full(ring, 1));
  auto r = diagonal_prelevel(ctx, cc.folding, all);
  std::vector<Check> out;
  const std::string tag = "n=" + std::to_string(n) + ", " + ring->spec();
  if (!r.prelevel) {
    out.push_back(make_check("diagonal prelevel (" + tag + ")", "the diagonal propagates consistently", false,
                             {{"inconsistent", r.witness->describe(*ctx)}}));
    return out;
  }
  const auto& sigma = *r.prelevel;
  bool diag = true;
  for (int b = 0; b < ctx->blocks().size(); ++b)
    if (!ctx->blocks().block(b).in_delta)
      diag = diag && sigma[b].count() == static_cast<std::uint64_t>(ring->order()) &&
             sigma[b].contains(diagonal_vector(*ctx, cc.folding, b));
  LevelAnalysis la(sigma);
  const bool level = la.almost_level() && la.is_level();
  auto c = make_check("diagonal level (" + tag + ")", "the folded overgroup has the diagonal of R^2 as its level",
                      diag && level, {{"diagonal", diag}, {"level", level}, {"sigma", prelevel_json(sigma)}});
  c.seconds = sw.seconds();
  out.push_back(std::move(c));
  if (!level) return out;
  // extra generators: x_[delta](xi, xi) up to the folding sign
  int delta = -1;
  for (int b = 0; b < ctx->blocks().size(); ++b) {
    auto co = ctx->phi().coords(ctx->blocks().block(b).members[0]);
    if (co[0] == 1 && co[n - 1] != 0) delta = b;
  }
  std::vector<AdjointElement> extra;
  auto v = diagonal_vector(*ctx, cc.folding, delta);
  for (Elem xi : ring->elements()) {
    if (xi == ring->zero()) continue;
    RingVector a(v.size());
    for (size_t i = 0; i < v.size(); ++i) a[i] = ring->mul(xi, v[i]);
    extra.push_back(ctx->algebra().block_unipotent(ctx->blocks().block(delta), a));
  }
  SandwichOptions opt;
  opt.bound = bound;
  for (auto& k : verify_sandwich(sigma, extra, opt)) {
    k.name += " (" + tag + ")";
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace sandwich
