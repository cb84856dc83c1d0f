#include "sandwich/levels.hpp"

#include <algorithm>
#include <deque>

namespace sandwich {

Context::Context(const Subsystem& delta, RingPtr ring)
    : delta_(delta),
      blocks_(delta),
      orbits_(weyl_orbits_of_blocks(delta, blocks_)),
      algebra_(build_structure_constants(delta.ambient_ptr()), std::move(ring)) {
  orbit_of_.assign(blocks_.size(), -1);
  for (size_t o = 0; o < orbits_.size(); ++o)
    for (int b : orbits_[o].blocks) orbit_of_[b] = static_cast<int>(o);
  moves_from_.resize(blocks_.size());
  for (int b = 0; b < blocks_.size(); ++b)
    for (int a : delta_.roots())
      if (blocks_.pairing(b, a) == -1) {
        moves_from_[b].push_back(static_cast<int>(moves_.size()));
        moves_.push_back(t_operator(sc(), blocks_, b, a));
      }
}

std::shared_ptr<const Context> Context::make(const Subsystem& delta, RingPtr ring) {
  return std::shared_ptr<const Context>(new Context(delta, std::move(ring)));
}

std::shared_ptr<const Context> Context::make(const std::string& system, const std::string& subsystem,
                                             const std::string& ring) {
  return make(subsystem_preset(build_root_system(system), subsystem), parse_ring(ring));
}

std::vector<int> Context::non_delta_orbits() const {
  std::vector<int> out;
  for (size_t o = 0; o < orbits_.size(); ++o)
    if (!orbits_[o].in_delta) out.push_back(static_cast<int>(o));
  return out;
}

RingVector Context::embed(int block, std::span<const Elem> a) const {
  const auto& m = blocks_.block(block).members;
  if (a.size() != m.size()) throw Error("rank mismatch");
  RingVector v = algebra_.zero();
  for (size_t i = 0; i < m.size(); ++i) v[m[i]] = a[i];
  return v;
}

RingVector Context::component(int block, std::span<const Elem> v) const {
  const auto& m = blocks_.block(block).members;
  RingVector a(m.size());
  for (size_t i = 0; i < m.size(); ++i) a[i] = v[m[i]];
  return a;
}

Submodule apply_t(const FiniteRing& r, const TOperator& t, const Submodule& m) {
  std::vector<RingVector> img;
  for (const auto& g : m.generators()) img.push_back(t.apply(r, g));
  return Submodule::span(m.ring_ptr(), m.rank(), img);
}

Prelevel::Prelevel(ContextPtr ctx, std::vector<Submodule> comps) : ctx_(std::move(ctx)), comps_(std::move(comps)) {
  if (static_cast<int>(comps_.size()) != ctx_->blocks().size()) throw Error("rank mismatch: wrong number of blocks");
  for (int b = 0; b < ctx_->blocks().size(); ++b)
    if (comps_[b].rank() != static_cast<int>(ctx_->blocks().block(b).members.size()))
      throw Error("rank mismatch in block " + std::to_string(b));
}

bool Prelevel::subset_of(const Prelevel& o) const {
  for (size_t b = 0; b < comps_.size(); ++b)
    if (!comps_[b].subset_of(o.comps_[b])) return false;
  return true;
}

std::string Inconsistency::describe(const Context& ctx) const {
  const auto& P = ctx.phi();
  std::string s = "block [" + P.render(ctx.blocks().block(block).members[0]) + "]";
  if (alpha < 0) return s + " lies in the subsystem but its component is not full";
  return s + " moved by " + P.render(alpha) + " disagrees with block [" +
         P.render(ctx.blocks().block(target).members[0]) + "]";
}

std::optional<Inconsistency> check_prelevel(const Context& ctx, const std::vector<Submodule>& comps) {
  for (int b = 0; b < ctx.blocks().size(); ++b)
    if (ctx.blocks().block(b).in_delta && !comps[b].is_full()) return Inconsistency{b, -1, b};
  for (const auto& t : ctx.moves())
    if (!(apply_t(ctx.ring(), t, comps[t.from]) == comps[t.to])) return Inconsistency{t.from, t.alpha, t.to};
  return std::nullopt;
}

PropagationResult prelevel_from_orbit_seeds(const ContextPtr& ctx, const std::map<int, Submodule>& seeds) {
  const auto& B = ctx->blocks();
  std::vector<std::optional<Submodule>> comps(B.size());
  for (auto& [o, s] : seeds) {
    if (o < 0 || o >= static_cast<int>(ctx->orbits().size()) || ctx->orbits()[o].in_delta)
      throw Error("seed for unknown orbit " + std::to_string(o));
    if (s.ring().spec() != ctx->ring().spec()) throw Error("context mismatch: seed over another ring");
  }
  std::deque<int> queue;
  for (size_t o = 0; o < ctx->orbits().size(); ++o) {
    const auto& orb = ctx->orbits()[o];
    if (orb.in_delta) {
      for (int b : orb.blocks) comps[b] = Submodule::full(ctx->ring_ptr(), 1);
      continue;
    }
    auto it = seeds.find(static_cast<int>(o));
    if (it == seeds.end()) throw Error("missing orbit seed for orbit " + std::to_string(o));
    int rep = orb.blocks[0];
    if (it->second.rank() != static_cast<int>(B.block(rep).members.size()))
      throw Error("rank mismatch: seed for orbit " + std::to_string(o) + " has rank " +
                  std::to_string(it->second.rank()));
    comps[rep] = it->second;
    queue.push_back(rep);
  }
  PropagationResult res;
  while (!queue.empty()) {
    int b = queue.front();
    queue.pop_front();
    for (int k : ctx->moves_from(b)) {
      const auto& t = ctx->moves()[k];
      auto img = apply_t(ctx->ring(), t, *comps[b]);
      if (!comps[t.to]) {
        comps[t.to] = std::move(img);
        queue.push_back(t.to);
      } else if (!(*comps[t.to] == img)) {
        res.witness = Inconsistency{b, t.alpha, t.to};
        return res;
      }
    }
  }
  std::vector<Submodule> out;
  for (auto& c : comps) out.push_back(std::move(*c));
  if (auto w = check_prelevel(*ctx, out)) {
    res.witness = w;
    return res;
  }
  res.prelevel.emplace(ctx, std::move(out));
  return res;
}

Prelevel full_prelevel(const ContextPtr& ctx) {
  std::vector<Submodule> c;
  for (const auto& b : ctx->blocks().blocks())
    c.push_back(Submodule::full(ctx->ring_ptr(), static_cast<int>(b.members.size())));
  return Prelevel(ctx, std::move(c));
}

Prelevel zero_prelevel(const ContextPtr& ctx) {
  std::vector<Submodule> c;
  for (const auto& b : ctx->blocks().blocks()) {
    int k = static_cast<int>(b.members.size());
    c.push_back(b.in_delta ? Submodule::full(ctx->ring_ptr(), k) : Submodule(ctx->ring_ptr(), k));
  }
  return Prelevel(ctx, std::move(c));
}

Subalgebra::Subalgebra(ContextPtr ctx, Submodule module) : ctx_(std::move(ctx)), module_(std::move(module)) {
  if (module_.rank() != ctx_->dim()) throw Error("rank mismatch: not a submodule of the algebra");
}

bool Subalgebra::is_bracket_closed() const {
  auto g = generators();
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (!contains(ctx_->algebra().bracket(g[i], g[j]))) return false;
  return true;
}

Subalgebra lie_closure(const ContextPtr& ctx, const std::vector<RingVector>& gens) {
  const auto& A = ctx->algebra();
  Submodule S(ctx->ring_ptr(), ctx->dim());
  std::vector<RingVector> work;
  auto push = [&](const RingVector& v) {
    if (S.contains(v)) return;
    S = S.with(std::span<const RingVector>(&v, 1));
    work.push_back(v);
  };
  for (const auto& g : gens) push(g);
  while (!work.empty()) {
    RingVector w = std::move(work.back());
    work.pop_back();
    for (const auto& g : gens) push(A.bracket(g, w));
  }
  return Subalgebra(ctx, std::move(S));
}

Subalgebra subsystem_algebra(const ContextPtr& ctx) {
  std::vector<RingVector> g;
  for (int a : ctx->delta().roots()) g.push_back(ctx->algebra().e(a, ctx->ring().one()));
  return lie_closure(ctx, g);
}

namespace {

// {v in L : v supported on coords}, read off in the order of coords.
Submodule restrict_to(const Subalgebra& L, const std::vector<int>& coords) {
  const Context& C = L.context();
  const int d = C.ring().additive_rank();
  const int n = C.dim();
  std::vector<char> keep(n, 0);
  for (int c : coords) keep[c] = 1;
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (!keep[i]) order.push_back(i);
  const int lead = static_cast<int>(order.size()) * d;
  order.insert(order.end(), coords.begin(), coords.end());
  std::vector<howell::Row> rows;
  for (const auto& r : L.module().form().rows) {
    howell::Row p(n * d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) p[i * d + j] = r[order[i] * d + j];
    rows.push_back(std::move(p));
  }
  const auto m = L.module().form().modulus;
  auto f = howell::reduce(std::move(rows), n * d, m);
  std::vector<howell::Row> tail;
  for (const auto& r : howell::rows_from(f, lead)) tail.emplace_back(r.begin() + lead, r.end());
  const int k = static_cast<int>(coords.size());
  return Submodule::from_form(C.ring_ptr(), k, howell::reduce(std::move(tail), k * d, m));
}

void require_overalgebra(const Subalgebra& L) {
  const Context& C = L.context();
  for (int a : C.delta().roots())
    if (!L.contains(C.algebra().e(a, C.ring().one())))
      throw Error("algebra does not contain the subsystem algebra: e[" + C.phi().render(a) + "] missing");
}

}  // namespace

Prelevel lev_of_algebra(const Subalgebra& L) {
  require_overalgebra(L);
  const Context& C = L.context();
  std::vector<Submodule> comps;
  for (const auto& b : C.blocks().blocks()) comps.push_back(restrict_to(L, b.members));
  return Prelevel(L.context_ptr(), std::move(comps));
}

Submodule toric_part(const Subalgebra& L) {
  const Context& C = L.context();
  std::vector<int> h;
  for (int i = 0; i < C.phi().rank(); ++i) h.push_back(C.sc().cartan(i));
  return restrict_to(L, h);
}

bool graded_decomposition_check(const Subalgebra& L) {
  const Context& C = L.context();
  if (!check_condition_star(C.delta()).holds) throw Error("precondition violated: condition (*) fails");
  auto lev = lev_of_algebra(L);
  auto D = toric_part(L);
  Cardinality total = D.size();
  std::vector<RingVector> gens;
  for (const auto& g : D.generators()) {
    RingVector v = C.algebra().zero();
    for (int i = 0; i < C.phi().rank(); ++i) v[C.sc().cartan(i)] = g[i];
    gens.push_back(v);
  }
  for (int b = 0; b < C.blocks().size(); ++b) {
    total *= lev[b].size();
    for (const auto& g : lev[b].generators()) gens.push_back(C.embed(b, g));
  }
  auto sum = Submodule::span(C.ring_ptr(), C.dim(), gens);
  return sum == L.module() && total == L.module().size();
}

Subalgebra normalizer(const Subalgebra& L, const std::vector<RingVector>& gens) {
  const Context& C = L.context();
  const FiniteRing& R = C.ring();
  const int N = C.dim() * R.additive_rank();
  const auto m = L.module().form().modulus;
  Submodule K = Submodule::full(C.ring_ptr(), C.dim());
  for (const auto& g : gens) {
    auto krows = K.generators();
    std::vector<RingVector> imgs;
    bool inside = true;
    for (const auto& k : krows) {
      imgs.push_back(C.algebra().bracket(k, g));
      inside = inside && L.contains(imgs.back());
    }
    if (inside) continue;
    // rows ([k,g] | k) and (l | 0); the kernel of the map to the quotient
    // is read off from the rows with vanishing left half
    std::vector<howell::Row> rows;
    for (size_t i = 0; i < krows.size(); ++i) {
      auto a = to_scaled(R, imgs[i]);
      auto b = to_scaled(R, krows[i]);
      a.insert(a.end(), b.begin(), b.end());
      rows.push_back(std::move(a));
    }
    for (const auto& l : L.module().form().rows) {
      howell::Row a = l;
      a.resize(2 * N, 0);
      rows.push_back(std::move(a));
    }
    auto f = howell::reduce(std::move(rows), 2 * N, m);
    std::vector<howell::Row> tail;
    for (const auto& r : howell::rows_from(f, N)) tail.emplace_back(r.begin() + N, r.end());
    K = Submodule::from_form(C.ring_ptr(), C.dim(), howell::reduce(std::move(tail), N, m));
  }
  return Subalgebra(L.context_ptr(), std::move(K));
}

std::vector<RingVector> l_min_generators(const Prelevel& sigma) {
  const Context& C = sigma.context();
  std::vector<RingVector> g;
  for (int b = 0; b < C.blocks().size(); ++b)
    for (const auto& a : sigma[b].generators()) g.push_back(C.embed(b, a));
  return g;
}

Subalgebra l_min(const Prelevel& sigma) { return lie_closure(sigma.context_ptr(), l_min_generators(sigma)); }

bool is_almost_level(const Prelevel& sigma) { return lev_of_algebra(l_min(sigma)) == sigma; }

Subalgebra l_max(const Prelevel& sigma) { return LevelAnalysis(sigma).lmax(); }

std::vector<AdjointElement> e_sigma_generators(const Prelevel& sigma) {
  const Context& C = sigma.context();
  std::vector<AdjointElement> out;
  for (int b = 0; b < C.blocks().size(); ++b)
    for (const auto& a : sigma[b].elements())
      if (std::any_of(a.begin(), a.end(), [&](Elem x) { return x != C.ring().zero(); }))
        out.push_back(C.algebra().block_unipotent(C.blocks().block(b), a));
  return out;
}

std::vector<AdjointElement> e_sigma_generating_set(const Prelevel& sigma) {
  const Context& C = sigma.context();
  std::vector<AdjointElement> out;
  for (int b = 0; b < C.blocks().size(); ++b)
    for (const auto& a : sigma[b].generators()) out.push_back(C.algebra().block_unipotent(C.blocks().block(b), a));
  return out;
}

LevelAnalysis::LevelAnalysis(Prelevel sigma) : sigma_(std::move(sigma)) {
  lmin_.emplace(l_min(sigma_));
  almost_ = lev_of_algebra(*lmin_) == sigma_;
  if (almost_) lmax_.emplace(normalizer(*lmin_, l_min_generators(sigma_)));
}

const Subalgebra& LevelAnalysis::lmax() const {
  if (!almost_) throw Error("not an almost level");
  return *lmax_;
}

bool LevelAnalysis::stabilizes(const AdjointElement& g) const {
  const auto& M = lmax();
  for (const auto& v : M.generators())
    if (!M.contains(g.apply(v))) return false;
  return true;
}

bool LevelAnalysis::is_level() const {
  lmax();
  for (const auto& g : e_sigma_generators(sigma_))
    if (!stabilizes(g)) return false;
  return true;
}

bool LevelAnalysis::uniqueness_scan() const {
  if (!is_level()) throw Error("not a level");
  const Context& C = sigma_.context();
  for (int b = 0; b < C.blocks().size(); ++b) {
    const auto& blk = C.blocks().block(b);
    for (const auto& a : Submodule::full(C.ring_ptr(), static_cast<int>(blk.members.size())).elements())
      if (stabilizes(C.algebra().block_unipotent(blk, a)) != sigma_[b].contains(a)) return false;
  }
  return true;
}

bool s_membership(const AdjointElement& g, const Prelevel& sigma) { return LevelAnalysis(sigma).stabilizes(g); }
bool is_level(const Prelevel& sigma) { return LevelAnalysis(sigma).is_level(); }
bool level_uniqueness_scan(const Prelevel& sigma) { return LevelAnalysis(sigma).uniqueness_scan(); }

LevelEnumeration enumerate_levels(const ContextPtr& ctx, std::uint64_t bound) {
  auto orbs = ctx->non_delta_orbits();
  std::vector<std::vector<Submodule>> choices;
  std::uint64_t total = 1;
  for (int o : orbs) {
    int k = static_cast<int>(ctx->blocks().block(ctx->orbits()[o].blocks[0]).members.size());
    choices.push_back(enumerate_submodules(k, ctx->ring_ptr()));
    total *= choices.back().size();
    if (total > bound)
      throw BoundExceeded("bound exceeded: more than " + std::to_string(bound) + " seed tuples");
  }
  LevelEnumeration out;
  std::vector<size_t> idx(orbs.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    std::map<int, Submodule> seeds;
    for (size_t i = 0; i < orbs.size(); ++i) seeds.emplace(orbs[i], choices[i][idx[i]]);
    auto r = prelevel_from_orbit_seeds(ctx, seeds);
    if (r.prelevel) {
      LevelAnalysis la(*r.prelevel);
      LevelRecord rec{*r.prelevel, seeds, la.almost_level(), la.almost_level() && la.is_level()};
      out.records.push_back(std::move(rec));
    } else {
      ++out.inconsistent;
    }
    for (size_t i = orbs.size(); i-- > 0;) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

Prelevel reflect_prelevel(const Prelevel& sigma, int alpha) {
  const Context& C = sigma.context();
  if (!C.delta().contains(alpha)) throw Error("reflection root not in the subsystem");
  const auto& A = C.algebra();
  const auto& R = C.ring();
  AdjointElement w = A.unipotent(alpha, R.one()) * A.unipotent(C.phi().neg(alpha), R.neg(R.one())) *
                     A.unipotent(alpha, R.one());
  std::vector<std::vector<RingVector>> imgs(C.blocks().size());
  int target = -1;
  for (int b = 0; b < C.blocks().size(); ++b) {
    target = C.blocks().block_of(C.phi().reflect(alpha, C.blocks().block(b).members[0]));
    for (const auto& a : sigma[b].generators()) imgs[target].push_back(C.component(target, w.apply(C.embed(b, a))));
  }
  std::vector<Submodule> comps;
  for (int b = 0; b < C.blocks().size(); ++b)
    comps.push_back(Submodule::span(C.ring_ptr(), static_cast<int>(C.blocks().block(b).members.size()), imgs[b]));
  return Prelevel(sigma.context_ptr(), std::move(comps));
}

}  // namespace sandwich
