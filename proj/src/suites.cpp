#include "sandwich/suites.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "sandwich/cases.hpp"
#include "sandwich/oracles.hpp"
#include "sandwich/somodel.hpp"

namespace sandwich {

Json SuiteConfig::to_json() const {
  return {{"system", system}, {"subsystem", subsystem}, {"ring", ring},       {"n", n},
          {"samples", samples}, {"bound", bound},       {"level_bound", level_bound}, {"seed", seed}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> v = {"axioms", "tandems", "graded",  "sandwich",   "so-case",
                                             "a2d4",   "cl-case", "f4-case", "square-term"};
  return v;
}

const std::vector<std::string>& shipped_rings() {
  static const std::vector<std::string> v = {"Z/2", "Z/3", "Z/4", "Z/6", "Z/9", "F4", "F8", "F9",
                                             "Z/2*Z/3", "Z/2[x]/(x^2)", "Z/4[x]/(x^2+x+1)", "(Z/2*Z/2)[x]/(x^2+1)"};
  return v;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> v = {{"A3", "2A1"}, {"A5", "3A1"}, {"A7", "4A1"}, {"D4", "A2"},
                                         {"D4", "D3"},  {"D5", "D4"},  {"E6", "4A1"}, {"E6", "D4"},
                                         {"E6", "D5"},  {"E7", "7A1"}, {"E8", "8A1"}, {"E7", "D6"}};
  return v;
}

namespace {

std::uint64_t pick(std::uint64_t v, std::uint64_t def) { return v ? v : def; }

Elem random_elem(const FiniteRing& R, std::mt19937_64& rng) {
  return Elem{static_cast<std::uint16_t>(rng() % R.order())};
}

RingVector random_vector(const ChevalleyAlgebra& L, std::mt19937_64& rng) {
  RingVector v(L.dim());
  for (auto& x : v) x = random_elem(L.ring(), rng);
  return v;
}

Word random_word(const ChevalleyAlgebra& L, std::mt19937_64& rng, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back({static_cast<int>(rng() % L.phi().size()), random_elem(L.ring(), rng)});
  return w;
}

// a random root at the given inner product with a
int partner(const RootSystem& P, int a, int ip, std::mt19937_64& rng) {
  std::vector<int> c;
  for (int b = 0; b < P.size(); ++b)
    if (P.inner(a, b) == ip && b != a) c.push_back(b);
  return c.empty() ? -1 : c[rng() % c.size()];
}

std::string render_block(const RootSystem& P, const Block& b) {
  std::string s = "{";
  for (size_t i = 0; i < b.members.size(); ++i) s += (i ? ", " : "") + P.render(b.members[i]);
  return s + "}";
}

// Jacobi identity for basis elements, with integer structure constants
bool jacobi(const StructureConstants& sc, int a, int b, int c) {
  std::map<int, long> s;
  auto br = [&](int x, const std::map<int, long>& v) {
    std::map<int, long> out;
    for (auto [j, k] : v)
      for (const Term& t : sc.bracket(x, j)) out[t.index] += k * t.coef;
    return out;
  };
  for (auto [x, y, z] : {std::tuple{a, b, c}, std::tuple{b, c, a}, std::tuple{c, a, b}})
    for (auto [k, v] : br(x, br(y, {{z, 1}}))) s[k] += v;
  return std::all_of(s.begin(), s.end(), [](const auto& p) { return p.second == 0; });
}

Subalgebra random_overalgebra(const ContextPtr& ctx, std::mt19937_64& rng) {
  std::vector<RingVector> g;
  for (int a : ctx->delta().roots()) g.push_back(ctx->algebra().e(a, ctx->ring().one()));
  const int n = static_cast<int>(rng() % 3);
  for (int k = 0; k < n; ++k) {
    RingVector v = ctx->algebra().zero();
    const int terms = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < terms; ++t) v[rng() % ctx->dim()] = random_elem(ctx->ring(), rng);
    g.push_back(v);
  }
  return lie_closure(ctx, g);
}

std::vector<RingVector> all_vectors(const FiniteRing& R, int k) {
  std::vector<RingVector> all{RingVector{}};
  for (int i = 0; i < k; ++i) {
    std::vector<RingVector> next;
    for (const auto& v : all)
      for (Elem e : R.elements()) {
        auto w = v;
        w.push_back(e);
        next.push_back(std::move(w));
      }
    all = std::move(next);
  }
  return all;
}

Json seeds_json(const Context& ctx, const std::map<int, Submodule>& seeds) {
  Json j = Json::object();
  for (auto& [o, m] : seeds) {
    int b = ctx.orbits()[o].blocks[0];
    j[render_block(ctx.phi(), ctx.blocks().block(b))] = m.render();
  }
  return j;
}

void timed(Check& c, const Stopwatch& sw) { c.seconds = sw.seconds(); }

}  // namespace

std::vector<Check> analyze_checks(const SuiteConfig& cfg) {
  std::vector<Check> out;
  auto ctx = Context::make(cfg.system, cfg.subsystem, cfg.ring);
  const auto& P = ctx->phi();
  const auto star = check_condition_star(ctx->delta());
  {
    Check c = make_check("condition (*)", "no orthogonal root and no lone A1 inside an A2", true,
                         {{"holds", star.holds}, {"witness", star.witness}});
    out.push_back(std::move(c));
  }
  out.push_back(make_check("condition (**)", "R has no residue field F2", true,
                           {{"holds", !has_residue_field_f2(ctx->ring())}}));
  const auto s3 = check_condition_star3(ctx->delta(), ctx->blocks());
  out.push_back(make_check("condition (***)", "no three-root blocks and every outside root has an A2 partner pair",
                           true, {{"holds", s3.holds}, {"witness", s3.witness}}));
  if (!star.holds) {
    for (const char* name : {"blocks", "orbits", "levels"}) {
      Check c;
      c.name = name;
      c.anchor = "requires condition (*)";
      c.status = Status::skipped;
      c.witness = {{"reason", "condition (*) fails"}};
      out.push_back(std::move(c));
    }
    return out;
  }
  {
    Json table = Json::array();
    for (int b = 0; b < ctx->blocks().size(); ++b) {
      const auto& B = ctx->blocks().block(b);
      table.push_back({{"block", b}, {"roots", render_block(P, B)}, {"size", B.members.size()}, {"in_delta", B.in_delta}});
    }
    auto problems = check_block_properties(ctx->delta(), ctx->blocks());
    out.push_back(make_check("blocks", "blocks are pairwise orthogonal sets of at most three roots", problems.empty(),
                             {{"count", ctx->blocks().size()}, {"table", table}, {"problems", problems}}));
  }
  {
    Json table = Json::array();
    int nd = 0;
    for (size_t o = 0; o < ctx->orbits().size(); ++o) {
      const auto& O = ctx->orbits()[o];
      nd += !O.in_delta;
      table.push_back({{"orbit", o},
                       {"blocks", O.blocks.size()},
                       {"block_size", ctx->blocks().block(O.blocks[0]).members.size()},
                       {"in_delta", O.in_delta},
                       {"representative", render_block(P, ctx->blocks().block(O.blocks[0]))}});
    }
    out.push_back(make_check("orbits", "W(Delta)-orbits of blocks", true,
                             {{"count", ctx->orbits().size()}, {"non_delta", nd}, {"table", table}}));
  }
  {
    Stopwatch sw;
    Check c;
    c.name = "levels";
    c.anchor = "prelevels from orbit seeds, classified as almost levels and levels";
    try {
      auto e = enumerate_levels(ctx, cfg.level_bound);
      int almost = 0, levels = 0;
      Json recs = Json::array();
      bool unique = true;
      for (const auto& r : e.records) {
        almost += r.almost_level;
        levels += r.level;
        Json j = {{"seeds", seeds_json(*ctx, r.seeds)}, {"almost_level", r.almost_level}, {"level", r.level}};
        if (r.level) {
          bool u = level_uniqueness_scan(r.sigma);
          unique = unique && u;
          j["uniqueness_scan"] = u;
        }
        recs.push_back(std::move(j));
      }
      c.status = unique ? Status::pass : Status::fail;
      c.witness = {{"prelevels", e.records.size()}, {"inconsistent", e.inconsistent}, {"almost_levels", almost},
                   {"levels", levels},           {"records", recs}};
    } catch (const BoundExceeded& ex) {
      c.status = Status::overflow;
      c.witness = {{"bound", cfg.level_bound}, {"message", ex.what()}};
    }
    timed(c, sw);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> axioms_suite(const SuiteConfig& cfg) {
  std::vector<Check> out;
  {
    Stopwatch sw;
    auto R = parse_ring(cfg.ring);
    auto bad = R->check_axioms();
    auto c = make_check("ring axioms (" + R->spec() + ")", "commutative ring with identity", !bad,
                        {{"order", R->order()}, {"violation", bad.value_or("")}});
    timed(c, sw);
    out.push_back(std::move(c));
  }
  std::mt19937_64 rng(cfg.seed);
  for (const char* sys : {"A3", "D4", "E6"}) {
    Stopwatch sw;
    auto sc = build_structure_constants(build_root_system(sys));
    const int d = sc->dim();
    std::uint64_t tested = 0, bad = 0;
    const bool exhaustive = std::string(sys) != "E6";
    if (exhaustive) {
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int c = 0; c < d; ++c, ++tested) bad += !jacobi(*sc, a, b, c);
    } else {
      const std::uint64_t n = std::max<std::uint64_t>(10000, cfg.samples);
      for (; tested < n; ++tested) bad += !jacobi(*sc, rng() % d, rng() % d, rng() % d);
    }
    auto c = make_check(std::string("Jacobi identity (") + sys + ")", "structure constants satisfy the Jacobi identity",
                        bad == 0, {{"triples", tested}, {"exhaustive", exhaustive}, {"violations", bad}});
    timed(c, sw);
    out.push_back(std::move(c));
  }
  for (const auto& f : fixtures()) {
    Stopwatch sw;
    auto sc = build_structure_constants(build_root_system(f.system));
    auto delta = subsystem_preset(sc->phi_ptr(), f.subsystem);
    const std::string tag = f.subsystem + "<=" + f.system;
    auto star = check_condition_star(delta);
    if (!star.holds) {
      Check c;
      c.name = "block properties (" + tag + ")";
      c.anchor = "requires condition (*)";
      c.status = Status::skipped;
      c.witness = {{"witness", star.witness}};
      out.push_back(std::move(c));
      continue;
    }
    BlockPartition bp(delta);
    auto problems = check_block_properties(delta, bp);
    auto c = make_check("block properties (" + tag + ")",
                        "blocks are orthogonal, of size at most 3, with the two partner roots in Delta",
                        problems.empty(), {{"blocks", bp.size()}, {"problems", problems}});
    timed(c, sw);
    out.push_back(std::move(c));

    Stopwatch sw2;
    const auto& P = sc->phi();
    int pairs = 0, bad = 0;
    for (int b = 0; b < bp.size(); ++b)
      for (int a : delta.roots()) {
        if (bp.pairing(b, a) != -1) continue;
        ++pairs;
        auto t1 = t_operator(*sc, bp, b, a);
        auto t2 = t_operator(*sc, bp, t1.to, P.neg(a));
        bool ok = t2.to == b;
        for (size_t i = 0; ok && i < t1.perm.size(); ++i)
          ok = t2.perm[t1.perm[i]] == static_cast<int>(i) && t1.sign[i] * t2.sign[t1.perm[i]] == 1;
        bad += !ok;
      }
    auto d = make_check("T-operator involution (" + tag + ")", "T_{-a} T_a = id on M_[b]", bad == 0,
                        {{"pairs", pairs}, {"violations", bad}});
    timed(d, sw2);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Check> tandems_suite(const SuiteConfig& cfg) {
  ChevalleyAlgebra L(build_structure_constants(build_root_system(cfg.system)), parse_ring(cfg.ring));
  const auto& R = L.ring();
  const auto& P = L.phi();
  const std::uint64_t n = pick(cfg.samples, 1000);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Check> out;
  const std::string tag = " (" + cfg.system + ", " + R.spec() + ")";
  auto ebeta_identity = [&](const AdjointElement& g, const RingVector& l) {
    for (int b = 0; b < P.size(); ++b) {
      auto eb = L.e(b, R.one());
      if (g.apply(eb) != L.sub(L.add(eb, L.bracket(l, eb)), L.scale(l[P.neg(b)], l))) return false;
    }
    return true;
  };
  auto special_identity = [&](const Tandem& t, int a1, int a2) {
    auto sp = make_special(L, t, a1, a2);
    RingVector u = L.zero();
    u[a1] = t.l[P.neg(a2)];
    u[a2] = R.sub(u[a2], t.l[P.neg(a1)]);
    return sp.l(L, R.one()) == L.add(u, L.bracket(t.l, u));
  };
  auto record = [&](std::string name, std::string anchor, std::uint64_t bad, const Stopwatch& sw) {
    auto c = make_check(name + tag, std::move(anchor), bad == 0, {{"samples", n}, {"failures", bad}, {"seed", cfg.seed}});
    timed(c, sw);
    out.push_back(std::move(c));
  };
  {
    Stopwatch sw;
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      auto t = make_tandem(L, random_word(L, rng, 4), rng() % P.size(), random_elem(R, rng));
      bad += !ebeta_identity(t.g, t.l);
    }
    record("tandem action on root vectors", "g e_b = e_b + [l,e_b] - l^{-b} l", bad, sw);
  }
  {
    Stopwatch sw;
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      auto t = make_tandem(L, random_word(L, rng, 4), rng() % P.size(), random_elem(R, rng));
      auto v = random_vector(L, rng);
      auto hv = t.h_inv.apply(v);
      auto rhs = L.sub(L.add(v, L.bracket(t.l, v)), L.scale(R.mul(t.xi, hv[P.neg(t.alpha)]), t.l));
      bad += t.g.apply(v) != rhs;
    }
    record("tandem action on arbitrary vectors", "g v = v + [l,v] - xi (h^-1 v)^{-a} l", bad, sw);
  }
  {
    Stopwatch sw;
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      int a1 = rng() % P.size();
      int a2 = partner(P, a1, 0, rng);
      auto bt = make_bitandem(L, random_word(L, rng, 4), a1, a2, random_elem(R, rng), random_elem(R, rng));
      auto v = random_vector(L, rng);
      auto l = bt.l(L, R.one());
      auto lv = L.bracket(l, v);
      auto w = L.sub(L.sub(bt.g(L, R.one()).apply(v), v), lv);
      bool ok = L.add(w, w) == L.bracket(l, lv);
      for (Elem t : R.elements())
        ok = ok && bt.g(L, t).apply(v) == L.add(L.add(v, L.scale(t, lv)), L.scale(R.mul(t, t), w));
      bad += !ok;
    }
    record("bitandem action", "g(t) v = v + t[l,v] + t^2 w with 2w = [l,[l,v]]", bad, sw);
  }
  {
    Stopwatch sw;
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      auto t = make_tandem(L, random_word(L, rng, 4), rng() % P.size(), random_elem(R, rng));
      int a1 = rng() % P.size();
      bad += !special_identity(t, a1, partner(P, a1, 0, rng));
    }
    record("special bitandem Lie part", "l_1 = u + [l,u], u = l^{-a2} e_a1 - l^{-a1} e_a2, a1 orthogonal to a2", bad, sw);
  }
  {
    Stopwatch sw;
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      int a1 = rng() % P.size();
      int a2 = partner(P, a1, 1, rng);
      auto at = make_a2_tandem(L, random_word(L, rng, 4), a1, a2, random_elem(R, rng), random_elem(R, rng));
      bad += !ebeta_identity(at.g(L, R.one()), at.l(L, R.one()));
    }
    record("A2-tandem action on root vectors", "g e_b = e_b + [l,e_b] - l^{-b} l for an A2-tandem", bad, sw);
  }
  {
    Stopwatch sw;
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      auto t = make_tandem(L, random_word(L, rng, 4), rng() % P.size(), random_elem(R, rng));
      int a1 = rng() % P.size();
      bad += !special_identity(t, a1, partner(P, a1, 1, rng));
    }
    record("special A2-tandem Lie part", "l_1 = u + [l,u], u = l^{-a2} e_a1 - l^{-a1} e_a2, (a1,a2) = 1", bad, sw);
  }
  return out;
}

std::vector<Check> graded_suite(const SuiteConfig& cfg) {
  std::vector<Check> out;
  const std::uint64_t n = pick(cfg.samples, 100);
  std::mt19937_64 rng(cfg.seed);
  const std::vector<Fixture> fx = {{"A3", "2A1"}, {"D4", "A2"}, {"D4", "D3"}, {"A5", "3A1"}};
  for (const auto& f : fx) {
    auto ctx = Context::make(f.system, f.subsystem, cfg.ring);
    const std::string tag = " (" + f.subsystem + "<=" + f.system + ", " + ctx->ring().spec() + ")";
    {
      Stopwatch sw;
      std::uint64_t bad = 0;
      std::set<std::string> distinct;
      for (std::uint64_t k = 0; k < n; ++k) {
        auto L = random_overalgebra(ctx, rng);
        distinct.insert(L.module().render());
        bad += !graded_decomposition_check(L);
      }
      auto c = make_check("graded decomposition" + tag, "|L| = |toric part| * product of |L cap M_[b]|", bad == 0,
                          {{"samples", n}, {"distinct", distinct.size()}, {"failures", bad}});
      timed(c, sw);
      out.push_back(std::move(c));
    }
    {
      Stopwatch sw;
      Check c;
      c.name = "lev of L_max" + tag;
      c.anchor = "lev(L_max(sigma)) = sigma for every almost level";
      try {
        auto e = enumerate_levels(ctx, cfg.level_bound);
        int almost = 0, bad = 0;
        for (const auto& r : e.records) {
          if (!r.almost_level) continue;
          ++almost;
          bad += !(lev_of_algebra(l_max(r.sigma)) == r.sigma);
        }
        c.status = bad == 0 ? Status::pass : Status::fail;
        c.witness = {{"almost_levels", almost}, {"failures", bad}};
      } catch (const BoundExceeded&) {
        c.status = Status::overflow;
        c.witness = {{"bound", cfg.level_bound}};
      }
      timed(c, sw);
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Check> sandwich_suite(const SuiteConfig& cfg) {
  std::vector<Check> out;
  auto ctx = Context::make(cfg.system, cfg.subsystem, cfg.ring);
  const std::string tag = cfg.subsystem + "<=" + cfg.system + ", " + ctx->ring().spec();
  LevelEnumeration e;
  try {
    e = enumerate_levels(ctx, cfg.level_bound);
  } catch (const BoundExceeded&) {
    Check c;
    c.name = "levels (" + tag + ")";
    c.anchor = "bounded level enumeration";
    c.status = Status::overflow;
    c.witness = {{"bound", cfg.level_bound}};
    out.push_back(std::move(c));
    return out;
  }
  std::mt19937_64 rng(cfg.seed);
  int k = 0;
  SandwichOptions opt;
  opt.bound = cfg.bound;
  for (const auto& r : e.records) {
    if (!r.level) continue;
    const std::string lbl = " (" + tag + ", level " + std::to_string(k++) + ")";
    for (auto& c : verify_sandwich(r.sigma, {}, opt)) {
      c.name += lbl;
      out.push_back(std::move(c));
    }
    LevelAnalysis la(r.sigma);
    auto extra = sample_stabilizer(la, rng, 3);
    for (auto& c : verify_sandwich(r.sigma, extra, opt)) {
      c.name += lbl + " with " + std::to_string(extra.size()) + " extra generators";
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Check> so_case_suite(const SuiteConfig& cfg) {
  const int n = cfg.n ? cfg.n : 3;
  auto R = parse_ring(cfg.ring);
  auto out = so_case_checks(n, R);
  for (auto& c : out) c.name += " (n=" + std::to_string(n) + ", " + R->spec() + ")";
  for (auto& c : folded_diagonal_check(n, R, cfg.bound)) out.push_back(std::move(c));
  return out;
}

std::vector<Check> a2d4_suite(const SuiteConfig& cfg) { return a2d4_correspondence_scan(parse_ring(cfg.ring)); }

std::vector<Check> cl_case_suite(const SuiteConfig& cfg) {
  return cl_diagonal_scan(cfg.n ? cfg.n : 2, parse_ring(cfg.ring));
}

std::vector<Check> f4_case_suite(const SuiteConfig& cfg) {
  return f4_diagonal_scan(parse_ring(cfg.ring), pick(cfg.samples, 10000), cfg.seed);
}

std::vector<Check> square_term_suite(const SuiteConfig& cfg) {
  std::vector<Check> out;
  {
    Stopwatch sw;
    Json rows = Json::array();
    bool agree = true;
    for (const auto& s : shipped_rings()) {
      auto R = parse_ring(s);
      bool a = has_residue_field_f2(*R), b = oracle::has_f2_homomorphism(*R);
      agree = agree && a == b;
      rows.push_back({{"ring", s}, {"residue_field_f2", a}, {"homomorphism_search", b}});
    }
    auto c = make_check("condition (**) decision", "1 in (t + t^2 : t in R) iff no homomorphism R -> F2", agree,
                        {{"rings", rows}});
    timed(c, sw);
    out.push_back(std::move(c));
  }
  Stopwatch sw;
  auto R = parse_ring(cfg.ring);
  const bool starstar = !has_residue_field_f2(*R);
  std::uint64_t pairs = 0;
  int rank = 0;
  Json counter;
  for (int k = 1; k <= 3; ++k) {
    std::uint64_t cnt = 1;
    for (int i = 0; i < 2 * k; ++i) cnt *= R->order();
    if (cnt > 1000000) break;
    rank = k;
    auto all = all_vectors(*R, k);
    for (const auto& x : all) {
      for (const auto& y : all) {
        ++pairs;
        if (!square_term_span(R, x, y).contains(x)) {
          Json xs = Json::array(), ys = Json::array();
          for (Elem e : x) xs.push_back(R->render(e));
          for (Elem e : y) ys.push_back(R->render(e));
          counter = {{"x", xs}, {"y", ys}};
          break;
        }
      }
      if (!counter.is_null()) break;
    }
    if (!counter.is_null()) break;
  }
  const bool holds = counter.is_null();
  auto c = make_check("square-term property (" + R->spec() + ")",
                      "x lies in the span of all t x + t^2 y, and this fails exactly when R has residue field F2",
                      holds == starstar,
                      {{"condition_starstar", starstar}, {"holds", holds}, {"max_rank", rank}, {"pairs", pairs},
                       {"counterexample", counter}});
  timed(c, sw);
  out.push_back(std::move(c));
  if (!starstar) {
    RingVector x{R->one(), R->zero()}, y{R->zero(), R->one()};
    out.push_back(make_check("square-term counterexample (" + R->spec() + ")",
                             "x = (1,0), y = (0,1) is not in the span when R maps onto F2",
                             !square_term_span(R, x, y).contains(x)));
  }
  return out;
}

std::vector<Check> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "axioms") return axioms_suite(cfg);
  if (name == "tandems") return tandems_suite(cfg);
  if (name == "graded") return graded_suite(cfg);
  if (name == "sandwich") return sandwich_suite(cfg);
  if (name == "so-case") return so_case_suite(cfg);
  if (name == "a2d4") return a2d4_suite(cfg);
  if (name == "cl-case") return cl_case_suite(cfg);
  if (name == "f4-case") return f4_case_suite(cfg);
  if (name == "square-term") return square_term_suite(cfg);
  throw Error("unknown suite: " + name);
}

}  // namespace sandwich
