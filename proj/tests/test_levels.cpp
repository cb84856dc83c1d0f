#include <doctest.h>

#include <random>

#include "sandwich/levels.hpp"

using namespace sandwich;

namespace {

Subalgebra random_overalgebra(const ContextPtr& ctx, std::mt19937& rng) {
  std::vector<RingVector> g;
  for (int a : ctx->delta().roots()) g.push_back(ctx->algebra().e(a, ctx->ring().one()));
  const int n = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int k = 0; k < n; ++k) {
    RingVector v = ctx->algebra().zero();
    const int terms = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int t = 0; t < terms; ++t) {
      int i = std::uniform_int_distribution<int>(0, ctx->dim() - 1)(rng);
      v[i] = Elem{static_cast<std::uint16_t>(std::uniform_int_distribution<int>(0, ctx->ring().order() - 1)(rng))};
    }
    g.push_back(v);
  }
  return lie_closure(ctx, g);
}

// Single seed on the only non-delta orbit.
Prelevel one_seed(const ContextPtr& ctx, const std::vector<RingVector>& gens) {
  auto orbs = ctx->non_delta_orbits();
  REQUIRE(orbs.size() == 1);
  int k = static_cast<int>(ctx->blocks().block(ctx->orbits()[orbs[0]].blocks[0]).members.size());
  auto r = prelevel_from_orbit_seeds(ctx, {{orbs[0], Submodule::span(ctx->ring_ptr(), k, gens)}});
  REQUIRE(r.prelevel);
  return *r.prelevel;
}

}  // namespace

TEST_CASE("propagation from seeds") {
  auto ctx = Context::make("D4", "D3", "F2");
  auto orbs = ctx->non_delta_orbits();
  REQUIRE(orbs.size() == 1);
  auto R = ctx->ring_ptr();

  auto full = prelevel_from_orbit_seeds(ctx, {{orbs[0], Submodule::full(R, 2)}});
  REQUIRE(full.prelevel);
  CHECK(*full.prelevel == full_prelevel(ctx));
  auto zero = prelevel_from_orbit_seeds(ctx, {{orbs[0], Submodule(R, 2)}});
  REQUIRE(zero.prelevel);
  CHECK(*zero.prelevel == zero_prelevel(ctx));

  auto diag = one_seed(ctx, {{R->one(), R->one()}});
  for (int b = 0; b < ctx->blocks().size(); ++b) {
    if (ctx->blocks().block(b).in_delta) continue;
    CHECK(diag[b].count() == 2);
    CHECK(diag[b].contains(RingVector{R->one(), R->one()}));
  }
  CHECK_FALSE(check_prelevel(*ctx, diag.components()));

  CHECK_THROWS_AS(prelevel_from_orbit_seeds(ctx, {}), Error);
  CHECK_THROWS_AS(prelevel_from_orbit_seeds(ctx, {{orbs[0], Submodule::full(R, 3)}}), Error);
}

TEST_CASE("sign mismatch is reported as an inconsistency") {
  // over F3 the anti-diagonal differs from the diagonal, and one of the two
  // propagates consistently while a hand-made mixture does not
  auto ctx = Context::make("D4", "D3", "F3");
  auto R = ctx->ring_ptr();
  auto d = one_seed(ctx, {{R->one(), R->one()}});
  auto comps = d.components();
  int other = -1;
  for (int b = ctx->blocks().size() - 1; b >= 0; --b)
    if (!ctx->blocks().block(b).in_delta && !(comps[b] == comps[ctx->orbits()[ctx->non_delta_orbits()[0]].blocks[0]])) {
      other = b;
      break;
    }
  int rep = ctx->orbits()[ctx->non_delta_orbits()[0]].blocks[0];
  int victim = other >= 0 ? other : rep;
  auto alt = Submodule::span(R, 2, std::vector<RingVector>{{R->one(), R->neg(R->one())}});
  comps[victim] = comps[victim] == alt ? Submodule::span(R, 2, std::vector<RingVector>{{R->one(), R->one()}}) : alt;
  auto w = check_prelevel(*ctx, comps);
  REQUIRE(w);
  CHECK(!w->describe(*ctx).empty());
  comps = d.components();
  comps[0] = Submodule(R, 1);
  CHECK(check_prelevel(*ctx, comps));
}

TEST_CASE("levels of overalgebras") {
  auto ctx = Context::make("A3", "2A1", "F2");
  auto R = ctx->ring_ptr();
  Subalgebra whole(ctx, Submodule::full(R, ctx->dim()));
  CHECK(lev_of_algebra(whole) == full_prelevel(ctx));
  CHECK(graded_decomposition_check(whole));

  auto Lp = subsystem_algebra(ctx);
  CHECK(Lp.is_bracket_closed());
  std::vector<RingVector> g = Lp.generators();
  for (int i = 0; i < ctx->phi().rank(); ++i) g.push_back(ctx->algebra().basis(ctx->sc().cartan(i), R->one()));
  auto LD = lie_closure(ctx, g);
  CHECK(lev_of_algebra(LD) == zero_prelevel(ctx));

  auto self = Context::make("A3", "A3", "F2");
  CHECK(lev_of_algebra(subsystem_algebra(self)) == full_prelevel(self));

  Subalgebra tiny(ctx, Submodule(R, ctx->dim()));
  CHECK_THROWS_AS(lev_of_algebra(tiny), Error);
}

TEST_CASE("graded decomposition on random overalgebras") {
  std::mt19937 rng(7);
  for (auto [s, d] : std::vector<std::pair<std::string, std::string>>{{"A3", "2A1"}, {"D4", "A2"}}) {
    auto ctx = Context::make(s, d, "F2");
    int ok = 0;
    const int samples = s == "A3" ? 100 : 30;
    for (int i = 0; i < samples; ++i) {
      auto L = random_overalgebra(ctx, rng);
      CHECK(L.is_bracket_closed());
      ok += graded_decomposition_check(L);
    }
    CHECK(ok == samples);
  }
  std::mt19937 rng2(3);
  auto ctx = Context::make("A3", "2A1", "Z/4");
  for (int i = 0; i < 20; ++i) CHECK(graded_decomposition_check(random_overalgebra(ctx, rng2)));
}

TEST_CASE("l_min and l_max") {
  std::mt19937 rng(11);
  auto ctx = Context::make("A3", "2A1", "F2");
  auto full = full_prelevel(ctx);
  CHECK(l_min(full).module().is_full());
  CHECK(l_max(full).module().is_full());
  CHECK(l_min(zero_prelevel(ctx)) == lie_closure(ctx, subsystem_algebra(ctx).generators()));

  for (int i = 0; i < 40; ++i) {
    auto L = random_overalgebra(ctx, rng);
    auto sigma = lev_of_algebra(L);
    LevelAnalysis la(sigma);
    REQUIRE(la.almost_level());
    CHECK(lev_of_algebra(la.lmin()) == sigma);
    CHECK(lev_of_algebra(la.lmax()) == sigma);
    CHECK(la.lmax().is_bracket_closed());
    CHECK(la.lmin().subset_of(L));
    CHECK(L.subset_of(la.lmax()));
    CHECK(normalizer(L, L.generators()) == la.lmax());
  }
}

TEST_CASE("monotonicity of l_min") {
  auto ctx = Context::make("D4", "D3", "F3");
  auto levels = enumerate_levels(ctx).records;
  for (const auto& a : levels)
    for (const auto& b : levels)
      if (a.sigma.subset_of(b.sigma)) CHECK(l_min(a.sigma).subset_of(l_min(b.sigma)));
}

TEST_CASE("levels for D3 in D4") {
  for (auto [ring, count] : std::vector<std::pair<std::string, int>>{{"F2", 5}, {"F3", 6}}) {
    CAPTURE(ring);
    auto ctx = Context::make("D4", "D3", ring);
    auto e = enumerate_levels(ctx);
    CHECK(e.inconsistent == 0);
    CHECK(static_cast<int>(e.records.size()) == count);
    for (const auto& r : e.records) {
      CHECK(r.almost_level);
      CHECK(r.level);
      LevelAnalysis la(r.sigma);
      CHECK(lev_of_algebra(la.lmax()) == r.sigma);
      CHECK(la.lmin().subset_of(la.lmax()));
      CHECK(la.uniqueness_scan());
    }
  }
}

TEST_CASE("levels for D4 in D5 over F3") {
  auto ctx = Context::make("D5", "D4", "F3");
  auto e = enumerate_levels(ctx);
  CHECK(e.records.size() == 6);
  for (const auto& r : e.records) {
    CHECK(r.level);
    CHECK(level_uniqueness_scan(r.sigma));
  }
}

TEST_CASE("E(sigma) generators and S(sigma)") {
  auto ctx = Context::make("D4", "D3", "F2");
  auto R = ctx->ring_ptr();
  auto zero = zero_prelevel(ctx);
  CHECK(e_sigma_generators(zero).size() == ctx->delta().roots().size());
  CHECK(e_sigma_generators(full_prelevel(ctx)).size() ==
        static_cast<size_t>(ctx->delta().size()) + 3 * (ctx->blocks().size() - ctx->delta().size()));
  auto diag = one_seed(ctx, {{R->one(), R->one()}});
  auto gens = e_sigma_generators(diag);
  CHECK(gens.size() == static_cast<size_t>(ctx->delta().size() + ctx->blocks().size() - ctx->delta().size()));
  for (const auto& g : e_sigma_generators(zero)) CHECK(s_membership(g, diag));
  CHECK(s_membership(ctx->algebra().identity(), diag));
  // a full block unipotent leaves the diagonal level
  int b = ctx->orbits()[ctx->non_delta_orbits()[0]].blocks[0];
  CHECK_FALSE(s_membership(ctx->algebra().block_unipotent(ctx->blocks().block(b), RingVector{R->one(), R->zero()}), diag));

  // elements stabilising L_min also stabilise L_max
  LevelAnalysis la(diag);
  for (const auto& g : gens) {
    bool stab = true;
    for (const auto& v : la.lmin().generators()) stab = stab && la.lmin().contains(g.apply(v));
    if (stab) CHECK(la.stabilizes(g));
  }
}

TEST_CASE("reflections map prelevels to prelevels") {
  for (auto [s, d, r] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"D4", "D3", "F3"}, {"A3", "2A1", "Z/4"}, {"D4", "A2", "F2"}}) {
    CAPTURE(s);
    CAPTURE(d);
    auto ctx = Context::make(s, d, r);
    auto e = enumerate_levels(ctx, 100000);
    int checked = 0;
    for (const auto& rec : e.records) {
      if (++checked > 30) break;
      for (int a : ctx->delta().roots()) {
        auto img = reflect_prelevel(rec.sigma, a);
        CHECK_FALSE(check_prelevel(*ctx, img.components()));
        CHECK(img == rec.sigma);
      }
    }
  }
}

TEST_CASE("enumeration bound") {
  auto ctx = Context::make("D4", "A2", "F2");
  CHECK_THROWS_AS(enumerate_levels(ctx, 10), BoundExceeded);
  auto e = enumerate_levels(ctx, 1000);
  int almost = 0, lv = 0;
  for (const auto& r : e.records) {
    almost += r.almost_level;
    lv += r.level;
  }
  CHECK(almost >= lv);
  CHECK(lv >= 2);
  MESSAGE("A2<=D4/F2: consistent ", e.records.size(), " almost ", almost, " levels ", lv);
}
