#include <doctest.h>

#include "sandwich/cases.hpp"

using namespace sandwich;

namespace {

bool all_pass(const std::vector<Check>& cs) {
  bool ok = true;
  for (const auto& c : cs) {
    INFO(c.name << " " << c.witness.dump().substr(0, 2000));
    CHECK(c.status == Status::pass);
    ok = ok && c.status == Status::pass;
  }
  return ok;
}

}  // namespace

TEST_CASE("foldings exist and are automorphisms") {
  for (auto [sys, sub, ord] : {std::tuple{"D4", "A2", 3}, std::tuple{"E6", "4A1", 2}, std::tuple{"A3", "2A1", 2},
                               std::tuple{"A5", "3A1", 2}, std::tuple{"D4", "D3", 2}, std::tuple{"D5", "D4", 2}}) {
    auto ctx = Context::make(sys, sub, "F3");
    auto f = make_folding(ctx->sc(), ctx->delta(), ord);
    REQUIRE_MESSAGE(f, sys);
    const auto& P = ctx->phi();
    for (int a = 0; a < P.size(); ++a) {
      int r = a;
      int prod = 1;
      for (int k = 0; k < ord; ++k) {
        prod *= f->sign[r];
        r = f->perm[r];
      }
      CHECK(r == a);
      CHECK(prod == 1);
      for (int b = 0; b < P.size(); ++b) {
        int s = P.sum(a, b);
        if (s < 0) continue;
        CHECK(f->sign[a] * f->sign[b] * ctx->sc().n(f->perm[a], f->perm[b]) == ctx->sc().n(a, b) * f->sign[s]);
      }
    }
    for (int a : ctx->delta().roots()) CHECK(f->sign[a] == 1);
  }
  // no triality fixes the roots of D3
  auto ctx = Context::make("D4", "D3", "F2");
  CHECK_FALSE(make_folding(ctx->sc(), ctx->delta(), 3));
}

TEST_CASE("A2 <= D4: the pair (R,0) over F2") {
  auto cc = a2d4_case("F2");
  auto R = cc.ctx->ring_ptr();
  auto orbs = cc.ctx->non_delta_orbits();
  REQUIRE(orbs.size() == 2);
  auto r = diagonal_prelevel(cc.ctx, cc.folding, {{orbs[0], Submodule::full(R, 1)}, {orbs[1], Submodule(R, 1)}});
  REQUIRE(r.prelevel);
  LevelAnalysis la(*r.prelevel);
  CHECK(la.almost_level());
  CHECK_FALSE(la.is_level());
  auto p = a2d4_pair_predicates(Submodule::full(R, 1), Submodule(R, 1));
  CHECK(p.almost_level);
  CHECK_FALSE(p.level);
}

TEST_CASE("A2 <= D4 correspondence") {
  for (const char* ring : {"F2", "F3", "Z/4", "F4"}) {
    INFO(ring);
    all_pass(a2d4_correspondence_scan(parse_ring(ring)));
  }
}

TEST_CASE("C_l from lA1 <= A_{2l-1}") {
  for (const char* ring : {"F2", "F3", "Z/4"}) all_pass(cl_diagonal_scan(2, parse_ring(ring)));
  all_pass(cl_diagonal_scan(3, parse_ring("F2")));
  CHECK_THROWS_AS(cl_diagonal_scan(4, parse_ring("F2")), Error);
}

TEST_CASE("F4 from 4A1 <= E6") {
  auto cc = f4_case("F2");
  CHECK(cc.ctx->non_delta_orbits().size() == 7);
  int shorts = 0;
  for (int o : cc.ctx->non_delta_orbits()) shorts += folded_orbit_label(*cc.ctx, cc.folding, o).starts_with("short:");
  CHECK(shorts > 0);
  CHECK(shorts < 7);
  // F3 has two ideals, so 128 tuples
  auto cs = f4_diagonal_scan(parse_ring("F3"), 1000, 1);
  all_pass(cs);
  CHECK(cs[0].witness["exhaustive"] == true);
  CHECK(cs[0].witness["tuples"] == 128);
  CHECK(cs[0].witness["almost_but_not_net"] == 0);
}

TEST_CASE("folded diagonal level of D3 <= D4") {
  auto cs = folded_diagonal_check(4, parse_ring("F2"), 3000000);
  all_pass(cs);
  REQUIRE(cs.size() == 5);
  CHECK(cs[2].witness["order"] == 1451520);
}
