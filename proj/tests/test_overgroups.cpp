#include <doctest.h>

#include "sandwich/overgroups.hpp"
#include "sandwich/somodel.hpp"

using namespace sandwich;

namespace {

SubgroupEnumeration elementary(const ContextPtr& ctx, std::uint64_t bound = kDefaultEnumerationBound) {
  return enumerate_subgroup(elementary_subsystem_generators(ctx->delta(), ctx->algebra()), bound);
}

std::vector<Prelevel> levels_of(const ContextPtr& ctx) {
  std::vector<Prelevel> out;
  for (const auto& r : enumerate_levels(ctx).records)
    if (r.level) out.push_back(r.sigma);
  return out;
}

}  // namespace

TEST_CASE("generators of the elementary subsystem subgroup") {
  CHECK(elementary_subsystem_generators(Context::make("A1", "A1", "F2")->delta(),
                                        Context::make("A1", "A1", "F2")->algebra())
            .size() == 2);
  auto c = Context::make("A3", "2A1", "F3");
  CHECK(elementary_subsystem_generators(c->delta(), c->algebra()).size() == 8);
  CHECK_THROWS_AS(enumerate_subgroup({}), Error);
}

TEST_CASE("orders of small groups") {
  // PGL_2(F_2) = S_3, PSL_3(F_2), SL_2(F_2)^2 and PSL_2(F_3) = A_4
  CHECK(elementary(Context::make("A1", "A1", "F2")).size() == 6);
  CHECK(elementary(Context::make("A2", "A2", "F2")).size() == 168);
  CHECK(elementary(Context::make("A3", "2A1", "F2")).size() == 36);
  CHECK(elementary(Context::make("A1", "A1", "F3")).size() == 12);
  CHECK(elementary(Context::make("A1", "A1", "Z/4")).size() == 24);

  auto ctx = Context::make("A2", "A2", "F2");
  auto one = enumerate_subgroup({ctx->algebra().identity()});
  CHECK(one.size() == 1);
  CHECK_FALSE(one.overflow());

  auto small = elementary(ctx, 100);
  CHECK(small.overflow());
}

TEST_CASE("enumeration is closed under products") {
  auto ctx = Context::make("A2", "A2", "F3");
  auto H = elementary(ctx);
  // PSL_3(F_3) has trivial centre, so the adjoint image has full order
  REQUIRE(H.size() == 5616);
  for (std::uint64_t i = 0; i < H.size(); i += 97)
    for (std::uint64_t j = 0; j < H.size(); j += 131) CHECK(H.contains(H.element(i) * H.element(j)));
  // over F_3 the adjoint group is generated by its root elements
  CHECK(H.contains(weyl_element(ctx->algebra(), 0) * torus_element(ctx->algebra(), {Elem{2}, Elem{1}})));
}

TEST_CASE("elementary levels of extreme subgroups") {
  auto ctx = Context::make("D4", "D3", "F2");
  auto el = elementary_level(ctx, elementary(ctx));
  REQUIRE(el.prelevel);
  CHECK(*el.prelevel == zero_prelevel(ctx));

  auto all = elementary_level(ctx, [](int, std::span<const Elem>) { return true; });
  REQUIRE(all.prelevel);
  CHECK(*all.prelevel == full_prelevel(ctx));

  // a predicate that is not additive gives no prelevel
  auto odd = elementary_level(ctx, [&](int b, std::span<const Elem> a) {
    return ctx->blocks().block(b).in_delta || a[0] == a[1];
  });
  CHECK(odd.prelevel);
  auto bad = elementary_level(ctx, [&](int b, std::span<const Elem> a) {
    return ctx->blocks().block(b).in_delta || a[0] == Elem{0} || a[1] == Elem{0};
  });
  CHECK_FALSE(bad.prelevel);
  CHECK_FALSE(bad.problem.empty());
}

TEST_CASE("lower bound of the invariant level of E(sigma)") {
  for (const char* ring : {"F2", "F3"}) {
    auto ctx = Context::make("D4", "D3", ring);
    auto lv = levels_of(ctx);
    CHECK(lv.size() >= 5);
    for (const auto& s : lv) CHECK(invariant_level_lower_bound(ctx, e_sigma_generating_set(s)) == s);
  }
}

TEST_CASE("torus and Weyl elements") {
  auto ctx = Context::make("D4", "D3", "F3");
  const auto& L = ctx->algebra();
  auto t = torus_element(L, {Elem{2}, Elem{1}, Elem{1}, Elem{1}});
  CHECK((t * t).is_identity());
  auto w = weyl_element(L, 0);
  CHECK_FALSE(w.is_identity());
  // w^4 = 1 in the adjoint group
  CHECK((w * w * w * w).is_identity());
  for (const auto& s : levels_of(ctx)) {
    LevelAnalysis la(s);
    std::mt19937_64 rng(3);
    for (const auto& g : sample_stabilizer(la, rng, 5)) CHECK(la.stabilizes(g));
  }
}

TEST_CASE("sandwich on small levels") {
  auto ctx = Context::make("D4", "D3", "F2");
  auto checks = verify_sandwich(zero_prelevel(ctx), {});
  REQUIRE(checks.size() == 4);
  for (const auto& c : checks) CHECK_MESSAGE(c.status == Status::pass, c.name);
  CHECK(checks[1].witness["order"] == 20160);

  // a level whose group is too large for the bound reports overflow, not failure
  for (const auto& s : levels_of(ctx)) {
    if (s == zero_prelevel(ctx)) continue;
    auto cs = verify_sandwich(s, {}, {.bound = 1000});
    CHECK(cs[1].status == Status::overflow);
    CHECK(cs[0].status == Status::pass);
    CHECK(cs[2].status == Status::pass);
    break;
  }
  bool tried = false;
  for (const auto& r : enumerate_levels(Context::make("D4", "A2", "F2")).records)
    if (!r.almost_level) {
      CHECK_THROWS_AS(verify_sandwich(r.sigma, {}), Error);
      tried = true;
      break;
    }
  CHECK(tried);
}

TEST_CASE("orthogonal group model") {
  for (auto [n, ring, subs] : {std::tuple{3, "F3", 6}, std::tuple{4, "F2", 5}}) {
    auto R = parse_ring(ring);
    auto cs = so_case_checks(n, R);
    REQUIRE(cs.size() == static_cast<size_t>(subs) + 1);
    for (const auto& c : cs) CHECK_MESSAGE(c.status == Status::pass, c.name << " " << c.witness.dump());
  }
  auto R = parse_ring("F4");
  SOModel M(3, R, Submodule::full(R, 2));
  const auto& d = M.dictionary();
  int a = -1, b = -1;
  for (int r = 0; r < static_cast<int>(d.p.size()); ++r) {
    if (d.p[r] == 1 && d.q[r] == 3 && d.sign[r] > 0) a = r;
    if (d.p[r] == 1 && d.q[r] == -3 && d.sign[r] > 0) b = r;
  }
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  for (Elem x : R->elements())
    for (Elem y : R->elements()) {
      auto g = M.delta_block(x, y);
      CHECK(g == M.root_element(a, x) * M.root_element(b, y));
      CHECK(M.in_so(g));
    }
  CHECK_THROWS_AS(SOModel(3, parse_ring("Z/4"), Submodule::full(parse_ring("Z/4"), 2)), Error);
  CHECK_THROWS_AS(SOModel(2, parse_ring("F3"), Submodule::full(parse_ring("F3"), 2)), Error);
}
