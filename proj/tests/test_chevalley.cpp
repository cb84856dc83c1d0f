#include <doctest.h>

#include <map>
#include <random>

#include "sandwich/chevalley.hpp"

using namespace sandwich;

namespace {

using IntVec = std::map<int, long>;

IntVec ibracket(const StructureConstants& sc, const IntVec& u, const IntVec& v) {
  IntVec out;
  for (auto [i, a] : u)
    for (auto [j, b] : v)
      for (const Term& t : sc.bracket(i, j)) out[t.index] += a * b * t.coef;
  std::erase_if(out, [](const auto& p) { return p.second == 0; });
  return out;
}

IntVec ibasis(int i) { return {{i, 1}}; }

bool jacobi(const StructureConstants& sc, int a, int b, int c) {
  IntVec s;
  for (auto [x, y, z] : {std::tuple{a, b, c}, std::tuple{b, c, a}, std::tuple{c, a, b}})
    for (auto [k, v] : ibracket(sc, ibasis(x), ibracket(sc, ibasis(y), ibasis(z)))) s[k] += v;
  for (auto [k, v] : s)
    if (v) return false;
  return true;
}

RingVector random_vector(const ChevalleyAlgebra& L, std::mt19937_64& rng) {
  RingVector v(L.dim());
  for (auto& x : v) x = Elem{static_cast<std::uint16_t>(rng() % L.ring().order())};
  return v;
}

Elem random_elem(const FiniteRing& R, std::mt19937_64& rng) {
  return Elem{static_cast<std::uint16_t>(rng() % R.order())};
}

Word random_word(const ChevalleyAlgebra& L, std::mt19937_64& rng, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.push_back({static_cast<int>(rng() % L.phi().size()), random_elem(L.ring(), rng)});
  return w;
}

// exp(xi ad e_a) over Z with the exact halving of the square term, reduced into R.
AdjointElement exp_oracle(const ChevalleyAlgebra& L, int a, long xi) {
  const int n = L.dim();
  std::vector<long> A(n * n, 0), A2(n * n, 0);
  for (int j = 0; j < n; ++j)
    for (const Term& t : L.sc().bracket(a, j)) A[t.index * n + j] += t.coef;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) A2[i * n + j] += A[i * n + k] * A[k * n + j];
  AdjointElement g = L.identity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      REQUIRE(A2[i * n + j] % 2 == 0);
      long v = (i == j) + xi * A[i * n + j] + xi * xi * (A2[i * n + j] / 2);
      g.set(i, j, L.ring().from_int(v));
    }
  return g;
}

}  // namespace

TEST_CASE("Jacobi identity and sign symmetries") {
  for (std::string l : {"A2", "A3", "D4"}) {
    CAPTURE(l);
    auto sc = build_structure_constants(build_root_system(l));
    const int d = sc->dim();
    int bad = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) bad += !jacobi(*sc, a, b, c);
    CHECK(bad == 0);
  }
  for (std::string l : {"E6", "E7", "E8"}) {
    CAPTURE(l);
    auto sc = build_structure_constants(build_root_system(l));
    std::mt19937_64 rng(11);
    int bad = 0;
    for (int k = 0; k < 3000; ++k)
      bad += !jacobi(*sc, rng() % sc->dim(), rng() % sc->dim(), rng() % sc->dim());
    CHECK(bad == 0);
  }
  for (std::string l : {"A3", "D4", "E6"}) {
    auto sc = build_structure_constants(build_root_system(l));
    const auto& P = sc->phi();
    for (int a = 0; a < P.size(); ++a)
      for (int b = 0; b < P.size(); ++b) {
        CHECK(sc->n(a, b) == -sc->n(b, a));
        CHECK(sc->n(P.neg(a), P.neg(b)) == -sc->n(a, b));
        if (P.sum(a, b) >= 0) CHECK(std::abs(sc->n(a, b)) == 1);
      }
  }
}

TEST_CASE("basis brackets") {
  auto phi = build_root_system("A2");
  auto sc = build_structure_constants(phi);
  auto L = ChevalleyAlgebra(sc, parse_ring("Z/5"));
  const auto& R = L.ring();
  int a = phi->simple(0), b = phi->simple(1);
  auto ab = L.bracket(L.e(a, R.one()), L.e(b, R.one()));
  auto ba = L.bracket(L.e(b, R.one()), L.e(a, R.one()));
  int s = phi->sum(a, b);
  CHECK((ab[s] == R.one() || ab[s] == R.neg(R.one())));
  CHECK(ba[s] == R.neg(ab[s]));
  // [e_a, e_-a] = h_a, [h_a, e_b] = (b,a) e_b
  for (int r = 0; r < phi->size(); ++r) {
    auto h = L.bracket(L.e(r, R.one()), L.e(phi->neg(r), R.one()));
    for (int i = 0; i < phi->rank(); ++i) CHECK(h[sc->cartan(i)] == R.from_int(phi->simple_coeffs(r)[i]));
    for (int t = 0; t < phi->size(); ++t) {
      auto v = L.bracket(h, L.e(t, R.one()));
      CHECK(v == L.e(t, R.from_int(phi->inner(t, r))));
    }
  }
  std::mt19937_64 rng(3);
  auto v = random_vector(L, rng);
  CHECK(L.bracket(v, v) == L.zero());
  CHECK_THROWS_AS(L.bracket(v, RingVector(3, R.zero())), Error);
}

TEST_CASE("root unipotents") {
  for (std::string l : {"A3", "D4"})
    for (const char* rs : {"Z/4", "F3", "F4"}) {
      CAPTURE(l);
      CAPTURE(rs);
      auto L = ChevalleyAlgebra(build_structure_constants(build_root_system(l)), parse_ring(rs));
      const auto& R = L.ring();
      const auto& P = L.phi();
      for (int a = 0; a < P.size(); ++a) {
        CHECK(L.unipotent(a, R.zero()).is_identity());
        for (long xi = 0; xi < 4; ++xi) CHECK(L.unipotent(a, R.from_int(xi)) == exp_oracle(L, a, xi));
        for (Elem x : R.elements()) {
          auto g = L.unipotent(a, x);
          CHECK(g.apply(L.e(P.neg(a), R.one()))[a] == R.neg(R.mul(x, x)));
          CHECK((g * L.unipotent(a, R.neg(x))).is_identity());
          for (Elem y : R.elements()) CHECK(g * L.unipotent(a, y) == L.unipotent(a, R.add(x, y)));
        }
      }
    }
}

TEST_CASE("adjoint action preserves the bracket") {
  auto L = ChevalleyAlgebra(build_structure_constants(build_root_system("D4")), parse_ring("Z/4"));
  const auto& R = L.ring();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 6; ++k) {
    AdjointElement g = word_matrix(L, random_word(L, rng, 3));
    CHECK(g.det() == R.one());
    for (int i = 0; i < L.dim(); ++i)
      for (int j = 0; j < L.dim(); ++j) {
        auto u = L.basis(i, R.one()), v = L.basis(j, R.one());
        CHECK(g.apply(L.bracket(u, v)) == L.bracket(g.apply(u), g.apply(v)));
      }
  }
}

TEST_CASE("determinant") {
  auto L = ChevalleyAlgebra(build_structure_constants(build_root_system("A2")), parse_ring("Z/7"));
  const auto& R = L.ring();
  AdjointElement d = L.identity();
  d.set(0, 0, R.from_int(3));
  d.set(1, 1, R.from_int(5));
  d.set(0, 1, R.from_int(2));
  CHECK(d.det() == R.from_int(15));
  AdjointElement s = L.identity();
  s.set(0, 0, R.zero());
  s.set(1, 1, R.zero());
  s.set(0, 1, R.one());
  s.set(1, 0, R.one());
  CHECK(s.det() == R.from_int(-1));
}

TEST_CASE("commutator formula") {
  for (std::string l : {"A2", "A3", "D4"})
    for (const char* rs : {"F2", "F3", "Z/4", "F4"}) {
      CAPTURE(l);
      CAPTURE(rs);
      auto L = ChevalleyAlgebra(build_structure_constants(build_root_system(l)), parse_ring(rs));
      const auto& R = L.ring();
      const auto& P = L.phi();
      int bad = 0;
      for (int a = 0; a < P.size(); ++a)
        for (int b = 0; b < P.size(); ++b) {
          if (b == a || b == P.neg(a)) continue;
          for (Elem x : R.elements())
            for (Elem y : R.elements()) {
              auto c = L.unipotent(a, x) * L.unipotent(b, y) * L.unipotent(a, R.neg(x)) * L.unipotent(b, R.neg(y));
              int s = P.sum(a, b);
              auto expect = s >= 0 ? L.unipotent(s, R.times(R.mul(x, y), L.sc().n(a, b))) : L.identity();
              bad += !(c == expect);
            }
        }
      CHECK(bad == 0);
    }
}

TEST_CASE("block unipotents and T-operators") {
  auto phi = build_root_system("D4");
  auto sc = build_structure_constants(phi);
  auto L = ChevalleyAlgebra(sc, parse_ring("F3"));
  const auto& R = L.ring();
  for (const char* sub : {"A2", "D3"}) {
    auto delta = subsystem_preset(phi, sub);
    BlockPartition bp(delta);
    for (int b = 0; b < bp.size(); ++b) {
      const auto& blk = bp.block(b);
      RingVector a(blk.members.size());
      for (size_t i = 0; i < a.size(); ++i) a[i] = R.from_int(i + 1);
      auto g1 = L.block_unipotent(blk, a);
      AdjointElement g2 = L.identity();
      for (size_t i = a.size(); i-- > 0;) g2 = g2 * L.unipotent(blk.members[i], a[i]);
      CHECK(g1 == g2);
      CHECK(L.block_unipotent(blk, RingVector(a.size(), R.zero())).is_identity());
      for (int alpha : delta.roots()) {
        if (bp.pairing(b, alpha) != -1) {
          CHECK_THROWS_AS(t_operator(*sc, bp, b, alpha), Error);
          continue;
        }
        auto t = t_operator(*sc, bp, b, alpha);
        auto back = t_operator(*sc, bp, t.to, phi->neg(alpha));
        CHECK(back.to == b);
        CHECK(back.apply(R, t.apply(R, a)) == a);
        // compare with ad e_alpha on the block basis
        RingVector x = L.zero();
        for (size_t i = 0; i < a.size(); ++i) x[blk.members[i]] = a[i];
        auto y = L.bracket(L.e(alpha, R.one()), x);
        auto ta = t.apply(R, a);
        const auto& target = bp.block(t.to);
        for (size_t i = 0; i < target.members.size(); ++i) CHECK(y[target.members[i]] == ta[i]);
      }
    }
  }
}

TEST_CASE("tandem identities") {
  auto L = ChevalleyAlgebra(build_structure_constants(build_root_system("D4")), parse_ring("Z/4"));
  const auto& R = L.ring();
  const auto& P = L.phi();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    int a = rng() % P.size();
    auto t = make_tandem(L, random_word(L, rng, 4), a, random_elem(R, rng));
    // g e_b = e_b + [l,e_b] - l^{-b} l
    for (int b = 0; b < P.size(); ++b) {
      auto eb = L.e(b, R.one());
      auto rhs = L.sub(L.add(eb, L.bracket(t.l, eb)), L.scale(t.l[P.neg(b)], t.l));
      CHECK(t.g.apply(eb) == rhs);
    }
    auto v = random_vector(L, rng);
    auto hv = t.h_inv.apply(v);
    auto rhs = L.sub(L.add(v, L.bracket(t.l, v)), L.scale(R.mul(t.xi, hv[P.neg(a)]), t.l));
    CHECK(t.g.apply(v) == rhs);
  }
  CHECK(make_tandem(L, {}, 0, R.one()).g == L.unipotent(0, R.one()));
  CHECK_THROWS_AS(make_tandem(L, {{99, R.one()}}, 0, R.one()), Error);
  CHECK_THROWS_AS(make_bitandem(L, {}, 0, 2, R.one(), R.one()), Error);
}
