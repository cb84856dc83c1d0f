#include <doctest.h>

#include <random>

#include "sandwich/oracles.hpp"
#include "sandwich/submodule.hpp"

using namespace sandwich;

namespace {

const char* kRings[] = {"Z/2", "Z/3", "Z/4", "Z/6", "Z/9", "F4", "F8", "F9",
                        "Z/2*Z/3", "Z/2[x]/(x^2)", "Z/4[x]/(x^2+x+1)", "(Z/2*Z/2)[x]/(x^2+1)"};

std::vector<RingVector> all_vectors(const FiniteRing& r, int k) {
  std::vector<RingVector> all{RingVector{}};
  for (int i = 0; i < k; ++i) {
    std::vector<RingVector> next;
    for (const auto& v : all)
      for (Elem e : r.elements()) {
        auto w = v;
        w.push_back(e);
        next.push_back(w);
      }
    all = next;
  }
  return all;
}

}  // namespace

TEST_CASE("ring parsing and orders") {
  CHECK(parse_ring("Z/4")->order() == 4);
  CHECK(parse_ring("F4")->order() == 4);
  CHECK(parse_ring("F9")->order() == 9);
  CHECK(parse_ring("F8")->order() == 8);
  CHECK(parse_ring("Z/2*Z/3")->order() == 6);
  CHECK(parse_ring("Z/2*Z/3")->char_exponent() == 6);
  CHECK(parse_ring("(Z/2[x]/(x^2))*Z/3")->order() == 12);
  CHECK(parse_ring("Z/4[x]/(x^2+x+1)")->char_exponent() == 4);
  CHECK(parse_ring(" Z/5 ")->spec() == "Z/5");
  CHECK(parse_ring("F7")->order() == 7);
}

TEST_CASE("ring parse errors") {
  CHECK_THROWS_WITH_AS(parse_ring("Z/1"), doctest::Contains("zero ring"), Error);
  CHECK_THROWS_WITH_AS(parse_ring("Z/2[x]/(2x^2+1)"), doctest::Contains("not monic"), Error);
  CHECK_THROWS_WITH_AS(parse_ring("Z/"), doctest::Contains("syntax"), Error);
  CHECK_THROWS_WITH_AS(parse_ring("F6"), doctest::Contains("syntax"), Error);
  CHECK_THROWS_WITH_AS(parse_ring("Z/3 Z/3"), doctest::Contains("syntax"), Error);
  CHECK_THROWS_AS(parse_ring("Z/2000"), Error);
}

TEST_CASE("ring axioms hold on every shipped ring") {
  for (const char* s : kRings) {
    CAPTURE(s);
    auto r = parse_ring(s);
    CHECK_FALSE(r->check_axioms().has_value());
  }
}

TEST_CASE("fields") {
  CHECK(parse_ring("F4")->is_field());
  CHECK(parse_ring("F8")->is_field());
  CHECK(parse_ring("F9")->is_field());
  CHECK_FALSE(parse_ring("Z/4")->is_field());
  CHECK_FALSE(parse_ring("Z/2*Z/3")->is_field());
  auto f4 = parse_ring("F4");
  // x^2 = x + 1 in F4, x = (0,1)
  Elem x = f4->from_coords(std::vector<int>{0, 1});
  CHECK(f4->mul(x, x) == f4->add(x, f4->one()));
}

TEST_CASE("canonical forms") {
  auto z4 = parse_ring("Z/4");
  auto E = [&](int a) { return z4->from_int(a); };
  std::vector<RingVector> g1{{E(2), E(0)}, {E(0), E(2)}};
  std::vector<RingVector> g2{{E(2), E(2)}, {E(2), E(0)}, {E(0), E(0)}};
  CHECK(submodule_span(z4, 2, g1) == submodule_span(z4, 2, g2));
  CHECK(submodule_span(z4, 2, g1).count() == 4);
  std::vector<RingVector> g3{{E(1), E(2)}};
  auto m = submodule_span(z4, 2, g3);
  CHECK(m.count() == 4);
  CHECK(m.contains(RingVector{E(2), E(0)}));
  CHECK_FALSE(m.contains(RingVector{E(0), E(2)}));
}

TEST_CASE("spans agree with explicit closure") {
  std::mt19937_64 rng(7);
  for (const char* s : {"Z/4", "Z/6", "Z/9", "F4", "Z/2*Z/3", "Z/2[x]/(x^2)"}) {
    CAPTURE(s);
    auto r = parse_ring(s);
    for (int k = 1; k <= 3; ++k) {
      auto all = all_vectors(*r, k);
      for (int trial = 0; trial < 8; ++trial) {
        std::vector<RingVector> gens;
        int ng = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < ng; ++i) gens.push_back(all[rng() % all.size()]);
        auto m = submodule_span(r, k, gens);
        auto ref = oracle::span_elements(*r, k, gens);
        CHECK(m.count() == ref.size());
        for (const auto& v : all) CHECK(m.contains(v) == (ref.count(v) > 0));
        auto el = m.elements();
        CHECK(std::set<RingVector>(el.begin(), el.end()) == ref);
      }
    }
  }
}

TEST_CASE("submodule counts") {
  CHECK(enumerate_submodules(2, parse_ring("F2")).size() == 5);
  CHECK(enumerate_submodules(2, parse_ring("F3")).size() == 6);
  CHECK(enumerate_ideals(parse_ring("Z/4")).size() == 3);
  CHECK(enumerate_ideals(parse_ring("Z/6")).size() == 4);
  for (const char* s : {"F2", "F3", "Z/4", "Z/6", "F4", "Z/2[x]/(x^2)"}) {
    CAPTURE(s);
    auto r = parse_ring(s);
    for (int k = 1; k <= 2; ++k) {
      auto subs = enumerate_submodules(k, r);
      CHECK(static_cast<int>(subs.size()) == oracle::count_submodules(*r, k));
      for (size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1] < subs[i]);
    }
  }
  CHECK_THROWS_AS(enumerate_submodules(6, parse_ring("Z/9")), Error);
}

TEST_CASE("residue field F2 decision agrees with homomorphism search") {
  for (const char* s : kRings) {
    CAPTURE(s);
    auto r = parse_ring(s);
    CHECK(has_residue_field_f2(*r) == oracle::has_f2_homomorphism(*r));
  }
  CHECK(has_residue_field_f2(*parse_ring("F2")));
  CHECK(has_residue_field_f2(*parse_ring("Z/4")));
  CHECK(has_residue_field_f2(*parse_ring("Z/6")));
  CHECK_FALSE(has_residue_field_f2(*parse_ring("F4")));
  CHECK_FALSE(has_residue_field_f2(*parse_ring("Z/9")));
}

TEST_CASE("square term spans") {
  for (const char* s : {"Z/3", "F4", "Z/9", "F9", "Z/5"}) {
    CAPTURE(s);
    auto r = parse_ring(s);
    REQUIRE_FALSE(has_residue_field_f2(*r));
    for (int k = 1; k <= 2; ++k) {
      auto all = all_vectors(*r, k);
      for (const auto& x : all)
        for (const auto& y : all) CHECK(square_term_span(r, x, y).contains(x));
    }
  }
  auto f2 = parse_ring("F2");
  RingVector x{f2->one(), f2->zero()}, y{f2->zero(), f2->one()};
  CHECK_FALSE(square_term_span(f2, x, y).contains(x));
}

TEST_CASE("ideal arithmetic") {
  auto z4 = parse_ring("Z/4");
  auto ideals = enumerate_ideals(z4);
  const auto& two = ideals[1];
  CHECK(two.count() == 2);
  CHECK(ideal_product(two, two).is_zero());
  CHECK(ideal_times(ideals[2], 2) == two);
  CHECK(squares_contained(ideals[2], ideals[2]));
  CHECK_FALSE(squares_contained(ideals[2], two));
}
