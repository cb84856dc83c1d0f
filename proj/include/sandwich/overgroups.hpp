#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "sandwich/chevalley.hpp"
#include "sandwich/levels.hpp"
#include "sandwich/report.hpp"

namespace sandwich {

// unipotent(a, xi) for a in delta and xi != 0
std::vector<AdjointElement> elementary_subsystem_generators(const Subsystem& delta, const ChevalleyAlgebra& L);

// Elements of a finite matrix group, found by breadth-first closure under
// right multiplication by the generators.  Matrices over F2 are stored as
// bit columns, everything else as one byte per entry.
class SubgroupEnumeration {
 public:
  SubgroupEnumeration(RingPtr ring, int n);

  std::uint64_t size() const { return count_; }
  bool overflow() const { return overflow_; }
  bool contains(const AdjointElement& g) const;
  AdjointElement element(std::uint64_t i) const;

 private:
  friend SubgroupEnumeration enumerate_subgroup(const std::vector<AdjointElement>& gens, std::uint64_t bound);

  struct Sparse {
    std::vector<std::uint32_t> k, j;
    std::vector<Elem> c;
  };

  void pack(const AdjointElement& g, std::uint8_t* out) const;
  void multiply(const std::uint8_t* m, const Sparse& s, std::uint8_t* out) const;
  std::uint64_t hash(const std::uint8_t* p) const;
  // index of the stored element equal to p, or -1
  std::int64_t find(const std::uint8_t* p, std::uint64_t h) const;
  void insert(std::uint64_t index, std::uint64_t h);
  void grow();

  RingPtr ring_;
  int n_;
  bool f2_;
  int word_;  // bytes per column in the F2 layout
  std::size_t stride_;
  std::vector<std::uint8_t> arena_;
  std::vector<std::uint32_t> table_;  // index + 1, 0 = empty
  std::uint64_t count_ = 0;
  bool overflow_ = false;
};

constexpr std::uint64_t kDefaultEnumerationBound = 2000000;

// Overflow is reported through overflow(), never thrown.
SubgroupEnumeration enumerate_subgroup(const std::vector<AdjointElement>& gens,
                                       std::uint64_t bound = kDefaultEnumerationBound);

// a in M_[b] -> is x_[b](a) in H
using BlockMembership = std::function<bool(int block, std::span<const Elem> a)>;

struct ElementaryLevel {
  std::optional<Prelevel> prelevel;
  std::string problem;  // set when some component is not a submodule or the family is not a prelevel
};

ElementaryLevel elementary_level(const ContextPtr& ctx, const BlockMembership& member);
ElementaryLevel elementary_level(const ContextPtr& ctx, const SubgroupEnumeration& H);

// lev of the smallest subalgebra containing L'(Delta,R) and stable under
// Ad of the generators; every element of it is a sum of Lie parts of
// tandems with group part in H, so the result is contained in invlev(H).
// rounds bounds the alternation of stabilisation and bracket closure.
Prelevel invariant_level_lower_bound(const ContextPtr& ctx, const std::vector<AdjointElement>& gens, int rounds = 64);

// Adjoint torus element h(chi): e_b -> chi(b) e_b for the character sending
// the simple root i to t[i].
AdjointElement torus_element(const ChevalleyAlgebra& L, const std::vector<Elem>& t);
// w_a = x_a(1) x_{-a}(-1) x_a(1)
AdjointElement weyl_element(const ChevalleyAlgebra& L, int root);

// Random short words in root unipotents, torus elements and Weyl elements
// that lie in S(sigma).
std::vector<AdjointElement> sample_stabilizer(const LevelAnalysis& la, std::mt19937_64& rng, int wanted,
                                              int attempts = 400);

struct SandwichOptions {
  std::uint64_t bound = kDefaultEnumerationBound;
  bool expect_equal_lower_bound = true;
};

// Checks for H = <E(sigma), extra>: generators in S(sigma), ellev(H) = sigma
// when H can be enumerated, and the invariant-level lower bound.
std::vector<Check> verify_sandwich(const Prelevel& sigma, const std::vector<AdjointElement>& extra,
                                   const SandwichOptions& opt = {});

Json prelevel_json(const Prelevel& sigma);

}  // namespace sandwich
