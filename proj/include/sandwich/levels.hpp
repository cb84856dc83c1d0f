#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sandwich/chevalley.hpp"
#include "sandwich/rootsys.hpp"
#include "sandwich/submodule.hpp"

namespace sandwich {

// Everything fixed by a choice of (Phi, Delta, R): blocks, their orbits,
// the T-moves between blocks and the algebra L(Phi,R).
class Context {
 public:
  static std::shared_ptr<const Context> make(const Subsystem& delta, RingPtr ring);
  static std::shared_ptr<const Context> make(const std::string& system, const std::string& subsystem,
                                             const std::string& ring);

  const RootSystem& phi() const { return delta_.ambient(); }
  const Subsystem& delta() const { return delta_; }
  const BlockPartition& blocks() const { return blocks_; }
  const std::vector<BlockOrbit>& orbits() const { return orbits_; }
  int orbit_of(int block) const { return orbit_of_[block]; }
  const ChevalleyAlgebra& algebra() const { return algebra_; }
  const StructureConstants& sc() const { return algebra_.sc(); }
  const FiniteRing& ring() const { return algebra_.ring(); }
  const RingPtr& ring_ptr() const { return algebra_.ring_ptr(); }
  int dim() const { return algebra_.dim(); }

  // All (block, alpha) with alpha in Delta and ([b],alpha) = -1.
  const std::vector<TOperator>& moves() const { return moves_; }
  const std::vector<int>& moves_from(int block) const { return moves_from_[block]; }
  std::vector<int> non_delta_orbits() const;

  // Embed a block component into L(Phi,R) and back.
  RingVector embed(int block, std::span<const Elem> a) const;
  RingVector component(int block, std::span<const Elem> v) const;

 private:
  Context(const Subsystem& delta, RingPtr ring);

  Subsystem delta_;
  BlockPartition blocks_;
  std::vector<BlockOrbit> orbits_;
  std::vector<int> orbit_of_;
  ChevalleyAlgebra algebra_;
  std::vector<TOperator> moves_;
  std::vector<std::vector<int>> moves_from_;
};

using ContextPtr = std::shared_ptr<const Context>;

Submodule apply_t(const FiniteRing& r, const TOperator& t, const Submodule& m);

// A submodule of M_[b] for every block b.
class Prelevel {
 public:
  Prelevel(ContextPtr ctx, std::vector<Submodule> comps);

  const Context& context() const { return *ctx_; }
  const ContextPtr& context_ptr() const { return ctx_; }
  const Submodule& operator[](int block) const { return comps_[block]; }
  const std::vector<Submodule>& components() const { return comps_; }
  bool subset_of(const Prelevel& o) const;
  friend bool operator==(const Prelevel& a, const Prelevel& b) { return a.comps_ == b.comps_; }

 private:
  ContextPtr ctx_;
  std::vector<Submodule> comps_;
};

struct Inconsistency {
  int block = -1, alpha = -1, target = -1;
  std::string describe(const Context& ctx) const;
};

// Null when the collection satisfies both prelevel conditions.
std::optional<Inconsistency> check_prelevel(const Context& ctx, const std::vector<Submodule>& comps);

struct PropagationResult {
  std::optional<Prelevel> prelevel;
  std::optional<Inconsistency> witness;
};

// Seeds are keyed by orbit index and live on the orbit's least block.
PropagationResult prelevel_from_orbit_seeds(const ContextPtr& ctx, const std::map<int, Submodule>& seeds);
Prelevel full_prelevel(const ContextPtr& ctx);
Prelevel zero_prelevel(const ContextPtr& ctx);

// An R-subalgebra of L(Phi,R).
class Subalgebra {
 public:
  Subalgebra(ContextPtr ctx, Submodule module);

  const Context& context() const { return *ctx_; }
  const ContextPtr& context_ptr() const { return ctx_; }
  const Submodule& module() const { return module_; }
  bool contains(std::span<const Elem> v) const { return module_.contains(v); }
  bool subset_of(const Subalgebra& o) const { return module_.subset_of(o.module_); }
  std::vector<RingVector> generators() const { return module_.generators(); }
  bool is_bracket_closed() const;
  friend bool operator==(const Subalgebra& a, const Subalgebra& b) { return a.module_ == b.module_; }

 private:
  ContextPtr ctx_;
  Submodule module_;
};

Subalgebra lie_closure(const ContextPtr& ctx, const std::vector<RingVector>& gens);
// L'(Delta,R), generated by e_a for a in Delta.
Subalgebra subsystem_algebra(const ContextPtr& ctx);
Prelevel lev_of_algebra(const Subalgebra& L);
Submodule toric_part(const Subalgebra& L);
bool graded_decomposition_check(const Subalgebra& L);
// {v : [v,g] in L for every g in gens}; gens must generate L as an algebra.
Subalgebra normalizer(const Subalgebra& L, const std::vector<RingVector>& gens);

std::vector<RingVector> l_min_generators(const Prelevel& sigma);
Subalgebra l_min(const Prelevel& sigma);
Subalgebra l_max(const Prelevel& sigma);
bool is_almost_level(const Prelevel& sigma);

// One block unipotent per block and nonzero element of its component.
std::vector<AdjointElement> e_sigma_generators(const Prelevel& sigma);
// The same group from additive generators of each component only.
std::vector<AdjointElement> e_sigma_generating_set(const Prelevel& sigma);

// Caches L_min and L_max of an almost level.
class LevelAnalysis {
 public:
  explicit LevelAnalysis(Prelevel sigma);

  const Prelevel& sigma() const { return sigma_; }
  bool almost_level() const { return almost_; }
  const Subalgebra& lmin() const { return *lmin_; }
  const Subalgebra& lmax() const;
  // g in S(sigma), the stabiliser of L_max(sigma)
  bool stabilizes(const AdjointElement& g) const;
  bool is_level() const;
  bool uniqueness_scan() const;

 private:
  Prelevel sigma_;
  std::optional<Subalgebra> lmin_;
  std::optional<Subalgebra> lmax_;
  bool almost_ = false;
};

bool s_membership(const AdjointElement& g, const Prelevel& sigma);
bool is_level(const Prelevel& sigma);
bool level_uniqueness_scan(const Prelevel& sigma);

struct LevelRecord {
  Prelevel sigma;
  std::map<int, Submodule> seeds;
  bool almost_level = false;
  bool level = false;
};

struct LevelEnumeration {
  std::vector<LevelRecord> records;
  int inconsistent = 0;
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

LevelEnumeration enumerate_levels(const ContextPtr& ctx, std::uint64_t bound = 10000);

// Image of a prelevel under Ad of the Weyl element w_a, a in Delta.
Prelevel reflect_prelevel(const Prelevel& sigma, int alpha);

}  // namespace sandwich
