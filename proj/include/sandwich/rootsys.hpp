#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sandwich/finring.hpp"

namespace sandwich {

// An irreducible simply laced root system of type A_n, D_n or E_6,7,8.
// Roots are integer coordinate vectors; E types use doubled Bourbaki
// coordinates, so (a,b) = dot(a,b) / scale.  Root indices list the
// positive roots first and the negatives after them in the same order,
// so the negative of root i is i + N (mod 2N).
class RootSystem {
 public:
  static std::shared_ptr<const RootSystem> build(std::string_view label);

  const std::string& label() const { return label_; }
  char type() const { return type_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(coords_.size()); }
  int num_positive() const { return size() / 2; }
  int dim() const { return dim_; }
  int scale() const { return scale_; }

  std::span<const int> coords(int r) const { return coords_[r]; }
  std::span<const int> simple_coeffs(int r) const { return coeffs_[r]; }
  int height(int r) const;
  bool positive(int r) const { return r < num_positive(); }
  int neg(int r) const { return (r + num_positive()) % size(); }
  int inner(int a, int b) const { return inner_[a * size() + b]; }
  // Index of a + b, or -1.
  int sum(int a, int b) const { return sum_[a * size() + b]; }
  int find(std::span<const int> coords) const;
  int simple(int i) const { return simple_[i]; }
  int reflect(int alpha, int r) const;
  std::string render(int r) const;

 private:
  void finish(std::vector<std::vector<int>> simple);

  std::string label_;
  char type_ = 'A';
  int rank_ = 0;
  int dim_ = 0;
  int scale_ = 1;
  std::vector<std::vector<int>> coords_;
  std::vector<std::vector<int>> coeffs_;
  std::vector<int> simple_;
  std::vector<signed char> inner_;
  std::vector<short> sum_;
  std::map<std::vector<int>, int> index_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

RootSystemPtr build_root_system(std::string_view label);

// A root subsystem, closed under its own reflections.
class Subsystem {
 public:
  Subsystem(RootSystemPtr phi, std::vector<int> roots, std::string label);

  const RootSystem& ambient() const { return *phi_; }
  const RootSystemPtr& ambient_ptr() const { return phi_; }
  const std::vector<int>& roots() const { return roots_; }
  bool contains(int r) const { return member_[r]; }
  int size() const { return static_cast<int>(roots_.size()); }
  const std::string& label() const { return label_; }

 private:
  RootSystemPtr phi_;
  std::vector<int> roots_;
  std::vector<char> member_;
  std::string label_;
};

// The reflection closure of the given roots.
Subsystem subsystem_closure(RootSystemPtr phi, std::vector<int> gens, std::string label = {});
Subsystem subsystem_from_vectors(RootSystemPtr phi, const std::vector<std::vector<int>>& gens);
// Labels: the ambient label (whole system), kA1, Am, Dm, or an explicit
// "gens:(v);(v);..." list of coordinate vectors.
Subsystem subsystem_preset(RootSystemPtr phi, std::string_view label);

struct ConditionResult {
  bool holds = false;
  std::string witness;
  std::vector<int> roots;
};

// No root is orthogonal to the whole subsystem, and no A2 meets the
// subsystem in a single A1 with the rest of the subsystem orthogonal to it.
ConditionResult check_condition_star(const Subsystem& delta);

struct Block {
  std::vector<int> members;
  std::vector<int> signature;  // inner products with the roots of delta, in order
  bool in_delta = false;
};

class BlockPartition {
 public:
  explicit BlockPartition(const Subsystem& delta);

  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(int b) const { return blocks_[b]; }
  int size() const { return static_cast<int>(blocks_.size()); }
  int block_of(int root) const { return block_of_[root]; }
  int position_in_block(int root) const { return position_[root]; }
  // ([b], alpha)
  int pairing(int b, int alpha) const;

 private:
  const RootSystem* phi_;
  std::vector<Block> blocks_;
  std::vector<int> block_of_;
  std::vector<int> position_;
};

BlockPartition compute_blocks(const Subsystem& delta);

// No block of three roots, and every root outside delta admits
// a1, a2 in delta with (g,a1) = (g,a2) = -1 and (a1,a2) = 1.
ConditionResult check_condition_star3(const Subsystem& delta, const BlockPartition& blocks);

struct BlockOrbit {
  std::vector<int> blocks;
  bool in_delta = false;
};

// Orbits of W(delta) on blocks, ordered by least block index.
std::vector<BlockOrbit> weyl_orbits_of_blocks(const Subsystem& delta, const BlockPartition& blocks);

// The four combinatorial properties of blocks under the restriction above;
// returns one line per violation.
std::vector<std::string> check_block_properties(const Subsystem& delta, const BlockPartition& blocks);

// Diagram automorphism as a permutation of the roots.  Supported: A_n
// flip, D_n swap of the two end nodes, D_4 triality, E_6 flip.
struct DiagramAutomorphism {
  std::vector<int> simple_perm;
  std::vector<int> root_perm;
  int order = 1;
};

std::optional<DiagramAutomorphism> diagram_automorphism(const RootSystem& phi, int order);

}  // namespace sandwich
