#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sandwich/finring.hpp"
#include "sandwich/rootsys.hpp"

namespace sandwich {

struct Term {
  int index;
  int coef;
};

// Chevalley basis e_a (a a root index) followed by h_1..h_r (simple
// coroots).  Signs come from the bimultiplicative cocycle eps with
// eps(a_i,a_i) = -1, eps(a_i,a_j) = (-1)^(a_i,a_j) for i < j and 1 for
// i > j, via N_{a,b} = s(a) s(b) s(a+b) eps(a,b), s = +1 on positive roots.
class StructureConstants {
 public:
  explicit StructureConstants(RootSystemPtr phi);

  const RootSystem& phi() const { return *phi_; }
  const RootSystemPtr& phi_ptr() const { return phi_; }
  int dim() const { return phi_->size() + phi_->rank(); }
  int cartan(int i) const { return phi_->size() + i; }
  int n(int a, int b) const { return n_[a * phi_->size() + b]; }
  int epsilon(int a, int b) const;
  // h_a over the simple coroots
  std::span<const int> coroot(int a) const { return phi_->simple_coeffs(a); }
  std::span<const Term> bracket(int i, int j) const { return table_[i * dim() + j]; }

 private:
  RootSystemPtr phi_;
  std::vector<signed char> n_;
  std::vector<std::vector<Term>> table_;
};

using StructurePtr = std::shared_ptr<const StructureConstants>;

StructurePtr build_structure_constants(RootSystemPtr phi);

// Square matrix over R acting on coefficient columns of L(Phi,R).
class AdjointElement {
 public:
  AdjointElement() = default;
  AdjointElement(RingPtr ring, int n);  // identity

  int dim() const { return n_; }
  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  Elem at(int i, int j) const { return a_[i * n_ + j]; }
  void set(int i, int j, Elem v) { a_[i * n_ + j] = v; }

  AdjointElement operator*(const AdjointElement& o) const;
  RingVector apply(std::span<const Elem> v) const;
  RingVector column(int j) const;
  bool is_identity() const;
  Elem det() const;
  friend bool operator==(const AdjointElement& a, const AdjointElement& b) { return a.a_ == b.a_; }

  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

 private:
  RingPtr ring_;
  int n_ = 0;
  std::vector<Elem> a_;
  std::string provenance_;
};

// L(Phi,R) with its Chevalley basis.
class ChevalleyAlgebra {
 public:
  ChevalleyAlgebra(StructurePtr sc, RingPtr ring);

  const StructureConstants& sc() const { return *sc_; }
  const StructurePtr& sc_ptr() const { return sc_; }
  const RootSystem& phi() const { return sc_->phi(); }
  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  int dim() const { return sc_->dim(); }

  RingVector zero() const { return RingVector(dim(), ring_->zero()); }
  RingVector basis(int i, Elem c) const;
  RingVector e(int root, Elem c) const { return basis(root, c); }
  RingVector bracket(std::span<const Elem> u, std::span<const Elem> v) const;
  RingVector add(std::span<const Elem> u, std::span<const Elem> v) const;
  RingVector sub(std::span<const Elem> u, std::span<const Elem> v) const;
  RingVector scale(Elem c, std::span<const Elem> v) const;

  AdjointElement identity() const { return AdjointElement(ring_, dim()); }
  AdjointElement unipotent(int root, Elem xi) const;
  // product of unipotents over the members of a block of orthogonal roots
  AdjointElement block_unipotent(const Block& b, std::span<const Elem> a) const;

  std::string render(std::span<const Elem> v) const;

 private:
  StructurePtr sc_;
  RingPtr ring_;
};

struct WordFactor {
  int root;
  Elem xi;
};
using Word = std::vector<WordFactor>;

AdjointElement word_matrix(const ChevalleyAlgebra& L, const Word& w);
Word inverse_word(const ChevalleyAlgebra& L, const Word& w);

struct Tandem {
  AdjointElement g;
  RingVector l;
  AdjointElement h, h_inv;
  int alpha = -1;
  Elem xi;
};

Tandem make_tandem(const ChevalleyAlgebra& L, const Word& h, int alpha, Elem xi);

// Pair (h x_a1(t xi) x_a2(t zeta) h^-1, h(t xi e_a1 + t zeta e_a2)); the
// roots are orthogonal for a bitandem and at inner product 1 for an
// A2-tandem.
struct PairTandem {
  AdjointElement h, h_inv;
  int a1 = -1, a2 = -1;
  Elem xi, zeta;

  AdjointElement g(const ChevalleyAlgebra& L, Elem t) const;
  RingVector l(const ChevalleyAlgebra& L, Elem t) const;
};

PairTandem make_bitandem(const ChevalleyAlgebra& L, const Word& h, int a1, int a2, Elem xi, Elem zeta);
PairTandem make_a2_tandem(const ChevalleyAlgebra& L, const Word& h, int a1, int a2, Elem xi, Elem zeta);
// (g x_a1(l^{-a2}) x_a2(-l^{-a1}) g^-1, g(l^{-a2} e_a1 - l^{-a1} e_a2)) for a tandem (g,l).
PairTandem make_special(const ChevalleyAlgebra& L, const Tandem& t, int a1, int a2);

// x -> [e_a, x] restricted to M_[b] -> M_[b]+a: member i of b goes to
// position perm[i] of the target block with sign sign[i].
struct TOperator {
  int from = -1, to = -1, alpha = -1;
  std::vector<int> perm;
  std::vector<int> sign;

  RingVector apply(const FiniteRing& r, std::span<const Elem> a) const;
};

TOperator t_operator(const StructureConstants& sc, const BlockPartition& blocks, int b, int alpha);

}  // namespace sandwich
