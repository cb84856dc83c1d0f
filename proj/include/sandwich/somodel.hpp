#pragma once

#include <vector>

#include "sandwich/chevalley.hpp"
#include "sandwich/levels.hpp"
#include "sandwich/report.hpp"
#include "sandwich/submodule.hpp"

namespace sandwich {

// 2n x 2n matrix over R; rows and columns are labelled 1..n, -n..-1.
class SquareMatrix {
 public:
  SquareMatrix(RingPtr ring, int n);  // identity
  int size() const { return n_; }
  const FiniteRing& ring() const { return *ring_; }
  Elem at(int i, int j) const { return a_[i * n_ + j]; }
  void set(int i, int j, Elem v) { a_[i * n_ + j] = v; }
  SquareMatrix operator*(const SquareMatrix& o) const;
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) { return a.a_ == b.a_; }
  std::string render() const;

 private:
  RingPtr ring_;
  int n_;
  std::vector<Elem> a_;
};

// Position of the label i in {1..n, -n..-1}.
inline int so_pos(int n, int i) { return i > 0 ? i - 1 : 2 * n + i; }

// Root elements of so(2n) in the Chevalley basis of D_n: e_r is sent to
// sign[r] (e_{p,q} - e_{-q,-p}) with the bracket matching the structure
// constants, and delta = e1-en, delta' = e1+en carry sign +1.
struct RootDictionary {
  int n = 0;
  std::vector<int> p, q;  // labels
  std::vector<int> sign;
};

RootDictionary so_root_dictionary(const StructureConstants& sc);

class SOModel {
 public:
  SOModel(int n, RingPtr ring, Submodule A);

  int n() const { return n_; }
  const FiniteRing& ring() const { return *ring_; }
  const Submodule& module() const { return A_; }
  const RootDictionary& dictionary() const { return dict_; }
  const ChevalleyAlgebra& algebra() const { return *alg_; }

  // preserves x1x-1 + ... + xnx-n and has trivial Dickson invariant
  bool in_so(const SquareMatrix& g) const;
  // g - e lies in the left ideal {a : (a_{i,n}, a_{i,-n}) in A for all i}
  bool in_coset(const SquareMatrix& g) const;
  bool in_h(const SquareMatrix& g) const { return in_coset(g) && in_so(g); }

  SquareMatrix root_element(int root, Elem xi) const;
  // x_[delta](xi,zeta) in the displayed closed form
  SquareMatrix delta_block(Elem xi, Elem zeta) const;

 private:
  int n_;
  RingPtr ring_;
  Submodule A_;
  std::shared_ptr<ChevalleyAlgebra> alg_;
  RootDictionary dict_;
};

SOModel build_so_model(int n, RingPtr ring, const Submodule& A);
// {(xi,zeta) : x_[delta](xi,zeta) in H_A}
Submodule lev_of_so_model(const SOModel& M);
// Elementary level of H_A in the block structure of D_{n-1} <= D_n.
std::optional<Prelevel> so_elementary_level(const SOModel& M, const ContextPtr& ctx);

// lev(H_A) = A for every submodule A of R^2, plus the generator checks.
std::vector<Check> so_case_checks(int n, RingPtr ring);

}  // namespace sandwich
