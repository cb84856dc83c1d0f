#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sandwich/finring.hpp"
#include "sandwich/howell.hpp"

namespace sandwich {

// Order of a finite abelian group as a prime factorisation; exact even
// when the number itself would not fit in 64 bits.
class Cardinality {
 public:
  Cardinality() = default;
  static Cardinality of(std::uint64_t n);

  Cardinality& operator*=(const Cardinality& o);
  friend Cardinality operator*(Cardinality a, const Cardinality& b) { return a *= b; }
  friend bool operator==(const Cardinality&, const Cardinality&) = default;

  double log2() const;
  std::string str() const;

 private:
  std::map<std::uint64_t, int> exps_;
};

// An R-submodule of R^k in canonical form: the Howell form of its
// additive group in scaled coordinates (coordinate i of an element with
// modulus n_i is embedded in Z/m as x * m/n_i, m the characteristic exponent).
class Submodule {
 public:
  Submodule(RingPtr ring, int rank);

  static Submodule span(RingPtr ring, int rank, std::span<const RingVector> gens);
  static Submodule full(RingPtr ring, int rank);
  static Submodule from_form(RingPtr ring, int rank, howell::Form form);

  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  int rank() const { return rank_; }
  const howell::Form& form() const { return form_; }

  bool contains(std::span<const Elem> v) const;
  bool subset_of(const Submodule& o) const;
  bool is_zero() const { return form_.rows.empty(); }
  bool is_full() const;
  Cardinality size() const;
  std::uint64_t count() const;  // throws if too large
  // Canonical rows as ring vectors; they generate the module additively.
  std::vector<RingVector> generators() const;
  std::vector<RingVector> elements(std::uint64_t bound = 1u << 20) const;

  Submodule operator+(const Submodule& o) const;
  Submodule with(std::span<const RingVector> more) const;
  Submodule scaled(Elem r) const;

  std::string render() const;

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.ring_->spec() == b.ring_->spec() && a.rank_ == b.rank_ && a.form_ == b.form_;
  }
  friend bool operator<(const Submodule& a, const Submodule& b);

 private:
  RingPtr ring_;
  int rank_;
  howell::Form form_;
};

// Conversion between ring vectors and scaled Z/m rows.
howell::Row to_scaled(const FiniteRing& r, std::span<const Elem> v);
RingVector from_scaled(const FiniteRing& r, std::span<const std::int64_t> row);

Submodule submodule_span(RingPtr ring, int rank, std::span<const RingVector> gens);
bool submodule_contains(const Submodule& m, std::span<const Elem> v);
// All submodules of R^k in canonical order (by size, then canonical rows).
// Throws when |R|^k exceeds the bound.
std::vector<Submodule> enumerate_submodules(int rank, RingPtr ring, std::uint64_t bound = 100000);
// span{ t x + t^2 y : t in R }
Submodule square_term_span(RingPtr ring, std::span<const Elem> x, std::span<const Elem> y);

// Ideals are rank one submodules.
std::vector<Submodule> enumerate_ideals(RingPtr ring);
Submodule ideal_product(const Submodule& a, const Submodule& b);
Submodule ideal_times(const Submodule& a, long long n);
bool squares_contained(const Submodule& from, const Submodule& into);

}  // namespace sandwich
