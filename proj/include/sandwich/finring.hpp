#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sandwich {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index of an element in its ring's tables.
struct Elem {
  std::uint16_t id = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

using RingVector = std::vector<Elem>;

// A finite commutative ring with 1, stored as full addition and
// multiplication tables.  The additive group is Z/n_1 x ... x Z/n_d
// (the additive presentation); an element's index is the mixed-radix
// encoding of its coordinates, first coordinate least significant.
class FiniteRing {
 public:
  static constexpr int max_order = 1024;

  static std::shared_ptr<const FiniteRing> integers_mod(long n);
  // base[x]/(f) with f monic, coefficients listed from the constant term up.
  static std::shared_ptr<const FiniteRing> quotient(
      const std::shared_ptr<const FiniteRing>& base, const std::vector<long>& f);
  static std::shared_ptr<const FiniteRing> product(
      const std::shared_ptr<const FiniteRing>& a,
      const std::shared_ptr<const FiniteRing>& b);

  const std::string& spec() const { return spec_; }
  int order() const { return order_; }
  int char_exponent() const { return char_exp_; }
  int additive_rank() const { return static_cast<int>(moduli_.size()); }
  std::span<const int> moduli() const { return moduli_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return one_; }
  Elem add(Elem a, Elem b) const { return add_[a.id * order_ + b.id]; }
  Elem mul(Elem a, Elem b) const { return mul_[a.id * order_ + b.id]; }
  Elem neg(Elem a) const { return neg_[a.id]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem from_int(long long n) const;
  Elem times(Elem a, long long n) const;

  std::vector<int> coords(Elem a) const;
  Elem from_coords(std::span<const int> c) const;
  std::string render(Elem a) const;

  std::vector<Elem> elements() const;
  // Elements with a single coordinate equal to 1; they generate R additively.
  std::vector<Elem> additive_basis() const;
  bool is_unit(Elem a) const;
  std::optional<Elem> inverse(Elem a) const;
  bool is_field() const;

  // Exhaustive on triples when |R| <= 256, otherwise on pairs.
  // Returns a description of the first violated axiom, or nothing.
  std::optional<std::string> check_axioms() const;

  void set_spec(std::string s) { spec_ = std::move(s); }

 private:
  FiniteRing() = default;
  void init_additive(std::vector<int> moduli);
  void finish();

  std::string spec_;
  int order_ = 0;
  int char_exp_ = 1;
  std::vector<int> moduli_;
  std::vector<int> radix_;
  Elem one_;
  std::vector<Elem> add_, mul_, neg_;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

// Grammar:  spec := term ('*' term)* ;  term := atom ('[x]/(' poly ')')* ;
// atom := 'Z/' n | 'F' q | '(' spec ')'.  Aliases F2, F3, Fp, F4, F8, F9.
RingPtr parse_ring(std::string_view spec);

// True when some ring homomorphism R -> F2 exists, i.e. the ideal
// generated by all t + t^2 is proper.
bool has_residue_field_f2(const FiniteRing& r);

}  // namespace sandwich
