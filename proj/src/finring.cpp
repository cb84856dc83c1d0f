#include "sandwich/finring.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace sandwich {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

void FiniteRing::init_additive(std::vector<int> moduli) {
  moduli_ = std::move(moduli);
  long order = 1;
  radix_.clear();
  for (int n : moduli_) {
    radix_.push_back(static_cast<int>(order));
    order *= n;
    if (order > max_order)
      throw Error("ring too large: order exceeds " + std::to_string(max_order));
  }
  order_ = static_cast<int>(order);
  char_exp_ = 1;
  for (int n : moduli_) char_exp_ = std::lcm(char_exp_, n);

  add_.resize(order_ * order_);
  neg_.resize(order_);
  std::vector<int> ca(moduli_.size()), cb(moduli_.size()), cc(moduli_.size());
  for (int a = 0; a < order_; ++a) {
    ca = coords(Elem{static_cast<std::uint16_t>(a)});
    for (size_t i = 0; i < ca.size(); ++i) cc[i] = (moduli_[i] - ca[i]) % moduli_[i];
    neg_[a] = from_coords(cc);
    for (int b = 0; b < order_; ++b) {
      cb = coords(Elem{static_cast<std::uint16_t>(b)});
      for (size_t i = 0; i < ca.size(); ++i) cc[i] = (ca[i] + cb[i]) % moduli_[i];
      add_[a * order_ + b] = from_coords(cc);
    }
  }
}

std::vector<int> FiniteRing::coords(Elem a) const {
  std::vector<int> c(moduli_.size());
  int v = a.id;
  for (size_t i = 0; i < moduli_.size(); ++i) {
    c[i] = v % moduli_[i];
    v /= moduli_[i];
  }
  return c;
}

Elem FiniteRing::from_coords(std::span<const int> c) const {
  if (c.size() != moduli_.size()) throw Error("coordinate count mismatch");
  int v = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    int x = c[i] % moduli_[i];
    if (x < 0) x += moduli_[i];
    v += x * radix_[i];
  }
  return Elem{static_cast<std::uint16_t>(v)};
}

Elem FiniteRing::times(Elem a, long long n) const {
  n %= char_exp_;
  if (n < 0) n += char_exp_;
  Elem r = zero();
  Elem p = a;
  while (n) {
    if (n & 1) r = add(r, p);
    p = add(p, p);
    n >>= 1;
  }
  return r;
}

Elem FiniteRing::from_int(long long n) const { return times(one_, n); }

std::string FiniteRing::render(Elem a) const {
  auto c = coords(a);
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

std::vector<Elem> FiniteRing::elements() const {
  std::vector<Elem> v(order_);
  for (int i = 0; i < order_; ++i) v[i] = Elem{static_cast<std::uint16_t>(i)};
  return v;
}

std::vector<Elem> FiniteRing::additive_basis() const {
  std::vector<Elem> v;
  for (int r : radix_) v.push_back(Elem{static_cast<std::uint16_t>(r)});
  return v;
}

bool FiniteRing::is_unit(Elem a) const { return inverse(a).has_value(); }

std::optional<Elem> FiniteRing::inverse(Elem a) const {
  for (int b = 0; b < order_; ++b)
    if (mul_[a.id * order_ + b] == one_) return Elem{static_cast<std::uint16_t>(b)};
  return std::nullopt;
}

bool FiniteRing::is_field() const {
  for (int a = 1; a < order_; ++a)
    if (!is_unit(Elem{static_cast<std::uint16_t>(a)})) return false;
  return true;
}

void FiniteRing::finish() {
  if (order_ < 2) throw Error("zero ring");
  if (auto bad = check_axioms()) throw Error("ring axiom violated: " + *bad);
}

std::optional<std::string> FiniteRing::check_axioms() const {
  auto E = [](int i) { return Elem{static_cast<std::uint16_t>(i)}; };
  for (int a = 0; a < order_; ++a) {
    if (mul(E(a), one_) != E(a)) return "1 is not a unit element";
    if (times(E(a), char_exp_) != zero()) return "characteristic exponent";
    for (int b = 0; b < order_; ++b)
      if (mul(E(a), E(b)) != mul(E(b), E(a)))
        return "commutativity at " + render(E(a)) + "," + render(E(b));
  }
  if (order_ > 256) return std::nullopt;
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) {
      Elem ab = mul(E(a), E(b));
      for (int c = 0; c < order_; ++c) {
        if (mul(ab, E(c)) != mul(E(a), mul(E(b), E(c))))
          return "associativity at " + render(E(a)) + "," + render(E(b)) + "," + render(E(c));
        if (mul(E(a), add(E(b), E(c))) != add(ab, mul(E(a), E(c))))
          return "distributivity at " + render(E(a)) + "," + render(E(b)) + "," + render(E(c));
      }
    }
  return std::nullopt;
}

RingPtr FiniteRing::integers_mod(long n) {
  if (n < 1) throw Error("invalid modulus " + std::to_string(n));
  if (n == 1) throw Error("zero ring");
  std::shared_ptr<FiniteRing> r(new FiniteRing);
  r->init_additive({static_cast<int>(n)});
  r->one_ = Elem{static_cast<std::uint16_t>(1)};
  r->mul_.resize(n * n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) r->mul_[a * n + b] = Elem{static_cast<std::uint16_t>(a * b % n)};
  r->spec_ = "Z/" + std::to_string(n);
  r->finish();
  return r;
}

RingPtr FiniteRing::quotient(const RingPtr& base, const std::vector<long>& f) {
  if (f.size() < 2) throw Error("modulus polynomial must have degree >= 1");
  const FiniteRing& B = *base;
  if (B.from_int(f.back()) != B.one()) throw Error("modulus polynomial is not monic");
  const int deg = static_cast<int>(f.size()) - 1;

  std::vector<int> moduli;
  for (int j = 0; j < deg; ++j)
    for (int n : B.moduli_) moduli.push_back(n);
  std::shared_ptr<FiniteRing> r(new FiniteRing);
  r->init_additive(moduli);
  const int q = B.order_;
  const int n = r->order_;

  auto digits = [&](int v) {
    std::vector<Elem> d(deg);
    for (int j = 0; j < deg; ++j) {
      d[j] = Elem{static_cast<std::uint16_t>(v % q)};
      v /= q;
    }
    return d;
  };
  std::vector<Elem> fb(deg);
  for (int j = 0; j < deg; ++j) fb[j] = B.from_int(f[j]);

  r->mul_.resize(n * n);
  std::vector<Elem> prod(2 * deg - 1);
  for (int a = 0; a < n; ++a) {
    auto da = digits(a);
    for (int b = 0; b < n; ++b) {
      auto db = digits(b);
      std::fill(prod.begin(), prod.end(), B.zero());
      for (int i = 0; i < deg; ++i)
        for (int j = 0; j < deg; ++j) prod[i + j] = B.add(prod[i + j], B.mul(da[i], db[j]));
      // x^deg = -(f_0 + ... + f_{deg-1} x^{deg-1})
      for (int k = 2 * deg - 2; k >= deg; --k) {
        Elem c = prod[k];
        prod[k] = B.zero();
        for (int j = 0; j < deg; ++j)
          prod[k - deg + j] = B.sub(prod[k - deg + j], B.mul(c, fb[j]));
      }
      int v = 0;
      for (int j = deg - 1; j >= 0; --j) v = v * q + prod[j].id;
      r->mul_[a * n + b] = Elem{static_cast<std::uint16_t>(v)};
    }
  }
  r->one_ = B.one_;
  std::ostringstream s;
  s << base->spec_ << "[x]/(";
  bool first = true;
  for (int j = deg; j >= 0; --j) {
    if (f[j] == 0) continue;
    if (!first) s << (f[j] < 0 ? "-" : "+");
    else if (f[j] < 0) s << "-";
    long c = f[j] < 0 ? -f[j] : f[j];
    if (c != 1 || j == 0) s << c;
    if (j >= 1) s << "x";
    if (j >= 2) s << "^" << j;
    first = false;
  }
  s << ")";
  r->spec_ = s.str();
  r->finish();
  return r;
}

RingPtr FiniteRing::product(const RingPtr& a, const RingPtr& b) {
  std::vector<int> moduli = a->moduli_;
  moduli.insert(moduli.end(), b->moduli_.begin(), b->moduli_.end());
  std::shared_ptr<FiniteRing> r(new FiniteRing);
  r->init_additive(moduli);
  const int na = a->order_;
  const int n = r->order_;
  r->mul_.resize(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Elem p = a->mul(Elem{static_cast<std::uint16_t>(x % na)}, Elem{static_cast<std::uint16_t>(y % na)});
      Elem q = b->mul(Elem{static_cast<std::uint16_t>(x / na)}, Elem{static_cast<std::uint16_t>(y / na)});
      r->mul_[x * n + y] = Elem{static_cast<std::uint16_t>(p.id + na * q.id)};
    }
  r->one_ = Elem{static_cast<std::uint16_t>(a->one_.id + na * b->one_.id)};
  r->spec_ = a->spec_ + "*" + b->spec_;
  r->finish();
  return r;
}

namespace {

class RingParser {
 public:
  explicit RingParser(std::string_view s) : s_(s) {}

  RingPtr parse() {
    RingPtr r = spec();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("ring syntax error at position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  long number() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 6) fail("number too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  RingPtr spec() {
    RingPtr r = term();
    while (accept("*")) r = FiniteRing::product(r, term());
    return r;
  }

  RingPtr term() {
    RingPtr r = atom();
    while (accept("[")) {
      expect("x");
      expect("]");
      expect("/");
      expect("(");
      auto f = poly();
      expect(")");
      r = FiniteRing::quotient(r, f);
    }
    return r;
  }

  RingPtr atom() {
    if (accept("(")) {
      RingPtr r = spec();
      expect(")");
      return r;
    }
    if (accept("Z/")) return FiniteRing::integers_mod(number());
    if (accept("F")) {
      long q = number();
      if (is_prime(q)) {
        auto r = FiniteRing::integers_mod(q);
        return r;
      }
      auto f2 = FiniteRing::integers_mod(2);
      auto f3 = FiniteRing::integers_mod(3);
      if (q == 4) return FiniteRing::quotient(f2, {1, 1, 1});
      if (q == 8) return FiniteRing::quotient(f2, {1, 1, 0, 1});
      if (q == 9) return FiniteRing::quotient(f3, {1, 0, 1});
      fail("no field alias F" + std::to_string(q));
    }
    fail("expected 'Z/', 'F' or '('");
  }

  // Integer polynomial in x, returned as coefficients from degree 0 up.
  std::vector<long> poly() {
    std::vector<long> c;
    bool first = true;
    for (;;) {
      skip();
      long sign = 1;
      if (accept("+")) {
        if (first) fail("leading '+'");
      } else if (accept("-")) {
        sign = -1;
      } else if (!first) {
        break;
      }
      first = false;
      skip();
      long coef = 1;
      bool have_coef = false;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coef = number();
        have_coef = true;
        accept("*");
      }
      size_t e = 0;
      if (accept("x")) {
        e = 1;
        if (accept("^")) e = static_cast<size_t>(number());
      } else if (!have_coef) {
        fail("expected a term");
      }
      if (e > 16) fail("degree too large");
      if (c.size() <= e) c.resize(e + 1, 0);
      c[e] += sign * coef;
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    return c;
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

RingPtr parse_ring(std::string_view spec) {
  RingPtr r = RingParser(spec).parse();
  auto copy = std::make_shared<FiniteRing>(*r);
  std::string canon;
  for (char ch : spec)
    if (!std::isspace(static_cast<unsigned char>(ch))) canon += ch;
  copy->set_spec(canon);
  return copy;
}

}  // namespace sandwich
