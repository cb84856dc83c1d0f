#include "sandwich/submodule.hpp"

#include <cmath>
#include <deque>
#include <set>

namespace sandwich {

Cardinality Cardinality::of(std::uint64_t n) {
  Cardinality c;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++c.exps_[p];
      n /= p;
    }
  if (n > 1) ++c.exps_[n];
  return c;
}

Cardinality& Cardinality::operator*=(const Cardinality& o) {
  for (auto [p, e] : o.exps_) exps_[p] += e;
  return *this;
}

double Cardinality::log2() const {
  double s = 0;
  for (auto [p, e] : exps_) s += e * std::log2(static_cast<double>(p));
  return s;
}

std::string Cardinality::str() const {
  if (exps_.empty()) return "1";
  std::string s;
  for (auto [p, e] : exps_) {
    if (!s.empty()) s += "*";
    s += std::to_string(p);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

howell::Row to_scaled(const FiniteRing& r, std::span<const Elem> v) {
  const int d = r.additive_rank();
  const int m = r.char_exponent();
  auto mod = r.moduli();
  howell::Row row(v.size() * d);
  for (size_t i = 0; i < v.size(); ++i) {
    int x = v[i].id;
    for (int j = 0; j < d; ++j) {
      row[i * d + j] = static_cast<std::int64_t>(x % mod[j]) * (m / mod[j]);
      x /= mod[j];
    }
  }
  return row;
}

RingVector from_scaled(const FiniteRing& r, std::span<const std::int64_t> row) {
  const int d = r.additive_rank();
  const int m = r.char_exponent();
  auto mod = r.moduli();
  RingVector v(row.size() / d);
  for (size_t i = 0; i < v.size(); ++i) {
    int x = 0, radix = 1;
    for (int j = 0; j < d; ++j) {
      x += static_cast<int>(row[i * d + j] / (m / mod[j])) * radix;
      radix *= mod[j];
    }
    v[i] = Elem{static_cast<std::uint16_t>(x)};
  }
  return v;
}

Submodule::Submodule(RingPtr ring, int rank) : ring_(std::move(ring)), rank_(rank) {
  form_.modulus = ring_->char_exponent();
  form_.cols = rank_ * ring_->additive_rank();
}

Submodule Submodule::from_form(RingPtr ring, int rank, howell::Form form) {
  Submodule s(std::move(ring), rank);
  s.form_ = std::move(form);
  return s;
}

Submodule Submodule::span(RingPtr ring, int rank, std::span<const RingVector> gens) {
  Submodule s(ring, rank);
  return s.with(gens);
}

Submodule Submodule::full(RingPtr ring, int rank) {
  std::vector<RingVector> gens;
  for (int i = 0; i < rank; ++i) {
    RingVector v(rank, ring->zero());
    v[i] = ring->one();
    gens.push_back(v);
  }
  return span(ring, rank, gens);
}

Submodule Submodule::with(std::span<const RingVector> more) const {
  std::vector<howell::Row> rows = form_.rows;
  auto basis = ring_->additive_basis();
  for (const auto& g : more) {
    if (static_cast<int>(g.size()) != rank_) throw Error("rank mismatch");
    RingVector t(g.size());
    for (Elem b : basis) {
      for (size_t i = 0; i < g.size(); ++i) t[i] = ring_->mul(b, g[i]);
      rows.push_back(to_scaled(*ring_, t));
    }
  }
  return from_form(ring_, rank_, howell::reduce(std::move(rows), form_.cols, form_.modulus));
}

Submodule Submodule::operator+(const Submodule& o) const {
  if (o.rank_ != rank_ || o.ring_->spec() != ring_->spec()) throw Error("rank mismatch");
  std::vector<howell::Row> rows = form_.rows;
  rows.insert(rows.end(), o.form_.rows.begin(), o.form_.rows.end());
  return from_form(ring_, rank_, howell::reduce(std::move(rows), form_.cols, form_.modulus));
}

Submodule Submodule::scaled(Elem r) const {
  auto gens = generators();
  for (auto& g : gens)
    for (auto& x : g) x = ring_->mul(r, x);
  return span(ring_, rank_, gens);
}

bool Submodule::contains(std::span<const Elem> v) const {
  if (static_cast<int>(v.size()) != rank_) throw Error("rank mismatch");
  return howell::contains(form_, to_scaled(*ring_, v));
}

bool Submodule::subset_of(const Submodule& o) const {
  for (const auto& r : form_.rows)
    if (!howell::contains(o.form_, r)) return false;
  return true;
}

bool Submodule::is_full() const {
  return size() == [&] {
    Cardinality c;
    for (int i = 0; i < rank_; ++i) c *= Cardinality::of(ring_->order());
    return c;
  }();
}

Cardinality Submodule::size() const {
  Cardinality c;
  for (size_t i = 0; i < form_.rows.size(); ++i)
    c *= Cardinality::of(form_.modulus / form_.rows[i][form_.pivots[i]]);
  return c;
}

std::uint64_t Submodule::count() const {
  std::uint64_t n = 1;
  for (size_t i = 0; i < form_.rows.size(); ++i) {
    std::uint64_t k = form_.modulus / form_.rows[i][form_.pivots[i]];
    if (n > (std::uint64_t(1) << 62) / k) throw Error("submodule too large to count");
    n *= k;
  }
  return n;
}

std::vector<RingVector> Submodule::generators() const {
  std::vector<RingVector> out;
  for (const auto& r : form_.rows) out.push_back(from_scaled(*ring_, r));
  return out;
}

std::vector<RingVector> Submodule::elements(std::uint64_t bound) const {
  if (count() > bound) throw Error("submodule too large to enumerate");
  const auto m = form_.modulus;
  std::vector<howell::Row> acc{howell::Row(form_.cols, 0)};
  for (size_t i = 0; i < form_.rows.size(); ++i) {
    const auto& r = form_.rows[i];
    std::int64_t k = m / r[form_.pivots[i]];
    std::vector<howell::Row> next;
    for (const auto& a : acc)
      for (std::int64_t c = 0; c < k; ++c) {
        howell::Row b = a;
        for (int j = 0; j < form_.cols; ++j) b[j] = (b[j] + c * r[j]) % m;
        next.push_back(std::move(b));
      }
    acc = std::move(next);
  }
  std::vector<RingVector> out;
  for (const auto& a : acc) out.push_back(from_scaled(*ring_, a));
  return out;
}

std::string Submodule::render() const {
  std::string s = "<";
  bool first = true;
  for (const auto& g : generators()) {
    if (!first) s += ", ";
    first = false;
    if (rank_ == 1) {
      s += ring_->render(g[0]);
      continue;
    }
    s += "[";
    for (size_t i = 0; i < g.size(); ++i) {
      if (i) s += " ";
      s += ring_->render(g[i]);
    }
    s += "]";
  }
  return s + ">";
}

bool operator<(const Submodule& a, const Submodule& b) {
  double la = a.size().log2(), lb = b.size().log2();
  if (la != lb) return la < lb;
  return a.form_.rows < b.form_.rows;
}

Submodule submodule_span(RingPtr ring, int rank, std::span<const RingVector> gens) {
  return Submodule::span(std::move(ring), rank, gens);
}

bool submodule_contains(const Submodule& m, std::span<const Elem> v) { return m.contains(v); }

std::vector<Submodule> enumerate_submodules(int rank, RingPtr ring, std::uint64_t bound) {
  double vectors = std::pow(static_cast<double>(ring->order()), rank);
  if (vectors > static_cast<double>(bound))
    throw Error("submodule enumeration bound exceeded: |R|^k = " + std::to_string(vectors));
  std::vector<RingVector> all{RingVector{}};
  for (int i = 0; i < rank; ++i) {
    std::vector<RingVector> next;
    for (const auto& v : all)
      for (Elem e : ring->elements()) {
        auto w = v;
        w.push_back(e);
        next.push_back(std::move(w));
      }
    all = std::move(next);
  }
  std::set<Submodule> seen;
  std::deque<Submodule> queue;
  Submodule zero(ring, rank);
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    Submodule m = queue.front();
    queue.pop_front();
    for (const auto& v : all) {
      if (m.contains(v)) continue;
      Submodule n = m.with(std::span<const RingVector>(&v, 1));
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  return {seen.begin(), seen.end()};
}

Submodule square_term_span(RingPtr ring, std::span<const Elem> x, std::span<const Elem> y) {
  if (x.size() != y.size()) throw Error("rank mismatch");
  std::vector<RingVector> gens;
  for (Elem t : ring->elements()) {
    Elem t2 = ring->mul(t, t);
    RingVector v(x.size());
    for (size_t i = 0; i < x.size(); ++i) v[i] = ring->add(ring->mul(t, x[i]), ring->mul(t2, y[i]));
    gens.push_back(std::move(v));
  }
  return Submodule::span(ring, static_cast<int>(x.size()), gens);
}

std::vector<Submodule> enumerate_ideals(RingPtr ring) { return enumerate_submodules(1, ring); }

Submodule ideal_product(const Submodule& a, const Submodule& b) {
  const auto& R = a.ring();
  std::vector<RingVector> gens;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) gens.push_back({R.mul(x[0], y[0])});
  return Submodule::span(a.ring_ptr(), 1, gens);
}

Submodule ideal_times(const Submodule& a, long long n) {
  return a.scaled(a.ring().from_int(n));
}

bool squares_contained(const Submodule& from, const Submodule& into) {
  const auto& R = from.ring();
  for (const auto& x : from.elements()) {
    RingVector sq{R.mul(x[0], x[0])};
    if (!into.contains(sq)) return false;
  }
  return true;
}

bool has_residue_field_f2(const FiniteRing& r) {
  auto ring = std::make_shared<FiniteRing>(r);
  std::vector<RingVector> gens;
  for (Elem t : r.elements()) gens.push_back({r.add(t, r.mul(t, t))});
  Submodule ideal = Submodule::span(ring, 1, gens);
  RingVector one{r.one()};
  return !ideal.contains(one);
}

}  // namespace sandwich
