#include "sandwich/chevalley.hpp"

namespace sandwich {

StructureConstants::StructureConstants(RootSystemPtr phi) : phi_(std::move(phi)) {
  const int n = phi_->size();
  const int r = phi_->rank();
  const int d = dim();
  n_.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int s = phi_->sum(a, b);
      if (s < 0) continue;
      int sa = phi_->positive(a) ? 1 : -1;
      int sb = phi_->positive(b) ? 1 : -1;
      int ss = phi_->positive(s) ? 1 : -1;
      n_[a * n + b] = static_cast<signed char>(sa * sb * ss * epsilon(a, b));
    }
  table_.resize(d * d);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      auto& t = table_[a * d + b];
      int s = phi_->sum(a, b);
      if (s >= 0) {
        t.push_back({s, n_[a * n + b]});
      } else if (b == phi_->neg(a)) {
        auto c = coroot(a);
        for (int i = 0; i < r; ++i)
          if (c[i]) t.push_back({cartan(i), c[i]});
      }
    }
    for (int i = 0; i < r; ++i) {
      int k = phi_->inner(a, phi_->simple(i));
      if (!k) continue;
      table_[cartan(i) * d + a].push_back({a, k});
      table_[a * d + cartan(i)].push_back({a, -k});
    }
  }
}

int StructureConstants::epsilon(int a, int b) const {
  auto c = phi_->simple_coeffs(a);
  auto e = phi_->simple_coeffs(b);
  const int r = phi_->rank();
  int parity = 0;
  for (int i = 0; i < r; ++i) {
    parity += c[i] * e[i];
    for (int j = i + 1; j < r; ++j)
      if (phi_->inner(phi_->simple(i), phi_->simple(j)) & 1) parity += c[i] * e[j];
  }
  return (parity & 1) ? -1 : 1;
}

StructurePtr build_structure_constants(RootSystemPtr phi) {
  return std::make_shared<const StructureConstants>(std::move(phi));
}

AdjointElement::AdjointElement(RingPtr ring, int n) : ring_(std::move(ring)), n_(n), a_(n * n, ring_->zero()) {
  for (int i = 0; i < n; ++i) a_[i * n + i] = ring_->one();
}

AdjointElement AdjointElement::operator*(const AdjointElement& o) const {
  const FiniteRing& R = *ring_;
  AdjointElement c(ring_, n_);
  std::fill(c.a_.begin(), c.a_.end(), R.zero());
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      Elem x = a_[i * n_ + k];
      if (x == R.zero()) continue;
      const Elem* row = &o.a_[k * n_];
      Elem* out = &c.a_[i * n_];
      for (int j = 0; j < n_; ++j)
        if (row[j] != R.zero()) out[j] = R.add(out[j], R.mul(x, row[j]));
    }
  return c;
}

RingVector AdjointElement::apply(std::span<const Elem> v) const {
  const FiniteRing& R = *ring_;
  RingVector out(n_, R.zero());
  for (int j = 0; j < n_; ++j) {
    if (v[j] == R.zero()) continue;
    for (int i = 0; i < n_; ++i) {
      Elem x = a_[i * n_ + j];
      if (x != R.zero()) out[i] = R.add(out[i], R.mul(x, v[j]));
    }
  }
  return out;
}

RingVector AdjointElement::column(int j) const {
  RingVector c(n_);
  for (int i = 0; i < n_; ++i) c[i] = a_[i * n_ + j];
  return c;
}

bool AdjointElement::is_identity() const { return *this == AdjointElement(ring_, n_); }

// Division-free determinant (Bird's iteration).
Elem AdjointElement::det() const {
  const FiniteRing& R = *ring_;
  const int n = n_;
  AdjointElement x = *this;
  for (int step = 1; step < n; ++step) {
    AdjointElement m(ring_, n);
    Elem tail = R.zero();
    for (int i = n - 1; i >= 0; --i) {
      for (int j = 0; j < n; ++j) m.a_[i * n + j] = j > i ? x.a_[i * n + j] : R.zero();
      m.a_[i * n + i] = R.neg(tail);
      tail = R.add(tail, x.a_[i * n + i]);
    }
    x = m * *this;
  }
  Elem d = x.a_[0];
  return (n - 1) % 2 ? R.neg(d) : d;
}

ChevalleyAlgebra::ChevalleyAlgebra(StructurePtr sc, RingPtr ring) : sc_(std::move(sc)), ring_(std::move(ring)) {}

RingVector ChevalleyAlgebra::basis(int i, Elem c) const {
  RingVector v = zero();
  v[i] = c;
  return v;
}

RingVector ChevalleyAlgebra::bracket(std::span<const Elem> u, std::span<const Elem> v) const {
  const int d = dim();
  if (static_cast<int>(u.size()) != d || static_cast<int>(v.size()) != d) throw Error("context mismatch");
  const FiniteRing& R = *ring_;
  RingVector out = zero();
  for (int i = 0; i < d; ++i) {
    if (u[i] == R.zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (v[j] == R.zero()) continue;
      auto terms = sc_->bracket(i, j);
      if (terms.empty()) continue;
      Elem p = R.mul(u[i], v[j]);
      for (const Term& t : terms) out[t.index] = R.add(out[t.index], R.times(p, t.coef));
    }
  }
  return out;
}

RingVector ChevalleyAlgebra::add(std::span<const Elem> u, std::span<const Elem> v) const {
  RingVector out(u.size());
  for (size_t i = 0; i < u.size(); ++i) out[i] = ring_->add(u[i], v[i]);
  return out;
}

RingVector ChevalleyAlgebra::sub(std::span<const Elem> u, std::span<const Elem> v) const {
  RingVector out(u.size());
  for (size_t i = 0; i < u.size(); ++i) out[i] = ring_->sub(u[i], v[i]);
  return out;
}

RingVector ChevalleyAlgebra::scale(Elem c, std::span<const Elem> v) const {
  RingVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = ring_->mul(c, v[i]);
  return out;
}

AdjointElement ChevalleyAlgebra::unipotent(int alpha, Elem xi) const {
  const FiniteRing& R = *ring_;
  const RootSystem& P = phi();
  AdjointElement g(ring_, dim());
  g.set_provenance("x(" + P.render(alpha) + "," + R.render(xi) + ")");
  if (xi == R.zero()) return g;
  const int na = P.neg(alpha);
  for (int b = 0; b < P.size(); ++b) {
    if (b == na) {
      auto c = sc_->coroot(alpha);
      for (int i = 0; i < P.rank(); ++i) g.set(sc_->cartan(i), b, R.times(xi, c[i]));
      g.set(alpha, b, R.neg(R.mul(xi, xi)));
    } else if (P.inner(alpha, b) == -1) {
      g.set(P.sum(alpha, b), b, R.times(xi, sc_->n(alpha, b)));
    }
  }
  for (int i = 0; i < P.rank(); ++i) g.set(alpha, sc_->cartan(i), R.times(xi, -P.inner(alpha, P.simple(i))));
  return g;
}

AdjointElement ChevalleyAlgebra::block_unipotent(const Block& b, std::span<const Elem> a) const {
  if (a.size() != b.members.size()) throw Error("support violation: element is not in the block module");
  AdjointElement g = identity();
  std::string prov;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == ring_->zero()) continue;
    g = g * unipotent(b.members[i], a[i]);
    prov += (prov.empty() ? "" : "*") + g.provenance();
  }
  std::string p = "xb(" + phi().render(b.members[0]) + ";";
  for (size_t i = 0; i < a.size(); ++i) p += (i ? "," : "") + ring_->render(a[i]);
  g.set_provenance(p + ")");
  return g;
}

std::string ChevalleyAlgebra::render(std::span<const Elem> v) const {
  std::string s;
  for (int i = 0; i < dim(); ++i) {
    if (v[i] == ring_->zero()) continue;
    if (!s.empty()) s += " + ";
    s += ring_->render(v[i]) + "*";
    s += i < phi().size() ? "e[" + phi().render(i) + "]" : "h" + std::to_string(i - phi().size() + 1);
  }
  return s.empty() ? "0" : s;
}

AdjointElement word_matrix(const ChevalleyAlgebra& L, const Word& w) {
  AdjointElement g = L.identity();
  for (const auto& f : w) {
    if (f.root < 0 || f.root >= L.phi().size()) throw Error("malformed word");
    g = g * L.unipotent(f.root, f.xi);
  }
  return g;
}

Word inverse_word(const ChevalleyAlgebra& L, const Word& w) {
  Word inv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back({it->root, L.ring().neg(it->xi)});
  return inv;
}

Tandem make_tandem(const ChevalleyAlgebra& L, const Word& h, int alpha, Elem xi) {
  Tandem t;
  t.h = word_matrix(L, h);
  t.h_inv = word_matrix(L, inverse_word(L, h));
  t.alpha = alpha;
  t.xi = xi;
  t.g = t.h * L.unipotent(alpha, xi) * t.h_inv;
  t.l = t.h.apply(L.e(alpha, xi));
  return t;
}

AdjointElement PairTandem::g(const ChevalleyAlgebra& L, Elem t) const {
  const FiniteRing& R = L.ring();
  return h * L.unipotent(a1, R.mul(t, xi)) * L.unipotent(a2, R.mul(t, zeta)) * h_inv;
}

RingVector PairTandem::l(const ChevalleyAlgebra& L, Elem t) const {
  const FiniteRing& R = L.ring();
  RingVector v = L.zero();
  v[a1] = R.mul(t, xi);
  v[a2] = R.add(v[a2], R.mul(t, zeta));
  return h.apply(v);
}

PairTandem make_bitandem(const ChevalleyAlgebra& L, const Word& h, int a1, int a2, Elem xi, Elem zeta) {
  if (L.phi().inner(a1, a2) != 0) throw Error("bitandem roots are not orthogonal");
  return {word_matrix(L, h), word_matrix(L, inverse_word(L, h)), a1, a2, xi, zeta};
}

PairTandem make_a2_tandem(const ChevalleyAlgebra& L, const Word& h, int a1, int a2, Elem xi, Elem zeta) {
  if (L.phi().inner(a1, a2) != 1) throw Error("A2-tandem roots are not at inner product 1");
  return {word_matrix(L, h), word_matrix(L, inverse_word(L, h)), a1, a2, xi, zeta};
}

PairTandem make_special(const ChevalleyAlgebra& L, const Tandem& t, int a1, int a2) {
  int ip = L.phi().inner(a1, a2);
  if (ip != 0 && ip != 1) throw Error("special pair must be orthogonal or at inner product 1");
  const FiniteRing& R = L.ring();
  AdjointElement g_inv = t.h * L.unipotent(t.alpha, R.neg(t.xi)) * t.h_inv;
  Elem xi = t.l[L.phi().neg(a2)];
  Elem zeta = R.neg(t.l[L.phi().neg(a1)]);
  return {t.g, g_inv, a1, a2, xi, zeta};
}

RingVector TOperator::apply(const FiniteRing& r, std::span<const Elem> a) const {
  RingVector out(a.size(), r.zero());
  for (size_t i = 0; i < a.size(); ++i) out[perm[i]] = sign[i] > 0 ? a[i] : r.neg(a[i]);
  return out;
}

TOperator t_operator(const StructureConstants& sc, const BlockPartition& blocks, int b, int alpha) {
  const RootSystem& P = sc.phi();
  if (blocks.pairing(b, alpha) != -1) throw Error("T-operator needs ([b],alpha) = -1");
  TOperator t;
  t.from = b;
  t.alpha = alpha;
  for (int g : blocks.block(b).members) {
    int s = P.sum(alpha, g);
    int to = blocks.block_of(s);
    if (t.to >= 0 && t.to != to) throw Error("block image is split");
    t.to = to;
    t.perm.push_back(blocks.position_in_block(s));
    t.sign.push_back(sc.n(alpha, g));
  }
  return t;
}

}  // namespace sandwich
