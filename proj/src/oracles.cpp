#include "sandwich/oracles.hpp"

#include <deque>

namespace sandwich::oracle {

bool has_f2_homomorphism(const FiniteRing& r) {
  const int d = r.additive_rank();
  auto mod = r.moduli();
  for (int mask = 0; mask < (1 << d); ++mask) {
    bool ok = true;
    for (int i = 0; i < d; ++i)
      if ((mask >> i & 1) && mod[i] % 2) ok = false;
    if (!ok) continue;
    auto phi = [&](Elem a) {
      auto c = r.coords(a);
      int s = 0;
      for (int i = 0; i < d; ++i) s += (mask >> i & 1) * c[i];
      return s & 1;
    };
    if (phi(r.one()) != 1) continue;
    for (Elem a : r.elements())
      for (Elem b : r.elements())
        if (phi(r.mul(a, b)) != (phi(a) & phi(b))) ok = false;
    if (ok) return true;
  }
  return false;
}

std::set<RingVector> span_elements(const FiniteRing& r, int rank, const std::vector<RingVector>& gens) {
  std::vector<RingVector> scaled;
  for (const auto& g : gens)
    for (Elem t : r.elements()) {
      RingVector v(rank);
      for (int i = 0; i < rank; ++i) v[i] = r.mul(t, g[i]);
      scaled.push_back(v);
    }
  std::set<RingVector> seen{RingVector(rank, r.zero())};
  std::deque<RingVector> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& g : scaled) {
      RingVector w(rank);
      for (int i = 0; i < rank; ++i) w[i] = r.add(v[i], g[i]);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return seen;
}

int count_submodules(const FiniteRing& r, int rank) {
  std::vector<RingVector> all{RingVector{}};
  for (int i = 0; i < rank; ++i) {
    std::vector<RingVector> next;
    for (const auto& v : all)
      for (Elem e : r.elements()) {
        auto w = v;
        w.push_back(e);
        next.push_back(w);
      }
    all = next;
  }
  std::set<std::set<RingVector>> found{span_elements(r, rank, {})};
  std::deque<std::set<RingVector>> queue(found.begin(), found.end());
  while (!queue.empty()) {
    auto m = queue.front();
    queue.pop_front();
    std::vector<RingVector> gens(m.begin(), m.end());
    for (const auto& v : all) {
      if (m.count(v)) continue;
      gens.push_back(v);
      auto n = span_elements(r, rank, gens);
      gens.pop_back();
      if (found.insert(n).second) queue.push_back(n);
    }
  }
  return static_cast<int>(found.size());
}

}  // namespace sandwich::oracle
