#include "sandwich/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace sandwich {

namespace {

int dot(std::span<const int> a, std::span<const int> b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<int> unit(int dim, int i, int v = 1) {
  std::vector<int> e(dim, 0);
  e[i] = v;
  return e;
}

std::vector<int> plus(std::vector<int> a, std::span<const int> b, int k = 1) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

}  // namespace

RootSystemPtr RootSystem::build(std::string_view label) {
  if (label.size() < 2 || !std::isdigit(static_cast<unsigned char>(label[1])))
    throw Error("unknown root system '" + std::string(label) + "'");
  char t = label[0];
  int n = 0;
  for (size_t i = 1; i < label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(label[i])) || n > 100)
      throw Error("unknown root system '" + std::string(label) + "'");
    n = n * 10 + (label[i] - '0');
  }
  auto phi = std::shared_ptr<RootSystem>(new RootSystem);
  phi->label_ = std::string(label);
  phi->type_ = t;
  phi->rank_ = n;
  std::vector<std::vector<int>> simple;
  if (t == 'A' && n >= 1 && n <= 16) {
    phi->dim_ = n + 1;
    for (int i = 0; i < n; ++i) simple.push_back(plus(unit(n + 1, i), unit(n + 1, i + 1), -1));
  } else if (t == 'D' && n >= 3 && n <= 16) {
    phi->dim_ = n;
    for (int i = 0; i + 1 < n; ++i) simple.push_back(plus(unit(n, i), unit(n, i + 1), -1));
    simple.push_back(plus(unit(n, n - 2), unit(n, n - 1)));
  } else if (t == 'E' && n >= 6 && n <= 8) {
    phi->dim_ = 8;
    phi->scale_ = 4;
    simple.push_back({1, -1, -1, -1, -1, -1, -1, 1});
    simple.push_back(plus(unit(8, 0, 2), unit(8, 1, 2)));
    for (int i = 0; i + 2 < n; ++i) simple.push_back(plus(unit(8, i + 1, 2), unit(8, i, 2), -1));
  } else {
    throw Error("unknown root system '" + std::string(label) + "'");
  }
  phi->finish(simple);
  return phi;
}

void RootSystem::finish(std::vector<std::vector<int>> simple) {
  const int r = static_cast<int>(simple.size());
  std::map<std::vector<int>, std::vector<int>> found;
  std::deque<std::vector<int>> queue;
  for (int i = 0; i < r; ++i) {
    found[simple[i]] = unit(r, i);
    queue.push_back(simple[i]);
  }
  while (!queue.empty()) {
    auto b = queue.front();
    queue.pop_front();
    auto cb = found[b];
    for (int i = 0; i < r; ++i) {
      int k = dot(b, simple[i]) / scale_;
      if (!k) continue;
      auto s = plus(b, simple[i], -k);
      if (found.count(s)) continue;
      found[s] = plus(cb, unit(r, i), -k);
      queue.push_back(s);
    }
  }

  std::vector<std::pair<std::vector<int>, std::vector<int>>> pos;
  for (auto& [v, c] : found)
    if (std::accumulate(c.begin(), c.end(), 0) > 0) pos.emplace_back(v, c);
  auto key = [&](const std::vector<int>& v, const std::vector<int>& c) {
    std::vector<int> k;
    if (type_ == 'E') {
      k.push_back(std::accumulate(c.begin(), c.end(), 0));
      k.insert(k.end(), c.begin(), c.end());
    } else {
      // e_i -+ e_j, i < j: order by (i, j, sign)
      int i = -1, j = -1;
      for (int x = 0; x < dim_; ++x)
        if (v[x]) (i < 0 ? i : j) = x;
      k = {i, j, v[j]};
    }
    return k;
  };
  std::sort(pos.begin(), pos.end(),
            [&](const auto& a, const auto& b) { return key(a.first, a.second) < key(b.first, b.second); });
  for (auto& [v, c] : pos) {
    coords_.push_back(v);
    coeffs_.push_back(c);
  }
  for (auto& [v, c] : pos) {
    coords_.push_back(plus(std::vector<int>(v.size(), 0), v, -1));
    coeffs_.push_back(plus(std::vector<int>(c.size(), 0), c, -1));
  }
  const int n = size();
  for (int i = 0; i < n; ++i) index_[coords_[i]] = i;
  for (int i = 0; i < r; ++i) simple_.push_back(index_.at(simple[i]));
  inner_.resize(n * n);
  sum_.assign(n * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ip = dot(coords_[a], coords_[b]) / scale_;
      inner_[a * n + b] = static_cast<signed char>(ip);
      if (ip == -1) sum_[a * n + b] = static_cast<short>(index_.at(plus(coords_[a], coords_[b])));
    }
}

int RootSystem::height(int r) const {
  return std::accumulate(coeffs_[r].begin(), coeffs_[r].end(), 0);
}

int RootSystem::find(std::span<const int> c) const {
  auto it = index_.find(std::vector<int>(c.begin(), c.end()));
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::reflect(int alpha, int r) const {
  int k = inner(r, alpha);
  if (!k) return r;
  if (r == alpha) return neg(r);
  if (r == neg(alpha)) return alpha;
  return k == 1 ? sum(r, neg(alpha)) : sum(r, alpha);
}

std::string RootSystem::render(int r) const {
  std::ostringstream s;
  if (type_ == 'E') {
    auto c = coeffs_[r];
    if (!positive(r)) s << '-';
    s << '[';
    for (size_t i = 0; i < c.size(); ++i) s << std::abs(c[i]);
    s << ']';
    return s.str();
  }
  bool first = true;
  for (int i = 0; i < dim_; ++i) {
    int v = coords_[r][i];
    if (!v) continue;
    if (v < 0) s << '-';
    else if (!first) s << '+';
    s << 'e' << (i + 1);
    first = false;
  }
  return s.str();
}

RootSystemPtr build_root_system(std::string_view label) { return RootSystem::build(label); }

Subsystem::Subsystem(RootSystemPtr phi, std::vector<int> roots, std::string label)
    : phi_(std::move(phi)), roots_(std::move(roots)), member_(phi_->size(), 0), label_(std::move(label)) {
  std::sort(roots_.begin(), roots_.end());
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
  for (int r : roots_) member_[r] = 1;
  for (int a : roots_)
    for (int b : roots_)
      if (!member_[phi_->reflect(a, b)])
        throw Error("subsystem is not closed under its reflections");
}

Subsystem subsystem_closure(RootSystemPtr phi, std::vector<int> gens, std::string label) {
  std::set<int> s;
  std::deque<int> queue;
  for (int g : gens)
    for (int r : {g, phi->neg(g)})
      if (s.insert(r).second) queue.push_back(r);
  while (!queue.empty()) {
    int b = queue.front();
    queue.pop_front();
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int r : {phi->reflect(a, b), phi->reflect(b, a)})
        if (s.insert(r).second) queue.push_back(r);
  }
  return Subsystem(phi, std::vector<int>(s.begin(), s.end()), std::move(label));
}

Subsystem subsystem_from_vectors(RootSystemPtr phi, const std::vector<std::vector<int>>& gens) {
  std::vector<int> idx;
  std::string label = "gens:";
  for (const auto& v : gens) {
    int r = phi->find(v);
    std::string txt = "(";
    for (size_t i = 0; i < v.size(); ++i) txt += (i ? "," : "") + std::to_string(v[i]);
    txt += ")";
    if (r < 0) throw Error("not a root of " + phi->label() + ": " + txt);
    idx.push_back(r);
    label += (label.size() > 5 ? ";" : "") + txt;
  }
  return subsystem_closure(phi, idx, label);
}

namespace {

std::vector<std::vector<int>> parse_vectors(std::string_view s) {
  std::vector<std::vector<int>> out;
  size_t i = 0;
  auto fail = [&] { throw Error("bad generator list '" + std::string(s) + "'"); };
  while (i < s.size()) {
    if (s[i] == ';' || s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] != '(') fail();
    size_t j = s.find(')', i);
    if (j == std::string_view::npos) fail();
    std::vector<int> v;
    std::string body(s.substr(i + 1, j - i - 1));
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        v.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        fail();
      }
    }
    out.push_back(v);
    i = j + 1;
  }
  if (out.empty()) fail();
  return out;
}

}  // namespace

Subsystem subsystem_preset(RootSystemPtr phi, std::string_view label) {
  const std::string lab(label);
  auto bad = [&] { return Error("unknown subsystem '" + lab + "' of " + phi->label()); };
  if (lab.rfind("gens:", 0) == 0) return subsystem_from_vectors(phi, parse_vectors(label.substr(5)));
  if (lab == phi->label()) {
    std::vector<int> all(phi->size());
    std::iota(all.begin(), all.end(), 0);
    return Subsystem(phi, all, lab);
  }
  size_t p = 0;
  int mult = 0;
  while (p < lab.size() && std::isdigit(static_cast<unsigned char>(lab[p]))) mult = mult * 10 + (lab[p++] - '0');
  if (p + 1 >= lab.size()) throw bad();
  char t = lab[p];
  int m = 0;
  for (size_t i = p + 1; i < lab.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(lab[i]))) throw bad();
    m = m * 10 + (lab[i] - '0');
  }
  const int dim = phi->dim();
  const int unitv = phi->type() == 'E' ? 2 : 1;

  if (t == 'A' && m == 1 && mult >= 1) {
    std::vector<int> gens;
    if (phi->type() == 'A') {
      if (2 * mult > dim) throw bad();
      for (int i = 0; i < mult; ++i) {
        std::vector<int> v(dim, 0);
        v[i] = 1;
        v[2 * mult - 1 - i] = -1;
        gens.push_back(phi->find(v));
      }
    } else {
      // greedy among roots fixed by the diagram flip, when there is one
      auto tau = diagram_automorphism(*phi, 2);
      for (int r = 0; r < phi->num_positive() && static_cast<int>(gens.size()) < mult; ++r) {
        if (tau && tau->root_perm[r] != r) continue;
        bool orth = true;
        for (int g : gens)
          if (phi->inner(g, r)) orth = false;
        if (orth) gens.push_back(r);
      }
      if (static_cast<int>(gens.size()) < mult) throw bad();
    }
    return subsystem_closure(phi, gens, lab);
  }
  if (mult > 1) throw bad();
  if (t == 'A' && m >= 1 && m < phi->rank()) {
    std::vector<int> gens;
    if (phi->label() == "D4" && m == 2) {
      // the A2 fixed by triality: <e2-e3, e1+e3>
      gens = {phi->find(std::vector<int>{0, 1, -1, 0}), phi->find(std::vector<int>{1, 0, 1, 0})};
    } else {
      for (int i = 0; i < m; ++i) gens.push_back(phi->simple(i));
    }
    return subsystem_closure(phi, gens, lab);
  }
  if (t == 'D' && m >= 2 && (phi->type() == 'D' || phi->type() == 'E') && m <= (phi->type() == 'D' ? phi->rank() - 1 : (phi->rank() == 8 ? 8 : phi->rank() - 1))) {
    std::vector<int> roots;
    for (int r = 0; r < phi->size(); ++r) {
      auto c = phi->coords(r);
      int nz = 0;
      bool ok = true;
      for (int i = 0; i < dim; ++i) {
        if (!c[i]) continue;
        ++nz;
        if (i >= m || std::abs(c[i]) != unitv) ok = false;
      }
      if (ok && nz == 2) roots.push_back(r);
    }
    return Subsystem(phi, roots, lab);
  }
  throw bad();
}

ConditionResult check_condition_star(const Subsystem& delta) {
  const auto& phi = delta.ambient();
  for (int g = 0; g < phi.size(); ++g) {
    bool orth = true;
    for (int a : delta.roots())
      if (phi.inner(g, a)) {
        orth = false;
        break;
      }
    if (orth)
      return {false, "root " + phi.render(g) + " is orthogonal to the subsystem", {g}};
  }
  for (int b1 = 0; b1 < phi.size(); ++b1)
    for (int b2 = b1 + 1; b2 < phi.size(); ++b2) {
      if (phi.inner(b1, b2) != -1) continue;
      int b3 = phi.sum(b1, b2);
      std::vector<int> sub{b1, b2, b3, phi.neg(b1), phi.neg(b2), phi.neg(b3)};
      int inside = 0;
      for (int r : sub) inside += delta.contains(r);
      if (inside != 2) continue;
      bool orth = true;
      for (int a : delta.roots()) {
        if (std::find(sub.begin(), sub.end(), a) != sub.end()) continue;
        if (phi.inner(a, b1) || phi.inner(a, b2)) {
          orth = false;
          break;
        }
      }
      if (orth)
        return {false,
                "A1<=A2 through " + phi.render(b1) + ", " + phi.render(b2) + " with the rest orthogonal",
                {b1, b2}};
    }
  return {true, {}, {}};
}

BlockPartition::BlockPartition(const Subsystem& delta)
    : phi_(&delta.ambient()), block_of_(phi_->size(), -1), position_(phi_->size(), -1) {
  std::map<std::vector<int>, int> by_sig;
  for (int g = 0; g < phi_->size(); ++g) {
    std::vector<int> sig;
    for (int a : delta.roots()) sig.push_back(phi_->inner(g, a));
    auto [it, fresh] = by_sig.emplace(sig, static_cast<int>(blocks_.size()));
    if (fresh) blocks_.push_back(Block{{}, sig, delta.contains(g)});
    Block& b = blocks_[it->second];
    block_of_[g] = it->second;
    position_[g] = static_cast<int>(b.members.size());
    b.members.push_back(g);
  }
}

int BlockPartition::pairing(int b, int alpha) const { return phi_->inner(blocks_[b].members[0], alpha); }

BlockPartition compute_blocks(const Subsystem& delta) { return BlockPartition(delta); }

ConditionResult check_condition_star3(const Subsystem& delta, const BlockPartition& blocks) {
  const auto& phi = delta.ambient();
  for (const auto& b : blocks.blocks())
    if (b.members.size() == 3)
      return {false, "block of three roots at " + phi.render(b.members[0]), b.members};
  for (int g = 0; g < phi.size(); ++g) {
    if (delta.contains(g)) continue;
    bool ok = false;
    for (int a1 : delta.roots()) {
      if (phi.inner(g, a1) != -1) continue;
      for (int a2 : delta.roots())
        if (phi.inner(g, a2) == -1 && phi.inner(a1, a2) == 1) ok = true;
      if (ok) break;
    }
    if (!ok) return {false, "no A2 pair of the subsystem under " + phi.render(g), {g}};
  }
  return {true, {}, {}};
}

std::vector<BlockOrbit> weyl_orbits_of_blocks(const Subsystem& delta, const BlockPartition& blocks) {
  const auto& phi = delta.ambient();
  std::vector<int> orbit_of(blocks.size(), -1);
  std::vector<BlockOrbit> out;
  for (int b0 = 0; b0 < blocks.size(); ++b0) {
    if (orbit_of[b0] >= 0) continue;
    BlockOrbit o;
    o.in_delta = blocks.block(b0).in_delta;
    std::deque<int> queue{b0};
    orbit_of[b0] = static_cast<int>(out.size());
    while (!queue.empty()) {
      int b = queue.front();
      queue.pop_front();
      o.blocks.push_back(b);
      for (int a : delta.roots()) {
        int c = blocks.block_of(phi.reflect(a, blocks.block(b).members[0]));
        if (orbit_of[c] < 0) {
          orbit_of[c] = static_cast<int>(out.size());
          queue.push_back(c);
        }
      }
    }
    std::sort(o.blocks.begin(), o.blocks.end());
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::string> check_block_properties(const Subsystem& delta, const BlockPartition& blocks) {
  const auto& phi = delta.ambient();
  std::vector<std::string> bad;
  for (int g = 0; g < phi.size(); ++g) {
    if (delta.contains(g)) continue;
    bool any = false;
    for (int a1 : delta.roots()) {
      if (phi.inner(g, a1) != -1) continue;
      any = true;
      bool ok = false;
      for (int a2 : delta.roots())
        if (phi.inner(g, a2) == -1 && (phi.inner(a1, a2) == 0 || phi.inner(a1, a2) == 1)) ok = true;
      if (!ok) bad.push_back("item 2 fails at " + phi.render(g) + ", " + phi.render(a1));
    }
    if (!any) bad.push_back("item 1 fails at " + phi.render(g));
  }
  for (const auto& b : blocks.blocks()) {
    for (size_t i = 0; i < b.members.size(); ++i)
      for (size_t j = i + 1; j < b.members.size(); ++j)
        if (phi.inner(b.members[i], b.members[j]))
          bad.push_back("item 3 fails in block of " + phi.render(b.members[0]));
    if (b.members.size() > 3) bad.push_back("item 4 fails in block of " + phi.render(b.members[0]));
  }
  return bad;
}

std::optional<DiagramAutomorphism> diagram_automorphism(const RootSystem& phi, int order) {
  const int n = phi.rank();
  DiagramAutomorphism t;
  t.order = order;
  t.simple_perm.resize(n);
  std::iota(t.simple_perm.begin(), t.simple_perm.end(), 0);
  auto& p = t.simple_perm;
  if (order == 2 && phi.type() == 'A' && n >= 2) {
    for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
  } else if (order == 2 && phi.type() == 'D') {
    std::swap(p[n - 2], p[n - 1]);
  } else if (order == 3 && phi.label() == "D4") {
    p[0] = 2;
    p[2] = 3;
    p[3] = 0;
  } else if (order == 2 && phi.label() == "E6") {
    std::swap(p[0], p[5]);
    std::swap(p[2], p[4]);
  } else {
    return std::nullopt;
  }
  std::map<std::vector<int>, int> by_coeffs;
  for (int r = 0; r < phi.size(); ++r) {
    auto c = phi.simple_coeffs(r);
    by_coeffs[std::vector<int>(c.begin(), c.end())] = r;
  }
  t.root_perm.resize(phi.size());
  for (int r = 0; r < phi.size(); ++r) {
    auto c = phi.simple_coeffs(r);
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) d[p[i]] = c[i];
    t.root_perm[r] = by_coeffs.at(d);
  }
  return t;
}

}  // namespace sandwich
