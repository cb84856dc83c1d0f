#include "sandwich/howell.hpp"

#include <numeric>
#include <tuple>
#include <utility>

namespace sandwich::howell {

namespace {

using i64 = std::int64_t;

i64 mod(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// s*a + t*b = g
i64 xgcd(i64 a, i64 b, i64& s, i64& t) {
  i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b) {
    i64 q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  s = s0;
  t = t0;
  return a;
}

bool is_zero(const Row& r) {
  for (i64 x : r)
    if (x) return false;
  return true;
}

// Afterwards p[c] = gcd(p[c], q[c]) and q[c] = 0; the transform is unimodular.
void combine(Row& p, Row& q, int c, i64 m) {
  i64 a = p[c], b = q[c];
  const int n = static_cast<int>(p.size());
  if (b % a == 0) {
    i64 k = b / a;
    for (int j = c; j < n; ++j) q[j] = mod(q[j] - k * p[j], m);
    return;
  }
  if (a % b == 0) {
    std::swap(p, q);
    combine(p, q, c, m);
    return;
  }
  i64 s, t;
  i64 g = xgcd(a, b, s, t);
  i64 ag = a / g, bg = b / g;
  for (int j = c; j < n; ++j) {
    i64 x = p[j], y = q[j];
    p[j] = mod(s * x + t * y, m);
    q[j] = mod(bg * x - ag * y, m);
  }
}

i64 normalizing_unit(i64 a, i64 m) {
  i64 g = std::gcd(a, m);
  i64 mg = m / g;
  i64 s, t;
  xgcd(mod(a / g, mg), mg, s, t);
  i64 u = mod(s, mg);
  while (std::gcd(u, m) != 1) u += mg;
  return u;
}

}  // namespace

Form reduce(std::vector<Row> rows, int cols, std::int64_t m) {
  Form f;
  f.modulus = m;
  f.cols = cols;
  std::vector<Row> pending;
  pending.reserve(rows.size());
  for (auto& r : rows) {
    for (auto& x : r) x = mod(x, m);
    if (!is_zero(r)) pending.push_back(std::move(r));
  }
  for (int c = 0; c < cols && !pending.empty(); ++c) {
    int pi = -1;
    for (size_t i = 0; i < pending.size(); ++i) {
      if (pending[i][c] == 0) continue;
      if (pi < 0) {
        pi = static_cast<int>(i);
        continue;
      }
      combine(pending[pi], pending[i], c, m);
    }
    if (pi < 0) continue;
    Row p = std::move(pending[pi]);
    pending[pi] = std::move(pending.back());
    pending.pop_back();
    std::erase_if(pending, is_zero);

    i64 u = normalizing_unit(p[c], m);
    if (u != 1)
      for (int j = c; j < cols; ++j) p[j] = p[j] * u % m;
    i64 g = p[c];
    if (g != 1) {
      Row ann(cols, 0);
      for (int j = c; j < cols; ++j) ann[j] = p[j] * (m / g) % m;
      if (!is_zero(ann)) pending.push_back(std::move(ann));
    }
    f.rows.push_back(std::move(p));
    f.pivots.push_back(c);
  }
  for (size_t i = 0; i < f.rows.size(); ++i) {
    const int c = f.pivots[i];
    const i64 g = f.rows[i][c];
    for (size_t j = 0; j < i; ++j) {
      i64 k = f.rows[j][c] / g;
      if (!k) continue;
      for (int x = c; x < cols; ++x) f.rows[j][x] = mod(f.rows[j][x] - k * f.rows[i][x], m);
    }
  }
  return f;
}

bool contains(const Form& f, Row v) {
  const i64 m = f.modulus;
  for (auto& x : v) x = mod(x, m);
  size_t i = 0;
  for (int c = 0; c < f.cols; ++c) {
    if (i < f.rows.size() && f.pivots[i] == c) {
      const Row& r = f.rows[i++];
      if (v[c] % r[c]) return false;
      i64 k = v[c] / r[c];
      if (k)
        for (int x = c; x < f.cols; ++x) v[x] = mod(v[x] - k * r[x], m);
    } else if (v[c]) {
      return false;
    }
  }
  return true;
}

std::vector<Row> rows_from(const Form& f, int c) {
  std::vector<Row> out;
  for (size_t i = 0; i < f.rows.size(); ++i)
    if (f.pivots[i] >= c) out.push_back(f.rows[i]);
  return out;
}

}  // namespace sandwich::howell
