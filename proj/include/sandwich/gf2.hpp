#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sandwich {

// Gaussian elimination over F2; rows are bit vectors with the right-hand
// side in bit `cols`.
inline std::optional<std::vector<int>> solve_gf2(std::vector<std::vector<std::uint64_t>> rows, int cols) {
  const int W = (cols + 64) / 64;
  auto bit = [](const std::vector<std::uint64_t>& r, int c) { return (r[c / 64] >> (c % 64)) & 1; };
  std::vector<int> pivcol;
  size_t rank = 0;
  for (int c = 0; c < cols && rank < rows.size(); ++c) {
    size_t p = rank;
    while (p < rows.size() && !bit(rows[p], c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != rank && bit(rows[i], c))
        for (int w = 0; w < W; ++w) rows[i][w] ^= rows[rank][w];
    pivcol.push_back(c);
    ++rank;
  }
  for (size_t i = rank; i < rows.size(); ++i)
    if (bit(rows[i], cols)) return std::nullopt;
  std::vector<int> x(cols, 0);
  for (size_t i = 0; i < rank; ++i) x[pivcol[i]] = static_cast<int>(bit(rows[i], cols));
  return x;
}

}  // namespace sandwich
