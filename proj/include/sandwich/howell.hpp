#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sandwich::howell {

using Row = std::vector<std::int64_t>;

// Howell normal form of a subgroup of (Z/m)^cols.  Rows are sorted by
// pivot column, each pivot divides m, entries above a pivot are reduced
// modulo it, and every element whose leading columns vanish is in the
// span of the rows with later pivots.  The form is unique per subgroup.
struct Form {
  std::int64_t modulus = 1;
  int cols = 0;
  std::vector<Row> rows;
  std::vector<int> pivots;

  friend bool operator==(const Form&, const Form&) = default;
};

Form reduce(std::vector<Row> rows, int cols, std::int64_t m);
bool contains(const Form& f, Row v);
// Rows of f whose pivot is at or after column c.
std::vector<Row> rows_from(const Form& f, int c);

}  // namespace sandwich::howell
