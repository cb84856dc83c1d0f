#pragma once

#include <set>
#include <vector>

#include "sandwich/finring.hpp"

namespace sandwich::oracle {

// Residue field F2 decided by listing all additive maps R -> F2 and
// testing them for multiplicativity.
bool has_f2_homomorphism(const FiniteRing& r);

// The R-span of gens as an explicit element set, built by closing under
// addition and scalar multiplication.
std::set<RingVector> span_elements(const FiniteRing& r, int rank, const std::vector<RingVector>& gens);

// Number of R-submodules of R^k found by closing every subset of the
// cyclic submodules under sums.  Only for tiny |R|^k.
int count_submodules(const FiniteRing& r, int rank);

}  // namespace sandwich::oracle
