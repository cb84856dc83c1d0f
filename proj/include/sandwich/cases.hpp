#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sandwich/levels.hpp"
#include "sandwich/overgroups.hpp"
#include "sandwich/report.hpp"

namespace sandwich {

// Lift of a diagram automorphism tau to L(Phi,Z): e_r -> sign[r] e_{tau r},
// chosen with sign +1 on the roots of delta and of order ord(tau).
struct Folding {
  int order = 1;
  std::vector<int> perm;
  std::vector<int> sign;
};

std::optional<Folding> make_folding(const StructureConstants& sc, const Subsystem& delta, int order);

// Fixed vector of the lift inside a block, which must be a single tau-orbit.
RingVector diagonal_vector(const Context& ctx, const Folding& f, int block);

// One ideal per non-delta orbit, keyed by orbit index.
using IdealCollection = std::map<int, Submodule>;

PropagationResult diagonal_prelevel(const ContextPtr& ctx, const Folding& f, const IdealCollection& ideals);

// The folded root system read off from the tau-orbits: conditions on
// obtuse pairs, on orthogonal short pairs (with the factor 2), and
// sigma = R on the subsystem.  Used for F4 from E6 and C_l from A_{2l-1}.
bool folded_net_predicate(const Context& ctx, const Folding& f, const IdealCollection& ideals);

struct PairPredicates {
  bool almost_level = false;
  bool level = false;
};

PairPredicates a2d4_pair_predicates(const Submodule& A, const Submodule& B);

// Name of a non-delta orbit in the folded system, e.g. "short:e1-e3".
std::string folded_orbit_label(const Context& ctx, const Folding& f, int orbit);

struct CaseContext {
  ContextPtr ctx;
  Folding folding;
};

CaseContext f4_case(const std::string& ring);
CaseContext cl_case(int l, const std::string& ring);
CaseContext a2d4_case(const std::string& ring);
CaseContext bn_case(int n, const std::string& ring);

std::vector<Check> a2d4_correspondence_scan(RingPtr ring);
std::vector<Check> cl_diagonal_scan(int l, RingPtr ring);
// Exhaustive over ideal tuples when their number is at most the bound,
// otherwise a seeded sample of that many tuples.
std::vector<Check> f4_diagonal_scan(RingPtr ring, std::uint64_t bound, std::uint64_t seed);

// The overgroup generated by E(D_{n-1},R) and the diagonal block
// unipotents has the diagonal level.
std::vector<Check> folded_diagonal_check(int n, RingPtr ring, std::uint64_t bound = kDefaultEnumerationBound);

}  // namespace sandwich
