// One line per acceptance criterion; exit status 1 if any line fails.
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sandwich/cases.hpp"
#include "sandwich/oracles.hpp"
#include "sandwich/somodel.hpp"
#include "sandwich/suites.hpp"

using namespace sandwich;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int k, const std::string& title, double budget, const std::function<Outcome()>& body) {
  Stopwatch sw;
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = sw.seconds();
  if (t > budget) {
    o.ok = false;
    o.detail += "; over the time budget";
  }
  failures += !o.ok;
  std::cout << "criterion " << std::setw(2) << k << ": " << (o.ok ? "PASS" : "FAIL") << "  " << title << " ["
            << o.detail << "] " << std::fixed << std::setprecision(1) << t << "s" << std::endl;
}

struct Tally {
  int pass = 0, fail = 0, skipped = 0, overflow = 0;
  std::vector<std::string> failed;

  void add(const std::vector<Check>& cs) {
    for (const auto& c : cs) {
      switch (c.status) {
        case Status::pass: ++pass; break;
        case Status::fail:
          ++fail;
          failed.push_back(c.name);
          break;
        case Status::skipped: ++skipped; break;
        case Status::overflow: ++overflow; break;
      }
    }
  }
  std::string str() const {
    std::ostringstream os;
    os << pass << " pass, " << fail << " fail, " << skipped << " skipped, " << overflow << " overflow";
    for (size_t i = 0; i < failed.size() && i < 3; ++i) os << "; failed: " << failed[i];
    return os.str();
  }
};

int orbits_with_block_size(const Context& ctx, size_t size) {
  int n = 0;
  for (int o : ctx.non_delta_orbits()) n += ctx.blocks().block(ctx.orbits()[o].blocks[0]).members.size() == size;
  return n;
}

Outcome blocks_and_orbits() {
  std::ostringstream os;
  bool ok = true;
  auto e6 = Context::make("E6", "4A1", "F2");
  const int e6_total = static_cast<int>(e6->non_delta_orbits().size());
  const int e6_one = orbits_with_block_size(*e6, 1), e6_two = orbits_with_block_size(*e6, 2);
  ok = ok && e6_total == 7 && e6_one == 1 && e6_two == 6;
  os << "4A1<=E6: " << e6_total << " orbits (" << e6_one << " of singletons, " << e6_two << " of pairs)";
  for (int l = 2; l <= 4; ++l) {
    auto c = Context::make("A" + std::to_string(2 * l - 1), std::to_string(l) + "A1", "F2");
    const int n = static_cast<int>(c->non_delta_orbits().size());
    const int two = orbits_with_block_size(*c, 2);
    ok = ok && n == l * (l - 1) / 2 && two == n;
    os << "; " << l << "A1: " << n;
  }
  auto d4 = Context::make("D4", "A2", "F2");
  int three = 0;
  for (int b = 0; b < d4->blocks().size(); ++b)
    three += !d4->blocks().block(b).in_delta && d4->blocks().block(b).members.size() == 3;
  const int d4_orbits = static_cast<int>(d4->non_delta_orbits().size());
  ok = ok && three == 6 && d4_orbits == 2 && orbits_with_block_size(*d4, 3) == 2;
  os << "; A2<=D4: " << three << " three-root blocks in " << d4_orbits << " orbits";
  return {ok, os.str()};
}

Outcome block_properties() {
  Tally t;
  int checked = 0;
  for (const auto& f : fixtures()) {
    auto delta = subsystem_preset(build_root_system(f.system), f.subsystem);
    if (!check_condition_star(delta).holds) continue;
    ++checked;
    BlockPartition bp(delta);
    auto problems = check_block_properties(delta, bp);
    t.add({make_check(f.subsystem + "<=" + f.system, "", problems.empty())});
  }
  return {t.fail == 0 && checked > 0, std::to_string(checked) + " fixtures with (*); " + t.str()};
}

Outcome so_model() {
  Tally t;
  std::ostringstream os;
  bool counts = true;
  for (auto [n, ring, subs] : {std::tuple{3, "F3", 6}, std::tuple{4, "F2", 5}}) {
    auto cs = so_case_checks(n, parse_ring(ring));
    int lev = 0;
    for (const auto& c : cs) lev += c.name == "lev(H_A) = A" && c.status == Status::pass;
    counts = counts && lev == subs;
    os << "n=" << n << "/" << ring << ": " << lev << "/" << subs << " submodules; ";
    t.add(cs);
  }
  os << t.str();
  return {counts && t.fail == 0, os.str()};
}

Outcome level_lattice() {
  std::ostringstream os;
  bool ok = true;
  for (auto [ring, want] : {std::pair{"F2", 5}, std::pair{"F3", 6}}) {
    auto ctx = Context::make("D4", "D3", ring);
    auto e = enumerate_levels(ctx);
    int levels = 0, unique = 0;
    for (const auto& r : e.records) {
      levels += r.level;
      unique += r.level && level_uniqueness_scan(r.sigma);
    }
    const int subs = static_cast<int>(enumerate_submodules(2, ctx->ring_ptr()).size());
    ok = ok && levels == want && subs == want && unique == levels && static_cast<int>(e.records.size()) == levels &&
         e.inconsistent == 0;
    os << ring << ": " << levels << " levels, " << subs << " submodules of R^2, " << unique << " unique; ";
  }
  return {ok, os.str()};
}

Outcome a2d4() {
  Tally t;
  bool example = false;
  for (const char* ring : {"F2", "F3", "Z/4", "F4"}) {
    auto cs = a2d4_correspondence_scan(parse_ring(ring));
    for (const auto& c : cs)
      if (std::string(ring) == "F2" && c.name.starts_with("almost level that is not a level"))
        example = c.status == Status::pass;
    t.add(cs);
  }
  return {example && t.fail == 0, std::string("(R,0) over F2 ") + (example ? "almost but not level" : "missing") +
                                       "; " + t.str()};
}

Outcome algebra_suites() {
  Tally t;
  SuiteConfig cfg;
  t.add(axioms_suite(cfg));
  int lmax = 0;
  for (const char* ring : {"F2", "F3"}) {
    cfg.ring = ring;
    auto cs = graded_suite(cfg);
    for (const auto& c : cs) lmax += c.name.starts_with("lev of L_max") && c.status == Status::pass;
    t.add(cs);
  }
  return {t.fail == 0 && lmax > 0, t.str() + "; " + std::to_string(lmax) + " fixtures with every almost level fixed"};
}

Outcome tandems() {
  Tally t;
  SuiteConfig cfg;
  cfg.samples = 1000;
  for (const char* ring : {"F2", "F3", "Z/4"}) {
    cfg.ring = ring;
    t.add(tandems_suite(cfg));
  }
  return {t.fail == 0 && t.pass == 18, "6 identities x 3 rings x 1000 samples; " + t.str()};
}

Outcome square_term() {
  std::ostringstream os;
  bool ok = true;
  for (const char* ring : {"Z/3", "Z/4", "F4", "Z/6", "Z/9"}) {
    SuiteConfig cfg;
    cfg.ring = ring;
    auto cs = square_term_suite(cfg);
    const auto& c = cs[1];
    const bool holds = c.witness["holds"].get<bool>();
    ok = ok && holds && c.witness["max_rank"] == 3;
    os << ring << (holds ? " holds" : " fails") << (c.witness["condition_starstar"].get<bool>() ? "" : " (no (**))")
       << "; ";
    ok = ok && cs[0].status == Status::pass;
  }
  auto f2 = parse_ring("F2");
  RingVector x{f2->one(), f2->zero()}, y{f2->zero(), f2->one()};
  const bool detected = !square_term_span(f2, x, y).contains(x);
  ok = ok && detected;
  os << "F2 counterexample " << (detected ? "detected" : "missed") << "; (**) agrees with the oracle on "
     << shipped_rings().size() << " rings";
  return {ok, os.str()};
}

Outcome sandwich_witnesses() {
  Tally t;
  bool equal = true;
  for (auto [sys, sub, ring] : {std::tuple{"D4", "D3", "F2"}, std::tuple{"A3", "2A1", "F3"}}) {
    SuiteConfig cfg;
    cfg.system = sys;
    cfg.subsystem = sub;
    cfg.ring = ring;
    auto cs = sandwich_suite(cfg);
    for (const auto& c : cs)
      if (c.name.starts_with("invariant level lower bound") && c.name.find("extra") == std::string::npos)
        equal = equal && c.witness["equal"].get<bool>();
    t.add(cs);
  }
  return {t.fail == 0 && equal && t.pass > 0,
          t.str() + "; lower bound for E(sigma) " + (equal ? "equals sigma" : "differs")};
}

Outcome folded() {
  Tally t;
  for (auto [n, ring] : {std::pair{4, "F2"}, std::pair{4, "F3"}, std::pair{3, "F3"}})
    t.add(folded_diagonal_check(n, parse_ring(ring)));
  for (const char* ring : {"F2", "F3"}) t.add(cl_diagonal_scan(2, parse_ring(ring)));
  return {t.fail == 0 && t.pass > 0, t.str()};
}

}  // namespace

int main() {
  criterion(1, "block and orbit counts", 30, blocks_and_orbits);
  criterion(2, "block properties on fixtures", 30, block_properties);
  criterion(3, "orthogonal group model", 120, so_model);
  criterion(4, "level lattice of D3<=D4", 300, level_lattice);
  criterion(5, "A2<=D4 ideal pairs", 300, a2d4);
  criterion(6, "algebra property suites", 600, algebra_suites);
  criterion(7, "tandem identities", 300, tandems);
  criterion(8, "square-term property", 60, square_term);
  criterion(9, "sandwich witnesses", 600, sandwich_witnesses);
  criterion(10, "folded diagonal levels", 300, folded);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria pass"))
            << std::endl;
  return failures ? 1 : 0;
}
