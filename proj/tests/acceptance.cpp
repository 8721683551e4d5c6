// Acceptance suite: runs every top-level criterion and prints one pass/fail
// line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <vector>

#include "common.hpp"
#include "lcs/cycle.hpp"
#include "lcs/format.hpp"
#include "lcs/generate.hpp"
#include "lcs/liveness.hpp"
#include "lcs/reach_subsets.hpp"
#include "lcs/semantics.hpp"
#include "lcs/witness.hpp"

using namespace lcs;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint32_t popcount_mask(std::uint64_t m) {
  std::uint32_t n = 0;
  for (; m; m &= m - 1) ++n;
  return n;
}

// ---------------------------------------------------------------- criterion 1
void criterion_named_instances() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;

  System sys1 = testing::sys1();                       // final = {q0}
  System sys1_q1 = testing::with_final(sys1, {1});     // final = {q1}
  System sys2 = testing::sys2();                       // final = {q1}
  System sys2_q0 = testing::with_final(sys2, {0});

  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      detail += std::string(what) + "; ";
    }
  };

  // SYS1: LCR at {q1} true on every route.
  expect(lcr_subsets(sys1_q1).reachable, "sys1 lcr subsets");
  expect(lcr_witness(sys1_q1).reachable, "sys1 lcr witness");
  expect(bounded_reach_oracle(sys1_q1, {1}, 1).outcome == Outcome::kYes,
         "sys1 lcr oracle");

  // SYS1: LCL at {q0} true with the expected interface and gamma.
  Verdict v1s = lcl(sys1, ReachBackend::kSubsets);
  Verdict v1w = lcl(sys1, ReachBackend::kWitness);
  expect(v1s.answer && v1w.answer, "sys1 lcl");
  expect(v1s.interface == Interface{0b11, 0, 0}, "sys1 interface (subsets)");
  expect(v1w.interface == Interface{0b11, 0, 0}, "sys1 interface (witness)");
  expect(v1s.evidence && !v1s.evidence->via_read_only &&
             v1s.evidence->gamma == 0b11,
         "sys1 gamma {x,y}");
  expect(bounded_live_oracle(sys1, 1).outcome == Outcome::kYes,
         "sys1 live oracle");
  expect(bounded_saturated_cycle_oracle(sys1, {0b11, 0, 0}, 2).outcome ==
             Outcome::kYes,
         "sys1 cycle oracle");
  expect(cyc_bruteforce(sys1, {0b11, 0, 0}), "sys1 cyc enum");

  // SYS2: LCR at {q1} false, LCL at {q1} false.
  expect(!lcr_subsets(sys2).reachable, "sys2 lcr subsets");
  expect(!lcr_witness(sys2).reachable, "sys2 lcr witness");
  expect(bounded_reach_oracle(sys2, {1}, 3).outcome == Outcome::kNo,
         "sys2 reach oracle no");
  expect(!lcl(sys2, ReachBackend::kSubsets).answer, "sys2 lcl subsets");
  expect(!lcl(sys2, ReachBackend::kWitness).answer, "sys2 lcl witness");
  expect(bounded_live_oracle(sys2, 2).outcome == Outcome::kNo,
         "sys2 live oracle no");

  // SYS2 with final {q0}: live via a read-only cycle.
  Verdict v2s = lcl(sys2_q0, ReachBackend::kSubsets);
  Verdict v2w = lcl(sys2_q0, ReachBackend::kWitness);
  expect(v2s.answer && v2s.evidence && v2s.evidence->via_read_only,
         "sys2 q0 read-only (subsets)");
  expect(v2w.answer && v2w.evidence && v2w.evidence->via_read_only,
         "sys2 q0 read-only (witness)");
  expect(bounded_live_oracle(sys2_q0, 1).outcome == Outcome::kYes,
         "sys2 q0 live oracle");
  expect(bounded_saturated_cycle_oracle(sys2_q0, {0b01, 0, 0}, 1).outcome ==
             Outcome::kYes,
         "sys2 q0 cycle oracle");

  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    ok = false;
    detail += "runtime " + std::to_string(elapsed) + "s >= 1s";
  }
  report(1, "named instances SYS1/SYS2 across all engines and oracles", ok,
         detail.empty() ? "in " + std::to_string(elapsed) + "s" : detail);
}

// ------------------------------------------------------- criteria 2, 3, 5, 7
void criteria_corpus() {
  auto start = Clock::now();
  int lcr_disagreements = 0;
  int lcl_disagreements = 0;
  int oracle_violations = 0;
  int bound_violations = 0;
  int stratum_violations = 0;
  std::uint64_t first_bad_seed = 0;

  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    System s = generate_instance(testing::corpus_params(seed));

    ReachTable table = saturate_abstract(s);
    std::uint64_t bound = (StateMask{1} << s.contributor.state_count) *
                          s.leader.state_count * s.domain_size;
    if (table.explored() > bound) ++bound_violations;

    std::vector<char> is_final(s.leader.state_count, 0);
    for (StateId q : s.final_states) is_final[q] = 1;
    bool lcr_sub = false;
    for (const auto& st : table.order)
      if (is_final[st.leader_state]) {
        lcr_sub = true;
        break;
      }

    ShortValidTable wtable = valid_short_table(s);
    stratum_violations += static_cast<int>(wtable.stats.stratum_violations);
    bool lcr_wit = false;
    for (const auto& entries : wtable.entries) {
      for (const auto& [z_id, decomp] : entries) {
        const Witness& z = wtable.witnesses[z_id];
        if (z.init() == s.leader.initial && is_final[z.target]) {
          lcr_wit = true;
          break;
        }
      }
      if (lcr_wit) break;
    }
    if (lcr_sub != lcr_wit && ++lcr_disagreements == 1) first_bad_seed = seed;

    // LCL via both backends, reusing the computed tables.
    auto live_via = [&](const std::vector<Interface>& interfaces) {
      for (const Interface& iface : interfaces)
        if (cyc(s, iface).exists) return true;
      return false;
    };
    bool lcl_sub = live_via(interfaces_from_table(table, s.final_states));
    bool lcl_wit = live_via(interfaces_from_witness_table(wtable, s.final_states));
    if (lcl_sub != lcl_wit && ++lcl_disagreements == 1) first_bad_seed = seed;
    // The public drivers must agree with the table-level computation.
    if (lcl(s, ReachBackend::kSubsets).answer != lcl_sub) ++lcl_disagreements;

    // Oracle soundness sweep at t = 1..4.
    for (std::uint64_t t = 1; t <= 4; ++t) {
      if (bounded_reach_oracle(s, s.final_states, t).outcome == Outcome::kYes &&
          !(lcr_sub && lcr_wit))
        ++oracle_violations;
      if (bounded_live_oracle(s, t).outcome == Outcome::kYes &&
          !(lcl_sub && lcl_wit))
        ++oracle_violations;
    }
    std::vector<Interface> sampled = interfaces_from_table(table, std::nullopt);
    if (sampled.size() > 6) sampled.resize(6);
    for (const Interface& iface : sampled) {
      std::uint64_t size = popcount_mask(iface.contributor_set);
      for (std::uint64_t t = size; t <= 4; ++t) {
        if (bounded_saturated_cycle_oracle(s, iface, t).outcome ==
                Outcome::kYes &&
            !cyc(s, iface).exists)
          ++oracle_violations;
      }
    }
  }

  double elapsed = seconds_since(start);
  bool time_ok = elapsed < 300.0;
  report(2, "LCR engine equivalence on 300 generated systems",
         lcr_disagreements == 0 && time_ok,
         lcr_disagreements
             ? "disagreements=" + std::to_string(lcr_disagreements) +
                   " first seed " + std::to_string(first_bad_seed)
             : "0 disagreements in " + std::to_string(elapsed) + "s");
  report(3, "LCL backend equivalence on the same corpus",
         lcl_disagreements == 0,
         "disagreements=" + std::to_string(lcl_disagreements));
  report(5, "oracle soundness sweep (t = 1..4) over the corpus",
         oracle_violations == 0,
         "violations=" + std::to_string(oracle_violations));

  // Criterion 7, part 1 and 3: the saturation bound held everywhere and the
  // DP only paired adjacent strata.
  bool timing_ok = true;
  double worst = 0;
  for (std::uint64_t seed : {2ull, 5ull, 8ull, 11ull, 14ull}) {
    GenParams p = testing::corpus_params(seed);
    p.leader_states = 3;
    p.domain_size = 2;
    System s = generate_instance(p);
    auto t0 = Clock::now();
    ShortValidTable table = valid_short_table(s);
    double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    if (dt >= 10.0) timing_ok = false;
  }
  report(7, "complexity smoke: state bound, DP strata, witness timing",
         bound_violations == 0 && stratum_violations == 0 && timing_ok,
         "bound violations=" + std::to_string(bound_violations) +
             ", stratum violations=" + std::to_string(stratum_violations) +
             ", worst witness table " + std::to_string(worst) + "s");
}

// ---------------------------------------------------------------- criterion 4
void criterion_cyc_equivalence() {
  std::mt19937_64 rng(20240811);
  int disagreements = 0;
  int chain_violations = 0;
  for (int round = 0; round < 300; ++round) {
    GenParams p;
    p.leader_states = 1 + static_cast<std::uint32_t>(rng() % 3);
    p.contributor_states = 1 + static_cast<std::uint32_t>(rng() % 3);
    p.domain_size = 1 + static_cast<std::uint32_t>(rng() % 4);
    const double densities[] = {0.2, 0.4, 0.7};
    p.density = densities[rng() % 3];
    p.seed = rng();
    System s = generate_instance(p);

    StateMask all = (StateMask{1} << s.contributor.state_count) - 1;
    StateMask set = 0;
    while (set == 0) set = rng() & all;
    Interface iface{set, static_cast<StateId>(rng() % s.leader.state_count),
                    static_cast<Symbol>(rng() % s.domain_size)};

    CycResult fix = cyc(s, iface);
    if (fix.exists != cyc_bruteforce(s, iface)) ++disagreements;
    if (fix.chain.size() > s.domain_size + 1) ++chain_violations;
    for (std::size_t k = 1; k < fix.chain.size(); ++k) {
      bool shrinks = (fix.chain[k] & ~fix.chain[k - 1]) == 0 &&
                     popcount_mask(fix.chain[k]) <
                         popcount_mask(fix.chain[k - 1]);
      if (!shrinks) ++chain_violations;
    }
  }
  report(4, "CYC fixed point vs subset enumeration on 300 pairs",
         disagreements == 0 && chain_violations == 0,
         "disagreements=" + std::to_string(disagreements) +
             ", chain violations=" + std::to_string(chain_violations));
}

// ---------------------------------------------------------------- criterion 6
void criterion_operator_properties() {
  int monotonicity_violations = 0;
  {
    std::mt19937_64 rng(4321);
    for (int round = 0; round < 200; ++round) {
      GenParams p = testing::corpus_params(1 + rng() % 250);
      p.domain_size = 1 + static_cast<std::uint32_t>(rng() % 4);
      p.seed = rng();
      System s = generate_instance(p);
      StateMask all = (StateMask{1} << s.contributor.state_count) - 1;
      StateMask set = 0;
      while (set == 0) set = rng() & all;
      Interface iface{set, static_cast<StateId>(rng() % s.leader.state_count),
                      static_cast<Symbol>(rng() % s.domain_size)};
      SymbolMask full = (SymbolMask{1} << s.domain_size) - 1;
      SymbolMask x = rng() & full;
      SymbolMask xp = x | (rng() & full);
      if ((writes_scc(s, iface, x) & ~writes_scc(s, iface, xp)) != 0)
        ++monotonicity_violations;
    }
  }

  int shrink_violations = 0;
  int lvalid_violations = 0;
  {
    std::mt19937_64 rng(8765);
    int produced = 0;
    while (produced < 1000) {
      System s = generate_instance(testing::corpus_params(1 + rng() % 250));
      for (int i = 0; i < 20 && produced < 1000; ++i, ++produced) {
        Witness w = testing::random_witness(s, rng, 8);
        Witness once = shrink_star(w);
        if (shrink_star(once) != once || !once.is_short())
          ++shrink_violations;
        Witness valid;
        FirstWriteSeq beta;
        testing::random_valid_witness(s, rng, 7, &valid, &beta);
        if (!leader_valid(s, valid, beta) ||
            !leader_valid(s, shrink_star(valid), beta))
          ++lvalid_violations;
      }
    }
  }

  int invariance_violations = 0;
  {
    std::mt19937_64 rng(1357);
    int produced = 0;
    while (produced < 200) {
      System s = generate_instance(testing::corpus_params(1 + rng() % 250));
      for (int i = 0; i < 10 && produced < 200; ++i, ++produced) {
        Witness valid;
        FirstWriteSeq beta;
        testing::random_valid_witness(s, rng, 7, &valid, &beta);
        if (full_expr_states(s, valid, beta) !=
            full_expr_states(s, shrink_star(valid), beta))
          ++invariance_violations;
      }
    }
  }

  report(6, "operator properties (monotonicity, shrink, invariance)",
         monotonicity_violations == 0 && shrink_violations == 0 &&
             lvalid_violations == 0 && invariance_violations == 0,
         "monotonicity=" + std::to_string(monotonicity_violations) +
             ", shrink=" + std::to_string(shrink_violations) +
             ", lvalid=" + std::to_string(lvalid_violations) +
             ", full-expr=" + std::to_string(invariance_violations));
}

// ---------------------------------------------------------------- criterion 8
void criterion_parser() {
  int roundtrip_failures = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    System s = generate_instance(testing::corpus_params(seed));
    try {
      if (parse_system(serialize_system(s)) != s) ++roundtrip_failures;
    } catch (const ModelError&) {
      ++roundtrip_failures;
    }
  }

  int crashes = 0;
  int unpositioned = 0;
  std::mt19937_64 rng(11111);
  std::vector<std::string> bases{
      testing::kSys1, testing::kSys2,
      serialize_system(generate_instance(testing::corpus_params(23)))};
  for (int round = 0; round < 100; ++round) {
    std::string doc = bases[round % bases.size()];
    int edits = 1 + static_cast<int>(rng() % 6);
    for (int e = 0; e < edits && !doc.empty(); ++e) {
      std::size_t at = rng() % doc.size();
      switch (rng() % 3) {
        case 0: doc[at] = static_cast<char>(32 + rng() % 95); break;
        case 1: doc.erase(at, 1); break;
        default: doc.insert(at, 1, static_cast<char>(32 + rng() % 95)); break;
      }
    }
    try {
      System s = parse_system(doc);
      validate(s);
    } catch (const ParseError& e) {
      if (e.line < 1 || e.column < 1) ++unpositioned;
    } catch (const SemanticError&) {
      // Structured diagnostic naming the offending identifier.
    } catch (...) {
      ++crashes;
    }
  }
  report(8, "parser roundtrip on the corpus and 100 fuzzed documents",
         roundtrip_failures == 0 && crashes == 0 && unpositioned == 0,
         "roundtrip failures=" + std::to_string(roundtrip_failures) +
             ", crashes=" + std::to_string(crashes) +
             ", unpositioned=" + std::to_string(unpositioned));
}

}  // namespace

int main() {
  auto start = Clock::now();
  criterion_named_instances();
  criteria_corpus();
  criterion_cyc_equivalence();
  criterion_operator_properties();
  criterion_parser();
  std::printf("%d of 8 criteria passed in %.1fs\n", 8 - failures,
              seconds_since(start));
  return failures;
}
