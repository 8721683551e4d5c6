#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "lcs/generate.hpp"
#include "lcs/reach_subsets.hpp"
#include "lcs/semantics.hpp"

using namespace lcs;

TEST_CASE("saturation of SYS1 reaches exactly the expected table") {
  System s = testing::sys1();
  ReachTable table = saturate_abstract(s);
  REQUIRE(table.entries.size() == 2);
  CHECK(table.entries.at(0b01) ==
        std::vector<std::pair<StateId, Symbol>>{{0, 0}});
  CHECK(table.entries.at(0b11) ==
        std::vector<std::pair<StateId, Symbol>>{{0, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("saturation of SYS2 never leaves the initial entry") {
  System s = testing::sys2();
  ReachTable table = saturate_abstract(s);
  REQUIRE(table.entries.size() == 1);
  CHECK(table.entries.at(0b01) ==
        std::vector<std::pair<StateId, Symbol>>{{0, 0}});
}

TEST_CASE("a leader write loop saturates the memory values") {
  System s = parse_system(R"(
    system {
      domain = [x, y]
      init = x
      leader { init = q0 q0 -> q0 : !y }
      contributor { init = c0 }
    }
  )");
  ReachTable table = saturate_abstract(s);
  CHECK(table.entries.at(0b01) ==
        std::vector<std::pair<StateId, Symbol>>{{0, 0}, {0, 1}});
  CHECK(table.explored() == 2);
}

TEST_CASE("lcr_subsets verdicts and witnesses on the running examples") {
  System s1_q1 = testing::with_final(testing::sys1(), {1});
  SubsetsResult r = lcr_subsets(s1_q1);
  CHECK(r.reachable);
  REQUIRE(r.interface.has_value());
  CHECK(*r.interface == Interface{0b11, 1, 1});
  REQUIRE(!r.trace.empty());
  CHECK(r.trace.front() == AbstractState{0b01, 0, 0});
  CHECK(r.trace.back() == AbstractState{0b11, 1, 1});

  CHECK_FALSE(lcr_subsets(testing::sys2()).reachable);

  // Initial state final: empty trace up to the root.
  SubsetsResult r0 = lcr_subsets(testing::sys1());
  CHECK(r0.reachable);
  CHECK(*r0.interface == Interface{0b01, 0, 0});
  CHECK(r0.trace.size() == 1);
}

TEST_CASE("interface extraction from the table") {
  System s1 = testing::sys1();
  ReachTable table = saturate_abstract(s1);
  auto final_q0 = interfaces_from_table(table, std::vector<StateId>{0});
  CHECK(std::find(final_q0.begin(), final_q0.end(), Interface{0b01, 0, 0}) !=
        final_q0.end());
  CHECK(std::find(final_q0.begin(), final_q0.end(), Interface{0b11, 0, 0}) !=
        final_q0.end());

  auto all = interfaces_from_table(table);
  std::size_t pairs = 0;
  for (const auto& [set, qa] : table.entries) pairs += qa.size();
  CHECK(all.size() == pairs);
  CHECK(std::is_sorted(all.begin(), all.end()));

  ReachTable t2 = saturate_abstract(testing::sys2());
  CHECK(interfaces_from_table(t2, std::vector<StateId>{1}).empty());
}

TEST_CASE("contributor sets only grow along provenance chains") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    System s = generate_instance(testing::corpus_params(seed));
    ReachTable table = saturate_abstract(s);
    for (std::size_t i = 0; i < table.order.size(); ++i) {
      std::int64_t p = table.parent[i];
      if (p < 0) continue;
      StateMask mine = table.order[i].contributor_set;
      StateMask parents = table.order[p].contributor_set;
      CHECK((parents & ~mine) == 0);
    }
  }
}

TEST_CASE("explored abstract states stay within 2^C * L * D") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    System s = generate_instance(testing::corpus_params(seed));
    ReachTable table = saturate_abstract(s);
    std::uint64_t bound = (StateMask{1} << s.contributor.state_count) *
                          s.leader.state_count * s.domain_size;
    CHECK(table.explored() <= bound);
  }
}

TEST_CASE("oracle soundness and exactness against the bounded search") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    System s = generate_instance(testing::corpus_params(seed));
    CAPTURE(seed);
    bool engine = lcr_subsets(s).reachable;
    bool oracle_any = false;
    for (std::uint64_t t = 1; t <= s.contributor.state_count + 1; ++t) {
      auto r = bounded_reach_oracle(s, s.final_states, t);
      REQUIRE(r.outcome != Outcome::kInconclusive);
      if (r.outcome == Outcome::kYes) {
        oracle_any = true;
        break;
      }
    }
    // Exact in both directions: t <= C+1 realizes any abstract witness.
    CHECK(engine == oracle_any);
  }
}

TEST_CASE("subset engine rejects contributors beyond the mask width") {
  System s = testing::sys1();
  s.contributor.state_count = 65;
  s.contributor.state_names.clear();
  for (int i = 0; i < 65; ++i)
    s.contributor.state_names.push_back("c" + std::to_string(i));
  CHECK_THROWS_AS(saturate_abstract(s), CapacityError);
}
