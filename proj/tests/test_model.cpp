#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "lcs/format.hpp"
#include "lcs/generate.hpp"

using namespace lcs;

TEST_CASE("SYS1 parses to the expected shape") {
  System s = testing::sys1();
  CHECK(s.domain_size == 2);
  CHECK(s.symbol_names == std::vector<std::string>{"x", "y"});
  CHECK(s.initial_value == 0);
  CHECK(s.leader.state_count == 2);
  CHECK(s.leader.initial == 0);
  CHECK(s.contributor.state_count == 2);
  CHECK(s.final_states == std::vector<StateId>{0});
  CHECK(s.leader.transitions.size() == 2);
  CHECK(s.contributor.transitions.size() == 2);
  // q0 -?y-> q1 and q1 -!x-> q0, in canonical order.
  CHECK(s.leader.transitions[0] == Transition{0, MemOp::read(1), 1});
  CHECK(s.leader.transitions[1] == Transition{1, MemOp::write(0), 0});
}

TEST_CASE("SYS2 parses with final = {q1}") {
  System s = testing::sys2();
  CHECK(s.final_states == std::vector<StateId>{1});
  CHECK(s.leader.state_count == 2);
  CHECK(s.contributor.state_count == 1);
}

TEST_CASE("missing init is a semantic error naming the block") {
  const char* doc = R"(
    system {
      domain = [x]
      init = x
      leader { q0 -> q0 : !x }
      contributor { init = c0 }
    }
  )";
  CHECK_THROWS_WITH_AS(parse_system(doc), "leader missing init", SemanticError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_system("system {\n  domain = [x\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 1);
  }
}

TEST_CASE("semantic diagnostics name the offending identifier") {
  const char* doc = R"(
    system {
      domain = [x]
      init = x
      leader { init = q0 q0 -> q0 : !z }
      contributor { init = c0 }
    }
  )";
  CHECK_THROWS_WITH_AS(parse_system(doc), "unknown symbol 'z'", SemanticError);

  const char* empty_domain = R"(
    system {
      domain = []
      init = x
      leader { init = q0 }
      contributor { init = c0 }
    }
  )";
  CHECK_THROWS_WITH_AS(parse_system(empty_domain), "empty domain", SemanticError);
}

TEST_CASE("declared state lists close the name space") {
  const char* doc = R"(
    system {
      domain = [x]
      init = x
      leader { states = [q0] init = q0 q0 -> q1 : !x }
      contributor { init = c0 }
    }
  )";
  CHECK_THROWS_WITH_AS(parse_system(doc), "leader: unknown state 'q1'",
                       SemanticError);
}

TEST_CASE("serialization is canonical and reparses to the same system") {
  System s = testing::sys1();
  std::string text = serialize_system(s);
  CHECK(parse_system(text) == s);
  CHECK(serialize_system(parse_system(text)) == text);

  // Final-state listing appears even when empty.
  System no_final = testing::with_final(testing::sys1(), {});
  std::string text2 = serialize_system(no_final);
  CHECK(parse_system(text2) == no_final);
}

TEST_CASE("system with no contributor transitions roundtrips") {
  System s = testing::sys1();
  s.contributor.transitions.clear();
  CHECK(parse_system(serialize_system(s)) == s);
}

TEST_CASE("generated corpus roundtrips exactly") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    System s = generate_instance(testing::corpus_params(seed));
    CAPTURE(seed);
    CHECK(parse_system(serialize_system(s)) == s);
  }
  // Default parameters, seed 7.
  GenParams p;
  p.seed = 7;
  System s = generate_instance(p);
  CHECK(parse_system(serialize_system(s)) == s);
}

TEST_CASE("generator is a pure function of its parameters") {
  GenParams p;
  p.leader_states = 3;
  p.contributor_states = 3;
  p.domain_size = 2;
  p.density = 0.4;
  p.seed = 42;
  System a = generate_instance(p);
  System b = generate_instance(p);
  CHECK(a == b);
  CHECK(serialize_system(a) == serialize_system(b));
}

TEST_CASE("density one yields the complete transition relation") {
  GenParams p;
  p.leader_states = 3;
  p.contributor_states = 2;
  p.domain_size = 2;
  p.density = 1.0;
  p.seed = 5;
  System s = generate_instance(p);
  CHECK(s.leader.transitions.size() == 3u * 3u * (2u * 2u + 1u));
  CHECK(s.contributor.transitions.size() == 2u * 2u * (2u * 2u + 1u));
}

TEST_CASE("fuzzed documents never crash the parser") {
  std::mt19937_64 rng(2024);
  std::vector<std::string> seeds{testing::kSys1, testing::kSys2,
                                 serialize_system(generate_instance(
                                     testing::corpus_params(11)))};
  int parsed = 0, rejected = 0;
  for (int round = 0; round < 100; ++round) {
    std::string doc = seeds[round % seeds.size()];
    int edits = 1 + static_cast<int>(rng() % 8);
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
      ++parsed;
    } catch (const ModelError&) {
      ++rejected;
    }
  }
  CHECK(parsed + rejected == 100);
}

TEST_CASE("interface rendering uses model names") {
  System s = testing::sys1();
  Interface i{0b11, 0, 0};
  CHECK(interface_to_string(i, s) == "c0+c1:q0:x");
}
