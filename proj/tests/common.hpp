#ifndef LCS_TESTS_COMMON_HPP_
#define LCS_TESTS_COMMON_HPP_

#include <random>
#include <string>
#include <vector>

#include "lcs/format.hpp"
#include "lcs/generate.hpp"
#include "lcs/model.hpp"
#include "lcs/witness.hpp"

namespace lcs::testing {

// The two running examples used across the suites.
inline const char* kSys1 = R"(
system {
  domain = [x, y]
  init = x
  leader {
    init = q0
    final = [q0]
    q0 -> q1 : ?y
    q1 -> q0 : !x
  }
  contributor {
    init = c0
    c0 -> c1 : !y
    c1 -> c0 : ?x
  }
}
)";

inline const char* kSys2 = R"(
system {
  domain = [x, y]
  init = x
  leader {
    init = q0
    final = [q1]
    q0 -> q1 : ?y
  }
  contributor {
    init = c0
    c0 -> c0 : ?x
  }
}
)";

inline System sys1() { return parse_system(kSys1); }

inline System sys2() { return parse_system(kSys2); }

inline System with_final(System s, std::vector<StateId> final_states) {
  s.final_states = std::move(final_states);
  canonicalize(s);
  return s;
}

// Deterministic parameter sweep shared by property and acceptance tests:
// L, C in 1..3, D in 1..2, densities cycling over {0.2, 0.4, 0.7}.
inline GenParams corpus_params(std::uint64_t seed) {
  static const double kDensities[] = {0.2, 0.4, 0.7};
  GenParams p;
  p.leader_states = 1 + static_cast<std::uint32_t>(seed % 3);
  p.contributor_states = 1 + static_cast<std::uint32_t>((seed / 3) % 3);
  p.domain_size = 1 + static_cast<std::uint32_t>((seed / 9) % 2);
  p.density = kDensities[seed % 3];
  p.final_fraction = 0.5;
  p.seed = seed;
  return p;
}

// Random witnesses over a system, repeats allowed; for shrink properties.
inline Witness random_witness(const System& s, std::mt19937_64& rng,
                              std::uint32_t max_len) {
  Witness w;
  std::uint32_t len = static_cast<std::uint32_t>(rng() % (max_len + 1));
  for (std::uint32_t i = 0; i < len; ++i) {
    WitnessLetter letter;
    letter.state = static_cast<StateId>(rng() % s.leader.state_count);
    letter.write = (rng() % 2) ? static_cast<Symbol>(rng() % s.domain_size)
                               : kNoWrite;
    w.word.push_back(letter);
  }
  w.target = static_cast<StateId>(rng() % s.leader.state_count);
  if (len > 0) {
    std::uint32_t order = static_cast<std::uint32_t>(rng() % (s.domain_size + 1));
    for (std::uint32_t l = 0; l < order; ++l)
      w.fw_positions.push_back(1 + static_cast<std::uint32_t>(rng() % len));
    std::sort(w.fw_positions.begin(), w.fw_positions.end());
  }
  return w;
}

// Distinct symbols of the requested length.
inline FirstWriteSeq random_beta(const System& s, std::mt19937_64& rng,
                                 std::uint32_t length) {
  std::vector<Symbol> all;
  for (Symbol b = 0; b < s.domain_size; ++b) all.push_back(b);
  for (std::size_t i = all.size(); i > 1; --i)
    std::swap(all[i - 1], all[rng() % i]);
  all.resize(length);
  return all;
}

// Leader-walk witnesses that are leader-valid along the returned beta by
// construction. Returns false when the walk got stuck.
inline bool random_valid_witness(const System& s, std::mt19937_64& rng,
                                 std::uint32_t max_len, Witness* out,
                                 FirstWriteSeq* beta_out) {
  Witness w;
  FirstWriteSeq beta;
  SymbolMask avail = 0;
  StateId at = static_cast<StateId>(rng() % s.leader.state_count);
  std::uint32_t len = static_cast<std::uint32_t>(rng() % (max_len + 1));
  for (std::uint32_t i = 0; i < len; ++i) {
    // Occasionally provide a fresh first write at this position.
    if (beta.size() < s.domain_size && (rng() % 3) == 0) {
      Symbol b;
      do {
        b = static_cast<Symbol>(rng() % s.domain_size);
      } while ((avail >> b) & 1);
      beta.push_back(b);
      w.fw_positions.push_back(i + 1);
      avail |= SymbolMask{1} << b;
    }
    // Candidate moves: writes, internal steps, reads of available values,
    // plus a stutter.
    std::vector<std::pair<Symbol, StateId>> moves{{kNoWrite, at}};
    for (const auto& t : s.leader.transitions) {
      if (t.src != at) continue;
      if (t.op.is_write()) moves.emplace_back(t.op.value, t.dst);
      if (t.op.is_epsilon()) moves.emplace_back(kNoWrite, t.dst);
      if (t.op.is_read() && ((avail >> t.op.value) & 1))
        moves.emplace_back(kNoWrite, t.dst);
    }
    auto [write, next] = moves[rng() % moves.size()];
    w.word.push_back({at, write});
    at = next;
  }
  w.target = at;
  // Trim first writes that landed past the final length.
  while (!w.fw_positions.empty() && w.fw_positions.back() > w.word.size()) {
    w.fw_positions.pop_back();
    beta.pop_back();
  }
  *out = w;
  *beta_out = beta;
  return true;
}

}  // namespace lcs::testing

#endif  // LCS_TESTS_COMMON_HPP_
