#ifndef LCS_SEMANTICS_HPP_
#define LCS_SEMANTICS_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lcs/model.hpp"

namespace lcs {

/// A concrete configuration: leader state, memory value, and a multiset of
/// contributor states stored as (state, count) pairs, sorted by state with
/// positive counts. Contributor identity is irrelevant, so permutations of
/// a contributor-state vector collapse into one configuration.
struct Configuration {
  StateId leader = 0;
  Symbol memory = 0;
  std::vector<std::pair<StateId, std::uint32_t>> counts;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [p, n] : counts) t += n;
    return t;
  }
  StateMask support() const {
    StateMask m = 0;
    for (const auto& [p, n] : counts) m |= StateMask{1} << p;
    return m;
  }

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const System& s, std::uint64_t t);

/// One transition: the memory-operation label (or epsilon) and the
/// configuration it leads to. Together with the source configuration this
/// pins down the step, so traces are replayable.
struct Step {
  MemOp op;
  Configuration to;

  friend auto operator<=>(const Step&, const Step&) = default;
};

/// All successors of c, deduplicated and in lexicographic order.
std::vector<Step> successors(const System& s, const Configuration& c);

bool matches_interface(const Configuration& c, const Interface& i);

enum class Outcome : std::uint8_t {
  kYes,
  kNo,
  /// The exploration cap was hit; the query is unresolved, never "no".
  kInconclusive,
};

struct OracleLimits {
  std::uint64_t max_configurations = 1'000'000;
};

struct Trace {
  Configuration start;
  std::vector<Step> steps;
};

/// Replays the trace; true iff every step is an actual transition.
bool replay(const System& s, const Trace& trace);

struct ReachResult {
  Outcome outcome = Outcome::kNo;
  std::optional<Trace> trace;  // present iff outcome == kYes
  std::uint64_t explored = 0;
};

/// Explicit-state search at a fixed contributor count t >= 1: is a
/// configuration with leader state in `targets` reachable? Sound for "yes"
/// at any t; a "no" only covers this t.
ReachResult bounded_reach_oracle(const System& s,
                                 const std::vector<StateId>& targets,
                                 std::uint64_t t, OracleLimits limits = {});

/// A lasso witnessing a live computation at fixed t: replaying `prefix` from
/// the initial configuration reaches `knot` (leader state final), replaying
/// `cycle` from `knot` returns exactly to `knot`.
struct LassoCertificate {
  Trace prefix;
  Trace cycle;  // nonempty, cycle.start == knot
  Configuration knot;
};

bool replay(const System& s, const LassoCertificate& lasso);

struct LiveResult {
  Outcome outcome = Outcome::kNo;
  std::optional<LassoCertificate> certificate;
  std::uint64_t explored = 0;
};

/// Does the reachable configuration graph at size t contain a cycle through
/// a configuration whose leader state is final?
LiveResult bounded_live_oracle(const System& s, std::uint64_t t,
                               OracleLimits limits = {});

struct SaturatedCycleResult {
  Outcome outcome = Outcome::kNo;
  std::uint64_t explored = 0;
};

/// Is there a nonempty cycle on a configuration matching I (for some count
/// assignment with support exactly I.contributor_set and total t) whose
/// intermediate configurations keep their support inside I.contributor_set?
SaturatedCycleResult bounded_saturated_cycle_oracle(const System& s,
                                                    const Interface& i,
                                                    std::uint64_t t,
                                                    OracleLimits limits = {});

}  // namespace lcs

#endif  // LCS_SEMANTICS_HPP_
