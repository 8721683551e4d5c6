#ifndef LCS_REACH_SUBSETS_HPP_
#define LCS_REACH_SUBSETS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lcs/model.hpp"

namespace lcs {

/// Node of the saturation graph: a set of discovered contributor states, the
/// leader state, and the memory value. Along any derivation the set only
/// grows; a state once reached keeps an unbounded supply of copies behind.
struct AbstractState {
  StateMask contributor_set = 0;
  StateId leader_state = 0;
  Symbol memory = 0;

  friend auto operator<=>(const AbstractState&, const AbstractState&) = default;
};

/// Fixed point of the abstract successor relation, with one predecessor link
/// per discovered triple (first discovery wins) for witness reconstruction.
struct ReachTable {
  // (q, a) pairs reachable per contributor-state set, sorted.
  std::map<StateMask, std::vector<std::pair<StateId, Symbol>>> entries;

  // Discovery order and provenance.
  std::vector<AbstractState> order;
  std::vector<std::int64_t> parent;  // index into `order`, -1 at the root
  std::vector<MemOp> parent_op;

  std::uint64_t explored() const { return order.size(); }

  bool contains(StateMask set, StateId q, Symbol a) const;
};

/// Saturates from ({q0_C}, q0_L, a0). Throws CapacityError when the
/// contributor does not fit a 64-bit mask. The number of explored triples is
/// checked against the 2^C * L * D bound.
ReachTable saturate_abstract(const System& s);

struct SubsetsResult {
  bool reachable = false;
  std::optional<Interface> interface;
  std::vector<AbstractState> trace;  // root to witness, empty when !reachable
  std::uint64_t explored = 0;
};

/// Decides leader reachability of the final states and returns the first
/// witnessing interface in discovery order.
SubsetsResult lcr_subsets(const System& s);

/// All interfaces (S, q, a) recorded in the table, optionally restricted to
/// final leader states; sorted by (S, q, a).
std::vector<Interface> interfaces_from_table(
    const ReachTable& table,
    const std::optional<std::vector<StateId>>& restrict_final = std::nullopt);

}  // namespace lcs

#endif  // LCS_REACH_SUBSETS_HPP_
