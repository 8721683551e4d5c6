#include "lcs/reach_subsets.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace lcs {

namespace {

struct KeyHash {
  std::size_t operator()(const AbstractState& k) const {
    std::uint64_t h = k.contributor_set;
    h ^= (std::uint64_t{k.leader_state} << 32 | k.memory) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h * 0xff51afd7ed558ccdull);
  }
};

struct KeyEq {
  bool operator()(const AbstractState& a, const AbstractState& b) const {
    return a == b;
  }
};

}  // namespace

bool ReachTable::contains(StateMask set, StateId q, Symbol a) const {
  auto it = entries.find(set);
  if (it == entries.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(),
                            std::make_pair(q, a));
}

ReachTable saturate_abstract(const System& s) {
  validate(s);
  require_mask_capacity(s.contributor, "contributor");

  ReachTable table;
  std::unordered_map<AbstractState, std::uint32_t, KeyHash, KeyEq> index;

  // Hard bound on the saturation space; exceeding it means the successor
  // relation is wrong.
  const long double bound =
      (s.contributor.state_count >= 63 ? 1e30L
                                       : static_cast<long double>(
                                             StateMask{1} << s.contributor.state_count)) *
      s.leader.state_count * s.domain_size;

  auto discover = [&](const AbstractState& st, std::int64_t parent, MemOp op) {
    auto [it, fresh] = index.emplace(st, static_cast<std::uint32_t>(table.order.size()));
    if (!fresh) return false;
    table.order.push_back(st);
    table.parent.push_back(parent);
    table.parent_op.push_back(op);
    if (static_cast<long double>(table.order.size()) > bound)
      throw std::logic_error("abstract state space exceeded 2^C * L * D");
    return true;
  };

  AbstractState root{StateMask{1} << s.contributor.initial, s.leader.initial,
                     s.initial_value};
  discover(root, -1, MemOp::epsilon());
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    std::uint32_t at = queue.front();
    queue.pop_front();
    AbstractState cur = table.order[at];

    auto emit = [&](AbstractState next, MemOp op) {
      if (discover(next, at, op))
        queue.push_back(static_cast<std::uint32_t>(table.order.size() - 1));
    };

    for (const auto& tr : s.leader.transitions) {
      if (tr.src != cur.leader_state) continue;
      switch (tr.op.kind) {
        case MemOp::Kind::kWrite:
          emit({cur.contributor_set, tr.dst, tr.op.value}, tr.op);
          break;
        case MemOp::Kind::kRead:
          if (tr.op.value == cur.memory)
            emit({cur.contributor_set, tr.dst, cur.memory}, tr.op);
          break;
        case MemOp::Kind::kEpsilon:
          emit({cur.contributor_set, tr.dst, cur.memory}, tr.op);
          break;
      }
    }
    // A contributor at p keeps an unbounded supply of copies at p, so p
    // stays in the set while p' joins it.
    for (const auto& tr : s.contributor.transitions) {
      if (!((cur.contributor_set >> tr.src) & 1)) continue;
      StateMask grown = cur.contributor_set | (StateMask{1} << tr.dst);
      switch (tr.op.kind) {
        case MemOp::Kind::kWrite:
          emit({grown, cur.leader_state, tr.op.value}, tr.op);
          break;
        case MemOp::Kind::kRead:
          if (tr.op.value == cur.memory)
            emit({grown, cur.leader_state, cur.memory}, tr.op);
          break;
        case MemOp::Kind::kEpsilon:
          emit({grown, cur.leader_state, cur.memory}, tr.op);
          break;
      }
    }
  }

  for (const auto& st : table.order)
    table.entries[st.contributor_set].emplace_back(st.leader_state, st.memory);
  for (auto& [set, pairs] : table.entries) std::sort(pairs.begin(), pairs.end());
  return table;
}

SubsetsResult lcr_subsets(const System& s) {
  ReachTable table = saturate_abstract(s);
  SubsetsResult res;
  res.explored = table.explored();
  std::vector<char> is_final(s.leader.state_count, 0);
  for (StateId q : s.final_states) is_final[q] = 1;
  for (std::size_t i = 0; i < table.order.size(); ++i) {
    const AbstractState& st = table.order[i];
    if (!is_final[st.leader_state]) continue;
    res.reachable = true;
    res.interface = Interface{st.contributor_set, st.leader_state, st.memory};
    for (std::int64_t at = static_cast<std::int64_t>(i); at >= 0;
         at = table.parent[at])
      res.trace.push_back(table.order[at]);
    std::reverse(res.trace.begin(), res.trace.end());
    break;
  }
  return res;
}

std::vector<Interface> interfaces_from_table(
    const ReachTable& table,
    const std::optional<std::vector<StateId>>& restrict_final) {
  std::vector<StateId> keep;
  if (restrict_final) {
    keep = *restrict_final;
    std::sort(keep.begin(), keep.end());
  }
  std::vector<Interface> out;
  for (const auto& [set, pairs] : table.entries)
    for (const auto& [q, a] : pairs)
      if (!restrict_final || std::binary_search(keep.begin(), keep.end(), q))
        out.push_back({set, q, a});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lcs
