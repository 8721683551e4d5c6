#include "lcs/cycle.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "digraph.hpp"

namespace lcs {

namespace {

void check_interface(const System& s, const Interface& i) {
  validate(s);
  require_mask_capacity(s.contributor, "contributor");
  if (s.domain_size > kMaskBits)
    throw CapacityError("domain larger than 64 symbols");
  if (i.contributor_set == 0)
    throw SemanticError("interface has an empty contributor set");
  StateMask all = s.contributor.state_count == kMaskBits
                      ? ~StateMask{0}
                      : (StateMask{1} << s.contributor.state_count) - 1;
  if ((i.contributor_set & ~all) != 0)
    throw SemanticError("interface contributor state out of range");
  if (i.leader_state >= s.leader.state_count)
    throw SemanticError("interface leader state out of range");
  if (i.memory_value >= s.domain_size)
    throw SemanticError("interface memory value out of range");
}

// P_L': leader states paired with the memory value. Writes always move,
// reads need the matching memory (the pairing makes self-reads exact), and
// contributor writes hijack the memory from any state. Leader internal
// steps keep the value.
struct LeaderMemoryGraph {
  std::uint32_t domain;
  std::vector<std::vector<std::uint32_t>> adj;
  // Write edges with label: (from, to, symbol).
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Symbol>> write_edges;

  std::uint32_t node(StateId q, Symbol b) const { return q * domain + b; }
};

LeaderMemoryGraph build_leader_memory_graph(const System& s,
                                            SymbolMask contributor_writes) {
  LeaderMemoryGraph g;
  g.domain = s.domain_size;
  g.adj.resize(static_cast<std::size_t>(s.leader.state_count) * s.domain_size);
  for (const auto& t : s.leader.transitions) {
    switch (t.op.kind) {
      case MemOp::Kind::kWrite:
        for (Symbol b = 0; b < s.domain_size; ++b) {
          g.adj[g.node(t.src, b)].push_back(g.node(t.dst, t.op.value));
          g.write_edges.emplace_back(g.node(t.src, b), g.node(t.dst, t.op.value),
                                     t.op.value);
        }
        break;
      case MemOp::Kind::kRead:
        g.adj[g.node(t.src, t.op.value)].push_back(g.node(t.dst, t.op.value));
        break;
      case MemOp::Kind::kEpsilon:
        for (Symbol b = 0; b < s.domain_size; ++b)
          g.adj[g.node(t.src, b)].push_back(g.node(t.dst, b));
        break;
    }
  }
  for (Symbol hijack = 0; hijack < s.domain_size; ++hijack) {
    if (!((contributor_writes >> hijack) & 1)) continue;
    for (StateId q = 0; q < s.leader.state_count; ++q)
      for (Symbol b = 0; b < s.domain_size; ++b)
        if (b != hijack) g.adj[g.node(q, b)].push_back(g.node(q, hijack));
  }
  return g;
}

SymbolMask leader_cycle_writes(const System& s, const Interface& i,
                               SymbolMask contributor_writes) {
  LeaderMemoryGraph g = build_leader_memory_graph(s, contributor_writes);
  std::vector<std::uint32_t> comp = detail::tarjan_scc(g.adj);
  std::uint32_t anchor = comp[g.node(i.leader_state, i.memory_value)];
  SymbolMask writes = 0;
  for (const auto& [from, to, b] : g.write_edges)
    if (comp[from] == anchor && comp[to] == anchor)
      writes |= SymbolMask{1} << b;
  return writes;
}

}  // namespace

SccDecomposition gamma_scc(const System& s, const Interface& i, SymbolMask gamma) {
  check_interface(s, i);
  std::vector<StateId> members = states_of_mask(i.contributor_set);
  std::vector<std::int32_t> local(s.contributor.state_count, -1);
  for (std::size_t k = 0; k < members.size(); ++k)
    local[members[k]] = static_cast<std::int32_t>(k);

  std::vector<std::vector<std::uint32_t>> adj(members.size());
  for (const auto& t : s.contributor.transitions) {
    if (local[t.src] < 0 || local[t.dst] < 0) continue;
    bool keep = t.op.is_write() || t.op.is_epsilon() ||
                (t.op.is_read() && ((gamma >> t.op.value) & 1));
    if (keep)
      adj[static_cast<std::uint32_t>(local[t.src])].push_back(
          static_cast<std::uint32_t>(local[t.dst]));
  }
  std::uint32_t comps = 0;
  std::vector<std::uint32_t> comp = detail::tarjan_scc(adj, &comps);

  SccDecomposition dec;
  dec.blocks.resize(comps);
  for (std::size_t k = 0; k < members.size(); ++k)
    dec.blocks[comp[k]].push_back(members[k]);
  for (auto& block : dec.blocks) std::sort(block.begin(), block.end());
  std::sort(dec.blocks.begin(), dec.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return dec;
}

namespace {

SymbolMask contributor_writes_of(const System& s, const SccDecomposition& dec) {
  std::vector<std::int32_t> block_of(s.contributor.state_count, -1);
  for (std::size_t b = 0; b < dec.blocks.size(); ++b)
    for (StateId p : dec.blocks[b]) block_of[p] = static_cast<std::int32_t>(b);
  SymbolMask writes = 0;
  for (const auto& t : s.contributor.transitions)
    if (t.op.is_write() && block_of[t.src] >= 0 &&
        block_of[t.src] == block_of[t.dst])
      writes |= SymbolMask{1} << t.op.value;
  return writes;
}

}  // namespace

SymbolMask writes_of_decomposition(const System& s, const Interface& i,
                                   const SccDecomposition& dec) {
  check_interface(s, i);
  SymbolMask contributor_writes = contributor_writes_of(s, dec);
  return contributor_writes | leader_cycle_writes(s, i, contributor_writes);
}

SymbolMask writes_scc(const System& s, const Interface& i, SymbolMask x) {
  return writes_of_decomposition(s, i, gamma_scc(s, i, x));
}

SymbolMask leader_cycle_writes_by_product(const System& s, const Interface& i,
                                          SymbolMask contributor_writes) {
  check_interface(s, i);
  LeaderMemoryGraph g = build_leader_memory_graph(s, contributor_writes);
  std::uint32_t anchor = g.node(i.leader_state, i.memory_value);
  std::size_t n = g.adj.size();

  // Forward reachability from the anchor and backward reachability to it;
  // a write edge lies on a cycle through the anchor iff it connects the two.
  auto bfs = [&](const std::vector<std::vector<std::uint32_t>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> queue{anchor};
    seen[anchor] = 1;
    for (std::size_t at = 0; at < queue.size(); ++at)
      for (std::uint32_t w : adj[queue[at]])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    return seen;
  };
  std::vector<std::vector<std::uint32_t>> radj(n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t w : g.adj[v]) radj[w].push_back(v);
  std::vector<char> forward = bfs(g.adj);
  std::vector<char> backward = bfs(radj);

  SymbolMask writes = 0;
  for (const auto& [from, to, b] : g.write_edges)
    if (forward[from] && backward[to]) writes |= SymbolMask{1} << b;
  return writes;
}

FixpointResult greatest_fixed_point(const System& s, const Interface& i) {
  check_interface(s, i);
  FixpointResult res;
  SymbolMask gamma = s.domain_size == kMaskBits
                         ? ~SymbolMask{0}
                         : (SymbolMask{1} << s.domain_size) - 1;
  res.chain.push_back(gamma);
  // Distinct gammas often induce the same contributor writes; the leader
  // part is memoized on that set.
  std::unordered_map<SymbolMask, SymbolMask> leader_memo;
  while (true) {
    SccDecomposition dec = gamma_scc(s, i, gamma);
    SymbolMask cw = contributor_writes_of(s, dec);
    auto it = leader_memo.find(cw);
    if (it == leader_memo.end())
      it = leader_memo.emplace(cw, leader_cycle_writes(s, i, cw)).first;
    SymbolMask next = cw | it->second;
    ++res.evaluations;
    if (next == gamma) break;
    // The operator is monotone below the top element, so the chain only
    // shrinks.
    gamma = next;
    res.chain.push_back(gamma);
  }
  res.gamma = gamma;
  return res;
}

bool read_only_cycle_check(const System& s, const Interface& i) {
  check_interface(s, i);
  // Leader loop at the interface state over reads of the memory value and
  // internal steps.
  {
    std::vector<std::vector<std::uint32_t>> adj(s.leader.state_count);
    for (const auto& t : s.leader.transitions)
      if (t.op.is_epsilon() ||
          (t.op.is_read() && t.op.value == i.memory_value))
        adj[t.src].push_back(t.dst);
    if (detail::on_cycle(adj, i.leader_state)) return true;
  }
  // Contributor loop within the interface set.
  {
    std::vector<std::vector<std::uint32_t>> adj(s.contributor.state_count);
    for (const auto& t : s.contributor.transitions) {
      bool in_set = ((i.contributor_set >> t.src) & 1) &&
                    ((i.contributor_set >> t.dst) & 1);
      if (in_set && (t.op.is_epsilon() ||
                     (t.op.is_read() && t.op.value == i.memory_value)))
        adj[t.src].push_back(t.dst);
    }
    for (StateId p : states_of_mask(i.contributor_set))
      if (detail::on_cycle(adj, p)) return true;
  }
  return false;
}

CycResult cyc(const System& s, const Interface& i) {
  FixpointResult fix = greatest_fixed_point(s, i);
  CycResult res;
  res.chain = fix.chain;
  res.evaluations = fix.evaluations;
  // A cycle with writes ends on its last write, so the interface memory
  // value must itself be written: the fixed point has to contain it.
  if ((fix.gamma >> i.memory_value) & 1) {
    res.exists = true;
    res.gamma = fix.gamma;
    return res;
  }
  if (read_only_cycle_check(s, i)) {
    res.exists = true;
    res.via_read_only = true;
  }
  return res;
}

std::vector<SymbolMask> stable_subsets(const System& s, const Interface& i,
                                       CycEnumOptions options) {
  check_interface(s, i);
  if (s.domain_size > options.max_domain)
    throw CapacityError("domain too large for subset enumeration");
  std::vector<SymbolMask> stable;
  SymbolMask full = (SymbolMask{1} << s.domain_size) - 1;
  for (SymbolMask g = 1; g <= full; ++g)
    if (writes_scc(s, i, g) == g) stable.push_back(g);
  return stable;
}

bool cyc_bruteforce(const System& s, const Interface& i,
                    CycEnumOptions options) {
  for (SymbolMask gamma : stable_subsets(s, i, options))
    if ((gamma >> i.memory_value) & 1) return true;
  return read_only_cycle_check(s, i);
}

}  // namespace lcs
