#include "lcs/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "digraph.hpp"

namespace lcs {

namespace {

// Moves one contributor from p to p'. counts stays sorted and positive.
std::vector<std::pair<StateId, std::uint32_t>> move_contributor(
    const std::vector<std::pair<StateId, std::uint32_t>>& counts, StateId from,
    StateId to) {
  std::vector<std::pair<StateId, std::uint32_t>> out;
  out.reserve(counts.size() + 1);
  bool inserted = (from == to);
  for (const auto& [p, n] : counts) {
    std::uint32_t m = n;
    if (p == from && from != to) --m;
    if (p == to && from != to) ++m;
    if (!inserted && to < p && from != to) {
      out.emplace_back(to, 1);
      inserted = true;
    }
    if (p == to) inserted = true;
    if (m > 0) out.emplace_back(p, m);
  }
  if (!inserted) out.emplace_back(to, 1);
  return out;
}

}  // namespace

Configuration initial_configuration(const System& s, std::uint64_t t) {
  Configuration c;
  c.leader = s.leader.initial;
  c.memory = s.initial_value;
  c.counts = {{s.contributor.initial, static_cast<std::uint32_t>(t)}};
  return c;
}

std::vector<Step> successors(const System& s, const Configuration& c) {
  std::vector<Step> out;
  for (const auto& tr : s.leader.transitions) {
    if (tr.src != c.leader) continue;
    switch (tr.op.kind) {
      case MemOp::Kind::kWrite:
        out.push_back({tr.op, {tr.dst, tr.op.value, c.counts}});
        break;
      case MemOp::Kind::kRead:
        if (tr.op.value == c.memory)
          out.push_back({tr.op, {tr.dst, c.memory, c.counts}});
        break;
      case MemOp::Kind::kEpsilon:
        out.push_back({tr.op, {tr.dst, c.memory, c.counts}});
        break;
    }
  }
  for (const auto& [p, n] : c.counts) {
    for (const auto& tr : s.contributor.transitions) {
      if (tr.src != p) continue;
      switch (tr.op.kind) {
        case MemOp::Kind::kWrite:
          out.push_back(
              {tr.op, {c.leader, tr.op.value, move_contributor(c.counts, p, tr.dst)}});
          break;
        case MemOp::Kind::kRead:
          if (tr.op.value == c.memory)
            out.push_back(
                {tr.op, {c.leader, c.memory, move_contributor(c.counts, p, tr.dst)}});
          break;
        case MemOp::Kind::kEpsilon:
          out.push_back(
              {tr.op, {c.leader, c.memory, move_contributor(c.counts, p, tr.dst)}});
          break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool matches_interface(const Configuration& c, const Interface& i) {
  return c.support() == i.contributor_set && c.leader == i.leader_state &&
         c.memory == i.memory_value;
}

bool replay(const System& s, const Trace& trace) {
  Configuration cur = trace.start;
  for (const auto& step : trace.steps) {
    auto succ = successors(s, cur);
    if (std::find(succ.begin(), succ.end(), step) == succ.end()) return false;
    cur = step.to;
  }
  return true;
}

bool replay(const System& s, const LassoCertificate& lasso) {
  if (lasso.prefix.start != initial_configuration(s, lasso.prefix.start.total()))
    return false;
  if (!replay(s, lasso.prefix)) return false;
  Configuration end = lasso.prefix.steps.empty() ? lasso.prefix.start
                                                 : lasso.prefix.steps.back().to;
  if (end != lasso.knot) return false;
  if (lasso.cycle.start != lasso.knot || lasso.cycle.steps.empty()) return false;
  if (!replay(s, lasso.cycle)) return false;
  return lasso.cycle.steps.back().to == lasso.knot;
}

namespace {

// Breadth-first exploration with parent links. Stops early when `stop`
// returns true for a newly discovered configuration.
struct Explorer {
  const System& s;
  std::uint64_t cap;
  std::vector<Configuration> configs = {};
  std::vector<std::int64_t> parent = {};
  std::vector<MemOp> parent_op = {};
  std::map<Configuration, std::size_t> index = {};
  bool capped = false;

  std::optional<std::size_t> run(const Configuration& root,
                                 auto&& stop) {
    configs.push_back(root);
    parent.push_back(-1);
    parent_op.push_back(MemOp::epsilon());
    index.emplace(root, 0);
    if (stop(root)) return 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t at = queue.front();
      queue.pop_front();
      Configuration cur = configs[at];
      for (const auto& step : successors(s, cur)) {
        auto [it, fresh] = index.emplace(step.to, configs.size());
        if (!fresh) continue;
        if (configs.size() >= cap) {
          capped = true;
          return std::nullopt;
        }
        configs.push_back(step.to);
        parent.push_back(static_cast<std::int64_t>(at));
        parent_op.push_back(step.op);
        if (stop(step.to)) return configs.size() - 1;
        queue.push_back(configs.size() - 1);
      }
    }
    return std::nullopt;
  }

  Trace trace_to(std::size_t at) const {
    std::vector<Step> steps;
    for (std::size_t i = at; parent[i] >= 0; i = static_cast<std::size_t>(parent[i]))
      steps.push_back({parent_op[i], configs[i]});
    std::reverse(steps.begin(), steps.end());
    return Trace{configs[0], std::move(steps)};
  }
};

}  // namespace

ReachResult bounded_reach_oracle(const System& s,
                                 const std::vector<StateId>& targets,
                                 std::uint64_t t, OracleLimits limits) {
  validate(s);
  std::vector<char> is_target(s.leader.state_count, 0);
  for (StateId q : targets)
    if (q < s.leader.state_count) is_target[q] = 1;
  Explorer ex{s, limits.max_configurations};
  auto hit = ex.run(initial_configuration(s, t), [&](const Configuration& c) {
    return is_target[c.leader] != 0;
  });
  ReachResult res;
  res.explored = ex.configs.size();
  if (hit) {
    res.outcome = Outcome::kYes;
    res.trace = ex.trace_to(*hit);
  } else {
    res.outcome = ex.capped ? Outcome::kInconclusive : Outcome::kNo;
  }
  return res;
}

LiveResult bounded_live_oracle(const System& s, std::uint64_t t,
                               OracleLimits limits) {
  validate(s);
  LiveResult res;
  if (s.final_states.empty()) {
    res.outcome = Outcome::kNo;
    return res;
  }
  std::vector<char> is_final(s.leader.state_count, 0);
  for (StateId q : s.final_states) is_final[q] = 1;

  // Explore the complete reachable graph at size t.
  Explorer ex{s, limits.max_configurations};
  ex.run(initial_configuration(s, t), [](const Configuration&) { return false; });
  res.explored = ex.configs.size();
  if (ex.capped) {
    res.outcome = Outcome::kInconclusive;
    return res;
  }

  std::size_t n = ex.configs.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  std::vector<bool> self_loop(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& step : successors(s, ex.configs[v])) {
      auto w = static_cast<std::uint32_t>(ex.index.at(step.to));
      adj[v].push_back(w);
      if (w == v) self_loop[v] = true;
    }
  }
  std::uint32_t comps = 0;
  std::vector<std::uint32_t> comp = detail::tarjan_scc(adj, &comps);
  std::vector<std::uint32_t> comp_size(comps, 0);
  for (std::size_t v = 0; v < n; ++v) ++comp_size[comp[v]];

  // First final configuration (in discovery order) that lies on a cycle.
  std::optional<std::size_t> knot;
  for (std::size_t v = 0; v < n; ++v) {
    if (!is_final[ex.configs[v].leader]) continue;
    if (comp_size[comp[v]] > 1 || self_loop[v]) {
      knot = v;
      break;
    }
  }
  if (!knot) {
    res.outcome = Outcome::kNo;
    return res;
  }

  // Shortest cycle through the knot via BFS over the explored graph.
  std::vector<std::int64_t> from(n, -1);
  std::vector<MemOp> via(n, MemOp::epsilon());
  std::deque<std::size_t> queue;
  std::optional<std::size_t> last;  // predecessor of knot on the cycle
  MemOp last_op = MemOp::epsilon();
  for (const auto& step : successors(s, ex.configs[*knot])) {
    std::size_t w = ex.index.at(step.to);
    if (w == *knot) {
      last = *knot;
      last_op = step.op;
      break;
    }
    if (from[w] < 0) {
      from[w] = static_cast<std::int64_t>(*knot);
      via[w] = step.op;
      queue.push_back(w);
    }
  }
  while (!last && !queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& step : successors(s, ex.configs[v])) {
      std::size_t w = ex.index.at(step.to);
      if (w == *knot) {
        last = v;
        last_op = step.op;
        break;
      }
      if (from[w] < 0) {
        from[w] = static_cast<std::int64_t>(v);
        via[w] = step.op;
        queue.push_back(w);
      }
    }
  }
  // A cycle exists by the SCC check, so `last` is set.
  std::vector<Step> cycle_steps{{last_op, ex.configs[*knot]}};
  for (std::size_t v = *last; v != *knot; v = static_cast<std::size_t>(from[v]))
    cycle_steps.push_back({via[v], ex.configs[v]});
  std::reverse(cycle_steps.begin(), cycle_steps.end());

  LassoCertificate cert;
  cert.knot = ex.configs[*knot];
  cert.prefix = ex.trace_to(*knot);
  cert.cycle = Trace{cert.knot, std::move(cycle_steps)};
  res.outcome = Outcome::kYes;
  res.certificate = std::move(cert);
  return res;
}

SaturatedCycleResult bounded_saturated_cycle_oracle(const System& s,
                                                    const Interface& i,
                                                    std::uint64_t t,
                                                    OracleLimits limits) {
  validate(s);
  require_mask_capacity(s.contributor, "contributor");
  SaturatedCycleResult res;
  std::vector<StateId> support = states_of_mask(i.contributor_set);
  if (support.empty() || t < support.size()) {
    res.outcome = Outcome::kNo;
    return res;
  }

  // All count assignments with the given support summing to t.
  std::vector<std::uint32_t> counts(support.size(), 1);
  std::uint64_t spare = t - support.size();
  std::vector<std::vector<std::uint32_t>> assignments;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::size_t pos, std::uint64_t left) -> void {
    if (pos + 1 == support.size()) {
      cur.push_back(static_cast<std::uint32_t>(1 + left));
      assignments.push_back(cur);
      cur.pop_back();
      return;
    }
    for (std::uint64_t extra = 0; extra <= left; ++extra) {
      cur.push_back(static_cast<std::uint32_t>(1 + extra));
      self(self, pos + 1, left - extra);
      cur.pop_back();
    }
  };
  rec(rec, 0, spare);

  std::uint64_t budget = limits.max_configurations;
  bool capped = false;
  for (const auto& assignment : assignments) {
    Configuration anchor;
    anchor.leader = i.leader_state;
    anchor.memory = i.memory_value;
    for (std::size_t k = 0; k < support.size(); ++k)
      anchor.counts.emplace_back(support[k], assignment[k]);

    // BFS among configurations with support inside the interface set,
    // looking for a non-trivial return to the anchor.
    std::map<Configuration, bool> seen;
    std::deque<Configuration> queue;
    bool found = false;
    auto push = [&](const Configuration& c) {
      if ((c.support() & ~i.contributor_set) != 0) return;
      if (seen.emplace(c, true).second) queue.push_back(c);
    };
    for (const auto& step : successors(s, anchor)) {
      if (step.to == anchor) found = true;
      push(step.to);
    }
    while (!found && !queue.empty()) {
      Configuration c = queue.front();
      queue.pop_front();
      ++res.explored;
      if (res.explored > budget) {
        capped = true;
        break;
      }
      for (const auto& step : successors(s, c)) {
        if (step.to == anchor) {
          found = true;
          break;
        }
        push(step.to);
      }
    }
    if (found) {
      res.outcome = Outcome::kYes;
      return res;
    }
    if (capped) break;
  }
  res.outcome = capped ? Outcome::kInconclusive : Outcome::kNo;
  return res;
}

}  // namespace lcs
