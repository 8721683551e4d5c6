#ifndef LCS_SRC_DIGRAPH_HPP_
#define LCS_SRC_DIGRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <vector>

namespace lcs::detail {

/// Iterative Tarjan. Returns a component id per vertex; ids are assigned in
/// reverse topological order of the condensation.
inline std::vector<std::uint32_t> tarjan_scc(
    const std::vector<std::vector<std::uint32_t>>& adj,
    std::uint32_t* count_out = nullptr) {
  std::size_t n = adj.size();
  std::vector<std::uint32_t> comp(n, 0), low(n, 0), num(n, 0);
  std::vector<bool> on_stack(n, false), visited(n, false);
  std::vector<std::uint32_t> stack;
  std::uint32_t counter = 0, comps = 0;

  struct Frame {
    std::uint32_t v;
    std::uint32_t edge;
  };
  std::vector<Frame> frames;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (visited[root]) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      std::uint32_t v = frames.back().v;
      if (frames.back().edge == 0) {
        visited[v] = true;
        num[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (frames.back().edge < adj[v].size()) {
        std::uint32_t w = adj[v][frames.back().edge++];
        if (!visited[w]) {
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          while (true) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comps;
            if (w == v) break;
          }
          ++comps;
        }
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  if (count_out) *count_out = comps;
  return comp;
}

/// True iff v lies on a directed cycle of length >= 1 (self-loops count).
inline bool on_cycle(const std::vector<std::vector<std::uint32_t>>& adj,
                     std::uint32_t v) {
  // BFS from the successors of v back to v.
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t w : adj[v]) {
    if (w == v) return true;
    if (!seen[w]) {
      seen[w] = true;
      queue.push_back(w);
    }
  }
  for (std::size_t at = 0; at < queue.size(); ++at) {
    std::uint32_t u = queue[at];
    for (std::uint32_t w : adj[u]) {
      if (w == v) return true;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace lcs::detail

#endif  // LCS_SRC_DIGRAPH_HPP_
