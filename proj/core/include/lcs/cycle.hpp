#ifndef LCS_CYCLE_HPP_
#define LCS_CYCLE_HPP_

#include <cstdint>
#include <vector>

#include "lcs/model.hpp"

namespace lcs {

/// Partition of an interface's contributor set into inclusion-maximal
/// strongly connected blocks, ordered by minimal member.
struct SccDecomposition {
  std::vector<std::vector<StateId>> blocks;
};

/// Decomposes I.contributor_set under the restricted contributor graph:
/// writes and internal steps are always edges, reads only for symbols in
/// `gamma`; both endpoints must lie in the set.
SccDecomposition gamma_scc(const System& s, const Interface& i, SymbolMask gamma);

/// Symbols written inside blocks of the decomposition (contributor writes)
/// or on a leader cycle through (I.leader_state, I.memory_value) whose reads
/// are restricted to the contributor writes (leader writes).
SymbolMask writes_of_decomposition(const System& s, const Interface& i,
                                   const SccDecomposition& dec);

/// writes_of_decomposition over the gamma-SCC decomposition; monotone in X.
SymbolMask writes_scc(const System& s, const Interface& i, SymbolMask x);

/// Leader-cycle writes computed by per-symbol product emptiness instead of
/// one SCC pass; debug cross-check for writes_of_decomposition's leader part.
SymbolMask leader_cycle_writes_by_product(const System& s, const Interface& i,
                                          SymbolMask contributor_writes);

struct FixpointResult {
  SymbolMask gamma = 0;
  /// Strictly decreasing chain from the full domain down to the fixed
  /// point (inclusive); at most |D|+1 entries.
  std::vector<SymbolMask> chain;
  std::uint32_t evaluations = 0;
};

/// Greatest fixed point of writes_scc by Kleene iteration from the full
/// domain.
FixpointResult greatest_fixed_point(const System& s, const Interface& i);

/// A cycle without writes: the leader loops at the interface state reading
/// only the fixed memory value (internal steps allowed), or some contributor
/// in the set does so without leaving the set.
bool read_only_cycle_check(const System& s, const Interface& i);

struct CycResult {
  bool exists = false;
  bool via_read_only = false;
  SymbolMask gamma = 0;  // nonempty fixed point when !via_read_only
  std::vector<SymbolMask> chain;
  std::uint32_t evaluations = 0;
};

/// Saturated-cycle existence for the interface: the greatest fixed point
/// contains the interface memory value (a cycle with writes ends on a write
/// of that value), or a read-only cycle exists.
CycResult cyc(const System& s, const Interface& i);

struct CycEnumOptions {
  std::uint32_t max_domain = 16;  // 2^D subsets enumerated
};

/// Independent route: enumerates every nonempty subset of the domain and
/// tests stability and memory membership directly, plus the read-only case.
bool cyc_bruteforce(const System& s, const Interface& i, CycEnumOptions = {});

/// All nonempty stable subsets (writes_scc(G) == G); each is contained in
/// the greatest fixed point.
std::vector<SymbolMask> stable_subsets(const System& s, const Interface& i,
                                       CycEnumOptions = {});

}  // namespace lcs

#endif  // LCS_CYCLE_HPP_
