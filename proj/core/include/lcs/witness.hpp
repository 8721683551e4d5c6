#ifndef LCS_WITNESS_HPP_
#define LCS_WITNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lcs/model.hpp"

namespace lcs {

/// Sentinel for a witness position without a leader write.
inline constexpr Symbol kNoWrite = 0xffffffffu;

struct WitnessLetter {
  StateId state = 0;
  Symbol write = kNoWrite;  // kNoWrite encodes the bottom entry

  friend auto operator<=>(const WitnessLetter&, const WitnessLetter&) = default;
};

/// Sketch of a leader run: the visited states with their writes, the target
/// state, and the positions at which the contributors provide first writes.
/// fw_positions is 1-based and monotonically non-decreasing; its length is
/// the order of the witness. The empty word is allowed; its first state is
/// taken to be the target.
struct Witness {
  std::vector<WitnessLetter> word;
  StateId target = 0;
  std::vector<std::uint32_t> fw_positions;

  StateId init() const { return word.empty() ? target : word.front().state; }
  std::uint32_t order() const {
    return static_cast<std::uint32_t>(fw_positions.size());
  }
  bool is_short() const;

  friend auto operator<=>(const Witness&, const Witness&) = default;
};

/// Sequence of pairwise-distinct first-written symbols.
using FirstWriteSeq = std::vector<Symbol>;

/// Structural sanity: indices in range, positions monotone and within the
/// word, order at most the domain size. Throws SemanticError.
void validate_witness(const System& s, const Witness& x);

/// Removes repetitions of leader states from the word until none remain,
/// remapping first-write positions. Short witnesses are fixed points.
Witness shrink_star(Witness x);

/// Witness concatenation: appends the runs and shifts the right-hand
/// first-write positions. Requires init(y) == target(x).
Witness witness_concat(const Witness& x, const Witness& y);

/// shrink_star(witness_concat(x, y)); preserves order additivity.
Witness short_concat(const Witness& x, const Witness& y);

/// Symbols the leader can write on a cycle at q when reading is restricted
/// to `avail` (writes unrestricted, internal steps allowed): the write
/// labels inside q's strongly connected component of the restricted graph.
SymbolMask loop_set(const System& s, StateId q, SymbolMask avail);

/// Leader validity of x along beta: every position is realizable by a write
/// of the recorded value, a stutter, an internal step, or a read of an
/// already-provided first write.
bool leader_valid(const System& s, const Witness& x, const FirstWriteSeq& beta);

/// Contributor validity for the i-th first write (1-based): some contributor
/// reaches a state writing beta[i-1] while reading only from the expression
/// of available writes up to position fw_positions[i-1].
bool contributor_valid_at(const System& s, const Witness& x,
                          const FirstWriteSeq& beta, std::uint32_t i);

/// Contributor states reachable while reading only along the full
/// expression of x with respect to beta; sorted.
std::vector<StateId> full_expr_states(const System& s, const Witness& x,
                                      const FirstWriteSeq& beta);

/// Adds composite write transitions p -!a-> q'' for every write p -!a-> q
/// that can be followed by internal steps and a read of a again. Lets the
/// witness abstraction represent a leader that reads its own writes.
System leader_write_read_closure(const System& s);

struct WitnessOptions {
  /// Upper bound on the short-witness universe (all orders, counted
  /// analytically before enumeration).
  std::uint64_t max_universe = 10'000'000;
};

struct WitnessStats {
  std::uint64_t universe = 0;  // saturating count of all short witnesses
  std::uint64_t ord0 = 0;
  std::uint64_t ord1 = 0;
  std::uint64_t true_entries = 0;
  /// Per stratum k=1..D: (x, y) pairs evaluated, and the bound
  /// |Ord(k-1)| * |Ord(1)| they may never exceed per entry set.
  std::vector<std::uint64_t> pairs_touched;
  std::vector<std::uint64_t> pairs_bound;
  /// Pairs whose operands were not from Ord(k-1) x Ord(1); always 0.
  std::uint64_t stratum_violations = 0;
};

/// Dynamic-programming table of valid short witnesses, stratified by order.
/// Entries are stored positively: a missing (beta, witness) pair is false.
/// Each true entry keeps the decomposition (x, y) that proved it, or
/// (-1, -1) for order-0 base entries.
struct ShortValidTable {
  System preprocessed;  // leader closed under write-then-read
  std::vector<Witness> witnesses;
  std::vector<FirstWriteSeq> betas;  // all first-write sequences, by length
  std::vector<std::map<std::uint32_t, std::pair<std::int64_t, std::int64_t>>>
      entries;  // entries[beta_id][witness_id] = decomposition
  WitnessStats stats;

  bool is_true(std::uint32_t beta_id, std::uint32_t witness_id) const {
    return entries[beta_id].count(witness_id) != 0;
  }
  std::optional<std::uint32_t> beta_id(const FirstWriteSeq& beta) const;
};

/// Fills the table for all first-write sequences in order of increasing
/// length. Throws CapacityError when the witness universe exceeds the cap.
ShortValidTable valid_short_table(const System& s, WitnessOptions options = {});

struct WitnessReachResult {
  bool reachable = false;
  WitnessStats stats;
};

/// Leader reachability of the final states via valid short witnesses.
WitnessReachResult lcr_witness(const System& s, WitnessOptions options = {});

/// Interfaces read off the true initialized entries: the contributor states
/// reachable along the witness, the target state, and the possible final
/// memory values (first writes; the last leader write when no forced read
/// follows it; the initial value for write-free entries).
std::vector<Interface> interfaces_from_witness_table(
    const ShortValidTable& table,
    const std::optional<std::vector<StateId>>& restrict_final = std::nullopt);

}  // namespace lcs

#endif  // LCS_WITNESS_HPP_
