#ifndef LCS_MODEL_HPP_
#define LCS_MODEL_HPP_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcs {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;

/// Contributor-state sets and symbol sets as machine-word bit masks.
/// Engines that rely on masks reject automata with more than 64 states.
using StateMask = std::uint64_t;
using SymbolMask = std::uint64_t;

inline constexpr std::uint32_t kMaskBits = 64;

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Input could not be tokenized or does not follow the grammar.
class ParseError : public ModelError {
 public:
  ParseError(int line, int column, const std::string& what)
      : ModelError("parse error at " + std::to_string(line) + ":" +
                   std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Well-formed syntax with inconsistent content (unknown symbol, missing
/// init, empty domain, ...).
class SemanticError : public ModelError {
 public:
  explicit SemanticError(const std::string& what) : ModelError(what) {}
};

/// A problem instance exceeds a configured engine limit.
class CapacityError : public ModelError {
 public:
  explicit CapacityError(const std::string& what) : ModelError(what) {}
};

/// One shared-memory operation: write a value, read a value, or an internal
/// step. The value is meaningful only for writes and reads.
struct MemOp {
  enum class Kind : std::uint8_t { kWrite = 0, kRead = 1, kEpsilon = 2 };

  Kind kind = Kind::kEpsilon;
  Symbol value = 0;

  static MemOp write(Symbol b) { return MemOp{Kind::kWrite, b}; }
  static MemOp read(Symbol a) { return MemOp{Kind::kRead, a}; }
  static MemOp epsilon() { return MemOp{Kind::kEpsilon, 0}; }

  bool is_write() const { return kind == Kind::kWrite; }
  bool is_read() const { return kind == Kind::kRead; }
  bool is_epsilon() const { return kind == Kind::kEpsilon; }

  friend auto operator<=>(const MemOp&, const MemOp&) = default;
};

struct Transition {
  StateId src = 0;
  MemOp op;
  StateId dst = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite automaton over memory operations. Transitions are kept sorted and
/// duplicate-free so that structural equality is canonical.
struct Automaton {
  std::uint32_t state_count = 0;
  StateId initial = 0;
  std::vector<Transition> transitions;
  std::vector<std::string> state_names;

  friend bool operator==(const Automaton&, const Automaton&) = default;
};

/// A leader-contributor system: shared-memory domain, initial value, the
/// leader automaton, the contributor automaton, and the leader's final
/// states (the liveness/reachability targets).
struct System {
  std::uint32_t domain_size = 0;
  Symbol initial_value = 0;
  Automaton leader;
  Automaton contributor;
  std::vector<StateId> final_states;  // sorted, unique
  std::vector<std::string> symbol_names;

  friend bool operator==(const System&, const System&) = default;
};

/// Summary of a configuration: the set of contributor states present, the
/// leader state, and the memory value. Used to glue reachability prefixes
/// to cycles.
struct Interface {
  StateMask contributor_set = 0;  // nonempty
  StateId leader_state = 0;
  Symbol memory_value = 0;

  friend auto operator<=>(const Interface&, const Interface&) = default;
};

/// Sorts and deduplicates transitions and final states in place.
void canonicalize(System& s);

/// Checks all structural invariants; throws SemanticError on violation.
void validate(const System& s);

/// Words of the model format that cannot name states or symbols.
bool is_reserved_name(const std::string& name);

/// Throws CapacityError unless the contributor automaton fits a bit mask.
void require_mask_capacity(const Automaton& a, const char* who);

StateMask mask_of_states(const std::vector<StateId>& states);
std::vector<StateId> states_of_mask(StateMask mask);

std::string op_to_string(const MemOp& op, const System& s);
std::string interface_to_string(const Interface& i, const System& s);

}  // namespace lcs

#endif  // LCS_MODEL_HPP_
