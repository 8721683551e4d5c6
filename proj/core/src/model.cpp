#include "lcs/model.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace lcs {

bool is_reserved_name(const std::string& name) {
  static const char* const kReserved[] = {"system", "domain", "init",
                                          "final",  "states", "leader",
                                          "contributor", "eps"};
  for (const char* word : kReserved)
    if (name == word) return true;
  return false;
}

namespace {

bool is_ident(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    return false;
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

void validate_automaton(const Automaton& a, std::uint32_t domain_size,
                        const std::string& who) {
  if (a.state_count == 0)
    throw SemanticError(who + " has no states");
  if (a.initial >= a.state_count)
    throw SemanticError(who + " initial state out of range");
  if (a.state_names.size() != a.state_count)
    throw SemanticError(who + " name table size mismatch");
  for (const auto& n : a.state_names)
    if (!is_ident(n) || is_reserved_name(n))
      throw SemanticError(who + " has invalid state name '" + n + "'");
  for (std::size_t i = 0; i + 1 < a.state_names.size(); ++i)
    for (std::size_t j = i + 1; j < a.state_names.size(); ++j)
      if (a.state_names[i] == a.state_names[j])
        throw SemanticError(who + " has duplicate state name '" + a.state_names[i] + "'");
  for (const auto& t : a.transitions) {
    if (t.src >= a.state_count || t.dst >= a.state_count)
      throw SemanticError(who + " transition references unknown state");
    if (!t.op.is_epsilon() && t.op.value >= domain_size)
      throw SemanticError(who + " transition references unknown symbol");
  }
  if (std::adjacent_find(a.transitions.begin(), a.transitions.end()) !=
      a.transitions.end())
    throw SemanticError(who + " has duplicate transitions");
  if (!std::is_sorted(a.transitions.begin(), a.transitions.end()))
    throw SemanticError(who + " transitions not in canonical order");
}

}  // namespace

void canonicalize(System& s) {
  auto fix = [](Automaton& a) {
    std::sort(a.transitions.begin(), a.transitions.end());
    a.transitions.erase(
        std::unique(a.transitions.begin(), a.transitions.end()),
        a.transitions.end());
  };
  fix(s.leader);
  fix(s.contributor);
  std::sort(s.final_states.begin(), s.final_states.end());
  s.final_states.erase(
      std::unique(s.final_states.begin(), s.final_states.end()),
      s.final_states.end());
}

void validate(const System& s) {
  if (s.domain_size == 0) throw SemanticError("empty domain");
  if (s.initial_value >= s.domain_size)
    throw SemanticError("initial memory value out of range");
  if (s.symbol_names.size() != s.domain_size)
    throw SemanticError("symbol name table size mismatch");
  for (const auto& n : s.symbol_names)
    if (!is_ident(n) || is_reserved_name(n))
      throw SemanticError("invalid symbol name '" + n + "'");
  for (std::size_t i = 0; i + 1 < s.symbol_names.size(); ++i)
    for (std::size_t j = i + 1; j < s.symbol_names.size(); ++j)
      if (s.symbol_names[i] == s.symbol_names[j])
        throw SemanticError("duplicate symbol '" + s.symbol_names[i] + "'");
  validate_automaton(s.leader, s.domain_size, "leader");
  validate_automaton(s.contributor, s.domain_size, "contributor");
  if (!std::is_sorted(s.final_states.begin(), s.final_states.end()) ||
      std::adjacent_find(s.final_states.begin(), s.final_states.end()) !=
          s.final_states.end())
    throw SemanticError("final states not in canonical order");
  for (StateId q : s.final_states)
    if (q >= s.leader.state_count)
      throw SemanticError("final state out of range");
}

void require_mask_capacity(const Automaton& a, const char* who) {
  if (a.state_count > kMaskBits)
    throw CapacityError(std::string(who) + " has " +
                        std::to_string(a.state_count) +
                        " states; bit-mask engines support at most 64");
}

StateMask mask_of_states(const std::vector<StateId>& states) {
  StateMask m = 0;
  for (StateId p : states) {
    if (p >= kMaskBits)
      throw CapacityError("state index " + std::to_string(p) +
                          " does not fit a 64-bit mask");
    m |= StateMask{1} << p;
  }
  return m;
}

std::vector<StateId> states_of_mask(StateMask mask) {
  std::vector<StateId> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (StateMask m = mask; m != 0; m &= m - 1)
    out.push_back(static_cast<StateId>(std::countr_zero(m)));
  return out;
}

std::string op_to_string(const MemOp& op, const System& s) {
  switch (op.kind) {
    case MemOp::Kind::kWrite:
      return "!" + s.symbol_names.at(op.value);
    case MemOp::Kind::kRead:
      return "?" + s.symbol_names.at(op.value);
    case MemOp::Kind::kEpsilon:
      return "eps";
  }
  return "eps";
}

std::string interface_to_string(const Interface& i, const System& s) {
  std::string out;
  bool first = true;
  for (StateId p : states_of_mask(i.contributor_set)) {
    if (!first) out += "+";
    out += s.contributor.state_names.at(p);
    first = false;
  }
  out += ":" + s.leader.state_names.at(i.leader_state);
  out += ":" + s.symbol_names.at(i.memory_value);
  return out;
}

}  // namespace lcs
