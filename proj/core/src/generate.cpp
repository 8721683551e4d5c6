#include "lcs/generate.hpp"

#include <random>
#include <string>

namespace lcs {

namespace {

double draw01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Automaton random_automaton(std::mt19937_64& rng, std::uint32_t states,
                           std::uint32_t domain, double density,
                           const std::string& prefix) {
  Automaton a;
  a.state_count = states;
  a.initial = 0;
  for (std::uint32_t i = 0; i < states; ++i)
    a.state_names.push_back(prefix + std::to_string(i));
  for (StateId src = 0; src < states; ++src) {
    for (StateId dst = 0; dst < states; ++dst) {
      if (draw01(rng) < density) a.transitions.push_back({src, MemOp::epsilon(), dst});
      for (Symbol b = 0; b < domain; ++b)
        if (draw01(rng) < density)
          a.transitions.push_back({src, MemOp::write(b), dst});
      for (Symbol b = 0; b < domain; ++b)
        if (draw01(rng) < density)
          a.transitions.push_back({src, MemOp::read(b), dst});
    }
  }
  return a;
}

}  // namespace

System generate_instance(const GenParams& p) {
  if (p.leader_states == 0 || p.contributor_states == 0 || p.domain_size == 0)
    throw SemanticError("generator counts must be positive");
  if (!(p.density > 0.0 && p.density <= 1.0))
    throw SemanticError("density must be in (0, 1]");
  if (!(p.final_fraction > 0.0 && p.final_fraction <= 1.0))
    throw SemanticError("final fraction must be in (0, 1]");

  std::mt19937_64 rng(p.seed);
  System s;
  s.domain_size = p.domain_size;
  s.initial_value = 0;
  for (Symbol b = 0; b < p.domain_size; ++b)
    s.symbol_names.push_back("v" + std::to_string(b));
  s.leader = random_automaton(rng, p.leader_states, p.domain_size, p.density, "q");
  s.contributor =
      random_automaton(rng, p.contributor_states, p.domain_size, p.density, "c");
  for (StateId q = 0; q < p.leader_states; ++q)
    if (draw01(rng) < p.final_fraction) s.final_states.push_back(q);
  if (s.final_states.empty())
    s.final_states.push_back(static_cast<StateId>(rng() % p.leader_states));
  canonicalize(s);
  validate(s);
  return s;
}

}  // namespace lcs
