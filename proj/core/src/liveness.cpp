#include "lcs/liveness.hpp"

#include "lcs/reach_subsets.hpp"

namespace lcs {

Verdict lcl(const System& s, ReachBackend backend,
            WitnessOptions witness_options) {
  validate(s);
  Verdict verdict;
  verdict.backend = backend;
  if (s.final_states.empty()) return verdict;

  std::vector<Interface> interfaces;
  if (backend == ReachBackend::kSubsets) {
    ReachTable table = saturate_abstract(s);
    verdict.stats.abstract_states = table.explored();
    interfaces = interfaces_from_table(table, s.final_states);
  } else {
    ShortValidTable table = valid_short_table(s, witness_options);
    verdict.stats.table_entries = table.stats.true_entries;
    interfaces = interfaces_from_witness_table(table, s.final_states);
  }
  verdict.stats.interfaces_enumerated = interfaces.size();

  for (const Interface& iface : interfaces) {
    ++verdict.stats.cyc_calls;
    CycResult result = cyc(s, iface);
    if (result.exists) {
      verdict.answer = true;
      verdict.interface = iface;
      verdict.evidence = std::move(result);
      break;
    }
  }
  return verdict;
}

}  // namespace lcs
