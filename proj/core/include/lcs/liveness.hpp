#ifndef LCS_LIVENESS_HPP_
#define LCS_LIVENESS_HPP_

#include <cstdint>
#include <optional>

#include "lcs/cycle.hpp"
#include "lcs/model.hpp"
#include "lcs/witness.hpp"

namespace lcs {

enum class ReachBackend : std::uint8_t { kSubsets, kWitness };

struct LivenessStats {
  std::uint64_t interfaces_enumerated = 0;
  std::uint64_t cyc_calls = 0;
  std::uint64_t abstract_states = 0;  // subsets backend
  std::uint64_t table_entries = 0;    // witness backend
};

struct Verdict {
  bool answer = false;
  std::optional<Interface> interface;
  std::optional<CycResult> evidence;
  ReachBackend backend = ReachBackend::kSubsets;
  LivenessStats stats;
};

/// Liveness: some interface at a final leader state reached by the selected
/// backend admits a saturated cycle. Interfaces are deduplicated and sorted,
/// and the first satisfying one is reported, so verdicts are reproducible.
Verdict lcl(const System& s, ReachBackend backend,
            WitnessOptions witness_options = {});

}  // namespace lcs

#endif  // LCS_LIVENESS_HPP_
