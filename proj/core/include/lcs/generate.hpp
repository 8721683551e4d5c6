#ifndef LCS_GENERATE_HPP_
#define LCS_GENERATE_HPP_

#include <cstdint>

#include "lcs/model.hpp"

namespace lcs {

struct GenParams {
  std::uint32_t leader_states = 2;
  std::uint32_t contributor_states = 2;
  std::uint32_t domain_size = 2;
  double density = 0.5;         // in (0, 1]
  double final_fraction = 0.5;  // in (0, 1]
  std::uint64_t seed = 0;
};

/// Deterministic random instance. The draw procedure is fixed: an
/// std::mt19937_64 seeded with `seed` produces one draw per potential
/// transition, iterated as (src asc, dst asc, op in order eps, !0..!D-1,
/// ?0..?D-1), leader first, then the contributor, then one draw per leader
/// state for the final set (forced nonempty by one extra draw). A draw is
/// (bits >> 11) * 2^-53, so output is identical on every platform.
System generate_instance(const GenParams& p);

}  // namespace lcs

#endif  // LCS_GENERATE_HPP_
