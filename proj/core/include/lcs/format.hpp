#ifndef LCS_FORMAT_HPP_
#define LCS_FORMAT_HPP_

#include <string>
#include <string_view>

#include "lcs/model.hpp"

namespace lcs {

// Textual model format:
//
//   system {
//     domain = [x, y]
//     init = x
//     leader {
//       states = [q0, q1]        # optional; closes the state list
//       init = q0
//       final = [q0]             # leader only
//       q0 -> q1 : ?y
//       q1 -> q0 : !x
//     }
//     contributor {
//       init = c0
//       c0 -> c1 : !y
//       c1 -> c0 : ?x
//     }
//   }
//
// Ops are !ident (write), ?ident (read), eps. `#` starts a line comment;
// whitespace is insignificant. Symbols must be declared in `domain`. States
// are introduced by use unless a `states` list is given, in which case an
// undeclared state is an error. Without a `states` list, indices follow
// first appearance (init, then final, then transition lines).

/// Parses a model document. Throws ParseError (with position) on bad syntax
/// and SemanticError on inconsistent content. Deterministic: the same text
/// yields an identical System.
System parse_system(std::string_view text);

/// Canonical serialization: blocks in fixed order, complete `states` lists,
/// transitions sorted lexicographically. Reparsing the output reproduces the
/// input System exactly.
std::string serialize_system(const System& s);

}  // namespace lcs

#endif  // LCS_FORMAT_HPP_
