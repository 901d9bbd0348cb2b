#pragma once

#include <string_view>
#include <vector>

#include "explab/weyl.hpp"

namespace explab {

/// Parses operator text into a normal-ordered element of A_n.
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' nat)?
///   atom   := rational | var | '(' expr ')'
///   var    := 'x' | 'd' | 't'  (n = 1 only; t is x)  |  'x' nat | 'd' nat
///
/// Whitespace is ignored. Errors are ParseError with 1-based line/column.
WeylElt parse_weyl(std::string_view text, int n);

/// Several operators separated by ';' (empty entries are skipped).
std::vector<WeylElt> parse_weyl_list(std::string_view text, int n);

}  // namespace explab
