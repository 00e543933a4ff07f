#pragma once

#include <string_view>

#include "kamp/error.hpp"
#include "kamp/fo_formula.hpp"
#include "kamp/tl_formula.hpp"

namespace kamp {

/// Parse a first-order formula.
///
///   fo    ::= 'E' var bound? '.' fo | 'A' var bound? '.' fo
///           | '(' ('E'|'A') var bound? ')' fo
///           | fo '->' fo | fo '|' fo | fo '&' fo | '!' fo | '(' fo ')' | atom
///   bound ::= '<' var | '>' var | 'in' '(' var ',' var ')'
///   atom  ::= name '(' var ')' | var '<' var | var '>' var | var '=' var
///
/// Precedence `!` > `&` > `|` > `->` (right-assoc); quantifier bodies extend
/// as far right as possible. Implication and bounded quantifiers are
/// desugared on the spot. Throws ParseError.
FoFormula parse_fo(std::string_view text);

/// Parse a temporal formula.
///
///   tl ::= tl '->' tl | tl '|' tl | tl '&' tl | tl 'U' tl | tl 'S' tl
///        | ('!'|'G'|'H'|'K+'|'K-') tl | '(' tl ')' | 'true' | 'false' | name
///
/// Precedence: prefix operators > `U`/`S` (right-assoc) > `&` > `|` > `->`.
/// G, H, K+, K-, false and `->` expand to core constructors. Throws ParseError.
TlFormula parse_tl(std::string_view text);

}  // namespace kamp
