#pragma once

// Text format for presentations:
//
//   gens: x, y | rels: x^2*y^-3, [x,y]*x
//
// word   := factor ('*' factor)*
// factor := atom ('^' int)?
// atom   := name | '1' | '[' word ',' word ']' | '(' word ')'
//
// Whitespace (including newlines) is insignificant; the relator list may be
// empty. Errors carry line/column positions.

#include <string>
#include <string_view>

#include "colimit/word.hpp"

namespace colimit {

Presentation parse_presentation(std::string_view text);
/// Parses a single word over a fixed alphabet.
Word parse_word(std::string_view text, const Alphabet& alphabet);
std::string render_presentation(const Presentation& p);

}  // namespace colimit
