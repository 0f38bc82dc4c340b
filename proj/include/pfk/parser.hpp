#pragma once

#include <string>
#include <string_view>

#include "pfk/presentation.hpp"

namespace pfk {

/// Parses the `.gsp` text format:
///
///   < g1, g2, ... | w1, w2 = w3, ... >
///   amalgam <U> <V> : u = v
///   hnn <U> t : t u t^-1 = v
///   graph { v1 = <...>; edge v1 v2 : u = w; loop v1 t : u = w; }
///
/// Words use juxtaposition, `^k`, `'` for inversion, `[u,v]` = u^-1 v^-1 u v
/// and parentheses. `#` starts a comment. Throws ParseError.
GroupInput parse(std::string_view text);

/// Parses a single word over the given alphabet.
Word parse_word(std::string_view text, const Presentation& alphabet);

/// Text form accepted by parse().
std::string format(const Presentation& p);
std::string format(const GroupInput& input);

}  // namespace pfk
