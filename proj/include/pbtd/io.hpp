#pragma once

#include <string>
#include <string_view>

#include "pbtd/core.hpp"

// Design serialization. Two formats:
//
// Text grid, one row per line, cells "a,b" separated by whitespace:
//
//     # comment lines and blank lines are ignored
//     2,16 3,17 4,6 5,7 8,10 9,11 12,14 13,15 0,1 | 2,5 3,4 ...
//
// '|' tokens are cosmetic (emitted after column n, the window split) and
// ignored on input, as is whitespace around the comma inside a cell. The
// side is inferred from the grid shape; r rows must come with 2r-1 cells
// per line.
//
// Structured (JSON): {"n": <side>, "rows": [[[a,b], ...], ...]}, emitted
// canonically (compact, fixed key order) so output is byte-stable.

namespace pbtd {

DesignArray parse_text(std::string_view input);
std::string emit_text(const DesignArray& design);

DesignArray parse_structured(std::string_view input);
std::string emit_structured(const DesignArray& design);

// The embedded side-nine design, cell-for-cell the published 9x17 instance.
const DesignArray& table1();

} // namespace pbtd
