#pragma once
// Text syntax for maps on the command line:
//
//   identity d=2
//   poly d=2 [x1, 0.5*x2*(1 + x1)]     (d defaults to the larger of the
//   [x1, 0.5*x2]                        highest variable and the list length)
//   scale factors=(1, 0.5)
//   mobius a=(0.2, 0.1i)
//   testmap kind=scale params=(1, 0.5)
//   testmap kind=nonlinear params=(0.5, 0.5)   (coefficients of g in x1)
//   testmap kind=conjugated a=(0.2, 0) base=(testmap kind=scale params=(1, 0.5))
//   compose(outer; inner)
//
// List entries are complex constants in polynomial syntax ("0.5", "2i",
// "0.1 - 0.2i").

#include <optional>
#include <string_view>
#include <vector>

#include "freeball/nc_map.hpp"

namespace freeball::cli {

/// Throws Parse with a line:column position on malformed text; errors from
/// map construction (e.g. |c| > 1) keep their own kind.
NcMap parse_map(std::string_view text);

/// "(c1, c2, ...)" or "c1,c2,..." as complex constants.
std::vector<Complex> parse_complex_list(std::string_view text);
Complex parse_complex(std::string_view text);

}  // namespace freeball::cli
