#pragma once

#include <string_view>

#include "dioclust/methods.hpp"

namespace dioclust {

inline constexpr std::string_view kMethodGrammar =
    "reciprocal | nonreciprocal | single-linkage | semi-reciprocal:<t> | "
    "intermediate:<t>,<t'> | graft-rnr:<beta> | graft-rrmax:<beta> | "
    "graft-rr-invalid:<beta> | convex:<w1>*<spec1>+<w2>*<spec2>[+...] "
    "(nested specs parenthesized)";

/// Parses the method grammar above. Throws ParseError with the grammar on
/// malformed input, and with the actual sum when convex weights do not sum
/// to one.
MethodSpec parse_method_spec(std::string_view text);

}  // namespace dioclust
