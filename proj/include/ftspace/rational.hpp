#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ftspace {

/// Exact rational number; every measure value in the library is one of these.
using Rational = mpq_class;

/// Parses "num/den" or a bare integer. The result is canonical (reduced, positive
/// denominator). Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text: "p/q" with q > 1, or the integer itself.
std::string format_rational(const Rational& q);

} // namespace ftspace
