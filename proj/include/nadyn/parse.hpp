#pragma once

#include <string>

#include "nadyn/respoly.hpp"

namespace nadyn {

/// Integers, fractions, the uniformizer ("p" over Q_p, "t" over F_p((t))),
/// the variable z, + - * / ^ and parentheses. Division only by nonzero
/// constants; negative exponents only on constants. Errors are ParseError
/// with a 1-based column in the message.
KPoly parse_poly(const FieldSpec& f, const std::string& text);
KElem parse_element(const FieldSpec& f, const std::string& text);

} // namespace nadyn
