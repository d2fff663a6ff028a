#pragma once

#include <string_view>

#include "irrvir/laurent_poly.hpp"

namespace irrvir {

/// Parses expressions such as "2*Q*c1 - c0*c1" or "(c1^2/2)*(c0 - c0p)".
/// Supports + - * / ^ (integer exponents, possibly negative) and parentheses.
/// Division must be exact in the Laurent ring. Throws Error(Parse).
LaurentPoly parse_poly(const VarTablePtr& vars, std::string_view text);

}  // namespace irrvir
