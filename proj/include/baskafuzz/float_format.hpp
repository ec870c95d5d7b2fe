#pragma once

#include <string>

namespace baskafuzz {

/// Shortest decimal string that parses back to exactly `value`
/// ('.' separator, no locale). Non-finite values render as nan, inf, -inf.
std::string format_double(double value);

}  // namespace baskafuzz
