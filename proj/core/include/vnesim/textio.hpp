#pragma once

#include <string>
#include <string_view>

namespace vnesim {

// Shortest decimal form that parses back to exactly the same double
// (std::to_chars without a precision), so writing and re-reading a value
// is the identity.
std::string format_real(double v);

// Strict full-string parse; throws std::invalid_argument on anything else.
// Accepts "nan" and "inf" spellings the formatter can produce.
double parse_real(std::string_view text);

long long parse_int(std::string_view text);

}  // namespace vnesim
