#include "vnesim/textio.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace vnesim {

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

double parse_real(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last)
    throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
  return v;
}

long long parse_int(std::string_view text) {
  long long v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last)
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return v;
}

}  // namespace vnesim
