#pragma once

#include <array>
#include <charconv>
#include <string>

namespace decwave {

/// Shortest decimal text that reads back to the same double.
inline std::string format_shortest(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

/// `%.<digits>g`-style text with a fixed number of significant digits.
inline std::string format_significant(double value, int digits) {
  std::array<char, 48> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
  return std::string(buf.data(), ptr);
}

}  // namespace decwave
