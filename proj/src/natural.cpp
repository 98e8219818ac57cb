#include "collatz/natural.hpp"

#include <algorithm>
#include <cctype>

namespace collatz {

std::string to_string(const Rational& r) {
  return r.get_str(10);
}

Natural parse_natural(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](unsigned char ch) { return std::isdigit(ch) != 0; }))
    throw ConfigError("not a non-negative integer: '" + std::string(text) + "'");
  return Natural(std::string(text), 10);
}

}  // namespace collatz
