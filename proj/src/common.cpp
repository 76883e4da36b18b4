#include "pmv/common.hpp"

#include <algorithm>

namespace pmv {

Theta Theta::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Infinity") return Theta::infinite();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InvalidArgument("invalid theta '" + text + "': expected a non-negative integer or 'inf'");
  }
  try {
    return Theta(std::stoull(text));
  } catch (const std::out_of_range&) {
    throw InvalidArgument("theta '" + text + "' out of range");
  }
}

}  // namespace pmv
