#pragma once

#include <string>
#include <string_view>

namespace forage {

// Porter's suffix-stripping algorithm for English (the 1980 rule set).
// Expects a lowercase word; anything containing a character outside
// [a-z] is returned unchanged, as are words of length <= 2.
std::string porter_stem(std::string_view word);

}  // namespace forage
