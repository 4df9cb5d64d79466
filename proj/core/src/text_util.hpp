#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace guibench::text_util {

std::string_view trim(std::string_view s);
std::string ascii_lower(std::string_view s);
// trim, collapse internal whitespace runs to one space, ASCII case-fold.
std::string normalize(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);

}  // namespace guibench::text_util
