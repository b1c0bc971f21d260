#pragma once

#include <string>
#include <string_view>

namespace morphchain::utf8 {

// Decodes a UTF-8 string into Unicode scalar values. Throws std::invalid_argument
// on malformed input (truncated sequences, overlongs, surrogates, > U+10FFFF).
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
std::string encode(char32_t ch);

// Number of Unicode scalar values in a UTF-8 string.
std::size_t length(std::string_view text);

bool is_valid(std::string_view text);

}  // namespace morphchain::utf8
