#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small ASCII-oriented string helpers shared across modules. Non-ASCII bytes
// pass through untouched so UTF-8 text survives every transformation.
namespace planfit::text {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string collapse_whitespace(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);
bool starts_with_icase(std::string_view s, std::string_view prefix);

/// Splits on any of the given single-byte delimiters; drops empty pieces after trimming.
std::vector<std::string> split_any(std::string_view s, std::string_view delimiters);

/// Splits on a multi-character separator, case-insensitively; pieces are trimmed, empties dropped.
std::vector<std::string> split_icase(std::string_view s, std::string_view separator);

/// Lowercased alphanumeric runs. Bytes >= 0x80 count as word characters.
std::vector<std::string> word_tokens(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view separator);

/// Upper-cases the first ASCII letter.
std::string capitalize_first(std::string_view s);

/// Lower-cases the first character unless the second is upper case too (acronyms).
std::string lowercase_first(std::string_view s);

}  // namespace planfit::text
