#include "planfit/text.h"
#include "planfit/weekday.h"

#include <algorithm>
#include <cctype>

namespace planfit::text {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

}  // namespace

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

bool icontains(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

std::vector<std::string> split_any(std::string_view s, std::string_view delimiters) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || delimiters.find(s[i]) != std::string_view::npos) {
      auto piece = trim(s.substr(start, i - start));
      if (!piece.empty()) out.push_back(std::move(piece));
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string> split_icase(std::string_view s, std::string_view separator) {
  std::vector<std::string> out;
  if (separator.empty()) {
    auto piece = trim(s);
    if (!piece.empty()) out.push_back(std::move(piece));
    return out;
  }
  const std::string hay = to_lower(s);
  const std::string sep = to_lower(separator);
  std::size_t start = 0;
  while (true) {
    std::size_t pos = hay.find(sep, start);
    auto piece = trim(s.substr(start, (pos == std::string::npos ? s.size() : pos) - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    if (pos == std::string::npos) break;
    start = pos + sep.size();
  }
  return out;
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (is_word_byte(c)) {
      current += lower(c);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

std::string capitalize_first(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    }
  }
  return out;
}

std::string lowercase_first(std::string_view s) {
  std::string out(s);
  if (out.size() >= 2 && std::isupper(static_cast<unsigned char>(out[1]))) return out;
  // Day names stay capitalised ("Thu--Sun after 7 pm").
  std::size_t word_end = 0;
  while (word_end < out.size() && std::isalpha(static_cast<unsigned char>(out[word_end]))) ++word_end;
  if (parse_weekday_word(std::string_view(out).substr(0, word_end))) return out;
  if (!out.empty()) out[0] = lower(out[0]);
  return out;
}

}  // namespace planfit::text
