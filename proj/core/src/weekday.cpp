#include "planfit/weekday.h"

#include <bit>
#include <cctype>

#include "planfit/error.h"
#include "planfit/text.h"

namespace planfit {

namespace {

constexpr std::array<std::string_view, 7> kFull = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                                                   "Friday", "Saturday", "Sunday"};
constexpr std::array<std::string_view, 7> kShort = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

struct Abbrev {
  std::string_view word;
  Weekday day;
};

constexpr std::array<Abbrev, 10> kAbbrev = {{{"Mon", Weekday::Mon},
                                             {"Tue", Weekday::Tue},
                                             {"Tues", Weekday::Tue},
                                             {"Wed", Weekday::Wed},
                                             {"Thu", Weekday::Thu},
                                             {"Thur", Weekday::Thu},
                                             {"Thurs", Weekday::Thu},
                                             {"Fri", Weekday::Fri},
                                             {"Sat", Weekday::Sat},
                                             {"Sun", Weekday::Sun}}};

bool is_word_char(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string_view full_name(Weekday d) noexcept { return kFull[static_cast<std::size_t>(index_of(d))]; }

std::string_view short_name(Weekday d) noexcept { return kShort[static_cast<std::size_t>(index_of(d))]; }

std::optional<Weekday> parse_weekday_word(std::string_view word) {
  if (word.empty()) return std::nullopt;
  for (std::size_t i = 0; i < kFull.size(); ++i) {
    if (text::iequals(word, kFull[i])) return weekday_at(static_cast<int>(i));
    if (word.size() == kFull[i].size() + 1 && (word.back() == 's' || word.back() == 'S') &&
        text::iequals(word.substr(0, kFull[i].size()), kFull[i])) {
      return weekday_at(static_cast<int>(i));
    }
  }
  if (!std::isupper(static_cast<unsigned char>(word.front()))) return std::nullopt;
  for (const auto& a : kAbbrev) {
    if (text::iequals(word, a.word)) return a.day;
  }
  return std::nullopt;
}

Weekday weekday_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kFull.size(); ++i) {
    if (text::iequals(s, kFull[i]) || text::iequals(s, kShort[i])) return weekday_at(static_cast<int>(i));
  }
  throw Error(ErrorCode::InvalidArgument, std::string(s), "not a weekday");
}

std::vector<WeekdayMatch> find_weekdays(std::string_view text) {
  std::vector<WeekdayMatch> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_char(text[j])) ++j;
    if (auto d = parse_weekday_word(text.substr(i, j - i))) out.push_back({*d, i, j - i});
    i = j;
  }
  return out;
}

std::optional<WeekdayMatch> find_first_weekday(std::string_view text) {
  auto all = find_weekdays(text);
  if (all.empty()) return std::nullopt;
  return all.front();
}

DaySet DaySet::range(Weekday first, Weekday last) {
  DaySet out;
  for (int k = 0; k <= forward_distance(first, last); ++k) out.insert(next_day(first, k));
  return out;
}

int DaySet::size() const noexcept { return std::popcount(static_cast<unsigned>(mask_)); }

std::vector<Weekday> DaySet::days() const {
  std::vector<Weekday> out;
  for (auto d : kAllWeekdays) {
    if (contains(d)) out.push_back(d);
  }
  return out;
}

}  // namespace planfit
