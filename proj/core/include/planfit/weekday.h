#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace planfit {

enum class Weekday : std::uint8_t { Mon = 0, Tue, Wed, Thu, Fri, Sat, Sun };

inline constexpr std::array<Weekday, 7> kAllWeekdays = {Weekday::Mon, Weekday::Tue, Weekday::Wed, Weekday::Thu,
                                                        Weekday::Fri, Weekday::Sat, Weekday::Sun};

constexpr int index_of(Weekday d) noexcept { return static_cast<int>(d); }
constexpr Weekday weekday_at(int i) noexcept { return static_cast<Weekday>(((i % 7) + 7) % 7); }
constexpr Weekday next_day(Weekday d, int offset = 1) noexcept { return weekday_at(index_of(d) + offset); }

std::string_view full_name(Weekday d) noexcept;   // "Monday"
std::string_view short_name(Weekday d) noexcept;  // "Mon"

/// Accepts full names (any case, optional plural "s") and the usual
/// abbreviations ("Mon", "Tues", "Thurs"). Abbreviations must be capitalised
/// so that ordinary words such as "sun" or "sat" are not misread.
std::optional<Weekday> parse_weekday_word(std::string_view word);

/// Parses a canonical short or full name; throws Error(InvalidArgument) otherwise.
Weekday weekday_from_string(std::string_view s);

struct WeekdayMatch {
  Weekday day;
  std::size_t position;  // byte offset of the word
  std::size_t length;
};

/// First whole-word weekday mention in free text.
std::optional<WeekdayMatch> find_first_weekday(std::string_view text);

/// Every whole-word weekday mention, in order.
std::vector<WeekdayMatch> find_weekdays(std::string_view text);

/// Days between `from` and `to` going forward through the week (0..6).
constexpr int forward_distance(Weekday from, Weekday to) noexcept {
  return ((index_of(to) - index_of(from)) % 7 + 7) % 7;
}

/// Set of weekdays stored as a 7-bit mask; iteration is Monday-first.
class DaySet {
 public:
  constexpr DaySet() = default;
  constexpr explicit DaySet(std::uint8_t mask) : mask_(mask & 0x7F) {}
  DaySet(std::initializer_list<Weekday> days) {
    for (auto d : days) insert(d);
  }

  static constexpr DaySet all() { return DaySet(0x7F); }
  static DaySet range(Weekday first, Weekday last);  // inclusive, wraps past Sunday

  constexpr bool contains(Weekday d) const noexcept { return (mask_ >> index_of(d)) & 1U; }
  constexpr void insert(Weekday d) noexcept { mask_ |= static_cast<std::uint8_t>(1U << index_of(d)); }
  constexpr void erase(Weekday d) noexcept { mask_ &= static_cast<std::uint8_t>(~(1U << index_of(d))); }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept;
  constexpr std::uint8_t mask() const noexcept { return mask_; }

  std::vector<Weekday> days() const;

  friend constexpr DaySet operator|(DaySet a, DaySet b) { return DaySet(a.mask_ | b.mask_); }
  friend constexpr DaySet operator&(DaySet a, DaySet b) { return DaySet(a.mask_ & b.mask_); }
  friend constexpr DaySet operator-(DaySet a, DaySet b) {
    return DaySet(static_cast<std::uint8_t>(a.mask_ & ~b.mask_));
  }
  friend constexpr bool operator==(DaySet a, DaySet b) = default;

 private:
  std::uint8_t mask_ = 0;
};

}  // namespace planfit
