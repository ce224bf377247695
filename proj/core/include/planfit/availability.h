#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "planfit/summary.h"
#include "planfit/weekday.h"

namespace planfit {

/// Structured reading of a free-text availability such as
/// "Everyday after 7 pm except for Sat" or "Thu--Sun after 7 pm".
struct DayPhrase {
  DaySet days;             // days named (all seven when none are recognised)
  std::string time_spec;   // the phrase with the day wording removed
  bool recognized = false; // some day wording was found
  bool negated = false;    // "unable to exercise on ..." style exclusion
};

/// Recognises "weekdays", "weekends", "everyday"/"daily", ranges written with
/// -, --, en/em dash, "to" or "through" (inclusive, wrapping past Sunday),
/// explicit day lists and "except (for) <days>".
DayPhrase parse_day_phrase(std::string_view phrase);

struct AvailabilitySlot {
  Weekday day = Weekday::Mon;
  std::string time_spec;
  std::string source_entity_id;

  friend bool operator==(const AvailabilitySlot&, const AvailabilitySlot&) = default;
};

struct Expansion {
  std::vector<AvailabilitySlot> slots;
  bool exclusions_ignored = false;  // negated availabilities would have removed every day
};

/// One slot per (availability, weekday), in availability order then Monday-first.
/// Throws NoAvailability.
Expansion expand_availabilities_detailed(const PlanSummary& summary);
std::vector<AvailabilitySlot> expand_availabilities(const PlanSummary& summary);

DaySet available_days(const std::vector<AvailabilitySlot>& slots);

}  // namespace planfit
