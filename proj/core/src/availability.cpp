#include "planfit/availability.h"

#include <algorithm>

#include "planfit/error.h"
#include "planfit/text.h"

namespace planfit {

namespace {

struct Span {
  std::size_t begin;
  std::size_t end;
};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

/// Whole-word occurrences of `word` in the lower-cased text.
std::vector<Span> find_word(const std::string& lower, std::string_view word) {
  std::vector<Span> out;
  for (std::size_t p = lower.find(word); p != std::string::npos; p = lower.find(word, p + 1)) {
    bool left = p == 0 || !is_alpha(lower[p - 1]);
    bool right = p + word.size() >= lower.size() || !is_alpha(lower[p + word.size()]);
    if (left && right) out.push_back({p, p + word.size()});
  }
  return out;
}

bool is_range_connector(std::string_view gap) {
  const std::string g = text::to_lower(text::trim(gap));
  return g == "-" || g == "--" || g == "\xE2\x80\x93" || g == "\xE2\x80\x94" || g == "~" || g == "to" ||
         g == "through" || g == "thru" || g == "until" || g == "till";
}

bool is_connector_token(const std::string& t) {
  static const std::vector<std::string> kTokens = {"&", "and", ",", "or", "on", "/", "-", "--", "every", "of", "the",
                                                   "week"};
  return std::find(kTokens.begin(), kTokens.end(), text::to_lower(t)) != kTokens.end();
}

std::string strip_connectors(const std::string& s) {
  std::vector<std::string> toks = text::split_any(s, " ");
  // Separate trailing commas so "Mon, Wed," style leftovers vanish.
  std::vector<std::string> flat;
  for (auto& t : toks) {
    if (t.size() > 1 && t.back() == ',') {
      flat.push_back(t.substr(0, t.size() - 1));
      flat.emplace_back(",");
    } else {
      flat.push_back(t);
    }
  }
  std::size_t b = 0;
  std::size_t e = flat.size();
  while (b < e && is_connector_token(flat[b])) ++b;
  while (e > b && is_connector_token(flat[e - 1])) --e;
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (flat[i] == "," && !out.empty()) {
      out += ",";
      continue;
    }
    if (!out.empty()) out += ' ';
    out += flat[i];
  }
  return out;
}

}  // namespace

DayPhrase parse_day_phrase(std::string_view phrase_in) {
  const std::string phrase = text::collapse_whitespace(phrase_in);
  const std::string lower = text::to_lower(phrase);
  DayPhrase out;
  std::vector<Span> consumed;

  for (const char* neg : {"unable", "can't", "cannot", "can not", "not available", "unavailable"}) {
    if (lower.find(neg) != std::string::npos) out.negated = true;
  }

  std::size_t except_at = std::string::npos;
  std::size_t except_end = std::string::npos;
  for (const char* ex : {"except for", "except"}) {
    auto hits = find_word(lower, ex);
    if (!hits.empty()) {
      except_at = hits.front().begin;
      except_end = hits.front().end;
      break;
    }
  }

  DaySet positive;
  DaySet excluded;
  auto matches = find_weekdays(phrase);
  std::vector<bool> used(matches.size(), false);
  for (std::size_t i = 0; i + 1 < matches.size(); ++i) {
    const auto& a = matches[i];
    const auto& b = matches[i + 1];
    std::string_view gap(phrase.data() + a.position + a.length, b.position - (a.position + a.length));
    if (!is_range_connector(gap)) continue;
    DaySet r = DaySet::range(a.day, b.day);
    if (except_at != std::string::npos && a.position > except_at) excluded = excluded | r;
    else positive = positive | r;
    used[i] = used[i + 1] = true;
    consumed.push_back({a.position, b.position + b.length});
    ++i;
  }
  bool excluded_days_found = false;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (used[i]) {
      if (except_at != std::string::npos && matches[i].position > except_at) excluded_days_found = true;
      continue;
    }
    const auto& m = matches[i];
    if (except_at != std::string::npos && m.position > except_at) {
      excluded.insert(m.day);
      excluded_days_found = true;
    } else {
      positive.insert(m.day);
    }
    consumed.push_back({m.position, m.position + m.length});
  }

  struct Keyword {
    const char* word;
    DaySet days;
  };
  const Keyword keywords[] = {{"weekdays", DaySet::range(Weekday::Mon, Weekday::Fri)},
                              {"weekday", DaySet::range(Weekday::Mon, Weekday::Fri)},
                              {"weekends", DaySet{Weekday::Sat, Weekday::Sun}},
                              {"weekend", DaySet{Weekday::Sat, Weekday::Sun}},
                              {"everyday", DaySet::all()},
                              {"every day", DaySet::all()},
                              {"daily", DaySet::all()},
                              {"any day", DaySet::all()},
                              {"all week", DaySet::all()}};
  for (const auto& kw : keywords) {
    for (const auto& s : find_word(lower, kw.word)) {
      bool overlaps = std::any_of(consumed.begin(), consumed.end(),
                                  [&](const Span& c) { return s.begin < c.end && c.begin < s.end; });
      if (overlaps) continue;
      if (except_at != std::string::npos && s.begin > except_at) {
        excluded = excluded | kw.days;
        excluded_days_found = true;
      } else {
        positive = positive | kw.days;
      }
      consumed.push_back(s);
    }
  }
  if (excluded_days_found) consumed.push_back({except_at, except_end});

  out.recognized = !positive.empty() || excluded_days_found;
  DaySet days = positive.empty() ? DaySet::all() : positive;
  out.days = days - excluded;

  std::string remaining = phrase;
  std::sort(consumed.begin(), consumed.end(), [](const Span& a, const Span& b) { return a.begin > b.begin; });
  for (const auto& c : consumed) {
    for (std::size_t k = c.begin; k < c.end && k < remaining.size(); ++k) remaining[k] = ' ';
  }
  out.time_spec = out.recognized ? strip_connectors(text::collapse_whitespace(remaining)) : phrase;
  return out;
}

Expansion expand_availabilities_detailed(const PlanSummary& summary) {
  if (summary.availabilities.empty()) throw Error(ErrorCode::NoAvailability, "");
  Expansion out;
  DaySet exclusions;
  for (const auto& a : summary.availabilities) {
    DaySet days;
    std::string time_spec;
    bool negated = false;
    const Json& p = a.payload;
    auto spec = p.find("day_spec");
    if (spec != p.end() && spec->is_array()) {
      for (const auto& d : *spec) {
        if (auto wd = parse_weekday_word(text::capitalize_first(d.get<std::string>()))) days.insert(*wd);
      }
      time_spec = p.value("time_spec", "");
    } else if (spec != p.end() && spec->is_string()) {
      auto dp = parse_day_phrase(spec->get<std::string>());
      days = dp.days;
      negated = dp.negated;
      time_spec = p.value("time_spec", dp.recognized ? dp.time_spec : "");
    } else {
      auto dp = parse_day_phrase(a.label());
      days = dp.days;
      negated = dp.negated;
      time_spec = dp.time_spec;
      if (auto ts = p.find("time_spec"); ts != p.end() && ts->is_string()) time_spec = ts->get<std::string>();
    }
    if (negated) {
      exclusions = exclusions | days;
      continue;
    }
    for (auto d : days.days()) out.slots.push_back({d, time_spec, a.id});
  }
  if (out.slots.empty()) throw Error(ErrorCode::NoAvailability, "", "every availability is an exclusion");
  std::vector<AvailabilitySlot> kept;
  for (const auto& s : out.slots) {
    if (!exclusions.contains(s.day)) kept.push_back(s);
  }
  if (kept.empty()) out.exclusions_ignored = true;
  else out.slots = std::move(kept);
  return out;
}

std::vector<AvailabilitySlot> expand_availabilities(const PlanSummary& summary) {
  return expand_availabilities_detailed(summary).slots;
}

DaySet available_days(const std::vector<AvailabilitySlot>& slots) {
  DaySet d;
  for (const auto& s : slots) d.insert(s.day);
  return d;
}

}  // namespace planfit
