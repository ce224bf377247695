#include "planfit/plan.h"

#include <regex>
#include <set>

#include "planfit/error.h"
#include "planfit/text.h"

namespace planfit {

const PlanRule* WeeklyPlan::find_rule(std::string_view id) const {
  for (const auto& r : rules) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

void WeeklyPlan::validate() const {
  std::set<std::string, std::less<>> ids;
  for (const auto& r : rules) {
    if (!ids.insert(r.id).second) throw Error(ErrorCode::InvalidPlan, r.id, "duplicate rule id");
    if (r.amount_minutes <= 0) throw Error(ErrorCode::InvalidPlan, r.id, "amount must be positive");
  }
  for (const auto& c : coping_plans) {
    if (!ids.insert(c.id).second) throw Error(ErrorCode::InvalidPlan, c.id, "duplicate coping plan id");
    if (c.parent_rule_ids.empty()) throw Error(ErrorCode::InvalidPlan, c.id, "coping plan without parent");
    for (const auto& p : c.parent_rule_ids) {
      if (find_rule(p) == nullptr) throw Error(ErrorCode::InvalidPlan, c.id, "unresolved parent " + p);
    }
  }
}

int effective_minutes(const WeeklyPlan& plan, int vigorous_multiplier) {
  int total = 0;
  for (const auto& r : plan.rules) {
    total += r.amount_minutes * (r.intensity == Intensity::Vigorous ? vigorous_multiplier : 1);
  }
  return total;
}

DaySet exercise_days(const WeeklyPlan& plan) {
  DaySet days;
  for (const auto& r : plan.rules) days.insert(r.day);
  return days;
}

void resolve_exercises(WeeklyPlan& plan, const Catalog& catalog) {
  for (auto& r : plan.rules) {
    if (!r.exercise_row_id.empty()) {
      const auto& e = catalog.at(r.exercise_row_id);
      if (r.exercise_name.empty()) r.exercise_name = e.name;
      continue;
    }
    const auto* e = catalog.find_by_name(r.exercise_name);
    if (e == nullptr) throw Error(ErrorCode::UnknownExercise, r.exercise_name);
    r.exercise_row_id = e->row_id;
  }
}

Amount parse_amount(std::string_view raw) {
  const std::string s = text::collapse_whitespace(raw);
  if (s.empty() || s.size() > 200) throw Error(ErrorCode::UnparseableAmount, s);
  static const std::regex kAmount(
      // dash variants: hyphens, en dash, em dash, minus sign
      R"(^(\d{1,4}) ?(?:minutes?|mins?\.?)(?: ?(?:-+|)" "\xE2\x80\x93|\xE2\x80\x94|\xE2\x88\x92"
      R"(|,|:|/|\(|at|of))? ?(moderate|vigorous)(?: ?-? ?intensity)?\)?\.?$)",
      std::regex::icase | std::regex::ECMAScript);
  std::smatch m;
  if (!std::regex_match(s, m, kAmount)) throw Error(ErrorCode::UnparseableAmount, s);
  Amount a;
  a.minutes = std::stoi(m[1].str());
  if (a.minutes <= 0) throw Error(ErrorCode::UnparseableAmount, s);
  a.intensity = text::iequals(m[2].str(), "vigorous") ? Intensity::Vigorous : Intensity::Moderate;
  return a;
}

std::string format_amount(int minutes, Intensity intensity) {
  return std::to_string(minutes) + " minutes - " + std::string(to_string(intensity)) + " intensity";
}

namespace {

struct Block {
  std::size_t open = std::string_view::npos;  // position of "<Tag>"
  std::size_t content_begin = 0;
  std::size_t content_end = 0;
  std::size_t end = 0;  // one past "</Tag>"

  bool found() const { return open != std::string_view::npos; }
};

Block find_block(std::string_view s, std::string_view tag, std::size_t from, std::size_t limit = std::string_view::npos) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  Block b;
  if (limit > s.size()) limit = s.size();
  auto o = s.find(open, from);
  if (o == std::string_view::npos || o >= limit) return b;
  auto c = s.find(close, o + open.size());
  if (c == std::string_view::npos || c + close.size() > limit) return b;
  b.open = o;
  b.content_begin = o + open.size();
  b.content_end = c;
  b.end = c + close.size();
  return b;
}

std::string_view content(std::string_view s, const Block& b) {
  return s.substr(b.content_begin, b.content_end - b.content_begin);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '&') {
      if (s.substr(i, 5) == "&amp;") {
        out += '&';
        i += 4;
        continue;
      }
      if (s.substr(i, 4) == "&lt;") {
        out += '<';
        i += 3;
        continue;
      }
      if (s.substr(i, 4) == "&gt;") {
        out += '>';
        i += 3;
        continue;
      }
    }
    out += s[i];
  }
  return out;
}

std::string clean(std::string_view s) { return text::collapse_whitespace(unescape(s)); }

std::string strip_punctuation(std::string s) {
  auto is_edge = [](char c) { return c == ',' || c == ';' || c == ':' || c == ' '; };
  while (!s.empty() && is_edge(s.front())) s.erase(s.begin());
  while (!s.empty() && is_edge(s.back())) s.pop_back();
  return s;
}

std::string remove_span(const std::string& s, std::size_t pos, std::size_t len) {
  std::string out = s.substr(0, pos) + s.substr(pos + len);
  out = text::collapse_whitespace(out);
  for (std::size_t p; (p = out.find(" ,")) != std::string::npos;) out.erase(p, 1);
  return strip_punctuation(out);
}

struct PendingCoping {
  std::string clause;
  std::string alternative;
  std::vector<std::string> parents;
};

}  // namespace

WeeklyPlan parse_plan_xml(std::string_view message) {
  WeeklyPlan plan;
  std::vector<PendingCoping> copings;
  std::size_t pos = 0;
  while (pos < message.size()) {
    const Block if_block = find_block(message, "If", pos);
    if (!if_block.found()) break;
    const auto next_if = message.find("<If>", if_block.end);
    const Block then_block = find_block(message, "Then", if_block.end);
    if (!then_block.found() || (next_if != std::string_view::npos && then_block.open > next_if)) {
      pos = if_block.end;
      continue;
    }
    const std::string if_text = clean(content(message, if_block));
    const std::string_view body = content(message, then_block);
    pos = then_block.end;

    if (const Block cb = find_block(body, "CopingPlan", 0); cb.found()) {
      PendingCoping pc{if_text, clean(content(body, cb)), {}};
      if (auto day = find_first_weekday(if_text)) {
        for (const auto& r : plan.rules) {
          if (r.day == day->day) pc.parents.push_back(r.id);
        }
      }
      copings.push_back(std::move(pc));
      continue;
    }

    const Block ex = find_block(body, "Exercise", 0);
    if (!ex.found()) continue;
    const Block amount = find_block(body, "Amount", 0);
    if (!amount.found()) throw Error(ErrorCode::UnparseableAmount, "<missing>");
    const Amount a = parse_amount(clean(content(body, amount)));

    PlanRule rule;
    rule.id = "r" + std::to_string(plan.rules.size() + 1);
    rule.exercise_name = clean(content(body, ex));
    if (const Block rid = find_block(body, "RowID", 0); rid.found()) rule.exercise_row_id = clean(content(body, rid));
    rule.amount_minutes = a.minutes;
    rule.intensity = a.intensity;
    if (auto day = find_first_weekday(if_text)) {
      rule.day = day->day;
      rule.situation = remove_span(if_text, day->position, day->length);
    } else if (!plan.rules.empty()) {
      rule.day = plan.rules.back().day;
      rule.situation = if_text;
    } else {
      throw Error(ErrorCode::MissingDay, if_text);
    }
    plan.rules.push_back(std::move(rule));
  }

  if (plan.rules.empty()) throw Error(ErrorCode::NoPlanFound, "");

  for (std::size_t i = 0; i < copings.size(); ++i) {
    CopingPlan c;
    c.id = "c" + std::to_string(i + 1);
    c.obstacle_clause = std::move(copings[i].clause);
    c.alternative = std::move(copings[i].alternative);
    c.parent_rule_ids = std::move(copings[i].parents);
    if (c.parent_rule_ids.empty()) {
      for (const auto& r : plan.rules) c.parent_rule_ids.push_back(r.id);
    }
    plan.coping_plans.push_back(std::move(c));
  }
  return plan;
}

std::string serialize_plan_xml(const WeeklyPlan& plan) {
  std::string out;
  for (const auto& r : plan.rules) {
    out += "<If>";
    out += full_name(r.day);
    if (!r.situation.empty()) out += " " + escape(r.situation);
    out += "</If>\n<Then>\n  <Exercise>" + escape(r.exercise_name) + "</Exercise>\n";
    if (!r.exercise_row_id.empty()) out += "  <RowID>" + escape(r.exercise_row_id) + "</RowID>\n";
    out += "  <Amount>" + format_amount(r.amount_minutes, r.intensity) + "</Amount>\n</Then>\n";
  }
  for (const auto& c : plan.coping_plans) {
    out += "<If>" + escape(c.obstacle_clause) + "</If>\n<Then>\n  <CopingPlan>" + escape(c.alternative) +
           "</CopingPlan>\n</Then>\n";
  }
  return out;
}

std::vector<RecommendationItem> parse_recommendations_xml(std::string_view message) {
  std::vector<RecommendationItem> items;
  std::size_t pos = 0;
  while (true) {
    const Block out = find_block(message, "Output", pos);
    if (!out.found()) break;
    pos = out.end;
    const std::string_view body = content(message, out);
    const Block ex = find_block(body, "Exercise", 0);
    if (!ex.found()) continue;
    const Block rid = find_block(body, "RowID", ex.end);
    if (!rid.found()) continue;
    std::string rest(body.substr(rid.end));
    rest = text::trim(rest);
    while (!rest.empty() && (rest.front() == ')' || rest.front() == ':' || rest.front() == ' ')) rest.erase(rest.begin());
    items.push_back({clean(content(body, rid)), clean(content(body, ex)), clean(rest)});
  }
  return items;
}

std::string serialize_recommendations_xml(const std::vector<RecommendationItem>& items) {
  std::string out;
  for (const auto& it : items) {
    out += "<Output><Exercise>" + escape(it.exercise_name) + "</Exercise> (<RowID>" + escape(it.exercise_row_id) +
           "</RowID>): " + escape(it.rationale) + "</Output>\n";
  }
  return out;
}

Json to_json(const PlanRule& r) {
  return Json{{"id", r.id},
              {"day", std::string(full_name(r.day))},
              {"situation", r.situation},
              {"exercise_row_id", r.exercise_row_id},
              {"exercise_name", r.exercise_name},
              {"amount_minutes", r.amount_minutes},
              {"intensity", std::string(to_string(r.intensity))}};
}

Json to_json(const CopingPlan& c) {
  return Json{{"id", c.id},
              {"parent_rule_ids", c.parent_rule_ids},
              {"obstacle_clause", c.obstacle_clause},
              {"alternative", c.alternative}};
}

Json to_json(const WeeklyPlan& plan) {
  Json rules = Json::array();
  for (const auto& r : plan.rules) rules.push_back(to_json(r));
  Json coping = Json::array();
  for (const auto& c : plan.coping_plans) coping.push_back(to_json(c));
  return Json{{"rules", std::move(rules)}, {"coping_plans", std::move(coping)}};
}

Json to_json(const RecommendationItem& item) {
  return Json{{"exercise_row_id", item.exercise_row_id},
              {"exercise_name", item.exercise_name},
              {"rationale", item.rationale}};
}

PlanRule rule_from_json(const Json& j) {
  PlanRule r;
  r.id = j.at("id").get<std::string>();
  r.day = weekday_from_string(j.at("day").get<std::string>());
  r.situation = j.value("situation", "");
  r.exercise_row_id = j.value("exercise_row_id", "");
  r.exercise_name = j.at("exercise_name").get<std::string>();
  r.amount_minutes = j.at("amount_minutes").get<int>();
  r.intensity = parse_intensity(j.at("intensity").get<std::string>());
  return r;
}

CopingPlan coping_from_json(const Json& j) {
  CopingPlan c;
  c.id = j.at("id").get<std::string>();
  c.parent_rule_ids = j.at("parent_rule_ids").get<std::vector<std::string>>();
  c.obstacle_clause = j.at("obstacle_clause").get<std::string>();
  c.alternative = j.at("alternative").get<std::string>();
  return c;
}

WeeklyPlan plan_from_json(const Json& j) {
  WeeklyPlan plan;
  for (const auto& r : j.at("rules")) plan.rules.push_back(rule_from_json(r));
  for (const auto& c : j.value("coping_plans", Json::array())) plan.coping_plans.push_back(coping_from_json(c));
  return plan;
}

RecommendationItem recommendation_from_json(const Json& j) {
  return {j.at("exercise_row_id").get<std::string>(), j.value("exercise_name", ""), j.value("rationale", "")};
}

}  // namespace planfit
