#include <algorithm>
#include <regex>

#include "planfit/availability.h"
#include "planfit/error.h"
#include "planfit/provider.h"
#include "planfit/retrieval.h"
#include "planfit/text.h"

namespace planfit {

namespace intent {

namespace {

std::string normalized(std::string_view text) {
  std::string s = text::to_lower(text::collapse_whitespace(text));
  // Curly apostrophes to ASCII.
  for (std::size_t p = s.find("\xE2\x80\x99"); p != std::string::npos; p = s.find("\xE2\x80\x99", p)) s.replace(p, 3, "'");
  while (!s.empty() && std::string_view(".!?,").find(s.back()) != std::string_view::npos) s.pop_back();
  return s;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\''; }

bool has_phrase_prefix(const std::string& s, std::string_view phrase) {
  if (s.compare(0, phrase.size(), phrase) != 0) return false;
  return s.size() == phrase.size() || !is_word_char(s[phrase.size()]);
}

bool has_phrase(const std::string& s, std::string_view phrase) {
  for (std::size_t p = s.find(phrase); p != std::string::npos; p = s.find(phrase, p + 1)) {
    bool left = p == 0 || !is_word_char(s[p - 1]);
    bool right = p + phrase.size() >= s.size() || !is_word_char(s[p + phrase.size()]);
    if (left && right) return true;
  }
  return false;
}

std::string strip_end_punct(std::string s) {
  s = text::trim(s);
  while (!s.empty() && std::string_view(".!?,;:").find(s.back()) != std::string_view::npos) s.pop_back();
  return text::trim(s);
}

}  // namespace

bool is_negative(std::string_view text) {
  const std::string s = normalized(text);
  static const char* kPrefixes[] = {"no",         "nope",         "nothing", "none",      "not really", "nah",
                                    "that's all", "that's it",    "that is all", "that is it", "n/a", "i'm good",
                                    "all good",   "no thanks",    "not at the moment"};
  return std::any_of(std::begin(kPrefixes), std::end(kPrefixes), [&](const char* p) { return has_phrase_prefix(s, p); });
}

bool is_dissatisfied(std::string_view text) {
  const std::string s = normalized(text);
  static const char* kPhrases[] = {"not satisfied", "dissatisfied", "unsatisfied", "wasn't satisfied",
                                   "was not satisfied", "didn't", "did not", "couldn't", "could not",
                                   "too hard", "too much", "too long", "not happy", "unhappy", "not really"};
  return std::any_of(std::begin(kPhrases), std::end(kPhrases), [&](const char* p) { return has_phrase(s, p); });
}

bool is_affirmative(std::string_view text) {
  if (is_dissatisfied(text)) return false;
  const std::string s = normalized(text);
  static const char* kPrefixes[] = {"yes",      "yeah",       "yep",        "sure",      "ok",        "okay",
                                    "sounds good", "looks good", "great",   "perfect",   "fine",      "good",
                                    "i followed", "thanks",   "thank you", "let's do it", "please do", "go ahead",
                                    "i like it", "i love it", "love it"};
  if (std::any_of(std::begin(kPrefixes), std::end(kPrefixes), [&](const char* p) { return has_phrase_prefix(s, p); })) {
    return true;
  }
  return has_phrase(s, "satisfied") || has_phrase(s, "looks good") || has_phrase(s, "sounds good");
}

bool wants_removal(std::string_view text) {
  const std::string s = normalized(text);
  static const char* kPhrases[] = {"remove", "delete", "drop", "stop", "exclude", "no longer", "get rid of", "take out"};
  return std::any_of(std::begin(kPhrases), std::end(kPhrases), [&](const char* p) { return has_phrase(s, p); });
}

bool wants_refresh(std::string_view text) {
  const std::string s = normalized(text);
  static const char* kPhrases[] = {"other options", "more options", "something else", "different", "none of these",
                                   "none of them", "other exercises", "others"};
  return std::any_of(std::begin(kPhrases), std::end(kPhrases), [&](const char* p) { return has_phrase(s, p); });
}

std::vector<std::string> split_clauses(std::string_view text) {
  std::vector<std::string> out;
  for (auto& part : text::split_any(text, ";\n")) {
    std::string c = strip_end_punct(part);
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::string> split_goals(std::string_view input) {
  std::vector<std::string> pieces;
  for (const auto& clause : text::split_any(input, ";,\n")) {
    for (const auto& a : text::split_icase(clause, " and ")) {
      for (const auto& b : text::split_icase(a, " also ")) {
        for (const auto& c : text::split_icase(b, " as well as ")) pieces.push_back(c);
      }
    }
  }
  static const char* kLead[] = {"i want to ",   "i'd like to ",    "i would like to ", "i wanna ",  "i hope to ",
                                "i need to ",   "my goal is to ",  "my goals are to ", "my goal is ", "i want ",
                                "i'd like ",    "would like to ",  "want to ",         "also ",     "and ",
                                "to ",          "i also want to ", "i also "};
  std::vector<std::string> out;
  for (auto p : pieces) {
    p = strip_end_punct(p);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const char* lead : kLead) {
        if (text::starts_with_icase(p, lead)) {
          p = text::trim(p.substr(std::string_view(lead).size()));
          changed = true;
        }
      }
    }
    if (p.empty()) continue;
    out.push_back(text::capitalize_first(p));
  }
  return out;
}

std::optional<int> reduced_minutes(std::string_view text) {
  static const std::regex kOnly(R"((?:only|at most|max(?:imum)?)\s+(?:\w+\s+){0,2}?(\d{1,4})\s*(?:min|minutes))",
                                std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(text.begin(), text.end(), m, kOnly)) return std::stoi(m[1].str());
  return std::nullopt;
}

bool mentions_injury(std::string_view text) {
  const std::string s = normalized(text);
  return s.find("injur") != std::string::npos || has_phrase(s, "hurt") || has_phrase(s, "pain") ||
         s.find("sprain") != std::string::npos;
}

}  // namespace intent

namespace {

std::string labels(const std::vector<SummaryEntity>& entities) {
  std::vector<std::string> parts;
  for (const auto& e : entities) parts.push_back(text::lowercase_first(e.label()));
  if (parts.size() <= 1) return parts.empty() ? std::string() : parts.front();
  std::string last = parts.back();
  parts.pop_back();
  return text::join(parts, ", ") + " and " + last;
}

std::string advisory_lines(const std::vector<Advisory>& advisories) {
  std::string out;
  for (const auto& a : advisories) out += "\nNote: " + a.message;
  return out;
}

std::vector<RecommendationItem> recommendation_items(const PlanSummary& s) {
  std::vector<RecommendationItem> items;
  for (const auto& e : s.recommended_exercises) {
    items.push_back({e.payload.value("exercise_row_id", ""), e.payload.value("exercise_name", ""),
                     e.payload.value("rationale", "")});
  }
  return items;
}

std::vector<std::string> content_tokens(std::string_view text) {
  static const std::vector<std::string> kCommandWords = {"remove", "delete", "drop",  "stop",     "exclude",
                                                         "goal",   "goals",  "please", "obstacle", "availability"};
  std::vector<std::string> out;
  for (auto& t : extract_keywords({std::string(text)})) {
    if (std::find(kCommandWords.begin(), kCommandWords.end(), t) == kCommandWords.end()) out.push_back(t);
  }
  return out;
}

bool token_match(const std::string& a, const std::string& b) {
  if (a == b) return true;
  const auto& s = a.size() < b.size() ? a : b;
  const auto& l = a.size() < b.size() ? b : a;
  return s.size() >= 4 && l.compare(0, s.size(), s) == 0;
}

/// Best label match among goals, availabilities and obstacles.
std::optional<EditCommand> removal_for(const PlanSummary& summary, std::string_view user_text) {
  const auto wanted = content_tokens(user_text);
  int best = 0;
  std::optional<EditCommand> out;
  for (auto t : {Target::Goal, Target::Availability, Target::Obstacle}) {
    for (const auto& e : summary.collection(t)) {
      int score = 0;
      for (const auto& lt : content_tokens(e.label())) {
        if (std::any_of(wanted.begin(), wanted.end(), [&](const std::string& w) { return token_match(w, lt); })) ++score;
      }
      if (score > best) {
        best = score;
        out = EditCommand::remove(t, e.id);
      }
    }
  }
  return out;
}

std::optional<std::string> added_availability(const std::string& clause) {
  const std::string lower = text::to_lower(clause);
  for (const char* marker : {"available", "free"}) {
    auto p = lower.find(marker);
    if (p == std::string::npos) continue;
    std::string rest = text::trim(clause.substr(p + std::string_view(marker).size()));
    if (text::starts_with_icase(rest, "on ")) rest = text::trim(rest.substr(3));
    const auto dp = parse_day_phrase(rest.empty() ? clause : rest);
    if (!dp.recognized || dp.negated) return std::nullopt;
    return text::capitalize_first(rest.empty() ? clause : rest);
  }
  return std::nullopt;
}

}  // namespace

std::string TemplateProvider::render(const ResponseRequest& r) {
  const PlanSummary& s = r.summary;
  switch (r.cue) {
    case Cue::Greeting:
      return "Hi " + r.user_name +
             "! I'm here to help you put together a weekly exercise plan. To start, what would you like to "
             "achieve through exercise?";
    case Cue::AskGoals:
      return "Could you tell me what you hope to get out of exercising, for example losing weight, building "
             "strength or reducing stress?";
    case Cue::AskMoreGoals:
      return "Got it, your goals so far: " + labels(s.goals) + ". Is there anything else you'd like to add?";
    case Cue::AskAvailability:
      return "Thanks for sharing that. When during the week are you usually free to exercise?";
    case Cue::AskMoreAvailability:
      return "Noted: " + labels(s.availabilities) + ". Are there any other times you could exercise?";
    case Cue::AskObstacle:
      return "Thinking about " + text::lowercase_first(r.focus) +
             ", is there anything that might get in the way of exercising then, such as work, study or "
             "social plans?";
    case Cue::RequestRetrieval:
      return "Let me look for exercises that suit you.";
    case Cue::PresentRecommendations:
      return "Based on what you've told me, here are some exercises you might like:\n" +
             serialize_recommendations_xml(recommendation_items(s)) +
             "\nWhich of these would you like to include? You can pick more than one.";
    case Cue::ClarifySelection:
      return "I couldn't match that to one of the exercises. Which of the recommended exercises would you like "
             "to try?";
    case Cue::AskOtherType: {
      std::string kind = r.focus.empty() ? "cardio" : r.focus;
      std::string other = kind == "cardio" ? "strength" : "cardio";
      return "All of the exercises you picked are " + kind + " exercises. Would you like to add a " + other +
             " exercise as well? Mixing both types makes for a more balanced routine.";
    }
    case Cue::PresentPlan:
      return "Here is your weekly plan:\n" + (r.plan ? serialize_plan_xml(*r.plan) : std::string()) +
             advisory_lines(r.advisories) + "\nHow does this plan look to you?";
    case Cue::AskPlanFeedback:
      return "I'd like to get this right for you. What would you like to change about the plan?";
    case Cue::Closing:
      return "Great, your plan is all set. Would you let me know next week how it went?";
    case Cue::AskAdherence:
      return "Welcome back, " + r.user_name +
             "! Were you able to follow last week's plan, and were you satisfied with it?";
    case Cue::OfferProgression:
      return "I'm glad it went well! To keep making progress, how about slightly longer sessions next week?\n" +
             (r.preview ? serialize_plan_xml(*r.preview) : std::string()) + "Shall I update your plan?";
    case Cue::ProgressionApplied:
      return "Your plan is updated:\n" + (r.plan ? serialize_plan_xml(*r.plan) : std::string()) +
             advisory_lines(r.advisories) + "\nWould you check in again next week?";
    case Cue::AskWhatToChange:
      return "I'm sorry the plan didn't quite work out. What made it hard to follow, and what should we change?";
  }
  return {};
}

ProviderReply TemplateProvider::respond(const ResponseRequest& request, const std::vector<Turn>&) const {
  if (request.instruction.empty()) throw Error(ErrorCode::InvalidArgument, "instruction", "instruction is empty");
  ProviderReply reply;
  reply.text = render(request);
  if (request.cue == Cue::RequestRetrieval) {
    std::vector<std::string> phrases;
    for (const auto& g : request.summary.goals) phrases.push_back(g.label());
    for (const auto& o : request.summary.obstacles) phrases.push_back(o.label());
    reply.retrieval_request = RetrievalRequest{extract_keywords(phrases)};
  }
  return reply;
}

std::vector<EditCommand> TemplateProvider::analyze(const AnalyzeRequest& r) const {
  std::vector<EditCommand> out;
  const std::string& user = r.user_text;
  if (text::trim(user).empty() || intent::is_negative(user)) return out;

  const bool names_exercise = r.catalog != nullptr && !r.catalog->mentioned_in(user).empty();
  if (intent::wants_removal(user) && !names_exercise && r.stage != Stage::GatherObstacles) {
    if (auto cmd = removal_for(r.summary, user)) out.push_back(*cmd);
    return out;
  }

  switch (r.stage) {
    case Stage::GatherGoals:
      for (auto& g : intent::split_goals(user)) out.push_back(EditCommand::add(Target::Goal, Json{{"label", g}}));
      break;
    case Stage::GatherAvailability:
      for (auto& a : intent::split_clauses(user)) {
        out.push_back(EditCommand::add(Target::Availability, Json{{"label", text::capitalize_first(a)}}));
      }
      break;
    case Stage::GatherObstacles:
      for (auto& o : intent::split_clauses(user)) {
        Json entity{{"label", text::capitalize_first(o)}};
        if (!r.focus_availability_id.empty()) entity["linked_availability_ids"] = Json::array({r.focus_availability_id});
        out.push_back(EditCommand::add(Target::Obstacle, std::move(entity)));
      }
      break;
    case Stage::Plan:
    case Stage::Iterate:
    case Stage::Done:
      for (auto& clause : text::split_any(user, ";.\n")) {
        const std::string c = text::trim(clause);
        if (auto a = added_availability(c)) {
          out.push_back(EditCommand::add(Target::Availability, Json{{"label", *a}}));
          continue;
        }
        for (const char* lead : {"i also want to ", "my new goal is to ", "my new goal is "}) {
          if (text::starts_with_icase(c, lead)) {
            for (auto& g : intent::split_goals(c.substr(std::string_view(lead).size()))) {
              out.push_back(EditCommand::add(Target::Goal, Json{{"label", g}}));
            }
            break;
          }
        }
      }
      break;
    case Stage::Recommend:
    case Stage::AwaitSelection:
      break;
  }
  return out;
}

}  // namespace planfit
