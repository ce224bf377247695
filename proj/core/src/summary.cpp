#include "planfit/summary.h"

#include <algorithm>
#include <map>

#include "planfit/error.h"
#include "planfit/text.h"
#include "planfit/weekday.h"

namespace planfit {

std::string_view to_string(Target t) noexcept {
  switch (t) {
    case Target::Goal: return "goal";
    case Target::Availability: return "availability";
    case Target::Obstacle: return "obstacle";
    case Target::RecommendedExercise: return "recommended_exercise";
    case Target::ImplementationIntention: return "implementation_intention";
  }
  return "goal";
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Add: return "add";
    case Method::Update: return "update";
    case Method::Remove: return "remove";
  }
  return "add";
}

std::optional<Target> parse_target(std::string_view token) {
  for (auto t : kAllTargets) {
    if (token == to_string(t)) return t;
  }
  return std::nullopt;
}

std::optional<Method> parse_method(std::string_view token) {
  for (auto m : {Method::Add, Method::Update, Method::Remove}) {
    if (token == to_string(m)) return m;
  }
  return std::nullopt;
}

char id_prefix(Target t) noexcept {
  switch (t) {
    case Target::Goal: return 'g';
    case Target::Availability: return 'a';
    case Target::Obstacle: return 'o';
    case Target::RecommendedExercise: return 'r';
    case Target::ImplementationIntention: return 'p';
  }
  return '?';
}

std::string SummaryEntity::label() const {
  auto it = payload.find("label");
  return it != payload.end() && it->is_string() ? it->get<std::string>() : std::string{};
}

namespace {

using Fields = std::vector<std::string>;

bool is_nonempty_string(const Json& j) { return j.is_string() && !text::trim(j.get<std::string>()).empty(); }

void keep_only(Json& payload, const Fields& allowed) {
  Json out = Json::object();
  for (const auto& k : allowed) {
    if (auto it = payload.find(k); it != payload.end()) out[k] = *it;
  }
  payload = std::move(out);
}

void fold_label_aliases(Json& payload) {
  if (payload.contains("label")) return;
  for (const char* alias : {"name", "description", "text", "value"}) {
    if (auto it = payload.find(alias); it != payload.end() && it->is_string()) {
      payload["label"] = *it;
      return;
    }
  }
}

std::optional<std::string> optional_string(const Json& payload, const char* key) {
  if (auto it = payload.find(key); it != payload.end() && !it->is_string()) return std::string(key) + " must be a string";
  return std::nullopt;
}

std::optional<std::string> string_list(const Json& payload, const char* key) {
  auto it = payload.find(key);
  if (it == payload.end()) return std::nullopt;
  if (!it->is_array()) return std::string(key) + " must be an array";
  for (const auto& v : *it) {
    if (!v.is_string()) return std::string(key) + " must hold strings";
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_payload(Target target, Json& payload) {
  if (!payload.is_object()) return "entity must be an object";
  switch (target) {
    case Target::Goal: {
      fold_label_aliases(payload);
      keep_only(payload, {"label"});
      if (!is_nonempty_string(payload.value("label", Json()))) return "goal requires a non-empty label";
      return std::nullopt;
    }
    case Target::Availability: {
      fold_label_aliases(payload);
      keep_only(payload, {"label", "day_spec", "time_spec"});
      if (auto e = optional_string(payload, "label")) return e;
      if (auto e = optional_string(payload, "time_spec")) return e;
      const bool has_label = is_nonempty_string(payload.value("label", Json()));
      bool has_days = false;
      if (auto it = payload.find("day_spec"); it != payload.end()) {
        if (it->is_string()) {
          has_days = !text::trim(it->get<std::string>()).empty();
        } else if (it->is_array()) {
          for (const auto& d : *it) {
            if (!d.is_string() || !parse_weekday_word(text::capitalize_first(d.get<std::string>()))) {
              return "day_spec array must hold weekday names";
            }
          }
          has_days = !it->empty();
        } else {
          return "day_spec must be a string or an array of weekdays";
        }
      }
      if (!has_label && !has_days) return "availability requires a label or day_spec";
      return std::nullopt;
    }
    case Target::Obstacle: {
      fold_label_aliases(payload);
      keep_only(payload, {"label", "linked_availability_ids"});
      if (!is_nonempty_string(payload.value("label", Json()))) return "obstacle requires a non-empty label";
      return string_list(payload, "linked_availability_ids");
    }
    case Target::RecommendedExercise: {
      if (!payload.contains("exercise_row_id") && payload.contains("row_id")) payload["exercise_row_id"] = payload["row_id"];
      if (!payload.contains("exercise_name") && payload.contains("name")) payload["exercise_name"] = payload["name"];
      if (!payload.contains("rationale") && payload.contains("description")) payload["rationale"] = payload["description"];
      keep_only(payload, {"exercise_row_id", "exercise_name", "rationale"});
      auto rid = payload.value("exercise_row_id", Json());
      if (rid.is_number_integer()) payload["exercise_row_id"] = std::to_string(rid.get<long long>());
      if (!is_nonempty_string(payload.value("exercise_row_id", Json()))) return "recommended_exercise requires exercise_row_id";
      if (auto e = optional_string(payload, "exercise_name")) return e;
      return optional_string(payload, "rationale");
    }
    case Target::ImplementationIntention: {
      std::string kind = payload.value("kind", "");
      if (kind.empty()) {
        if (payload.contains("alternative")) kind = "coping";
        else if (payload.contains("exercise_name")) kind = "rule";
        else kind = "note";
      }
      if (kind == "rule") {
        keep_only(payload, {"day", "situation", "exercise_row_id", "exercise_name", "amount_minutes", "intensity"});
        payload["kind"] = "rule";
        if (!is_nonempty_string(payload.value("exercise_name", Json()))) return "rule requires exercise_name";
        auto day = payload.value("day", Json());
        if (!day.is_string() || !parse_weekday_word(text::capitalize_first(day.get<std::string>()))) {
          return "rule requires a weekday";
        }
        auto amount = payload.value("amount_minutes", Json());
        if (!amount.is_number_integer() || amount.get<long long>() <= 0) return "rule requires positive amount_minutes";
        auto intensity = payload.value("intensity", Json());
        if (!intensity.is_string()) return "rule requires intensity";
        try {
          parse_intensity(intensity.get<std::string>());
        } catch (const Error&) {
          return "unknown intensity";
        }
        if (auto e = optional_string(payload, "situation")) return e;
        return optional_string(payload, "exercise_row_id");
      }
      if (kind == "coping") {
        keep_only(payload, {"obstacle_clause", "alternative"});
        payload["kind"] = "coping";
        if (!is_nonempty_string(payload.value("obstacle_clause", Json()))) return "coping requires obstacle_clause";
        if (!is_nonempty_string(payload.value("alternative", Json()))) return "coping requires alternative";
        return std::nullopt;
      }
      if (kind == "note") {
        fold_label_aliases(payload);
        keep_only(payload, {"label"});
        payload["kind"] = "note";
        if (!is_nonempty_string(payload.value("label", Json()))) return "intention requires content";
        return std::nullopt;
      }
      return "unknown intention kind " + kind;
    }
  }
  return "unknown target";
}

EditCommand EditCommand::add(Target target, Json entity) {
  return {target, Method::Add, Json{{"entity", std::move(entity)}}};
}

EditCommand EditCommand::update(Target target, std::string id, Json fields) {
  return {target, Method::Update, Json{{"id", std::move(id)}, {"update", std::move(fields)}}};
}

EditCommand EditCommand::remove(Target target, std::string id) {
  return {target, Method::Remove, Json{{"id", std::move(id)}}};
}

Json to_json(const EditCommand& c) {
  return Json{{"target", std::string(to_string(c.target))}, {"method", std::string(to_string(c.method))}, {"params", c.params}};
}

Json to_json(const std::vector<EditCommand>& commands) {
  Json out = Json::array();
  for (const auto& c : commands) out.push_back(to_json(c));
  return out;
}

EditCommand command_from_json(const Json& j, std::size_t index) {
  const std::string where = std::to_string(index);
  if (!j.is_object()) throw Error(ErrorCode::MalformedCommand, where, "command must be an object");
  auto t = j.find("target");
  if (t == j.end() || !t->is_string()) throw Error(ErrorCode::MalformedCommand, where, "missing target");
  auto target = parse_target(t->get<std::string>());
  if (!target) throw Error(ErrorCode::UnknownTarget, t->get<std::string>());
  auto m = j.find("method");
  if (m == j.end() || !m->is_string()) throw Error(ErrorCode::MalformedCommand, where, "missing method");
  auto method = parse_method(m->get<std::string>());
  if (!method) throw Error(ErrorCode::MalformedCommand, where, "unknown method " + m->get<std::string>());
  auto p = j.find("params");
  if (p == j.end() || !p->is_object()) throw Error(ErrorCode::MalformedCommand, where, "missing params");

  EditCommand cmd{*target, *method, Json::object()};
  auto id_of = [&](const Json& params) {
    auto it = params.find("id");
    if (it != params.end() && it->is_number_integer()) return std::to_string(it->get<long long>());
    if (it == params.end() || !it->is_string() || it->get<std::string>().empty()) {
      throw Error(ErrorCode::MalformedCommand, where, "missing id");
    }
    return it->get<std::string>();
  };
  switch (*method) {
    case Method::Add: {
      auto e = p->find("entity");
      if (e == p->end() || !e->is_object()) throw Error(ErrorCode::MalformedCommand, where, "add requires params.entity");
      cmd.params["entity"] = *e;
      if (auto pid = p->find("parent_ids"); pid != p->end()) {
        if (!pid->is_array()) throw Error(ErrorCode::MalformedCommand, where, "parent_ids must be an array");
        cmd.params["parent_ids"] = *pid;
      }
      break;
    }
    case Method::Update: {
      auto u = p->find("update");
      if (u == p->end() || !u->is_object()) throw Error(ErrorCode::MalformedCommand, where, "update requires params.update");
      cmd.params["id"] = id_of(*p);
      cmd.params["update"] = *u;
      break;
    }
    case Method::Remove:
      cmd.params["id"] = id_of(*p);
      break;
  }
  return cmd;
}

namespace {

/// Span of the balanced [...] starting at `open`, skipping brackets inside strings.
std::optional<std::size_t> matching_bracket(std::string_view s, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '[' || c == '{') ++depth;
    else if (c == ']' || c == '}') {
      if (--depth == 0) return c == ']' ? std::optional<std::size_t>(i) : std::nullopt;
      if (depth < 0) return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<EditCommand> parse_commands_json(std::string_view input) {
  for (std::size_t pos = input.find('['); pos != std::string_view::npos; pos = input.find('[', pos + 1)) {
    auto close = matching_bracket(input, pos);
    if (!close) continue;
    auto parsed = Json::parse(input.substr(pos, *close - pos + 1), nullptr, false);
    if (parsed.is_discarded() || !parsed.is_array()) continue;
    std::vector<EditCommand> out;
    out.reserve(parsed.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) out.push_back(command_from_json(parsed[i], i));
    return out;
  }
  throw Error(ErrorCode::NoArrayFound, "");
}

std::vector<SummaryEntity>& PlanSummary::collection(Target t) {
  switch (t) {
    case Target::Goal: return goals;
    case Target::Availability: return availabilities;
    case Target::Obstacle: return obstacles;
    case Target::RecommendedExercise: return recommended_exercises;
    case Target::ImplementationIntention: return implementation_intentions;
  }
  return goals;
}

const std::vector<SummaryEntity>& PlanSummary::collection(Target t) const {
  return const_cast<PlanSummary*>(this)->collection(t);
}

const SummaryEntity* PlanSummary::find(Target t, std::string_view id) const {
  for (const auto& e : collection(t)) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool PlanSummary::is_selected(std::string_view row_id) const {
  return std::find(selected_exercise_row_ids.begin(), selected_exercise_row_ids.end(), row_id) !=
         selected_exercise_row_ids.end();
}

namespace {

std::string unknown_id(Target t, const std::string& id) { return std::string(to_string(t)) + ":" + id; }

std::vector<std::string> resolve_parents(const PlanSummary& s, const Json& raw, const std::map<std::string, std::string>& aliases,
                                         const std::string& where) {
  std::vector<std::string> out;
  if (!raw.is_array()) throw Error(ErrorCode::MalformedCommand, where, "parent_ids must be an array");
  for (const auto& v : raw) {
    if (!v.is_string()) throw Error(ErrorCode::MalformedCommand, where, "parent_ids must hold strings");
    std::string id = v.get<std::string>();
    if (auto a = aliases.find(id); a != aliases.end()) id = a->second;
    if (s.find(Target::ImplementationIntention, id) == nullptr) {
      throw Error(ErrorCode::MalformedCommand, where, "unresolved parent id " + v.get<std::string>());
    }
    out.push_back(id);
  }
  return out;
}

void check_links(const PlanSummary& s, const Json& payload, const std::string& where) {
  if (auto it = payload.find("linked_availability_ids"); it != payload.end()) {
    for (const auto& v : *it) {
      if (s.find(Target::Availability, v.get<std::string>()) == nullptr) {
        throw Error(ErrorCode::MalformedCommand, where, "unresolved availability " + v.get<std::string>());
      }
    }
  }
}

void check_catalog(const Catalog* catalog, Target t, const Json& payload, const std::string& where) {
  if (catalog == nullptr || t != Target::RecommendedExercise) return;
  const auto rid = payload.at("exercise_row_id").get<std::string>();
  if (catalog->find(rid) == nullptr) throw Error(ErrorCode::MalformedCommand, where, "unknown exercise " + rid);
}

void cascade_remove(PlanSummary& s, Target t, const std::string& id) {
  if (t == Target::Availability) {
    for (auto& o : s.obstacles) {
      auto it = o.payload.find("linked_availability_ids");
      if (it == o.payload.end()) continue;
      Json kept = Json::array();
      for (const auto& v : *it) {
        if (v.get<std::string>() != id) kept.push_back(v);
      }
      *it = std::move(kept);
    }
  }
  if (t == Target::ImplementationIntention) {
    for (auto& e : s.implementation_intentions) {
      e.parent_ids.erase(std::remove(e.parent_ids.begin(), e.parent_ids.end(), id), e.parent_ids.end());
    }
  }
}

}  // namespace

PlanSummary apply_edits(const PlanSummary& summary, const std::vector<EditCommand>& commands, const Catalog* catalog) {
  if (commands.empty()) return summary;
  PlanSummary s = summary;
  std::map<std::string, std::string> aliases;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto& cmd = commands[i];
    const std::string where = std::to_string(i);
    auto& coll = s.collection(cmd.target);
    switch (cmd.method) {
      case Method::Add: {
        if (!cmd.params.contains("entity")) throw Error(ErrorCode::MalformedCommand, where, "add requires params.entity");
        Json payload = cmd.params.at("entity");
        if (!payload.is_object()) throw Error(ErrorCode::MalformedCommand, where, "entity must be an object");
        SummaryEntity e;
        std::string alias;
        Json parents = cmd.params.value("parent_ids", payload.value("parent_ids", Json()));
        if (cmd.target == Target::ImplementationIntention) {
          if (auto it = payload.find("id"); it != payload.end() && it->is_string()) alias = it->get<std::string>();
          if (!parents.is_null()) e.parent_ids = resolve_parents(s, parents, aliases, where);
        }
        if (auto reason = validate_payload(cmd.target, payload)) throw Error(ErrorCode::MalformedCommand, where, *reason);
        check_links(s, payload, where);
        check_catalog(catalog, cmd.target, payload, where);
        auto& counter = s.id_counters[static_cast<std::size_t>(cmd.target)];
        ++counter;
        e.id = std::string(1, id_prefix(cmd.target)) + std::to_string(counter);
        e.payload = std::move(payload);
        if (!alias.empty()) {
          if (aliases.count(alias) > 0) throw Error(ErrorCode::MalformedCommand, where, "duplicate caller id " + alias);
          aliases[alias] = e.id;
        }
        coll.push_back(std::move(e));
        break;
      }
      case Method::Update: {
        const std::string id = cmd.params.value("id", "");
        auto it = std::find_if(coll.begin(), coll.end(), [&](const SummaryEntity& e) { return e.id == id; });
        if (it == coll.end()) throw Error(ErrorCode::UnknownId, unknown_id(cmd.target, id));
        const Json& fields = cmd.params.value("update", Json::object());
        if (!fields.is_object()) throw Error(ErrorCode::MalformedCommand, where, "update must be an object");
        Json payload = it->payload;
        std::vector<std::string> parents = it->parent_ids;
        for (const auto& [key, value] : fields.items()) {
          if (key == "id") continue;
          if (key == "parent_ids") {
            if (cmd.target != Target::ImplementationIntention) continue;
            parents = resolve_parents(s, value, aliases, where);
            continue;
          }
          payload[key] = value;
        }
        if (auto reason = validate_payload(cmd.target, payload)) throw Error(ErrorCode::MalformedCommand, where, *reason);
        check_links(s, payload, where);
        check_catalog(catalog, cmd.target, payload, where);
        it->payload = std::move(payload);
        it->parent_ids = std::move(parents);
        break;
      }
      case Method::Remove: {
        const std::string id = cmd.params.value("id", "");
        auto it = std::find_if(coll.begin(), coll.end(), [&](const SummaryEntity& e) { return e.id == id; });
        if (it == coll.end()) throw Error(ErrorCode::UnknownId, unknown_id(cmd.target, id));
        coll.erase(it);
        cascade_remove(s, cmd.target, id);
        break;
      }
    }
  }
  ++s.revision;
  return s;
}

PlanSummary select_exercise(const PlanSummary& summary, std::string_view row_id, const Catalog& catalog) {
  if (catalog.find(row_id) == nullptr) throw Error(ErrorCode::UnknownExercise, std::string(row_id));
  if (summary.is_selected(row_id)) return summary;
  PlanSummary s = summary;
  s.selected_exercise_row_ids.emplace_back(row_id);
  ++s.revision;
  return s;
}

PlanSummary deselect_exercise(const PlanSummary& summary, std::string_view row_id, const Catalog& catalog) {
  if (catalog.find(row_id) == nullptr) throw Error(ErrorCode::UnknownExercise, std::string(row_id));
  if (!summary.is_selected(row_id)) return summary;
  PlanSummary s = summary;
  auto& sel = s.selected_exercise_row_ids;
  sel.erase(std::remove(sel.begin(), sel.end(), row_id), sel.end());
  ++s.revision;
  return s;
}

Json to_json(const SummaryEntity& e) {
  Json j{{"id", e.id}};
  for (const auto& [k, v] : e.payload.items()) j[k] = v;
  if (!e.parent_ids.empty()) j["parent_ids"] = e.parent_ids;
  return j;
}

Json to_json(const PlanSummary& s) {
  auto list = [](const std::vector<SummaryEntity>& c) {
    Json a = Json::array();
    for (const auto& e : c) a.push_back(to_json(e));
    return a;
  };
  Json counters = Json::object();
  for (auto t : kAllTargets) counters[std::string(to_string(t))] = s.id_counters[static_cast<std::size_t>(t)];
  return Json{{"goals", list(s.goals)},
              {"availabilities", list(s.availabilities)},
              {"obstacles", list(s.obstacles)},
              {"recommended_exercises", list(s.recommended_exercises)},
              {"selected_exercise_row_ids", s.selected_exercise_row_ids},
              {"implementation_intentions", list(s.implementation_intentions)},
              {"revision", s.revision},
              {"id_counters", counters}};
}

PlanSummary summary_from_json(const Json& j) {
  PlanSummary s;
  auto read = [&](const char* key, Target t) {
    for (const auto& item : j.at(key)) {
      SummaryEntity e;
      e.id = item.at("id").get<std::string>();
      for (const auto& [k, v] : item.items()) {
        if (k == "id") continue;
        if (k == "parent_ids") {
          e.parent_ids = v.get<std::vector<std::string>>();
          continue;
        }
        e.payload[k] = v;
      }
      s.collection(t).push_back(std::move(e));
    }
  };
  read("goals", Target::Goal);
  read("availabilities", Target::Availability);
  read("obstacles", Target::Obstacle);
  read("recommended_exercises", Target::RecommendedExercise);
  read("implementation_intentions", Target::ImplementationIntention);
  s.selected_exercise_row_ids = j.at("selected_exercise_row_ids").get<std::vector<std::string>>();
  s.revision = j.at("revision").get<std::int64_t>();
  if (auto c = j.find("id_counters"); c != j.end()) {
    for (auto t : kAllTargets) s.id_counters[static_cast<std::size_t>(t)] = c->value(std::string(to_string(t)), 0);
  }
  return s;
}

}  // namespace planfit
