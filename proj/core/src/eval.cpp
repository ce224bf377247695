#include "planfit/eval.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "planfit/availability.h"
#include "planfit/error.h"
#include "planfit/service.h"
#include "planfit/text.h"

namespace planfit {

namespace fs = std::filesystem;

void PersonaFixture::validate() const {
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, id.empty() ? "persona" : id, what);
  };
  require(!id.empty(), "id is empty");
  require(!text::trim(user_name).empty(), "user_name is empty");
  require(!goals.empty(), "no goals");
  require(!availabilities.empty(), "no availabilities");
  require(!scripted_selection.empty(), "no scripted selection");
}

namespace {

std::vector<std::string> strings_at(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (auto it = j.find(key); it != j.end()) {
    for (const auto& v : *it) out.push_back(v.get<std::string>());
  }
  return out;
}

int numeric_suffix(const std::string& id) {
  std::size_t p = id.size();
  while (p > 0 && std::isdigit(static_cast<unsigned char>(id[p - 1]))) --p;
  return p == id.size() ? 0 : std::stoi(id.substr(p));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string selection_sentence(const std::vector<std::string>& names) {
  if (names.size() == 1) return "I'd like to do " + names.front() + ".";
  std::vector<std::string> head(names.begin(), names.end() - 1);
  return "I'd like to do " + join(head, ", ") + " and " + names.back() + ".";
}

}  // namespace

PersonaFixture persona_from_json(const Json& j) {
  try {
    PersonaFixture p;
    p.id = j.at("id").get<std::string>();
    p.user_name = j.value("user_name", p.id);
    p.goals = strings_at(j, "goals");
    p.availabilities = strings_at(j, "availabilities");
    p.obstacles = strings_at(j, "obstacles");
    p.scripted_selection = strings_at(j, "scripted_selection");
    p.balance_followup = j.value("balance_followup", p.balance_followup);
    p.iteration_scenario = strings_at(j, "iteration_scenario");
    p.note = j.value("note", "");
    p.validate();
    return p;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, j.value("id", "persona"), e.what());
  }
}

Json to_json(const PersonaFixture& p) {
  return Json{{"id", p.id},
              {"user_name", p.user_name},
              {"goals", p.goals},
              {"availabilities", p.availabilities},
              {"obstacles", p.obstacles},
              {"scripted_selection", p.scripted_selection},
              {"balance_followup", p.balance_followup},
              {"iteration_scenario", p.iteration_scenario},
              {"note", p.note}};
}

std::vector<PersonaFixture> load_personas(const std::string& dir) {
  std::vector<PersonaFixture> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::NoFixtures, dir, "not a directory");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    try {
      out.push_back(persona_from_json(Json::parse(in)));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, entry.path().string(), e.what());
    }
  }
  if (out.empty()) throw Error(ErrorCode::NoFixtures, dir, "no persona fixtures");
  std::sort(out.begin(), out.end(), [](const PersonaFixture& a, const PersonaFixture& b) {
    const int na = numeric_suffix(a.id), nb = numeric_suffix(b.id);
    return na != nb ? na < nb : a.id < b.id;
  });
  return out;
}

PersonaScript script_for(const PersonaFixture& p) {
  PersonaScript s;
  s.goal_turns = {join(p.goals, "; "), "Nothing else."};
  s.availability_turns = {join(p.availabilities, "; "), "Nothing else."};
  const std::size_t n = p.availabilities.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> answer;
    if (i < p.obstacles.size()) answer.push_back(p.obstacles[i]);
    if (i + 1 == n) {
      for (std::size_t k = n; k < p.obstacles.size(); ++k) answer.push_back(p.obstacles[k]);
    }
    s.obstacle_turns.push_back(answer.empty() ? "No, nothing comes to mind." : join(answer, "; "));
  }
  s.selection_turn = selection_sentence(p.scripted_selection);
  return s;
}

namespace {

constexpr int kMaxIterationTurns = 12;

PhaseResult capture(const Session& s, const Orchestrator& o) {
  PhaseResult r;
  r.plan = s.plan;
  r.advisories = s.advisories;
  const WeeklyPlan plan = s.plan.value_or(WeeklyPlan{});
  r.report = evaluate(plan, o.catalog(), o.config().synthesis.guideline, s.control.waivers);
  r.amount_strict = check_amount(plan, o.config().synthesis.guideline).ok;
  return r;
}

bool is_feasible(const Session& s, const SynthesisConfig& cfg) {
  try {
    const int days = available_days(expand_availabilities(s.summary)).size();
    return days * cfg.hard_session_cap >= cfg.target_effective_minutes;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

PersonaRun run_persona(const PersonaFixture& fixture, std::shared_ptr<const Catalog> catalog,
                       std::shared_ptr<const ExerciseIndex> index, const EvalConfig& config) {
  PersonaRun run;
  run.id = fixture.id;
  auto orchestrator = std::make_shared<const Orchestrator>(catalog, index, std::make_shared<TemplateProvider>(),
                                                           config.orchestrator, logical_clock());
  std::string session_id = text::to_lower(fixture.id);
  std::shared_ptr<SessionService> service;
  try {
    fixture.validate();
    for (const auto& name : fixture.scripted_selection) {
      if (catalog->find_by_name(name) == nullptr) throw Error(ErrorCode::UnknownExercise, name);
    }
    ServiceConfig sc;
    if (!config.data_dir.empty()) {
      const fs::path dir = fs::path(config.data_dir) / session_id;
      std::error_code ec;
      if (fs::exists(dir, ec) && !fs::is_empty(dir, ec)) {
        throw Error(ErrorCode::InvalidArgument, dir.string(), "persona data directory is not empty");
      }
      sc.data_dir = dir.string();
    }
    service = std::make_shared<SessionService>(orchestrator, sc, [session_id] { return session_id; });
    service->create_session(fixture.user_name);

    auto say = [&](const std::string& text) { return service->post_message(session_id, text); };
    const PersonaScript script = script_for(fixture);
    for (const auto& t : script.goal_turns) say(t);
    for (const auto& t : script.availability_turns) say(t);
    for (const auto& t : script.obstacle_turns) {
      if (service->session(session_id).stage() != Stage::GatherObstacles) break;
      say(t);
    }
    say(script.selection_turn);
    if (service->session(session_id).stage() == Stage::AwaitSelection) say(fixture.balance_followup);
    if (service->session(session_id).stage() == Stage::Plan) say(script.approval_turn);
    const Session after_initial = service->session(session_id);
    run.feasible = is_feasible(after_initial, config.orchestrator.synthesis);
    run.initial = capture(after_initial, *orchestrator);
    if (after_initial.stage() != Stage::Done) {
      throw Error(ErrorCode::InvalidArgument, fixture.id,
                  "initial phase ended at stage " + std::string(to_string(after_initial.stage())));
    }

    service->start_iteration(session_id);
    std::vector<std::string> turns = fixture.iteration_scenario;
    if (turns.empty()) turns = {"Yes, I followed the plan and I was satisfied.", "Yes, please."};
    std::size_t next = 0;
    for (int i = 0; i < kMaxIterationTurns && service->session(session_id).stage() != Stage::Done; ++i) {
      // Once the scenario is exhausted the persona accepts what is on the table.
      say(next < turns.size() ? turns[next++] : std::string("Yes, that works."));
    }
    const Session done = service->session(session_id);
    if (done.stage() != Stage::Done) throw Error(ErrorCode::InvalidArgument, fixture.id, "iteration did not finish");
    run.final_phase = capture(done, *orchestrator);
    run.completed = true;
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  if (service) {
    try {
      const Session s = service->session(session_id);
      run.transcript = s.history;
      run.session_json = to_json(s).dump();
    } catch (const Error&) {
    }
  }
  return run;
}

namespace {

void tally(ComplianceCount& c, const PhaseResult& p) {
  const GuidelineReport& r = p.report;
  c.amount += r.amount_ok ? 1 : 0;
  c.amount_strict += p.amount_strict ? 1 : 0;
  c.balance += r.balance_ok ? 1 : 0;
  c.rest += r.rest_ok ? 1 : 0;
}

Json phase_json(const PhaseResult& p) {
  return Json{{"plan", p.plan ? to_json(*p.plan) : Json()},
              {"report", to_json(p.report)},
              {"amount_strict", p.amount_strict},
              {"advisories", to_json(p.advisories)}};
}

Json count_json(const ComplianceCount& c, int n) {
  auto pct = [n](int v) { return n == 0 ? 0.0 : std::round(1000.0 * v / n) / 10.0; };
  return Json{{"amount", c.amount},
              {"amount_pct", pct(c.amount)},
              {"amount_strict", c.amount_strict},
              {"amount_strict_pct", pct(c.amount_strict)},
              {"balance", c.balance},
              {"balance_pct", pct(c.balance)},
              {"rest", c.rest},
              {"rest_pct", pct(c.rest)}};
}

std::string pct_text(int v, int n) {
  std::ostringstream os;
  os << v << "/" << n << " (" << (n == 0 ? 0 : static_cast<int>(std::lround(100.0 * v / n))) << "%)";
  return os.str();
}

std::string mark(bool ok) { return ok ? "yes" : "no"; }

}  // namespace

Json AdherenceTable::to_json() const {
  Json personas_json = Json::array();
  for (const auto& r : runs) {
    Json transcript = Json::array();
    for (const auto& t : r.transcript) {
      transcript.push_back(Json{{"role", t.role == Role::User ? "user" : "agent"}, {"text", t.text}});
    }
    personas_json.push_back(Json{{"id", r.id},
                                 {"feasible", r.feasible},
                                 {"completed", r.completed},
                                 {"error", r.error},
                                 {"initial", phase_json(r.initial)},
                                 {"final", phase_json(r.final_phase)},
                                 {"transcript", std::move(transcript)}});
  }
  return Json{{"personas", personas},
              {"feasible", feasible},
              {"completed", completed},
              {"initial", count_json(initial, personas)},
              {"final", count_json(final_phase, personas)},
              {"reference_amount", Json{{"initial", kReferenceInitialAmount},
                                        {"final", kReferenceFinalAmount},
                                        {"personas", kReferencePersonas}}},
              {"runs", std::move(personas_json)}};
}

std::string AdherenceTable::to_markdown() const {
  std::ostringstream os;
  os << "# Intrinsic evaluation\n\n";
  os << "Personas: " << personas << ", feasible: " << feasible << ", completed: " << completed << "\n\n";
  os << "| Check | Initial | After iteration |\n|---|---|---|\n";
  os << "| Amount (>= 150 effective min) | " << pct_text(initial.amount, personas) << " | "
     << pct_text(final_phase.amount, personas) << " |\n";
  os << "| Amount, no waivers | " << pct_text(initial.amount_strict, personas) << " | "
     << pct_text(final_phase.amount_strict, personas) << " |\n";
  os << "| Balance (cardio + strength) | " << pct_text(initial.balance, personas) << " | "
     << pct_text(final_phase.balance, personas) << " |\n";
  os << "| Rest (gap between sessions) | " << pct_text(initial.rest, personas) << " | "
     << pct_text(final_phase.rest, personas) << " |\n";
  os << "| Amount, reference | " << pct_text(kReferenceInitialAmount, kReferencePersonas)
     << " | " << pct_text(kReferenceFinalAmount, kReferencePersonas) << " |\n\n";
  os << "| Persona | Feasible | Initial min | Amount | Balance | Rest | Final min | Amount | Balance | Rest | Waivers | "
        "Error |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : runs) {
    std::vector<std::string> waivers;
    for (const auto& w : r.final_phase.report.waivers) waivers.emplace_back(to_string(w.kind));
    os << "| " << r.id << " | " << mark(r.feasible) << " | " << r.initial.report.effective_minutes << " | "
       << mark(r.initial.report.amount_ok) << " | " << mark(r.initial.report.balance_ok) << " | "
       << mark(r.initial.report.rest_ok) << " | " << r.final_phase.report.effective_minutes << " | "
       << mark(r.final_phase.report.amount_ok) << " | " << mark(r.final_phase.report.balance_ok) << " | "
       << mark(r.final_phase.report.rest_ok) << " | " << (waivers.empty() ? "-" : join(waivers, ", ")) << " | "
       << (r.error.empty() ? "-" : r.error) << " |\n";
  }
  return os.str();
}

AdherenceTable run_suite(const std::vector<PersonaFixture>& fixtures, std::shared_ptr<const Catalog> catalog,
                         std::shared_ptr<const ExerciseIndex> index, const EvalConfig& config) {
  if (fixtures.empty()) throw Error(ErrorCode::NoFixtures, "suite", "no persona fixtures");
  AdherenceTable table;
  table.runs.resize(fixtures.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(fixtures.size(), 8));
  std::atomic<std::size_t> cursor{0};
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = cursor++; i < fixtures.size(); i = cursor++) {
        table.runs[i] = run_persona(fixtures[i], catalog, index, config);
      }
    }));
  }
  for (auto& f : pool) f.get();

  table.personas = static_cast<int>(fixtures.size());
  for (const auto& r : table.runs) {
    table.feasible += r.feasible ? 1 : 0;
    table.completed += r.completed ? 1 : 0;
    tally(table.initial, r.initial);
    tally(table.final_phase, r.final_phase);
  }
  return table;
}

}  // namespace planfit
