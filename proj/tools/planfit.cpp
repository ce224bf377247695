#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "planfit/catalog.h"
#include "planfit/config.h"
#include "planfit/error.h"
#include "planfit/eval.h"
#include "planfit/guideline.h"
#include "planfit/http_server.h"
#include "planfit/log.h"
#include "planfit/plan.h"
#include "planfit/retrieval.h"
#include "planfit/service.h"
#include "planfit/synthesizer.h"

namespace fs = std::filesystem;
using namespace planfit;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, path, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string resolve_catalog_path(const std::string& configured) {
  std::error_code ec;
  if (fs::exists(configured, ec)) return configured;
#ifdef PLANFIT_INSTALLED_CATALOG
  if (fs::exists(PLANFIT_INSTALLED_CATALOG, ec)) return PLANFIT_INSTALLED_CATALOG;
#endif
  throw Error(ErrorCode::InvalidConfig, configured, "catalog not found");
}

std::shared_ptr<const Catalog> open_catalog(const std::string& path) {
  return std::make_shared<const Catalog>(load_catalog_file(resolve_catalog_path(path)));
}

// Flags shared by every subcommand that reads configuration.
struct CommonFlags {
  std::string config_file;
  ConfigOverrides cli;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file");
  cmd->add_option("--catalog", f.cli.catalog_path, "exercise catalog CSV");
}

AppConfig load_config(const CommonFlags& f) {
  const ConfigOverrides file = f.config_file.empty() ? ConfigOverrides{} : overrides_from_file(f.config_file);
  const EnvLookup env = process_env();
  return resolve_config(file, overrides_from_env(env), f.cli, env);
}

int run_serve(const AppConfig& cfg) {
  cfg.provider().validate();
  auto catalog = open_catalog(cfg.catalog_path);
  OrchestratorConfig oc;
  auto index = std::make_shared<const ExerciseIndex>(catalog, oc.retrieval);
  std::shared_ptr<const Provider> provider = make_provider(cfg.provider());
  auto orchestrator = std::make_shared<const Orchestrator>(catalog, index, provider, oc, system_clock_ms());
  auto service = std::make_shared<SessionService>(orchestrator, ServiceConfig{cfg.data_dir});
  HttpServer server(service);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });

  std::cerr << "planfit: serving " << service->session_ids().size() << " stored session(s) on " << cfg.listen_host
            << ":" << cfg.listen_port << " (" << to_string(cfg.provider_mode) << " provider)\n";
  const bool ok = server.listen(cfg.listen_host, cfg.listen_port);
  if (!ok) {
    std::cerr << "planfit: cannot listen on " << cfg.listen_host << ":" << cfg.listen_port << "\n";
    pthread_kill(waiter.native_handle(), SIGTERM);
  }
  waiter.join();
  return ok ? 0 : kExitError;
}

int run_validate(const AppConfig& cfg, const std::string& path, bool as_json) {
  auto catalog = open_catalog(cfg.catalog_path);
  WeeklyPlan plan = parse_plan_xml(read_file(path));
  resolve_exercises(plan, *catalog);
  const GuidelineReport report = evaluate(plan, *catalog);
  if (as_json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::cout << "effective minutes: " << report.effective_minutes << "\n"
              << "amount:  " << (report.amount_ok ? "ok" : "FAIL") << "\n"
              << "balance: " << (report.balance_ok ? "ok" : "FAIL") << "\n"
              << "rest:    " << (report.rest_ok ? "ok" : "FAIL");
    for (const auto& [a, b] : report.violating_day_pairs) std::cout << " " << short_name(a) << "-" << short_name(b);
    std::cout << "\n";
  }
  return report.all_ok() ? 0 : kExitChecksFailed;
}

int run_synth(const AppConfig& cfg, const std::string& path, bool as_json) {
  auto catalog = open_catalog(cfg.catalog_path);
  const PlanSummary summary = summary_from_json(Json::parse(read_file(path)));
  const SynthesisResult r = synthesize(summary, *catalog);
  if (as_json) {
    std::cout << Json{{"plan", to_json(r.plan)}, {"report", to_json(r.report)}, {"advisories", to_json(r.advisories)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << serialize_plan_xml(r.plan) << "\n";
    for (const auto& a : r.advisories) std::cout << "Note (" << to_string(a.kind) << "): " << a.message << "\n";
    std::cout << "effective minutes: " << r.report.effective_minutes << "\n";
  }
  return 0;
}

int run_eval(const AppConfig& cfg, const std::string& dir, const std::string& out_dir, const std::string& logs) {
  auto catalog = open_catalog(cfg.catalog_path);
  EvalConfig ec;
  ec.data_dir = logs;
  auto index = std::make_shared<const ExerciseIndex>(catalog, ec.orchestrator.retrieval);
  const AdherenceTable table = run_suite(load_personas(dir), catalog, index, ec);
  fs::create_directories(out_dir);
  std::ofstream(fs::path(out_dir) / "report.json") << table.to_json().dump(2) << "\n";
  std::ofstream(fs::path(out_dir) / "report.md") << table.to_markdown();
  std::cout << table.to_markdown();
  return table.completed == table.personas ? 0 : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planfit: conversational weekly exercise planner"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "log informational messages");

  CommonFlags serve_flags, validate_flags, synth_flags, eval_flags;

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  add_common(serve, serve_flags);
  serve->add_option("--data-dir", serve_flags.cli.data_dir, "session event logs");
  serve->add_option("--listen", serve_flags.cli.listen, "host:port");
  serve->add_option("--provider", serve_flags.cli.provider_mode, "template | scripted | remote");
  serve->add_option("--model", serve_flags.cli.model_name, "chat model name");
  serve->add_option("--credentials-env", serve_flags.cli.credentials_env, "env var holding the API key");
  serve->add_option("--script", serve_flags.cli.script_path, "scripted provider fixture");
  serve->add_option("--base-url", serve_flags.cli.base_url, "chat endpoint base URL");

  std::string plan_path;
  bool json_out = false;
  auto* validate = app.add_subcommand("validate", "check a plan against the exercise guidelines");
  add_common(validate, validate_flags);
  validate->add_option("plan", plan_path, "plan message with If/Then tags")->required();
  validate->add_flag("--json", json_out, "print the report as JSON");

  std::string summary_path;
  auto* synth = app.add_subcommand("synth", "build a weekly plan from a plan summary");
  add_common(synth, synth_flags);
  synth->add_option("summary", summary_path, "plan summary JSON")->required();
  synth->add_flag("--json", json_out, "print plan, report and advisories as JSON");

  std::string personas_dir, out_dir = ".", log_dir;
  auto* eval = app.add_subcommand("eval", "replay persona fixtures and report guideline compliance");
  add_common(eval, eval_flags);
  eval->add_option("personas", personas_dir, "directory of persona JSON fixtures")->required();
  eval->add_option("--out", out_dir, "where report.md and report.json are written");
  eval->add_option("--logs", log_dir, "keep per-persona event logs here (must be empty)");

  CLI11_PARSE(app, argc, argv);
  if (verbose) set_log_level(LogLevel::Info);

  try {
    if (serve->parsed()) return run_serve(load_config(serve_flags));
    if (validate->parsed()) return run_validate(load_config(validate_flags), plan_path, json_out);
    if (synth->parsed()) return run_synth(load_config(synth_flags), summary_path, json_out);
    if (eval->parsed()) return run_eval(load_config(eval_flags), personas_dir, out_dir, log_dir);
  } catch (const Error& e) {
    std::cerr << "planfit: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "planfit: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
