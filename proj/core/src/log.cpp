#include "planfit/log.h"

#include <iostream>
#include <mutex>

namespace planfit {

namespace {

std::mutex g_mutex;
LogLevel g_minimum = LogLevel::Warning;

void stderr_sink(LogLevel level, std::string_view message) {
  static constexpr const char* kNames[] = {"debug", "info", "warning", "error"};
  std::cerr << "[planfit " << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

LogSink g_sink = stderr_sink;

}  // namespace

void set_log_sink(LogSink sink) {
  std::lock_guard lock(g_mutex);
  g_sink = std::move(sink);
}

void set_log_level(LogLevel minimum) {
  std::lock_guard lock(g_mutex);
  g_minimum = minimum;
}

void log_message(LogLevel level, std::string_view message) {
  std::lock_guard lock(g_mutex);
  if (level < g_minimum || !g_sink) return;
  g_sink(level, message);
}

}  // namespace planfit
