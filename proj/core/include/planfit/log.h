#pragma once

#include <functional>
#include <string_view>

namespace planfit {

enum class LogLevel { Debug, Info, Warning, Error };

using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide sink (stderr by default). Pass nullptr to silence.
void set_log_sink(LogSink sink);
void set_log_level(LogLevel minimum);
void log_message(LogLevel level, std::string_view message);

inline void log_warning(std::string_view message) { log_message(LogLevel::Warning, message); }
inline void log_info(std::string_view message) { log_message(LogLevel::Info, message); }

}  // namespace planfit
