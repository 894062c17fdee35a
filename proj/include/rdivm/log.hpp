#pragma once

#include <string>

namespace rdivm {

enum class LogLevel : int { Debug = 0, Info, Warn, Error, Off };

// Level comes from RD_IVM_LOG (debug|info|warn|error|off), read once. Default: warn.
LogLevel log_level();

void log(LogLevel lvl, const std::string& msg);

inline void log_debug(const std::string& msg) { log(LogLevel::Debug, msg); }
inline void log_info(const std::string& msg) { log(LogLevel::Info, msg); }
inline void log_warn(const std::string& msg) { log(LogLevel::Warn, msg); }
inline void log_error(const std::string& msg) { log(LogLevel::Error, msg); }

} // namespace rdivm
