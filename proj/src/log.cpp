#include "rdivm/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace rdivm {

static LogLevel parse_level(const char* s) {
  if (!s) return LogLevel::Warn;
  std::string v(s);
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  if (v == "warn") return LogLevel::Warn;
  if (v == "error") return LogLevel::Error;
  if (v == "off") return LogLevel::Off;
  return LogLevel::Warn;
}

LogLevel log_level() {
  static LogLevel lvl = parse_level(std::getenv("RD_IVM_LOG"));
  return lvl;
}

void log(LogLevel lvl, const std::string& msg) {
  if (lvl < log_level()) return;
  static std::mutex mu;
  static const char* names[] = {"debug", "info", "warn", "error"};
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[rdivm:" << names[static_cast<int>(lvl)] << "] " << msg << "\n";
}

} // namespace rdivm
