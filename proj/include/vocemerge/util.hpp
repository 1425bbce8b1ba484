#pragma once

#include <string>
#include <vector>

namespace vocemerge {

std::string toLower(const std::string& s);
std::string trim(const std::string& s);
// Trims and collapses internal whitespace runs to single spaces.
std::string normalizeWhitespace(const std::string& s);
std::vector<std::string> splitWhitespace(const std::string& s);
std::vector<std::string> splitChar(const std::string& s, char sep);
std::string join(const std::vector<std::string>& parts, const std::string& sep);

// Shortest round-trip decimal representation; "inf" for +infinity.
std::string formatDouble(double v);

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3 };

// Level comes from VOCAB_EMERGE_LOG (debug|info|warn|error), default warn.
LogLevel logLevel();
void logMessage(LogLevel level, const std::string& msg);

inline void logDebug(const std::string& m) { logMessage(LogLevel::Debug, m); }
inline void logInfo(const std::string& m) { logMessage(LogLevel::Info, m); }
inline void logWarn(const std::string& m) { logMessage(LogLevel::Warn, m); }
inline void logError(const std::string& m) { logMessage(LogLevel::Error, m); }

}  // namespace vocemerge
