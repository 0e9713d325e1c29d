#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vocabport/efficiency.hpp"
#include "vocabport/initializers.hpp"

namespace vocabport::cli {

/// Exit codes of `vocabport`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Runs one command line. `args` excludes the program name. Machine output
/// goes to the paths named by flags (or `out` where a command prints a
/// result); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const InitReport& report);
nlohmann::json to_json(const EfficiencyReport& report);
EfficiencyReport efficiency_report_from_json(const nlohmann::json& j);

/// Writes `doc` with sorted keys and two-space indent, newline-terminated.
/// Throws IoError when the path cannot be written.
void emit_report(const nlohmann::json& doc, const std::filesystem::path& path);
void emit_report(const InitReport& report, const std::filesystem::path& path);
void emit_report(const EfficiencyReport& report, const std::filesystem::path& path);

}  // namespace vocabport::cli
