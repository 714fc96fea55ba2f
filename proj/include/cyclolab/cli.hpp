#pragma once

// Command-line front end: subcommand dispatch, experiment records, the
// content-addressed result cache and JSON/CSV emission.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cyclolab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInconclusive = 3;

/// Runs one subcommand. `args` excludes the program name. The record (or the
/// usage text on input errors) goes to `out` unless --out is given;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Serializes with sorted keys and every double printed with 17 significant
/// digits. Non-finite doubles become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// SHA-256 of the canonical (compact) JSON of {command, inputs, version}.
std::string cache_key(const nlohmann::json& record);

/// Exit code implied by a record status.
int exit_code_for(const std::string& status);

std::string version();

}  // namespace cyclolab::cli
