#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ampfsi/errors.hpp"

namespace ampfsi::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Format { Csv, Json };

// Bad command, config key or value. Reported with exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string command;
    nlohmann::json params = nlohmann::json::object();  // command-specific keys only
    std::string output_path;
    Format format = Format::Csv;
    int jobs = 1;
};

const std::vector<std::string>& command_names();

/// Parses the config file text. The optional top-level "format" key selects csv
/// or json; everything else is a command parameter.
RunConfig make_config(const std::string& command, const std::string& config_text,
                      const std::string& output_path, int jobs);

/// 64-bit FNV-1a of the canonical JSON dump of the parameters, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// Runs the command and writes the artifact. Returns the process exit code:
/// 0 on success, 1 on validation failure, 2 on numerical failure. A single
/// error line goes to `err` on failure.
int run(const RunConfig& config, std::ostream& err);

/// Like run() but throws ValidationError / Error instead of mapping to codes.
void execute(const RunConfig& config);

}  // namespace ampfsi::cli
