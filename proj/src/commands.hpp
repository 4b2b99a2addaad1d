#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decaylab {

/// Process-level outcome codes shared by the C API and the command-line tool.
enum StatusCode : int {
    kOk = 0,
    kInternal = 1,
    kConfig = 2,
    kInvalidArgument = 3,
    kDomain = 4,
    kUnknownVerdict = 10,
    kDivergent = 11,
    kBlowup = 12,
};

struct RunOptions {
    std::optional<double> theta;
    std::optional<double> calibration_c;
    int jobs = 0;
};

struct RunOutput {
    int status = kOk;
    std::string out;  // primary result for stdout
    std::string err;  // JSON error object on failure
    std::vector<std::pair<std::string, std::string>> files;  // name → content
};

/// Runs one of check | sweep | envelope | simulate | stationary on a JSON
/// config. Never throws; failures are reported through status and err.
RunOutput run_command(const std::string& command, const std::string& config_text,
                      const RunOptions& options);

}  // namespace decaylab
