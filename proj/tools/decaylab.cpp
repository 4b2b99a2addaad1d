// Command-line front end over the C interface.

#include "decaylab/decaylab.h"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct Invocation {
    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    double theta = NAN;
    double calibration_c = NAN;
};

void add_common(CLI::App* sub, Invocation& inv) {
    sub->add_option("--config", inv.config_path, "JSON config file")->required();
    sub->add_option("--out", inv.out_dir, "directory for result files");
    sub->add_option("--jobs", inv.jobs, "worker threads (0 = hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--theta", inv.theta, "overrides the config theta");
    sub->add_option("--calibration-c", inv.calibration_c, "overrides the config calibration_c");
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}

int io_failure(const std::string& message) {
    std::cerr << "{\"error\":\"config\",\"message\":\"" << json_escape(message) << "\"}\n";
    return DL_ERR_CONFIG;
}

int run(const std::string& command, const Invocation& inv) {
    std::ifstream in(inv.config_path, std::ios::binary);
    if (!in) return io_failure("cannot read config file " + inv.config_path);
    std::ostringstream text;
    text << in.rdbuf();

    dl_options options;
    dl_options_init(&options);
    options.theta = inv.theta;
    options.calibration_c = inv.calibration_c;
    options.jobs = inv.jobs;

    dl_outputs* outputs = nullptr;
    const dl_status status = dl_run(command.c_str(), text.str().c_str(), &options, &outputs);
    if (!outputs) {
        std::cerr << "{\"error\":\"internal\",\"message\":\"" << json_escape(dl_last_error())
                  << "\"}\n";
        return status;
    }
    std::cout << dl_outputs_stdout(outputs);
    std::cerr << dl_outputs_stderr(outputs);

    int code = status;
    if (!inv.out_dir.empty() && dl_outputs_file_count(outputs) > 0) {
        std::error_code ec;
        std::filesystem::create_directories(inv.out_dir, ec);
        for (size_t i = 0; i < dl_outputs_file_count(outputs) && code == status; ++i) {
            size_t length = 0;
            const char* content = dl_outputs_file_content(outputs, i, &length);
            const auto path = std::filesystem::path(inv.out_dir) / dl_outputs_file_name(outputs, i);
            std::ofstream f(path, std::ios::binary);
            f.write(content, static_cast<std::streamsize>(length));
            if (!f) code = io_failure("cannot write " + path.string());
        }
    }
    dl_outputs_free(outputs);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decay and stabilization diagnostics for semilinear parabolic equations"};
    app.set_version_flag("--version", std::string(dl_version()));
    app.require_subcommand(1);

    Invocation inv;
    const char* commands[][2] = {
        {"check", "integral criterion verdict for a structure triple or a worked example"},
        {"sweep", "closed-form vs numeric verdicts over a parameter grid"},
        {"envelope", "dyadic decay envelope and optional step diagnostics"},
        {"simulate", "radial finite-volume simulation with sup-norm decay curve"},
        {"stationary", "search for a bounded positive stationary solution"},
    };
    for (const auto& c : commands) add_common(app.add_subcommand(c[0], c[1]), inv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : DL_ERR_INVALID_ARGUMENT;
    }
    return run(app.get_subcommands().front()->get_name(), inv);
}
