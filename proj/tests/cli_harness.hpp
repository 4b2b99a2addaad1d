#pragma once

// Black-box runner for the command-line tool: runs it in a scratch directory
// and collects exit code, streams and written files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace cli_harness {

namespace fs = std::filesystem;

struct Result {
    int code = -1;
    std::string out;
    std::string err;
    std::map<std::string, std::string> files;
};

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline fs::path config_path(const std::string& name) {
    return fs::path(DECAYLAB_CONFIG_DIR) / (name + ".json");
}

/// Runs `decaylab <command> --config <config> --out <scratch> <extra>`.
inline Result run(const std::string& command, const fs::path& config, const std::string& scratch,
                  const std::string& extra = "") {
    const fs::path dir = fs::temp_directory_path() / ("decaylab_cli_" + scratch);
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path out_dir = dir / "out";
    const std::string cmd = std::string("\"") + DECAYLAB_CLI + "\" " + command + " --config \"" +
                            config.string() + "\" --out \"" + out_dir.string() + "\" " + extra +
                            " > \"" + (dir / "stdout").string() + "\" 2> \"" +
                            (dir / "stderr").string() + "\"";
    const int raw = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(dir / "stdout");
    r.err = slurp(dir / "stderr");
    if (fs::exists(out_dir))
        for (const auto& e : fs::directory_iterator(out_dir))
            r.files[e.path().filename().string()] = slurp(e.path());
    fs::remove_all(dir);
    return r;
}

inline bool same(const Result& a, const Result& b) {
    return a.code == b.code && a.out == b.out && a.err == b.err && a.files == b.files;
}

}  // namespace cli_harness
