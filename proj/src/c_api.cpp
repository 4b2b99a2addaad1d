#include "decaylab/decaylab.h"

#include "commands.hpp"
#include "config.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/funcs.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <string>

struct dl_function {
    decaylab::ScalarFunction f;
};

struct dl_outputs {
    decaylab::RunOutput run;
};

namespace {

thread_local std::string last_error;

dl_status fail(dl_status s, const std::string& message) {
    last_error = message;
    return s;
}

// Wraps a call that reports through exceptions.
template <class Fn>
dl_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return DL_OK;
    } catch (const decaylab::ConfigError& e) {
        return fail(DL_ERR_CONFIG, e.what());
    } catch (const decaylab::DomainError& e) {
        return fail(DL_ERR_DOMAIN, e.what());
    } catch (const decaylab::DivergentTailError& e) {
        return fail(DL_ERR_DIVERGENT, e.what());
    } catch (const decaylab::BlowupDetected& e) {
        return fail(DL_ERR_BLOWUP, e.what());
    } catch (const std::exception& e) {
        return fail(DL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DL_ERR_INTERNAL, "unknown exception");
    }
}

}  // namespace

extern "C" {

const char* dl_version(void) { return "1.0.0"; }

const char* dl_last_error(void) { return last_error.c_str(); }

void dl_options_init(dl_options* options) {
    if (!options) return;
    options->theta = std::numeric_limits<double>::quiet_NaN();
    options->calibration_c = std::numeric_limits<double>::quiet_NaN();
    options->jobs = 0;
}

dl_status dl_function_from_json(const char* json, dl_role role, dl_function** out) {
    if (!json || !out) return fail(DL_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    if (role != DL_ROLE_STATE && role != DL_ROLE_SPATIAL)
        return fail(DL_ERR_INVALID_ARGUMENT, "unknown role");
    return guarded([&] {
        const auto doc = decaylab::config::parse_document(json);
        const auto r = role == DL_ROLE_SPATIAL ? decaylab::config::Role::Spatial
                                               : decaylab::config::Role::State;
        *out = new dl_function{decaylab::config::function_from_json(doc, r, "function")};
    });
}

void dl_function_free(dl_function* f) { delete f; }

dl_status dl_function_eval(const dl_function* f, double x, double* out) {
    if (!f || !out) return fail(DL_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = decaylab::eval(f->f, x); });
}

dl_status dl_function_theta_inf(const dl_function* f, double theta, double z, double* out) {
    if (!f || !out) return fail(DL_ERR_INVALID_ARGUMENT, "null argument");
    if (!(theta > 1.0)) return fail(DL_ERR_INVALID_ARGUMENT, "theta must be > 1");
    if (!(z > 0.0)) return fail(DL_ERR_INVALID_ARGUMENT, "z must be > 0");
    return guarded([&] { *out = decaylab::theta_inf(f->f, theta, z); });
}

dl_status dl_function_radial_inf(const dl_function* f, double r, double* out) {
    if (!f || !out) return fail(DL_ERR_INVALID_ARGUMENT, "null argument");
    if (!(r > 0.0)) return fail(DL_ERR_INVALID_ARGUMENT, "r must be > 0");
    return guarded([&] { *out = decaylab::radial_inf_q(f->f, r); });
}

dl_status dl_run(const char* command, const char* config_json, const dl_options* options,
                 dl_outputs** out) {
    if (!command || !config_json || !out) return fail(DL_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    decaylab::RunOptions opts;
    if (options) {
        if (!std::isnan(options->theta)) opts.theta = options->theta;
        if (!std::isnan(options->calibration_c)) opts.calibration_c = options->calibration_c;
        if (options->jobs < 0) return fail(DL_ERR_INVALID_ARGUMENT, "jobs must be >= 0");
        opts.jobs = options->jobs;
    }
    try {
        *out = new dl_outputs{decaylab::run_command(command, config_json, opts)};
    } catch (const std::exception& e) {
        return fail(DL_ERR_INTERNAL, e.what());
    }
    last_error = (*out)->run.err;
    return static_cast<dl_status>((*out)->run.status);
}

const char* dl_outputs_stdout(const dl_outputs* o) { return o ? o->run.out.c_str() : ""; }

const char* dl_outputs_stderr(const dl_outputs* o) { return o ? o->run.err.c_str() : ""; }

size_t dl_outputs_file_count(const dl_outputs* o) { return o ? o->run.files.size() : 0; }

const char* dl_outputs_file_name(const dl_outputs* o, size_t index) {
    if (!o || index >= o->run.files.size()) return nullptr;
    return o->run.files[index].first.c_str();
}

const char* dl_outputs_file_content(const dl_outputs* o, size_t index, size_t* length) {
    if (!o || index >= o->run.files.size()) return nullptr;
    const auto& content = o->run.files[index].second;
    if (length) *length = content.size();
    return content.c_str();
}

void dl_outputs_free(dl_outputs* o) { delete o; }

}  // extern "C"
