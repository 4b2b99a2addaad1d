#include "doctest.h"

#include "decaylab/decaylab.h"

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

namespace {

std::string file_named(const dl_outputs* o, const char* name) {
    for (size_t i = 0; i < dl_outputs_file_count(o); ++i)
        if (std::strcmp(dl_outputs_file_name(o, i), name) == 0) {
            size_t n = 0;
            const char* c = dl_outputs_file_content(o, i, &n);
            return std::string(c, n);
        }
    return {};
}

const char* kExample21 =
    R"({"check": {"example21": {"alpha": 1, "mu": 0, "sigma": 2, "k": 0, "l": 0}}})";

}  // namespace

TEST_CASE("function handles evaluate and report errors") {
    dl_function* f = nullptr;
    REQUIRE(dl_function_from_json(R"({"family": "power", "c0": 2, "a": 3})", DL_ROLE_STATE, &f) ==
            DL_OK);
    double v = 0.0;
    CHECK(dl_function_eval(f, 2.0, &v) == DL_OK);
    CHECK(v == doctest::Approx(16.0));
    // inf of 2ζ³ over (1, 4) is approached at the left end
    CHECK(dl_function_theta_inf(f, 2.0, 2.0, &v) == DL_OK);
    CHECK(v == doctest::Approx(2.0));
    CHECK(dl_function_theta_inf(f, 0.5, 2.0, &v) == DL_ERR_INVALID_ARGUMENT);
    CHECK(std::string(dl_last_error()).find("theta") != std::string::npos);
    CHECK(dl_function_eval(f, -1.0, &v) == DL_ERR_DOMAIN);
    dl_function_free(f);

    dl_function* p = nullptr;
    REQUIRE(dl_function_from_json(R"({"family": "power", "a": -2})", DL_ROLE_SPATIAL, &p) == DL_OK);
    CHECK(dl_function_radial_inf(p, 3.0, &v) == DL_OK);
    CHECK(v == doctest::Approx(1.0 / 16.0));
    dl_function_free(p);

    dl_function* bad = nullptr;
    CHECK(dl_function_from_json(R"({"family": "nope"})", DL_ROLE_STATE, &bad) == DL_ERR_CONFIG);
    CHECK(bad == nullptr);
    CHECK(dl_function_from_json("{", DL_ROLE_STATE, &bad) == DL_ERR_CONFIG);
    CHECK(dl_function_from_json(nullptr, DL_ROLE_STATE, &bad) == DL_ERR_INVALID_ARGUMENT);
    dl_function_free(nullptr);
}

TEST_CASE("run returns the command status and its files") {
    dl_outputs* out = nullptr;
    CHECK(dl_run("check", kExample21, nullptr, &out) == DL_OK);
    REQUIRE(out);
    CHECK(std::string(dl_outputs_stdout(out)).find("\"stabilizes\"") != std::string::npos);
    CHECK(std::string(dl_outputs_stderr(out)).empty());
    CHECK(file_named(out, "report.json") == dl_outputs_stdout(out));
    CHECK(file_named(out, "manifest.json").find("\"example21\"") != std::string::npos);
    CHECK(dl_outputs_file_name(out, 99) == nullptr);
    dl_outputs_free(out);

    // a θ override is echoed in the manifest and changes nothing about the verdict here
    dl_options opt;
    dl_options_init(&opt);
    CHECK(std::isnan(opt.theta));
    opt.theta = 3.0;
    CHECK(dl_run("check", kExample21, &opt, &out) == DL_OK);
    CHECK(file_named(out, "manifest.json").find("\"theta\": 3.0") != std::string::npos);
    dl_outputs_free(out);
}

TEST_CASE("run maps failures to status codes") {
    dl_outputs* out = nullptr;
    CHECK(dl_run("check", "{\"check\": ", nullptr, &out) == DL_ERR_CONFIG);
    CHECK(std::string(dl_outputs_stderr(out)).find("config:1:") != std::string::npos);
    dl_outputs_free(out);

    CHECK(dl_run("sweep", kExample21, nullptr, &out) == DL_ERR_CONFIG);
    dl_outputs_free(out);

    CHECK(dl_run("frobnicate", kExample21, nullptr, &out) == DL_ERR_CONFIG);
    dl_outputs_free(out);

    const char* unknown_key = R"({"check": {"example21": {"alpha": 1, "mu": 0, "sigma": 2,
                                  "k": 0, "l": 0, "lambda": 1}}})";
    CHECK(dl_run("check", unknown_key, nullptr, &out) == DL_ERR_CONFIG);
    CHECK(std::string(dl_outputs_stderr(out)).find("lambda") != std::string::npos);
    dl_outputs_free(out);

    CHECK(dl_run(nullptr, kExample21, nullptr, &out) == DL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("error messages are per thread") {
    dl_function* f = nullptr;
    CHECK(dl_function_from_json("{", DL_ROLE_STATE, &f) == DL_ERR_CONFIG);
    const std::string mine = dl_last_error();
    std::string other;
    std::thread t([&] {
        double v;
        dl_function_eval(nullptr, 1.0, &v);
        other = dl_last_error();
    });
    t.join();
    CHECK(other == "null argument");
    CHECK(std::string(dl_last_error()) == mine);
}

TEST_CASE("version string") { CHECK(std::strlen(dl_version()) > 0); }
