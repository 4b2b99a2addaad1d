#include "config.hpp"

#include "decaylab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace decaylab::config {

namespace {

std::string describe_type(const json& j) { return j.type_name(); }

}  // namespace

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset → line/column (1-based)
        const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        int line = 1, column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError("config:" + std::to_string(line) + ":" + std::to_string(column) +
                          ": malformed JSON (" + e.what() + ")");
    }
}

Object::Object(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
        throw ConfigError(path_ + ": expected an object, got " + describe_type(j_));
}

bool Object::has(const std::string& key) const { return j_.contains(key); }

const json& Object::at(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(child_path(key) + ": missing");
    used_.insert(key);
    return j_.at(key);
}

double Object::number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(child_path(key) + ": expected a number");
    return v.get<double>();
}

double Object::number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
}

int Object::integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(child_path(key) + ": expected an integer");
    return v.get<int>();
}

bool Object::boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(child_path(key) + ": expected true or false");
    return v.get<bool>();
}

std::string Object::string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(child_path(key) + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> Object::numbers(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array()) throw ConfigError(child_path(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(child_path(key) + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

void Object::finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
        if (!used_.count(it.key())) throw ConfigError(child_path(it.key()) + ": unknown key");
}

// --- functions ------------------------------------------------------------------

ScalarFunction function_from_json(const json& j, Role role, const std::string& path) {
    Object o(j, path);
    const std::string family = o.string("family");
    const double default_offset = role == Role::Spatial ? 1.0 : 0.0;
    const double default_shift = role == Role::Spatial ? 2.0 : 1.0;
    auto wrap = [&](ScalarFunction f) {
        if (o.has("domain")) {
            const json& d = o.at("domain");
            if (!d.is_array() || d.size() != 2 || !d[0].is_number() ||
                !(d[1].is_number() || d[1].is_null()))
                throw ConfigError(o.child_path("domain") + ": expected [lo, hi] with hi a number or null");
            Interval iv{d[0].get<double>(), d[1].is_null() ? std::numeric_limits<double>::infinity()
                                                           : d[1].get<double>()};
            if (!(iv.lo >= 0.0) || !(iv.hi > iv.lo))
                throw ConfigError(o.child_path("domain") + ": need 0 <= lo < hi");
            f = f.with_domain(iv);
        }
        o.finish();
        return f;
    };
    try {
        if (family == "power") {
            const double c0 = o.number("c0", 1.0);
            const double a = o.number("a");
            return wrap(ScalarFunction::power(c0, a, o.number("offset", default_offset)));
        }
        if (family == "power_log") {
            const double c0 = o.number("c0", 1.0);
            const double a = o.number("a");
            const double s = o.number("s", 0.0);
            const double shift = o.number("shift", default_shift);
            return wrap(ScalarFunction::power_log(c0, a, s, shift, o.number("offset", default_offset)));
        }
        if (family == "tabulated") {
            auto x = o.numbers("x");
            auto y = o.numbers("y");
            return wrap(ScalarFunction::tabulated(std::move(x), std::move(y)));
        }
        if (family == "inverse_of")
            return wrap(ScalarFunction::inverse_of(
                function_from_json(o.at("base"), role, o.child_path("base"))));
        if (family == "compose") {
            auto outer = function_from_json(o.at("outer"), role, o.child_path("outer"));
            auto inner = function_from_json(o.at("inner"), role, o.child_path("inner"));
            return wrap(ScalarFunction::compose(std::move(outer), std::move(inner)));
        }
        if (family == "scaled_by") {
            const double eps = o.number("epsilon");
            return wrap(ScalarFunction::scaled_by(
                eps, function_from_json(o.at("base"), role, o.child_path("base"))));
        }
        if (family == "min_of") {
            const json& terms = o.at("terms");
            if (!terms.is_array() || terms.empty())
                throw ConfigError(o.child_path("terms") + ": expected a non-empty array");
            std::vector<ScalarFunction> fs;
            for (std::size_t i = 0; i < terms.size(); ++i)
                fs.push_back(function_from_json(terms[i], role,
                                                o.child_path("terms") + "[" + std::to_string(i) + "]"));
            return wrap(ScalarFunction::min_of(std::move(fs)));
        }
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        throw ConfigError(path + ": " + msg);
    }
    throw ConfigError(o.child_path("family") + ": unknown family '" + family + "'");
}

json function_to_json(const ScalarFunction& f) {
    json j = std::visit(
        [](const auto& fam) -> json {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PowerFamily>) {
                return {{"family", "power"}, {"c0", fam.c0}, {"a", fam.a}, {"offset", fam.offset}};
            } else if constexpr (std::is_same_v<T, PowerLogFamily>) {
                return {{"family", "power_log"}, {"c0", fam.c0},       {"a", fam.a},
                        {"s", fam.s},            {"shift", fam.shift}, {"offset", fam.offset}};
            } else if constexpr (std::is_same_v<T, TabulatedFamily>) {
                return {{"family", "tabulated"}, {"x", fam.x}, {"y", fam.y}};
            } else if constexpr (std::is_same_v<T, InverseFamily>) {
                return {{"family", "inverse_of"}, {"base", function_to_json(fam.base)}};
            } else if constexpr (std::is_same_v<T, ComposeFamily>) {
                return {{"family", "compose"},
                        {"outer", function_to_json(fam.outer)},
                        {"inner", function_to_json(fam.inner)}};
            } else if constexpr (std::is_same_v<T, ScaledFamily>) {
                return {{"family", "scaled_by"},
                        {"epsilon", fam.factor},
                        {"base", function_to_json(fam.base)}};
            } else {
                json terms = json::array();
                for (const auto& t : fam.terms) terms.push_back(function_to_json(t));
                return {{"family", "min_of"}, {"terms", terms}};
            }
        },
        f.node().family);
    const Interval& d = f.domain();
    if (d.lo != 0.0 || std::isfinite(d.hi))
        j["domain"] = {d.lo, std::isfinite(d.hi) ? json(d.hi) : json(nullptr)};
    return j;
}

// --- equations ------------------------------------------------------------------

EquationSpec equation_from_json(const json& j, const std::string& path) {
    Object o(j, path);
    EquationSpec spec;
    spec.n = o.integer("n", 1);
    if (o.has("phi") || o.has("psi")) {
        FunctionTerms f{function_from_json(o.at("phi"), Role::State, o.child_path("phi")),
                        function_from_json(o.at("psi"), Role::State, o.child_path("psi")),
                        o.number("sign", 1.0)};
        spec.terms = std::move(f);
    } else {
        PowerTerms t;
        if (o.has("b")) {
            Object b(o.at("b"), o.child_path("b"));
            t.b0 = b.number("b0", 0.0);
            t.k = b.number("k", 0.0);
            t.s = b.number("s", 0.0);
            t.mu = b.number("mu", 0.0);
            t.alpha = b.number("alpha", 1.0);
            t.sign = b.number("sign", 1.0);
            b.finish();
        }
        if (o.has("c")) {
            Object c(o.at("c"), o.child_path("c"));
            t.c0 = c.number("c0", 1.0);
            t.l = c.number("l", 0.0);
            t.m = c.number("m", 0.0);
            c.finish();
        }
        t.sigma = o.number("sigma", 1.0);
        t.nu = o.number("nu", 0.0);
        spec.terms = t;
    }
    o.finish();
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return spec;
}

json equation_to_json(const EquationSpec& spec) {
    json j;
    j["n"] = spec.n;
    if (const auto* t = std::get_if<PowerTerms>(&spec.terms)) {
        j["b"] = {{"b0", t->b0}, {"k", t->k},         {"s", t->s},
                  {"mu", t->mu}, {"alpha", t->alpha}, {"sign", t->sign}};
        j["c"] = {{"c0", t->c0}, {"l", t->l}, {"m", t->m}};
        j["sigma"] = t->sigma;
        j["nu"] = t->nu;
    } else {
        const auto& f = std::get<FunctionTerms>(spec.terms);
        j["phi"] = function_to_json(f.phi);
        j["psi"] = function_to_json(f.psi);
        j["sign"] = f.sign;
    }
    return j;
}

// --- reports --------------------------------------------------------------------

json verdict_to_json(const IntegralVerdict& v) {
    json j{{"status", to_string(v.status)}, {"diagnostic", v.diagnostic}};
    if (v.value) j["value"] = *v.value;
    return j;
}

json report_to_json(const StabilizationReport& r) {
    return {{"q", verdict_to_json(r.q_integral)},
            {"g", verdict_to_json(r.g_integral)},
            {"h", verdict_to_json(r.h_integral)},
            {"verdict", to_string(r.verdict)},
            {"theta", r.theta}};
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace decaylab::config
