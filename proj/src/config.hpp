#pragma once

// JSON <-> library types. Every reader rejects unknown keys so that a typo in a
// config is reported instead of silently falling back to a default.

#include "decaylab/criterion.hpp"
#include "decaylab/funcs.hpp"
#include "decaylab/pde.hpp"

#include "json.hpp"

#include <optional>
#include <set>
#include <string>

namespace decaylab::config {

using nlohmann::json;

/// Which argument a function takes: the solution value ζ (log(1+ζ), no offset)
/// or the radius |x| (log(2+r), offset 1).
enum class Role { State, Spatial };

/// Parses a JSON document; syntax errors become ConfigError with line and column.
json parse_document(const std::string& text);

/// Strict view of a JSON object: typed getters, and finish() rejects keys that
/// were never read.
class Object {
public:
    Object(const json& j, std::string path);

    bool has(const std::string& key) const;
    const json& at(const std::string& key);
    double number(const std::string& key);
    double number(const std::string& key, double fallback);
    int integer(const std::string& key, int fallback);
    bool boolean(const std::string& key, bool fallback);
    std::string string(const std::string& key);
    std::vector<double> numbers(const std::string& key);
    std::string child_path(const std::string& key) const { return path_ + "." + key; }
    const std::string& path() const { return path_; }
    void finish() const;

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

ScalarFunction function_from_json(const json& j, Role role, const std::string& path);
json function_to_json(const ScalarFunction& f);

EquationSpec equation_from_json(const json& j, const std::string& path);
json equation_to_json(const EquationSpec& spec);

json verdict_to_json(const IntegralVerdict& v);
json report_to_json(const StabilizationReport& r);

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);

}  // namespace decaylab::config
