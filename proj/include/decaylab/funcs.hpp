#pragma once

// One-dimensional structure functions: the coefficients g, h, p of the
// absorption lower bound and the auxiliary functions used by the worked
// example families (phi, psi and the inverse of phi).
//
// Every function belongs to a closed family so that tail behaviour can be
// read off algebraically. All values are immutable and cheap to copy; nested
// families share their children.

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace decaylab {

/// Open interval (lo, hi) of validity of a ScalarFunction.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double z) const noexcept { return z > lo && z < hi; }
    bool contains_closed(double a, double b) const noexcept { return a >= lo && b <= hi; }
};

enum class Monotonicity { Increasing, Decreasing, Constant, Unknown };

/// Leading-order behaviour f(ζ) ~ exp(log_coef) · ζ^power · log^log_power ζ as ζ → ∞.
struct PowerLogTail {
    double log_coef = 0.0;
    double power = 0.0;
    double log_power = 0.0;
};

struct FunctionNode;

class ScalarFunction {
public:
    /// c0 · (offset + ζ)^a
    static ScalarFunction power(double c0, double a, double offset = 0.0);
    /// c0 · (offset + ζ)^a · log^s(shift + ζ), shift ≥ 1
    static ScalarFunction power_log(double c0, double a, double s, double shift = 1.0,
                                    double offset = 0.0);
    /// Spatial convention for radial weights: c0 · (1 + r)^a · log^s(2 + r).
    static ScalarFunction spatial(double c0, double a, double s = 0.0);
    /// Log-log linear interpolation through (x_i, y_i); the end slopes are frozen
    /// for extrapolation on both sides.
    static ScalarFunction tabulated(std::vector<double> x, std::vector<double> y);
    /// Inverse of a strictly increasing bijection of (0, ∞).
    static ScalarFunction inverse_of(ScalarFunction base);
    static ScalarFunction compose(ScalarFunction outer, ScalarFunction inner);
    static ScalarFunction scaled_by(double factor, ScalarFunction base);
    static ScalarFunction min_of(std::vector<ScalarFunction> terms);

    ScalarFunction with_domain(Interval domain) const;

    const Interval& domain() const noexcept { return domain_; }
    const FunctionNode& node() const noexcept { return *node_; }

private:
    ScalarFunction(std::shared_ptr<const FunctionNode> node, Interval domain)
        : node_(std::move(node)), domain_(domain) {}

    std::shared_ptr<const FunctionNode> node_;
    Interval domain_;
};

struct PowerFamily {
    double c0;
    double a;
    double offset;
};

struct PowerLogFamily {
    double c0;
    double a;
    double s;
    double shift;
    double offset;
    std::vector<double> critical_log_z;  // stationary points in log ζ (opposite-sign exponents)
};

struct TabulatedFamily {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> log_x;
    std::vector<double> log_y;
};

struct InverseFamily {
    ScalarFunction base;
};

struct ComposeFamily {
    ScalarFunction outer;
    ScalarFunction inner;
};

struct ScaledFamily {
    double factor;
    ScalarFunction base;
};

struct MinFamily {
    std::vector<ScalarFunction> terms;
};

struct FunctionNode {
    std::variant<PowerFamily, PowerLogFamily, TabulatedFamily, InverseFamily, ComposeFamily,
                 ScaledFamily, MinFamily>
        family;
};

/// f(ζ). Throws DomainError outside the domain, or when an inverse target
/// lies outside the range of its base.
double eval(const ScalarFunction& f, double z);

/// log f(e^L). Valid for arguments far beyond the double range of ζ itself,
/// which is what the tail integrals and tail fits rely on.
double eval_log(const ScalarFunction& f, double log_z);

Monotonicity monotonicity(const ScalarFunction& f);

/// Algebraic tail for the power/power-log closure; empty when the tail is not
/// exactly of that form (tabulated data, inner functions tending to zero, ...).
std::optional<PowerLogTail> power_log_tail(const ScalarFunction& f);

/// log of lim_{ζ→0+} f(ζ); may be ±∞.
double limit_at_zero_log(const ScalarFunction& f);

/// inf of f over (ζ/θ, θζ).
double theta_inf(const ScalarFunction& f, double theta, double z);
double theta_inf_log(const ScalarFunction& f, double theta, double log_z);

/// q(r) = inf of the radial weight over (0, r]. The log form returns -∞ when q = 0.
double radial_inf_q(const ScalarFunction& p_radial, double r);
double radial_inf_q_log(const ScalarFunction& p_radial, double log_r);

std::string describe(const ScalarFunction& f);

/// Everything the integral criterion consumes: g, h, the radial weight p and θ.
struct StructureTriple {
    ScalarFunction g;
    ScalarFunction h;
    ScalarFunction p_radial;
    double theta;

    /// Validates θ > 1 and that g, h are finite and positive on a sampled compact range.
    static StructureTriple make(ScalarFunction g, ScalarFunction h, ScalarFunction p_radial,
                                double theta);
};

}  // namespace decaylab
