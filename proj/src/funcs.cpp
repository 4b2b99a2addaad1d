#include "decaylab/funcs.hpp"

#include "decaylab/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace decaylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// a·x with the convention 0·∞ = 0 (a zero exponent switches the factor off).
double mul0(double a, double x) { return a == 0.0 ? 0.0 : a * x; }

// log(offset + e^L) without overflow for large |L|.
double log_offset_exp(double offset, double log_z) {
    if (offset == 0.0) return log_z;
    if (log_z < 0.0) return std::log(offset) + std::log1p(std::exp(log_z) / offset);
    return log_z + std::log1p(offset * std::exp(-log_z));
}

// log(log(shift + e^L)), shift >= 1.
double log_log_shift(double shift, double log_z) {
    double inner;
    if (shift == 1.0 && log_z < 0.0)
        inner = std::log1p(std::exp(log_z));
    else
        inner = log_offset_exp(shift, log_z);
    return std::log(inner);
}

void require_positive_finite(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(what) + " must be positive and finite");
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
}

double interp_tabulated_log(const TabulatedFamily& t, double log_z) {
    const auto& lx = t.log_x;
    const auto& ly = t.log_y;
    const std::size_t n = lx.size();
    if (n == 1) return ly[0];
    std::size_t i;
    if (log_z <= lx[0]) {
        i = 0;
    } else if (log_z >= lx[n - 1]) {
        i = n - 2;
    } else {
        auto it = std::upper_bound(lx.begin(), lx.end(), log_z);
        i = static_cast<std::size_t>(it - lx.begin()) - 1;
    }
    const double slope = (ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]);
    return ly[i] + mul0(slope, log_z - lx[i]);
}

// Solve eval_log(base, X) = target for X by bracketing and bisection in log space.
double inverse_log(const ScalarFunction& base, double target) {
    auto residual = [&](double x) { return eval_log(base, x) - target; };
    const double log_lo = base.domain().lo > 0.0 ? std::log(base.domain().lo) : -kInf;
    const double log_hi = std::log(base.domain().hi);
    constexpr double kReach = 1e300;

    double lo = std::clamp(target - 1.0, std::nextafter(log_lo, 0.0), std::nextafter(log_hi, 0.0));
    double hi = lo;
    double step = 1.0;
    while (residual(hi) < 0.0) {
        lo = hi;
        hi += step;
        step *= 2.0;
        if (hi >= log_hi || hi > kReach)
            throw DomainError("inverse_of: target above the range of the base function");
    }
    step = 1.0;
    while (residual(lo) > 0.0) {
        hi = lo;
        lo -= step;
        step *= 2.0;
        if (lo <= log_lo || lo < -kReach)
            throw DomainError("inverse_of: target below the range of the base function");
    }
    // Relative tolerance 1e-12 in x is an absolute tolerance in log x.
    for (int iter = 0; iter < 4000; ++iter) {
        const double tol = std::max(1e-13, 8.0 * std::numeric_limits<double>::epsilon() *
                                               std::max(std::fabs(lo), std::fabs(hi)));
        if (hi - lo <= tol) break;
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void check_domain_log(const ScalarFunction& f, double log_z) {
    const Interval& d = f.domain();
    const bool above = d.lo <= 0.0 || log_z > std::log(d.lo);
    const bool below = std::isinf(d.hi) || log_z < std::log(d.hi);
    if (std::isnan(log_z) || !above || !below)
        throw DomainError("argument outside the domain of " + describe(f));
}

// d/dL log f(e^L) for the power-log family.
double power_log_slope(const PowerLogFamily& f, double L) {
    const double inner = std::exp(-L);
    const double power_part = f.a / (1.0 + f.offset * inner);
    const double log_part = f.s / ((1.0 + f.shift * inner) * std::exp(log_log_shift(f.shift, L)));
    return power_part + log_part;
}

// Sign changes of the slope: a uniform scan in L on [-200, 60], then a geometric
// scan up to 1e9 where the slope behaves like a + s/L; bisection on each bracket.
std::vector<double> power_log_critical_points(const PowerLogFamily& f) {
    std::vector<double> grid;
    for (double L = -200.0; L < 60.0; L += 0.25) grid.push_back(L);
    for (double L = 60.0; L < 1e9; L *= 1.05) grid.push_back(L);
    std::vector<double> roots;
    double prev = power_log_slope(f, grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = power_log_slope(f, grid[i]);
        if ((prev < 0.0) != (cur < 0.0)) {
            double lo = grid[i - 1], hi = grid[i];
            const bool lo_negative = prev < 0.0;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((power_log_slope(f, mid) < 0.0) == lo_negative)
                    lo = mid;
                else
                    hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    return roots;
}

// Minimum of a function of L over [a, b]: coarse scan with `nodes` points, then
// Brent refinement on the bracket around the best node.
template <class F>
double window_min(F&& fn, double a, double b, int nodes) {
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i < nodes; ++i) {
        const double v = fn(a + (b - a) * i / (nodes - 1));
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    const double lo = a + (b - a) * std::max(best_i - 1, 0) / (nodes - 1);
    const double hi = a + (b - a) * std::min(best_i + 1, nodes - 1) / (nodes - 1);
    auto r = boost::math::tools::brent_find_minima(fn, lo, hi,
                                                   std::numeric_limits<double>::digits / 2);
    return std::min(best, r.second);
}

}  // namespace

StabilityViolation::StabilityViolation(double dt, double bound)
    : Error("time step " + std::to_string(dt) + " exceeds the stability bound " +
            std::to_string(bound)),
      dt_(dt),
      bound_(bound) {}

BlowupDetected::BlowupDetected(double time)
    : Error("blow-up detected at t = " + std::to_string(time)), time_(time) {}

// --- construction -----------------------------------------------------------

ScalarFunction ScalarFunction::power(double c0, double a, double offset) {
    require_positive_finite(c0, "power: c0");
    require_finite(a, "power: a");
    if (!(offset >= 0.0) || !std::isfinite(offset))
        throw ConfigError("power: offset must be a finite nonnegative number");
    return {std::make_shared<FunctionNode>(FunctionNode{PowerFamily{c0, a, offset}}), Interval{}};
}

ScalarFunction ScalarFunction::power_log(double c0, double a, double s, double shift,
                                         double offset) {
    require_positive_finite(c0, "power_log: c0");
    require_finite(a, "power_log: a");
    require_finite(s, "power_log: s");
    if (!(shift >= 1.0) || !std::isfinite(shift))
        throw ConfigError("power_log: shift must be a finite real >= 1");
    if (!(offset >= 0.0) || !std::isfinite(offset))
        throw ConfigError("power_log: offset must be a finite nonnegative number");
    PowerLogFamily fam{c0, a, s, shift, offset, {}};
    if (a * s < 0.0) fam.critical_log_z = power_log_critical_points(fam);
    return {std::make_shared<FunctionNode>(FunctionNode{std::move(fam)}), Interval{}};
}

ScalarFunction ScalarFunction::spatial(double c0, double a, double s) {
    if (s == 0.0) return power(c0, a, 1.0);
    return power_log(c0, a, s, 2.0, 1.0);
}

ScalarFunction ScalarFunction::tabulated(std::vector<double> x, std::vector<double> y) {
    if (x.empty() || x.size() != y.size())
        throw ConfigError("tabulated: x and y must be non-empty and of equal length");
    TabulatedFamily t;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require_positive_finite(x[i], "tabulated: abscissa");
        require_positive_finite(y[i], "tabulated: ordinate");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw ConfigError("tabulated: abscissae must be strictly increasing");
        t.log_x.push_back(std::log(x[i]));
        t.log_y.push_back(std::log(y[i]));
    }
    t.x = std::move(x);
    t.y = std::move(y);
    return {std::make_shared<FunctionNode>(FunctionNode{std::move(t)}), Interval{}};
}

ScalarFunction ScalarFunction::inverse_of(ScalarFunction base) {
    if (monotonicity(base) != Monotonicity::Increasing)
        throw ConfigError("inverse_of: base must be strictly increasing (" + describe(base) + ")");
    return {std::make_shared<FunctionNode>(FunctionNode{InverseFamily{std::move(base)}}),
            Interval{}};
}

ScalarFunction ScalarFunction::compose(ScalarFunction outer, ScalarFunction inner) {
    return {std::make_shared<FunctionNode>(
                FunctionNode{ComposeFamily{std::move(outer), std::move(inner)}}),
            Interval{}};
}

ScalarFunction ScalarFunction::scaled_by(double factor, ScalarFunction base) {
    require_positive_finite(factor, "scaled_by: factor");
    return {std::make_shared<FunctionNode>(FunctionNode{ScaledFamily{factor, std::move(base)}}),
            Interval{}};
}

ScalarFunction ScalarFunction::min_of(std::vector<ScalarFunction> terms) {
    if (terms.empty()) throw ConfigError("min_of: needs at least one term");
    return {std::make_shared<FunctionNode>(FunctionNode{MinFamily{std::move(terms)}}), Interval{}};
}

ScalarFunction ScalarFunction::with_domain(Interval domain) const {
    if (!(domain.lo >= 0.0) || !(domain.hi > domain.lo))
        throw ConfigError("domain must satisfy 0 <= lo < hi");
    return {node_, domain};
}

// --- evaluation -------------------------------------------------------------

double eval(const ScalarFunction& f, double z) {
    if (std::isnan(z) || !f.domain().contains(z))
        throw DomainError("argument outside the domain of " + describe(f));
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PowerFamily>) {
                return fam.c0 * std::pow(fam.offset + z, fam.a);
            } else if constexpr (std::is_same_v<T, PowerLogFamily>) {
                const double lg = fam.shift == 1.0 ? std::log1p(z) : std::log(fam.shift + z);
                return fam.c0 * std::pow(fam.offset + z, fam.a) * std::pow(lg, fam.s);
            } else if constexpr (std::is_same_v<T, TabulatedFamily>) {
                return std::exp(interp_tabulated_log(fam, std::log(z)));
            } else if constexpr (std::is_same_v<T, InverseFamily>) {
                return std::exp(inverse_log(fam.base, std::log(z)));
            } else if constexpr (std::is_same_v<T, ComposeFamily>) {
                return eval(fam.outer, eval(fam.inner, z));
            } else if constexpr (std::is_same_v<T, ScaledFamily>) {
                return fam.factor * eval(fam.base, z);
            } else {
                double best = kInf;
                for (const auto& term : fam.terms) best = std::min(best, eval(term, z));
                return best;
            }
        },
        f.node().family);
}

double eval_log(const ScalarFunction& f, double log_z) {
    check_domain_log(f, log_z);
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PowerFamily>) {
                return std::log(fam.c0) + mul0(fam.a, log_offset_exp(fam.offset, log_z));
            } else if constexpr (std::is_same_v<T, PowerLogFamily>) {
                return std::log(fam.c0) + mul0(fam.a, log_offset_exp(fam.offset, log_z)) +
                       mul0(fam.s, log_log_shift(fam.shift, log_z));
            } else if constexpr (std::is_same_v<T, TabulatedFamily>) {
                return interp_tabulated_log(fam, log_z);
            } else if constexpr (std::is_same_v<T, InverseFamily>) {
                return inverse_log(fam.base, log_z);
            } else if constexpr (std::is_same_v<T, ComposeFamily>) {
                return eval_log(fam.outer, eval_log(fam.inner, log_z));
            } else if constexpr (std::is_same_v<T, ScaledFamily>) {
                return std::log(fam.factor) + eval_log(fam.base, log_z);
            } else {
                double best = kInf;
                for (const auto& term : fam.terms) best = std::min(best, eval_log(term, log_z));
                return best;
            }
        },
        f.node().family);
}

// --- structure --------------------------------------------------------------

Monotonicity monotonicity(const ScalarFunction& f) {
    auto from_signs = [](double a, double s) {
        if (a == 0.0 && s == 0.0) return Monotonicity::Constant;
        if (a >= 0.0 && s >= 0.0) return Monotonicity::Increasing;
        if (a <= 0.0 && s <= 0.0) return Monotonicity::Decreasing;
        return Monotonicity::Unknown;
    };
    return std::visit(
        [&](const auto& fam) -> Monotonicity {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PowerFamily>) {
                return from_signs(fam.a, 0.0);
            } else if constexpr (std::is_same_v<T, PowerLogFamily>) {
                return from_signs(fam.a, fam.s);
            } else if constexpr (std::is_same_v<T, TabulatedFamily>) {
                bool inc = true, dec = true, flat = true;
                for (std::size_t i = 1; i < fam.y.size(); ++i) {
                    inc = inc && fam.y[i] > fam.y[i - 1];
                    dec = dec && fam.y[i] < fam.y[i - 1];
                    flat = flat && fam.y[i] == fam.y[i - 1];
                }
                if (flat) return Monotonicity::Constant;
                if (inc) return Monotonicity::Increasing;
                if (dec) return Monotonicity::Decreasing;
                return Monotonicity::Unknown;
            } else if constexpr (std::is_same_v<T, InverseFamily>) {
                return Monotonicity::Increasing;
            } else if constexpr (std::is_same_v<T, ComposeFamily>) {
                const auto mo = monotonicity(fam.outer);
                const auto mi = monotonicity(fam.inner);
                if (mo == Monotonicity::Constant || mi == Monotonicity::Constant)
                    return Monotonicity::Constant;
                if (mo == Monotonicity::Unknown || mi == Monotonicity::Unknown)
                    return Monotonicity::Unknown;
                return mo == mi ? Monotonicity::Increasing : Monotonicity::Decreasing;
            } else if constexpr (std::is_same_v<T, ScaledFamily>) {
                return monotonicity(fam.base);
            } else {
                const auto first = monotonicity(fam.terms.front());
                for (const auto& term : fam.terms)
                    if (monotonicity(term) != first) return Monotonicity::Unknown;
                return first;
            }
        },
        f.node().family);
}

std::optional<PowerLogTail> power_log_tail(const ScalarFunction& f) {
    return std::visit(
        [&](const auto& fam) -> std::optional<PowerLogTail> {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PowerFamily>) {
                return PowerLogTail{std::log(fam.c0), fam.a, 0.0};
            } else if constexpr (std::is_same_v<T, PowerLogFamily>) {
                return PowerLogTail{std::log(fam.c0), fam.a, fam.s};
            } else if constexpr (std::is_same_v<T, TabulatedFamily>) {
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, InverseFamily>) {
                auto base = power_log_tail(fam.base);
                if (!base || !(base->power > 0.0)) return std::nullopt;
                const double a = base->power;
                const double s = base->log_power;
                return PowerLogTail{-base->log_coef / a + (s / a) * std::log(a), 1.0 / a, -s / a};
            } else if constexpr (std::is_same_v<T, ComposeFamily>) {
                auto outer = power_log_tail(fam.outer);
                if (!outer) return std::nullopt;
                if (monotonicity(fam.inner) == Monotonicity::Constant) {
                    return PowerLogTail{eval_log(fam.outer, eval_log(fam.inner, 0.0)), 0.0, 0.0};
                }
                auto inner = power_log_tail(fam.inner);
                if (!inner || !(inner->power > 0.0)) return std::nullopt;
                return PowerLogTail{
                    outer->log_coef + outer->power * inner->log_coef +
                        mul0(outer->log_power, std::log(inner->power)),
                    outer->power * inner->power,
                    outer->power * inner->log_power + outer->log_power};
            } else if constexpr (std::is_same_v<T, ScaledFamily>) {
                auto base = power_log_tail(fam.base);
                if (!base) return std::nullopt;
                base->log_coef += std::log(fam.factor);
                return base;
            } else {
                std::optional<PowerLogTail> best;
                for (const auto& term : fam.terms) {
                    auto t = power_log_tail(term);
                    if (!t) return std::nullopt;
                    if (!best || t->power < best->power ||
                        (t->power == best->power && t->log_power < best->log_power) ||
                        (t->power == best->power && t->log_power == best->log_power &&
                         t->log_coef < best->log_coef))
                        best = t;
                }
                return best;
            }
        },
        f.node().family);
}

double limit_at_zero_log(const ScalarFunction& f) {
    if (f.domain().lo > 0.0) return eval_log(f, std::log(f.domain().lo) + 1e-15);
    auto sign_limit = [](double e) { return e > 0.0 ? -kInf : (e < 0.0 ? kInf : 0.0); };
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PowerFamily>) {
                if (fam.offset > 0.0) return std::log(fam.c0) + fam.a * std::log(fam.offset);
                return std::log(fam.c0) + sign_limit(fam.a);
            } else if constexpr (std::is_same_v<T, PowerLogFamily>) {
                if (fam.offset == 0.0 && fam.shift == 1.0)
                    return std::log(fam.c0) + sign_limit(fam.a + fam.s);
                const double pow_part = fam.offset > 0.0 ? mul0(fam.a, std::log(fam.offset))
                                                         : sign_limit(fam.a);
                const double log_part = fam.shift > 1.0
                                            ? mul0(fam.s, std::log(std::log(fam.shift)))
                                            : sign_limit(fam.s);
                return std::log(fam.c0) + pow_part + log_part;
            } else if constexpr (std::is_same_v<T, TabulatedFamily>) {
                if (fam.x.size() == 1) return fam.log_y[0];
                const double slope = (fam.log_y[1] - fam.log_y[0]) / (fam.log_x[1] - fam.log_x[0]);
                return fam.log_y[0] + sign_limit(slope);
            } else if constexpr (std::is_same_v<T, InverseFamily>) {
                return -kInf;
            } else if constexpr (std::is_same_v<T, ComposeFamily>) {
                const double inner = limit_at_zero_log(fam.inner);
                if (inner == -kInf) return limit_at_zero_log(fam.outer);
                if (std::isfinite(inner)) return eval_log(fam.outer, inner);
                return eval_log(f, -700.0);
            } else if constexpr (std::is_same_v<T, ScaledFamily>) {
                return std::log(fam.factor) + limit_at_zero_log(fam.base);
            } else {
                double best = kInf;
                for (const auto& term : fam.terms) best = std::min(best, limit_at_zero_log(term));
                return best;
            }
        },
        f.node().family);
}

// --- infima -----------------------------------------------------------------

double theta_inf_log(const ScalarFunction& f, double theta, double log_z) {
    if (!(theta > 1.0)) throw ConfigError("theta must be > 1");
    const double w = std::log(theta);
    const double a = log_z - w;
    const double b = log_z + w;
    const Interval& d = f.domain();
    if ((d.lo > 0.0 && a < std::log(d.lo)) || (std::isfinite(d.hi) && b > std::log(d.hi)))
        throw DomainError("theta window escapes the domain of " + describe(f));
    auto at = [&](double x) {
        if (d.lo > 0.0) x = std::max(x, std::nextafter(std::log(d.lo), kInf));
        if (std::isfinite(d.hi)) x = std::min(x, std::nextafter(std::log(d.hi), -kInf));
        return eval_log(f, x);
    };
    switch (monotonicity(f)) {
        case Monotonicity::Increasing:
            return at(a);
        case Monotonicity::Decreasing:
            return at(b);
        case Monotonicity::Constant:
            return at(log_z);
        case Monotonicity::Unknown:
            break;
    }
    if (const auto* t = std::get_if<TabulatedFamily>(&f.node().family)) {
        double best = std::min(at(a), at(b));
        for (double lx : t->log_x)
            if (lx > a && lx < b) best = std::min(best, interp_tabulated_log(*t, lx));
        return best;
    }
    if (const auto* pl = std::get_if<PowerLogFamily>(&f.node().family)) {
        double best = std::min(at(a), at(b));
        for (double c : pl->critical_log_z)
            if (c > a && c < b) best = std::min(best, at(c));
        return best;
    }
    if (const auto* s = std::get_if<ScaledFamily>(&f.node().family))
        return std::log(s->factor) + theta_inf_log(s->base, theta, log_z);
    if (const auto* m = std::get_if<MinFamily>(&f.node().family)) {
        double best = kInf;
        for (const auto& term : m->terms) best = std::min(best, theta_inf_log(term, theta, log_z));
        return best;
    }
    return std::min({window_min(at, a, b, 65), at(a), at(b)});
}

double theta_inf(const ScalarFunction& f, double theta, double z) {
    if (!(theta > 1.0)) throw ConfigError("theta must be > 1");
    if (!(z > 0.0)) throw DomainError("theta_inf: argument must be positive");
    const Interval& d = f.domain();
    if (!d.contains_closed(z / theta, z * theta))
        throw DomainError("theta window escapes the domain of " + describe(f));
    switch (monotonicity(f)) {
        case Monotonicity::Increasing:
            if (d.contains(z / theta)) return eval(f, z / theta);
            break;
        case Monotonicity::Decreasing:
            if (d.contains(z * theta)) return eval(f, z * theta);
            break;
        case Monotonicity::Constant:
            return eval(f, z);
        case Monotonicity::Unknown:
            break;
    }
    return std::exp(theta_inf_log(f, theta, std::log(z)));
}

double radial_inf_q_log(const ScalarFunction& p, double log_r) {
    switch (monotonicity(p)) {
        case Monotonicity::Decreasing:
        case Monotonicity::Constant:
            return eval_log(p, log_r);
        case Monotonicity::Increasing:
            return limit_at_zero_log(p);
        case Monotonicity::Unknown:
            break;
    }
    if (const auto* t = std::get_if<TabulatedFamily>(&p.node().family)) {
        double best = std::min(limit_at_zero_log(p), eval_log(p, log_r));
        for (std::size_t i = 0; i < t->log_x.size(); ++i)
            if (t->log_x[i] < log_r) best = std::min(best, t->log_y[i]);
        return best;
    }
    if (const auto* pl = std::get_if<PowerLogFamily>(&p.node().family)) {
        double best = std::min(limit_at_zero_log(p), eval_log(p, log_r));
        const double lo = p.domain().lo;
        for (double c : pl->critical_log_z)
            if (c < log_r && (lo <= 0.0 || c > std::log(lo))) best = std::min(best, eval_log(p, c));
        return best;
    }
    if (const auto* s = std::get_if<ScaledFamily>(&p.node().family))
        return std::log(s->factor) + radial_inf_q_log(s->base, log_r);
    if (const auto* m = std::get_if<MinFamily>(&p.node().family)) {
        double best = kInf;
        for (const auto& term : m->terms) best = std::min(best, radial_inf_q_log(term, log_r));
        return best;
    }
    // Grid scan over (0, r], log-spaced from far below min(r, 1).
    constexpr int kPoints = 10000;
    double lo = std::min(log_r, 0.0) - 20.0;
    if (p.domain().lo > 0.0) lo = std::max(lo, std::log(p.domain().lo) + 1e-12);
    double best = eval_log(p, log_r);
    for (int i = 0; i < kPoints; ++i) {
        const double x = lo + (log_r - lo) * i / (kPoints - 1);
        best = std::min(best, eval_log(p, x));
    }
    return std::min(best, limit_at_zero_log(p));
}

double radial_inf_q(const ScalarFunction& p, double r) {
    if (!(r > 0.0)) throw DomainError("radial_inf_q: radius must be positive");
    const auto m = monotonicity(p);
    if (m == Monotonicity::Decreasing || m == Monotonicity::Constant) return eval(p, r);
    return std::exp(radial_inf_q_log(p, std::log(r)));
}

std::string describe(const ScalarFunction& f) {
    std::ostringstream os;
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, PowerFamily>) {
                os << "power(c0=" << fam.c0 << ", a=" << fam.a;
                if (fam.offset != 0.0) os << ", offset=" << fam.offset;
                os << ")";
            } else if constexpr (std::is_same_v<T, PowerLogFamily>) {
                os << "power_log(c0=" << fam.c0 << ", a=" << fam.a << ", s=" << fam.s
                   << ", shift=" << fam.shift;
                if (fam.offset != 0.0) os << ", offset=" << fam.offset;
                os << ")";
            } else if constexpr (std::is_same_v<T, TabulatedFamily>) {
                os << "tabulated(" << fam.x.size() << " nodes)";
            } else if constexpr (std::is_same_v<T, InverseFamily>) {
                os << "inverse_of(" << describe(fam.base) << ")";
            } else if constexpr (std::is_same_v<T, ComposeFamily>) {
                os << "compose(" << describe(fam.outer) << ", " << describe(fam.inner) << ")";
            } else if constexpr (std::is_same_v<T, ScaledFamily>) {
                os << fam.factor << "*" << describe(fam.base);
            } else {
                os << "min_of(";
                for (std::size_t i = 0; i < fam.terms.size(); ++i)
                    os << (i ? ", " : "") << describe(fam.terms[i]);
                os << ")";
            }
        },
        f.node().family);
    return os.str();
}

StructureTriple StructureTriple::make(ScalarFunction g, ScalarFunction h, ScalarFunction p_radial,
                                      double theta) {
    if (!(theta > 1.0) || !std::isfinite(theta)) throw ConfigError("theta must be a finite real > 1");
    // Positive infimum on compacts of (0, ∞), checked on a sampled range.
    for (int i = 0; i <= 120; ++i) {
        const double z = std::pow(10.0, -3.0 + 6.0 * i / 120.0);
        for (const auto* fn : {&g, &h}) {
            if (!fn->domain().contains(z)) continue;
            const double v = eval(*fn, z);
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError("structure function " + describe(*fn) +
                                  " is not positive and finite on (0, inf)");
        }
        if (p_radial.domain().contains(z)) {
            const double v = eval(p_radial, z);
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ConfigError("radial weight " + describe(p_radial) + " must be nonnegative");
        }
    }
    return StructureTriple{std::move(g), std::move(h), std::move(p_radial), theta};
}

}  // namespace decaylab
