#include "decaylab/envelope.hpp"

#include "decaylab/criterion.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decaylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-12;
constexpr double kLogMin = -700.0;
constexpr double kLogMax = 700.0;

double log_q(const ScalarFunction& p, double rho) { return radial_inf_q_log(p, std::log(rho)); }

}  // namespace

void EnvelopeParams::validate() const {
    if (!(theta > 1.0) || !std::isfinite(theta)) throw ConfigError("theta must be > 1");
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("calibration constant C must be > 0");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("probe radius must be > 0");
}

int dyadic_index(double radius, double t) {
    if (!(radius > 0.0)) throw ConfigError("probe radius must be > 0");
    if (!(t > 0.0)) throw ConfigError("time must be > 0");
    int k = 0;
    double scale = 4.0 * radius * radius;
    while (scale < t && k < 1000) {
        ++k;
        scale *= 4.0;
    }
    return k;
}

DyadicLadder DyadicLadder::make(double radius, std::vector<double> sups, double t) {
    const int k = dyadic_index(radius, t);
    if (static_cast<int>(sups.size()) != k + 1)
        throw ConfigError("ladder needs " + std::to_string(k + 1) + " suprema for t = " +
                          std::to_string(t) + ", got " + std::to_string(sups.size()));
    for (std::size_t i = 0; i < sups.size(); ++i) {
        if (!(sups[i] >= 0.0) || !std::isfinite(sups[i]))
            throw ConfigError("ladder suprema must be finite and nonnegative");
        if (i > 0 && sups[i] < sups[i - 1])
            throw ConfigError("ladder suprema must be non-decreasing");
    }
    DyadicLadder ladder;
    ladder.time = t;
    ladder.sup_values = std::move(sups);
    for (int i = 0; i <= k; ++i) ladder.radii.push_back(std::ldexp(radius, i));
    return ladder;
}

GTransform::GTransform(ScalarFunction g, ScalarFunction h, double theta)
    : g_(std::move(g)), h_(std::move(h)), theta_(theta) {
    if (!(theta > 1.0)) throw ConfigError("theta must be > 1");
    const auto gv = classify_g_integral(g_, theta_);
    if (gv.status != IntegralStatus::Convergent)
        throw DivergentTailError("g-tail integral is " + std::string(to_string(gv.status)) + ": " +
                                 gv.diagnostic);
    const auto hv = classify_h_integral(h_, theta_);
    if (hv.status != IntegralStatus::Convergent)
        throw DivergentTailError("h-tail integral is " + std::string(to_string(hv.status)) + ": " +
                                 hv.diagnostic);
}

double GTransform::at_log(double log_m) const {
    const double gi = quad::integrate_log_tail(
                          [&](double u) { return g_integrand_log(g_, theta_, u); }, log_m, kTol)
                          .value;
    const double hi = quad::integrate_log_tail(
                          [&](double u) { return h_integrand_log(h_, theta_, u); }, log_m, kTol)
                          .value;
    return gi * gi + hi;
}

double GTransform::operator()(double m) const {
    if (!(m > 0.0)) throw DomainError("G-transform needs m > 0");
    return at_log(std::log(m));
}

double g_transform(const ScalarFunction& g, const ScalarFunction& h, double theta, double m) {
    return GTransform(g, h, theta)(m);
}

double dyadic_budget(const ScalarFunction& p_radial, const EnvelopeParams& params, double t) {
    params.validate();
    const int k = dyadic_index(params.radius, t);
    if (k == 0) return 0.0;
    const double lo = std::log(params.radius);
    const double hi = lo + k * std::log(2.0);
    const double log4 = std::log(4.0);
    const auto est = quad::integrate(
        [&](double v) { return std::exp(2.0 * v + radial_inf_q_log(p_radial, v + log4)); }, lo,
        hi, kTol);
    return params.c * est.value;
}

DecayBound decay_bound(const GTransform& transform, const ScalarFunction& p_radial,
                       const EnvelopeParams& params, double t) {
    DecayBound out;
    out.k = dyadic_index(params.radius, t);
    out.budget = dyadic_budget(p_radial, params, t);
    if (!(out.budget > 0.0)) {
        out.kind = DecayBound::Kind::Unbounded;
        out.value = kInf;
        return out;
    }
    const double target = out.budget;
    // Bracket the root in log m: G(e^lo) ≥ target > G(e^hi).
    double lo = 0.0, hi = 0.0;
    if (transform.at_log(0.0) >= target) {
        double step = 1.0;
        hi = step;
        while (transform.at_log(hi) >= target) {
            lo = hi;
            if (hi >= kLogMax) {
                out.kind = DecayBound::Kind::Unbounded;
                out.value = kInf;
                return out;
            }
            step *= 2.0;
            hi = std::min(hi + step, kLogMax);
        }
    } else {
        double step = 1.0;
        lo = -step;
        while (transform.at_log(lo) < target) {
            hi = lo;
            if (lo <= kLogMin) {
                out.kind = DecayBound::Kind::Collapsed;
                out.value = 0.0;
                return out;
            }
            step *= 2.0;
            lo = std::max(lo - step, kLogMin);
        }
    }
    while (hi - lo > 1e-15 * std::max(1.0, std::fabs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (transform.at_log(mid) >= target)
            lo = mid;
        else
            hi = mid;
    }
    out.kind = DecayBound::Kind::Finite;
    out.value = std::exp(0.5 * (lo + hi));
    return out;
}

DecayBound decay_bound(const ScalarFunction& g, const ScalarFunction& h,
                       const ScalarFunction& p_radial, const EnvelopeParams& params, double t) {
    params.validate();
    return decay_bound(GTransform(g, h, params.theta), p_radial, params, t);
}

const char* to_string(DecayBound::Kind kind) {
    switch (kind) {
        case DecayBound::Kind::Finite:
            return "finite";
        case DecayBound::Kind::Unbounded:
            return "unbounded";
        case DecayBound::Kind::Collapsed:
            return "collapsed";
    }
    return "unbounded";
}

const char* to_string(StepRegime regime) {
    switch (regime) {
        case StepRegime::SteepGrowth:
            return "steep";
        case StepRegime::MildGrowth:
            return "mild";
        case StepRegime::Skipped:
            return "skipped";
    }
    return "skipped";
}

// --- per-step diagnostics -------------------------------------------------------

namespace {

double value_range_integral(const std::function<double(double)>& log_integrand, double lo,
                            double hi) {
    if (hi <= lo) return 0.0;
    return quad::integrate_log_range(log_integrand, std::log(lo), std::log(hi), kTol).value;
}

StepEstimate make_estimate(std::string name, double lhs, double base_rhs, double c) {
    StepEstimate e;
    e.name = std::move(name);
    e.lhs = lhs;
    e.rhs = c * base_rhs;
    e.ratio = e.rhs > 0.0 ? e.lhs / e.rhs : kInf;
    e.holds = e.ratio >= 1.0;
    return e;
}

}  // namespace

LadderReport dyadic_diagnostics(const DyadicLadder& ladder, const ScalarFunction& g,
                                const ScalarFunction& h, const ScalarFunction& p_radial,
                                const EnvelopeParams& params) {
    params.validate();
    if (ladder.radii.size() != ladder.sup_values.size())
        throw ConfigError("ladder radii and suprema differ in length");
    const double theta = params.theta;
    const double root_theta = std::sqrt(theta);

    LadderReport report;
    report.max_consistent_c = kInf;
    for (std::size_t i = 0; i + 1 < ladder.radii.size(); ++i) {
        StepReport step;
        step.index = static_cast<int>(i);
        step.inner_radius = ladder.radii[i];
        step.outer_radius = ladder.radii[i + 1];
        step.inner_sup = ladder.sup_values[i];
        step.outer_sup = ladder.sup_values[i + 1];
        const double r0 = step.inner_radius, r1 = step.outer_radius;
        const double m0 = step.inner_sup, m1 = step.outer_sup;

        if (!(m0 > 0.0)) {
            step.regime = StepRegime::Skipped;
            step.note = "inner supremum is 0; integrals from 0 may diverge";
            report.steps.push_back(std::move(step));
            continue;
        }
        step.flat = m1 == m0;

        const double weight_linear = quad::integrate(
            [&](double rho) { return rho * std::exp(log_q(p_radial, 2.0 * rho)); }, r0, r1, kTol)
                                         .value;
        double best_c = 0.0;
        if (m1 >= root_theta * m0) {
            step.regime = StepRegime::SteepGrowth;
            const double weight_sqrt = quad::integrate(
                [&](double rho) { return std::exp(0.5 * log_q(p_radial, 2.0 * rho)); }, r0, r1,
                kTol)
                                           .value;
            const double g_side = value_range_integral(
                [&](double u) { return g_integrand_log(g, theta, u); }, m0, m1);
            const double h_side = value_range_integral(
                [&](double u) { return h_integrand_log(h, theta, u); }, m0, m1);
            step.estimates.push_back(make_estimate("g_root_kernel", g_side, weight_sqrt, params.c));
            step.estimates.push_back(make_estimate("h_kernel", h_side, weight_linear, params.c));
            best_c = std::max(g_side / weight_sqrt, h_side / weight_linear);
        } else {
            step.regime = StepRegime::MildGrowth;
            const double g_side = value_range_integral(
                [&](double u) { return -theta_inf_log(g, root_theta, u); }, m0, m1);
            const double h_side = value_range_integral(
                [&](double u) { return -theta_inf_log(h, root_theta, u); }, m0, m1);
            step.estimates.push_back(make_estimate("g_reciprocal", g_side, weight_linear, params.c));
            step.estimates.push_back(make_estimate("h_reciprocal", h_side, weight_linear, params.c));
            best_c = std::max(g_side, h_side) / weight_linear;
        }
        step.satisfied = std::any_of(step.estimates.begin(), step.estimates.end(),
                                     [](const StepEstimate& e) { return e.holds; });
        if (step.flat) step.note = "flat step: suprema equal, every integral vanishes";
        report.max_consistent_c = std::min(report.max_consistent_c, best_c);
        report.steps.push_back(std::move(step));
    }
    return report;
}

}  // namespace decaylab
