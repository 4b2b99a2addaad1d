#include "decaylab/criterion.hpp"

#include "decaylab/errors.hpp"
#include "decaylab/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace decaylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExactTol = 1e-12;
constexpr double kValueTol = 1e-10;

bool near(double a, double b) { return std::fabs(a - b) <= kExactTol * std::max(1.0, std::fabs(b)); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(8);
    os << v;
    return os.str();
}

// Which improper integral of the criterion is being classified.
enum class Kind { Q, G, H };

// Convergence rule for the structure function's tail S ~ ζ^a log^b ζ.
IntegralStatus closed_form_status(Kind kind, double a, double b) {
    switch (kind) {
        case Kind::Q:  // ∫ r q(r) dr diverges iff a > −2, or a = −2 and b ≥ −1
            if (near(a, -2.0)) return b >= -1.0 - kExactTol ? IntegralStatus::Divergent
                                                            : IntegralStatus::Convergent;
            return a > -2.0 ? IntegralStatus::Divergent : IntegralStatus::Convergent;
        case Kind::G:  // ∫ (g ζ)^{-1/2} converges iff σ > 1, or σ = 1 and ν > 2
            if (near(a, 1.0)) return b > 2.0 + kExactTol ? IntegralStatus::Convergent
                                                         : IntegralStatus::Divergent;
            return a > 1.0 ? IntegralStatus::Convergent : IntegralStatus::Divergent;
        case Kind::H:  // ∫ 1/h converges iff b > 1, or b = 1 and c > 1
            if (near(a, 1.0)) return b > 1.0 + kExactTol ? IntegralStatus::Convergent
                                                         : IntegralStatus::Divergent;
            return a > 1.0 ? IntegralStatus::Convergent : IntegralStatus::Divergent;
    }
    return IntegralStatus::Inconclusive;
}

double critical_exponent(Kind kind) { return kind == Kind::Q ? -2.0 : 1.0; }

// Numeric verdict from the fitted exponent: the integrand converges when the
// structure exponent is above critical for g, h and below critical for q.
IntegralStatus numeric_status(Kind kind, double fitted) {
    const double crit = critical_exponent(kind);
    if (std::fabs(fitted - crit) < kCriticalBand) return IntegralStatus::Inconclusive;
    const bool above = fitted > crit;
    if (kind == Kind::Q) return above ? IntegralStatus::Divergent : IntegralStatus::Convergent;
    return above ? IntegralStatus::Convergent : IntegralStatus::Divergent;
}

struct Problem {
    Kind kind;
    std::function<double(double)> log_structure;  // log S(e^u)
    std::function<double(double)> log_integrand;  // log F(e^u) of the integral ∫_1^∞ F
    std::optional<PowerLogTail> tail;
};

IntegralVerdict finish_convergent(const Problem& pb, std::string diagnostic) {
    const quad::Estimate est = quad::integrate_log_tail(pb.log_integrand, 0.0, kValueTol);
    if (!std::isfinite(est.value) || est.value < 0.0)
        return IntegralVerdict::inconclusive(diagnostic + "; quadrature failed to produce a finite value");
    diagnostic += "; value by log-space quadrature (error estimate " + fmt(est.error) + ")";
    return IntegralVerdict::convergent(est.value, std::move(diagnostic));
}

IntegralVerdict classify(const Problem& pb, ClassifyMethod method) {
    const bool closed = method == ClassifyMethod::ClosedForm ||
                        (method == ClassifyMethod::Auto && pb.tail.has_value());
    if (closed) {
        if (!pb.tail)
            return IntegralVerdict::inconclusive("closed form: tail is not of power-log type");
        std::string diag = "closed form: tail exponent " + fmt(pb.tail->power) +
                           ", log exponent " + fmt(pb.tail->log_power);
        const auto status = closed_form_status(pb.kind, pb.tail->power, pb.tail->log_power);
        if (status == IntegralStatus::Divergent) return IntegralVerdict::divergent(std::move(diag));
        return finish_convergent(pb, std::move(diag));
    }

    const auto fit = fit_tail(pb.log_structure);
    if (!fit) return IntegralVerdict::inconclusive("numeric tail fit failed (non-finite samples)");
    if (fit->identically_zero)
        return IntegralVerdict::convergent(0.0, "numeric: structure function vanishes on the tail");
    std::string diag = "numeric tail fit: exponent " + fmt(fit->power) + ", log exponent " +
                       fmt(fit->log_power);
    const auto status = numeric_status(pb.kind, fit->power);
    switch (status) {
        case IntegralStatus::Inconclusive:
            return IntegralVerdict::inconclusive(diag + "; within " + fmt(kCriticalBand) +
                                                 " of the critical exponent " +
                                                 fmt(critical_exponent(pb.kind)));
        case IntegralStatus::Divergent:
            return IntegralVerdict::divergent(std::move(diag));
        case IntegralStatus::Convergent:
            break;
    }
    return finish_convergent(pb, std::move(diag));
}

// q inherits the tail of p when p eventually decreases; otherwise q tends to
// the positive constant inf p (or vanishes identically).
std::optional<PowerLogTail> q_tail(const ScalarFunction& p) {
    auto tail = power_log_tail(p);
    if (!tail) return std::nullopt;
    const bool decreasing = tail->power < 0.0 || (tail->power == 0.0 && tail->log_power < 0.0);
    if (decreasing) return tail;
    const double q1 = radial_inf_q_log(p, 0.0);
    if (q1 == -kInf) return std::nullopt;
    return PowerLogTail{q1, 0.0, 0.0};
}

}  // namespace

IntegralVerdict IntegralVerdict::convergent(double value, std::string diagnostic) {
    return {IntegralStatus::Convergent, value, std::move(diagnostic)};
}
IntegralVerdict IntegralVerdict::divergent(std::string diagnostic) {
    return {IntegralStatus::Divergent, std::nullopt, std::move(diagnostic)};
}
IntegralVerdict IntegralVerdict::inconclusive(std::string diagnostic) {
    return {IntegralStatus::Inconclusive, std::nullopt, std::move(diagnostic)};
}

std::optional<TailFit> fit_tail(const std::function<double(double)>& log_structure) {
    constexpr int kSamples = 24;
    Eigen::MatrixXd design(kSamples, 3);
    Eigen::VectorXd rhs(kSamples);
    int zeros = 0;
    for (int j = 0; j < kSamples; ++j) {
        const double u = 40.0 * std::pow(10.0, static_cast<double>(j) / (kSamples - 1));
        const double v = log_structure(u);
        if (v == -kInf) {
            ++zeros;
            continue;
        }
        if (!std::isfinite(v)) return std::nullopt;
        design.row(j) << 1.0, u, std::log(u);
        rhs(j) = v;
    }
    if (zeros == kSamples) return TailFit{0.0, 0.0, true};
    if (zeros > 0) return std::nullopt;
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
    return TailFit{coef(1), coef(2), false};
}

double g_integrand_log(const ScalarFunction& g, double theta, double log_z) {
    return -0.5 * (theta_inf_log(g, theta, log_z) + log_z);
}

double h_integrand_log(const ScalarFunction& h, double theta, double log_z) {
    return -theta_inf_log(h, theta, log_z);
}

double g_tail_integral(const ScalarFunction& g, double theta, double m) {
    return quad::integrate_log_tail([&](double u) { return g_integrand_log(g, theta, u); },
                                    std::log(m), kValueTol)
        .value;
}

double h_tail_integral(const ScalarFunction& h, double theta, double m) {
    return quad::integrate_log_tail([&](double u) { return h_integrand_log(h, theta, u); },
                                    std::log(m), kValueTol)
        .value;
}

IntegralVerdict classify_q_integral(const ScalarFunction& p_radial, ClassifyMethod method) {
    Problem pb{Kind::Q,
               [&](double u) { return radial_inf_q_log(p_radial, u); },
               [&](double u) { return u + radial_inf_q_log(p_radial, u); },
               q_tail(p_radial)};
    if (method != ClassifyMethod::Numeric && !pb.tail && radial_inf_q_log(p_radial, 0.0) == -kInf)
        return IntegralVerdict::convergent(0.0, "closed form: q vanishes on [1, inf)");
    return classify(pb, method);
}

IntegralVerdict classify_g_integral(const ScalarFunction& g, double theta, ClassifyMethod method) {
    if (!(theta > 1.0)) throw ConfigError("theta must be > 1");
    Problem pb{Kind::G,
               [&](double u) { return theta_inf_log(g, theta, u); },
               [&](double u) { return g_integrand_log(g, theta, u); },
               power_log_tail(g)};
    return classify(pb, method);
}

IntegralVerdict classify_h_integral(const ScalarFunction& h, double theta, ClassifyMethod method) {
    if (!(theta > 1.0)) throw ConfigError("theta must be > 1");
    Problem pb{Kind::H,
               [&](double u) { return theta_inf_log(h, theta, u); },
               [&](double u) { return h_integrand_log(h, theta, u); },
               power_log_tail(h)};
    return classify(pb, method);
}

StabilizationReport stabilization_verdict(const StructureTriple& triple, ClassifyMethod method) {
    StabilizationReport report;
    report.theta = triple.theta;
    report.q_integral = classify_q_integral(triple.p_radial, method);
    report.g_integral = classify_g_integral(triple.g, triple.theta, method);
    report.h_integral = classify_h_integral(triple.h, triple.theta, method);
    const bool holds = report.q_integral.status == IntegralStatus::Divergent &&
                       report.g_integral.status == IntegralStatus::Convergent &&
                       report.h_integral.status == IntegralStatus::Convergent;
    report.verdict = holds ? Verdict::Stabilizes : Verdict::Unknown;
    return report;
}

// --- example families ---------------------------------------------------------

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be > 0");
}

double example21_p_exponent(double alpha, double k, double l) {
    return std::min((l - k) / alpha - 1.0, l);
}

}  // namespace

Example21Result example21_check(double alpha, double mu, double sigma, double k, double l) {
    require_alpha(alpha);
    const bool spatial = std::min(l - k + alpha, l + 2.0) >= 0.0;
    const bool superlinear = sigma > std::max(1.0, alpha + mu);
    return {spatial && superlinear, example21_p_exponent(alpha, k, l)};
}

StructureTriple example21_triple(double alpha, double mu, double sigma, double k, double l,
                                 double p0, double theta) {
    require_alpha(alpha);
    return StructureTriple::make(ScalarFunction::power(1.0, sigma),
                                 ScalarFunction::power(1.0, (sigma - mu) / alpha),
                                 ScalarFunction::spatial(p0, example21_p_exponent(alpha, k, l)),
                                 theta);
}

Example22Result example22_check(double alpha, double k, double s, double l, double m,
                                double sigma, double mu) {
    require_alpha(alpha);
    const double gradient_side = l - k + alpha;
    const double diffusion_side = l + 2.0;
    if (std::fabs(std::min(gradient_side, diffusion_side)) > 1e-12)
        throw ConfigError("example22 requires min{l - k + alpha, l + 2} = 0");
    double gamma;
    if (std::fabs(diffusion_side - gradient_side) <= 1e-12)
        gamma = std::min((m - s) / alpha, m);
    else if (diffusion_side < gradient_side)
        gamma = m;
    else
        gamma = (m - s) / alpha;
    const bool passes = gamma >= -1.0 && sigma > std::max(1.0, alpha + mu);
    return {gamma, passes};
}

StructureTriple example22_triple(double alpha, double k, double s, double l, double m,
                                 double sigma, double mu, double p0, double theta) {
    const auto check = example22_check(alpha, k, s, l, m, sigma, mu);
    return StructureTriple::make(ScalarFunction::power(1.0, sigma),
                                 ScalarFunction::power(1.0, (sigma - mu) / alpha),
                                 ScalarFunction::spatial(p0, -2.0, check.gamma), theta);
}

Example23Result example23_check(double alpha, double mu, double nu, double k, double l) {
    require_alpha(alpha);
    const double am = alpha + mu;
    double threshold;
    if (std::fabs(am - 1.0) <= 1e-12)
        threshold = std::max(2.0, alpha);
    else if (am < 1.0)
        threshold = 2.0;
    else
        threshold = alpha;
    const bool passes = nu > threshold && std::min(l - k + alpha, l + 2.0) >= 0.0;
    return {threshold, passes};
}

StructureTriple example23_triple(double alpha, double mu, double nu, double k, double l,
                                 double p0, double theta) {
    require_alpha(alpha);
    const double sigma = std::max(1.0, alpha + mu);
    return StructureTriple::make(ScalarFunction::power_log(1.0, sigma, nu, 1.0),
                                 ScalarFunction::power_log(1.0, (sigma - mu) / alpha, nu / alpha, 1.0),
                                 ScalarFunction::spatial(p0, example21_p_exponent(alpha, k, l)),
                                 theta);
}

StructureTriple example24_triple(const ScalarFunction& phi, const ScalarFunction& psi,
                                 double epsilon, double theta) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be > 0");
    if (monotonicity(phi) != Monotonicity::Increasing)
        throw ConfigError("phi must be a strictly increasing bijection (" + describe(phi) + ")");
    const auto mpsi = monotonicity(psi);
    if (mpsi != Monotonicity::Increasing && mpsi != Monotonicity::Constant)
        throw ConfigError("psi must be non-decreasing (" + describe(psi) + ")");
    auto h = ScalarFunction::compose(ScalarFunction::inverse_of(phi),
                                     ScalarFunction::scaled_by(epsilon, psi));
    return StructureTriple::make(psi, std::move(h), ScalarFunction::power(epsilon, 0.0, 1.0), theta);
}

StabilizationReport example24_check(const ScalarFunction& phi, const ScalarFunction& psi,
                                    double epsilon, double theta, ClassifyMethod method) {
    return stabilization_verdict(example24_triple(phi, psi, epsilon, theta), method);
}

const char* to_string(IntegralStatus status) {
    switch (status) {
        case IntegralStatus::Convergent:
            return "convergent";
        case IntegralStatus::Divergent:
            return "divergent";
        case IntegralStatus::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

const char* to_string(Verdict verdict) {
    return verdict == Verdict::Stabilizes ? "stabilizes" : "unknown";
}

}  // namespace decaylab
