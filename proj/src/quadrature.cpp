#include "decaylab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace decaylab::quad {

namespace {

constexpr unsigned kMaxDepth = 24;
// Beyond this u the sum log F(e^u) + u loses its lower-order terms to rounding,
// so the remaining tail is extrapolated from the local power law in u.
constexpr double kFarField = 1e10;

}  // namespace

Estimate integrate(const Integrand& f, double a, double b, double rel_tol) {
    if (a == b) return {};
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, kMaxDepth, rel_tol, &error, &l1);
    return {value, error};
}

Estimate integrate_log_range(const Integrand& log_f, double log_a, double log_b, double rel_tol) {
    auto in_u = [&](double u) { return std::exp(log_f(u) + u); };
    return integrate(in_u, log_a, log_b, rel_tol);
}

Estimate integrate_log_tail(const Integrand& log_f, double log_a, double rel_tol) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto in_u = [&](double u) { return std::exp(log_f(u) + u); };
    if (std::isinf(in_u(log_a))) return {inf, 0.0};

    const double split = std::max(log_a + 1.0, 40.0);
    Estimate near = integrate(in_u, log_a, split, rel_tol);
    if (!std::isfinite(near.value)) return {inf, 0.0};

    const double log_split = std::log(split);
    auto in_w = [&](double w) {
        const double u = split * std::exp(w);
        return std::exp(log_f(u) + u + w + log_split);
    };
    const double w_max = std::log(std::max(kFarField, 10.0 * split) / split);
    Estimate far = integrate(in_w, 0.0, w_max, rel_tol);
    if (!std::isfinite(far.value)) return {inf, 0.0};

    const double end = split * std::exp(w_max);
    const double phi_end = log_f(end) + end;
    double rest = 0.0;
    if (phi_end > -700.0) {
        const double slope = (phi_end - (log_f(end / 10.0) + end / 10.0)) / std::log(10.0);
        if (!(slope < -1.0 - 1e-3)) return {inf, 0.0};
        rest = std::exp(phi_end) * end / (-slope - 1.0);
    }
    return {near.value + far.value + rest, near.error + far.error + 0.01 * rest};
}

}  // namespace decaylab::quad
