#pragma once

#include <functional>

namespace decaylab::quad {

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (15/31) on a finite interval, relative tolerance.
Estimate integrate(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// ∫_{e^a}^{e^b} F(ζ) dζ where log_f(L) = log F(e^L). Works in u = log ζ so the
/// range may span hundreds of decades.
Estimate integrate_log_range(const Integrand& log_f, double log_a, double log_b,
                             double rel_tol = 1e-12);

/// ∫_{e^a}^{∞} F(ζ) dζ with log_f as above. The half-line is covered by a
/// Gauss-Kronrod segment u ∈ [a, U] followed by u = U·e^w up to u = 1e10,
/// which turns algebraic decay in u (log-critical tails) into exponential decay;
/// the rest is extrapolated from the local power law in u.
/// Returns +∞ when the integrand overflows or the far tail is not summable.
Estimate integrate_log_tail(const Integrand& log_f, double log_a, double rel_tol = 1e-12);

}  // namespace decaylab::quad
