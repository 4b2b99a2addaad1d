#pragma once

// Integral criterion for stabilization to zero.
//
// A solution stabilizes (uniformly on compacts) when
//     ∫_1^∞ r q(r) dr = ∞,
//     ∫_1^∞ (g_θ(ζ) ζ)^{-1/2} dζ < ∞,
//     ∫_1^∞ dζ / h_θ(ζ) < ∞
// for some θ > 1. The condition is sufficient only, so a failure maps to
// Verdict::Unknown and never to "does not stabilize".

#include "decaylab/funcs.hpp"

#include <functional>
#include <optional>
#include <string>

namespace decaylab {

enum class IntegralStatus { Convergent, Divergent, Inconclusive };

struct IntegralVerdict {
    IntegralStatus status = IntegralStatus::Inconclusive;
    std::optional<double> value;  // present iff Convergent
    std::string diagnostic;

    static IntegralVerdict convergent(double value, std::string diagnostic);
    static IntegralVerdict divergent(std::string diagnostic);
    static IntegralVerdict inconclusive(std::string diagnostic);
};

enum class Verdict { Stabilizes, Unknown };

struct StabilizationReport {
    IntegralVerdict q_integral;
    IntegralVerdict g_integral;
    IntegralVerdict h_integral;
    Verdict verdict = Verdict::Unknown;
    double theta = 2.0;
};

/// Auto uses exponent arithmetic whenever the tail is exactly power-log and
/// falls back to a numeric tail fit otherwise. ClosedForm and Numeric force
/// one route (ClosedForm reports Inconclusive when no algebraic tail exists).
enum class ClassifyMethod { Auto, ClosedForm, Numeric };

/// Numeric tail fits whose exponent lies within this distance of the critical
/// value are refused as Inconclusive.
inline constexpr double kCriticalBand = 0.05;

/// Exponents of a least-squares fit log S(e^u) ≈ c + power·u + log_power·log u
/// over u ∈ [40, 400].
struct TailFit {
    double power = 0.0;
    double log_power = 0.0;
    bool identically_zero = false;
};
std::optional<TailFit> fit_tail(const std::function<double(double)>& log_structure);

/// log of the integrands at ζ = e^L.
double g_integrand_log(const ScalarFunction& g, double theta, double log_z);
double h_integrand_log(const ScalarFunction& h, double theta, double log_z);

/// Tail integrals ∫_m^∞ of the g- and h-integrands (no convergence check).
double g_tail_integral(const ScalarFunction& g, double theta, double m);
double h_tail_integral(const ScalarFunction& h, double theta, double m);

IntegralVerdict classify_q_integral(const ScalarFunction& p_radial,
                                    ClassifyMethod method = ClassifyMethod::Auto);
IntegralVerdict classify_g_integral(const ScalarFunction& g, double theta,
                                    ClassifyMethod method = ClassifyMethod::Auto);
IntegralVerdict classify_h_integral(const ScalarFunction& h, double theta,
                                    ClassifyMethod method = ClassifyMethod::Auto);

StabilizationReport stabilization_verdict(const StructureTriple& triple,
                                      ClassifyMethod method = ClassifyMethod::Auto);

// --- worked example families ---------------------------------------------------

/// u_t = Δu + b(x,u,Du) − c(x)|u|^{σ−1}u with |b| ≤ b0(1+|x|)^k ζ^μ |ξ|^α, c ≥ c0(1+|x|)^l.
struct Example21Result {
    bool passes = false;
    double p_exponent = 0.0;
};
Example21Result example21_check(double alpha, double mu, double sigma, double k, double l);
StructureTriple example21_triple(double alpha, double mu, double sigma, double k, double l,
                                 double p0 = 1.0, double theta = 2.0);

/// Critical spatial exponents, min{l−k+α, l+2} = 0, with log weights of orders s and m.
struct Example22Result {
    double gamma = 0.0;
    bool passes = false;
};
Example22Result example22_check(double alpha, double k, double s, double l, double m,
                                double sigma, double mu);
StructureTriple example22_triple(double alpha, double k, double s, double l, double m,
                                 double sigma, double mu, double p0 = 1.0, double theta = 2.0);

/// Critical σ = max{1, α+μ} with absorption log^ν(1+|u|).
struct Example23Result {
    double threshold = 0.0;
    bool passes = false;
};
Example23Result example23_check(double alpha, double mu, double nu, double k, double l);
StructureTriple example23_triple(double alpha, double mu, double nu, double k, double l,
                                 double p0 = 1.0, double theta = 2.0);

/// u_t = Δu + b(x,Du) − c(x,u) with |b| ≤ φ(|ξ|), c·sign ζ ≥ ψ(|ζ|):
/// g = ψ, h = φ^{-1}(ε ψ), p ≡ ε.
StructureTriple example24_triple(const ScalarFunction& phi, const ScalarFunction& psi,
                                 double epsilon, double theta);
StabilizationReport example24_check(const ScalarFunction& phi, const ScalarFunction& psi,
                                    double epsilon, double theta,
                                    ClassifyMethod method = ClassifyMethod::Auto);

const char* to_string(IntegralStatus status);
const char* to_string(Verdict verdict);

}  // namespace decaylab
