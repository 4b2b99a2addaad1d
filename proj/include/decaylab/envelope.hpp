#pragma once

// Decay envelope: the G-transform
//     G(m) = (∫_m^∞ (g_θ ζ)^{-1/2} dζ)² + ∫_m^∞ dζ / h_θ(ζ),
// the dyadic budget C ∫_r^{2^k r} ρ q(4ρ) dρ with 4^k r² < t ≤ 4^{k+1} r²,
// and the bound M solving G(M) = budget. Per-step diagnostics compare the
// growth of cylinder suprema between consecutive dyadic radii with the
// spatial weight accumulated over the same annulus.

#include "decaylab/funcs.hpp"

#include <string>
#include <vector>

namespace decaylab {

struct EnvelopeParams {
    double theta = 2.0;
    double c = 1.0;       // calibration constant
    double radius = 1.0;  // probe radius r

    void validate() const;  // throws ConfigError
};

/// Largest j ≥ 0 with 4^j r² < t (0 when t ≤ 4r²).
int dyadic_index(double radius, double t);

/// Radii r_i = 2^i r, i = 0..k, and cylinder suprema m_i (non-decreasing).
struct DyadicLadder {
    std::vector<double> radii;
    std::vector<double> sup_values;
    double time = 0.0;

    /// k is taken from (r, t); sups must hold k + 1 values.
    static DyadicLadder make(double radius, std::vector<double> sups, double t);
};

/// G(m) for a fixed (g, h, θ). Construction checks that both tails converge and
/// throws DivergentTailError otherwise.
class GTransform {
public:
    GTransform(ScalarFunction g, ScalarFunction h, double theta);

    double operator()(double m) const;
    /// G evaluated with m = e^{log_m}; +∞ when a tail integral overflows.
    double at_log(double log_m) const;

    double theta() const noexcept { return theta_; }

private:
    ScalarFunction g_;
    ScalarFunction h_;
    double theta_;
};

double g_transform(const ScalarFunction& g, const ScalarFunction& h, double theta, double m);

double dyadic_budget(const ScalarFunction& p_radial, const EnvelopeParams& params, double t);

struct DecayBound {
    enum class Kind {
        Finite,
        Unbounded,  // budget 0: no information, bound = +∞
        Collapsed   // budget exceeds G(0+): bound = 0
    };
    Kind kind = Kind::Unbounded;
    double value = 0.0;  // +∞ for Unbounded, 0 for Collapsed
    int k = 0;
    double budget = 0.0;
};

DecayBound decay_bound(const GTransform& transform, const ScalarFunction& p_radial,
                       const EnvelopeParams& params, double t);
DecayBound decay_bound(const ScalarFunction& g, const ScalarFunction& h,
                       const ScalarFunction& p_radial, const EnvelopeParams& params, double t);

const char* to_string(DecayBound::Kind kind);

// --- per-step diagnostics -------------------------------------------------------

struct StepEstimate {
    std::string name;
    double lhs = 0.0;   // integral over [m_i, m_{i+1}]
    double rhs = 0.0;   // C times the annulus integral
    double ratio = 0.0; // lhs / rhs
    bool holds = false;
};

enum class StepRegime {
    SteepGrowth,  // m_{i+1} ≥ √θ m_i
    MildGrowth,   // m_{i+1} < √θ m_i
    Skipped       // m_i = 0
};

struct StepReport {
    int index = 0;
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    double inner_sup = 0.0;
    double outer_sup = 0.0;
    StepRegime regime = StepRegime::Skipped;
    std::vector<StepEstimate> estimates;
    bool flat = false;     // m_{i+1} = m_i: every integral vanishes
    bool satisfied = false;
    std::string note;
};

struct LadderReport {
    std::vector<StepReport> steps;
    /// Largest C for which every evaluated step satisfies at least one of its
    /// estimates; +∞ when no step was evaluated.
    double max_consistent_c = 0.0;
};

LadderReport dyadic_diagnostics(const DyadicLadder& ladder, const ScalarFunction& g,
                                const ScalarFunction& h, const ScalarFunction& p_radial,
                                const EnvelopeParams& params);

const char* to_string(StepRegime regime);

}  // namespace decaylab
