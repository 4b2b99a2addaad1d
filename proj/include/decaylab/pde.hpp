#pragma once

// Radial finite-volume solver for u_t = Δu + b(r, u, u_r) − c(r, u) on the ball
// B_R ⊂ ℝⁿ with a homogeneous Neumann wall at R. Diffusion is implicit
// (θ-scheme, tridiagonal solve), the reaction is explicit.

#include "decaylab/funcs.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace decaylab {

/// b = sign·sign(u)·b0 (1+r)^k log^s(2+r) (u²+δ²)^{μ/2} |u_r|^α,
/// absorption = c0 (1+r)^l log^m(2+r) |u|^{σ−1} u log^ν(1+|u|).
struct PowerTerms {
    double b0 = 0.0;
    double k = 0.0;
    double s = 0.0;
    double mu = 0.0;
    double alpha = 1.0;
    double sign = 1.0;
    double c0 = 1.0;  // 0 switches the absorption off
    double l = 0.0;
    double m = 0.0;
    double sigma = 1.0;
    double nu = 0.0;
};

/// b = sign·sign(u)·φ(|u_r|), absorption = ψ(|u|)·sign(u).
struct FunctionTerms {
    ScalarFunction phi;
    ScalarFunction psi;
    double sign = 1.0;
};

struct EquationSpec {
    int n = 1;
    std::variant<PowerTerms, FunctionTerms> terms = PowerTerms{};

    void validate() const;  // throws ConfigError

    double gradient_term(double r, double u, double du) const;
    double absorption(double r, double u) const;
    double reaction(double r, double u, double du) const {
        return gradient_term(r, u, du) - absorption(r, u);
    }
};

/// Regularization of |u|^μ near u = 0.
inline constexpr double kPowerRegularization = 1e-12;

struct RadialGrid {
    double radius = 1.0;
    int cells = 16;

    static RadialGrid make(double radius, int cells);
    double dr() const noexcept { return radius / cells; }
    double node(int j) const noexcept { return radius * j / cells; }
    int nodes() const noexcept { return cells + 1; }
    /// Index of the last node with r_j ≤ r.
    int last_node_within(double r) const;
};

struct FieldState {
    std::vector<double> values;
    double time = 0.0;
};

FieldState constant_state(const RadialGrid& grid, double value);

struct DecaySample {
    double time = 0.0;
    double sup_abs = 0.0;
    double sup_pos = 0.0;
};

struct DecayCurve {
    double probe = 1.0;
    std::vector<DecaySample> samples;
};

/// Largest admissible explicit step: min(0.5 / max|∂R/∂u|, dr / max|∂R/∂u_r|).
double stable_dt(const FieldState& state, const EquationSpec& spec, const RadialGrid& grid);

/// One step of size dt. implicitness 1 is backward Euler, 0.5 Crank–Nicolson.
/// Throws StabilityViolation when dt exceeds the stable bound and
/// BlowupDetected when the result is non-finite or exceeds 1e150.
FieldState step_imex(const FieldState& state, const EquationSpec& spec, const RadialGrid& grid,
                     double dt, double implicitness = 1.0);

struct SimulationOptions {
    double t_end = 1.0;
    double dt = 1e-3;  // upper bound; each step uses min(dt, 0.9 × stable bound)
    double probe = 1.0;
    int sample_every = 1;
    std::vector<double> snapshot_times;
    double implicitness = 1.0;
    bool record_history = false;  // running suprema per node for cylinder_sup
};

struct SimulationResult {
    DecayCurve curve;
    std::vector<FieldState> snapshots;
    FieldState final_state;
    long steps = 0;
    double min_dt = 0.0;
    // sampled times and, per time, max_{i ≤ j} u_i for every node j
    std::vector<double> history_times;
    std::vector<std::vector<double>> history_prefix_max;
};

/// Runs step_imex from initial.time to t_end. Throws BlowupDetected.
SimulationResult simulate(const EquationSpec& spec, const RadialGrid& grid,
                          const FieldState& initial, const SimulationOptions& options);

/// sup of u over B_radius × [t0, t1] from a recorded history; nullopt when no
/// sample falls in the window.
std::optional<double> cylinder_sup(const SimulationResult& result, const RadialGrid& grid,
                                   double radius, double t0, double t1);

/// sup over nodes j = 0..N−1 of |Δ_h u + b − c| (the outer wall node is excluded).
double residual(const FieldState& state, const EquationSpec& spec, const RadialGrid& grid);

/// Σ V_j u_j with the control volumes of the scheme; conserved by pure diffusion.
double discrete_mass(const FieldState& state, const RadialGrid& grid, int n);

}  // namespace decaylab
