#pragma once

// Radial stationary solutions by shooting:
//     u'' + (n−1)/r u' + b(r, u, u') − c(r, u) = 0,  u(0) = A, u'(0) = 0.
// A bounded positive profile is a t-independent solution that does not decay,
// i.e. a witness against stabilization.

#include "decaylab/pde.hpp"

#include <optional>
#include <vector>

namespace decaylab {

enum class ShootOutcome { BoundedPositive, HitsZero, Blowup };

struct ProfilePoint {
    double r = 0.0;
    double u = 0.0;
    double du = 0.0;
};

struct ShootOptions {
    double rtol = 1e-10;
    double blowup_factor = 1e6;  // |u| > factor·A counts as blow-up
    /// Radii at which the profile is recorded (sorted, within [0, R_max]);
    /// empty selects a default mesh.
    std::vector<double> output_radii;
};

struct ShootResult {
    ShootOutcome outcome = ShootOutcome::BoundedPositive;
    double initial_value = 0.0;
    double event_radius = 0.0;    // crossing or blow-up radius; R_max when bounded
    double terminal_value = 0.0;  // u at event_radius
    double terminal_slope = 0.0;
    std::vector<ProfilePoint> profile;
};

ShootResult shoot(const EquationSpec& spec, double A, double r_max,
                  const ShootOptions& options = {});

struct WitnessOptions {
    int scan_points = 32;
    double plateau_tolerance = 1e-6;  // |u'(R)|·R < tol·u(R)
    ShootOptions shoot;
    int jobs = 0;  // 0: hardware concurrency
};

/// R_max used when none is configured. A plateau needs |u'(R)|·R ≪ u(R); with
/// integrable coefficients u' decays like R^{1−n}, so the radius must be large.
inline constexpr double kDefaultWitnessRadius = 1e5;

struct Witness {
    double initial_value = 0.0;
    ShootResult shot;
};

/// Scans A log-uniformly over [a_lo, a_hi] and returns the bounded positive
/// profile with a terminal plateau at the smallest A, or nullopt. Requires n ≥ 3.
std::optional<Witness> find_witness(const EquationSpec& spec, double a_lo, double a_hi,
                                    double r_max = kDefaultWitnessRadius,
                                    const WitnessOptions& options = {});

/// Samples the shot from initial value A at the grid nodes.
FieldState witness_on_grid(const EquationSpec& spec, double A, const RadialGrid& grid,
                           double rtol = 1e-10);

const char* to_string(ShootOutcome outcome);

}  // namespace decaylab
