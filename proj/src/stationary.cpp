#include "decaylab/stationary.hpp"

#include "decaylab/errors.hpp"
#include "parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace decaylab {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 2>;  // (u, u')

constexpr long kMaxSteps = 20'000'000;

std::vector<double> default_output_radii(double r_max) {
    std::vector<double> radii;
    const double near = std::min(r_max, 32.0);
    for (int i = 0; i <= 320; ++i) radii.push_back(near * i / 320.0);
    for (double r = near * 1.02; r < r_max; r *= 1.02) radii.push_back(r);
    if (radii.back() < r_max) radii.push_back(r_max);
    return radii;
}

}  // namespace

const char* to_string(ShootOutcome outcome) {
    switch (outcome) {
        case ShootOutcome::BoundedPositive:
            return "bounded_positive";
        case ShootOutcome::HitsZero:
            return "hits_zero";
        case ShootOutcome::Blowup:
            return "blowup";
    }
    return "blowup";
}

ShootResult shoot(const EquationSpec& spec, double A, double r_max, const ShootOptions& options) {
    spec.validate();
    if (!(A > 0.0) || !std::isfinite(A)) throw ConfigError("initial value A must be > 0");
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ConfigError("R_max must be > 0");
    if (!(options.rtol > 0.0)) throw ConfigError("rtol must be > 0");
    if (!(options.blowup_factor > 1.0)) throw ConfigError("blow-up factor must be > 1");

    std::vector<double> radii = options.output_radii.empty() ? default_output_radii(r_max)
                                                             : options.output_radii;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0.0) || radii[i] > r_max)
            throw ConfigError("output radii must lie in [0, R_max]");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw ConfigError("output radii must be strictly increasing");
    }

    const double n = spec.n;
    auto system = [&](const State& x, State& dxdt, double r) {
        dxdt[0] = x[1];
        const double source = spec.absorption(r, x[0]) - spec.gradient_term(r, x[0], x[1]);
        if (r == 0.0)
            dxdt[1] = source / n;
        else
            dxdt[1] = source - (n - 1.0) / r * x[1];
    };

    ShootResult out;
    out.initial_value = A;
    const double limit = options.blowup_factor * A;
    auto stepper = ode::make_controlled(options.rtol * A, options.rtol,
                                        ode::runge_kutta_dopri5<State>());
    State x{A, 0.0};
    double r = 0.0;
    double h_free = 1e-3 * std::min(1.0, r_max);
    std::size_t next = 0;
    auto flush = [&] {
        while (next < radii.size() && radii[next] <= r) {
            if (radii[next] == r) out.profile.push_back({r, x[0], x[1]});
            ++next;
        }
    };
    flush();

    auto finish = [&](ShootOutcome outcome, double radius, double u, double du) {
        out.outcome = outcome;
        out.event_radius = radius;
        out.terminal_value = u;
        out.terminal_slope = du;
        return out;
    };

    for (long steps = 0; r < r_max; ++steps) {
        if (steps > kMaxSteps) return finish(ShootOutcome::Blowup, r, x[0], x[1]);
        const double target = next < radii.size() ? radii[next] : r_max;
        const bool clipped = h_free >= target - r;
        double h = clipped ? target - r : h_free;
        const State before = x;
        const double r_before = r;
        const auto res = stepper.try_step(system, x, r, h);
        if (res == ode::fail) {
            h_free = h;
            if (h_free < 1e-14 * std::max(1.0, r))
                return finish(ShootOutcome::Blowup, r, x[0], x[1]);
            continue;
        }
        if (clipped)
            r = target;
        else
            h_free = h;
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
            return finish(ShootOutcome::Blowup, r_before, before[0], before[1]);
        if (x[0] <= 0.0) {
            const double w = before[0] / (before[0] - x[0]);
            const double rc = r_before + w * (r - r_before);
            return finish(ShootOutcome::HitsZero, rc, 0.0, before[1] + w * (x[1] - before[1]));
        }
        if (std::fabs(x[0]) > limit) return finish(ShootOutcome::Blowup, r, x[0], x[1]);
        flush();
    }
    return finish(ShootOutcome::BoundedPositive, r_max, x[0], x[1]);
}

std::optional<Witness> find_witness(const EquationSpec& spec, double a_lo, double a_hi,
                                    double r_max, const WitnessOptions& options) {
    spec.validate();
    if (spec.n < 3) throw ConfigError("witness search requires n >= 3");
    if (options.scan_points < 2) throw ConfigError("witness scan needs at least 2 points");
    if (!(a_lo > 0.0) || !(a_hi > a_lo) || !std::isfinite(a_hi)) return std::nullopt;

    const int count = options.scan_points;
    std::vector<double> amplitudes(count);
    for (int i = 0; i < count; ++i)
        amplitudes[i] = std::exp(std::log(a_lo) + (std::log(a_hi) - std::log(a_lo)) * i / (count - 1));

    const auto shots = detail::parallel_map<ShootResult>(
        amplitudes.size(), options.jobs,
        [&](std::size_t i) { return shoot(spec, amplitudes[i], r_max, options.shoot); });

    for (std::size_t i = 0; i < shots.size(); ++i) {
        const auto& s = shots[i];
        if (s.outcome != ShootOutcome::BoundedPositive) continue;
        const double plateau = std::fabs(s.terminal_slope) * s.event_radius;
        if (plateau < options.plateau_tolerance * s.terminal_value)
            return Witness{amplitudes[i], s};
    }
    return std::nullopt;
}

FieldState witness_on_grid(const EquationSpec& spec, double A, const RadialGrid& grid,
                           double rtol) {
    ShootOptions opt;
    opt.rtol = rtol;
    for (int j = 0; j < grid.nodes(); ++j) opt.output_radii.push_back(grid.node(j));
    const auto shot = shoot(spec, A, grid.radius, opt);
    if (shot.outcome != ShootOutcome::BoundedPositive)
        throw DomainError(std::string("shot from A is not bounded positive on the grid (") +
                          to_string(shot.outcome) + ")");
    FieldState state;
    for (const auto& p : shot.profile) state.values.push_back(p.u);
    return state;
}

}  // namespace decaylab
