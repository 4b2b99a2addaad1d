#include "doctest.h"

#include "decaylab/errors.hpp"
#include "decaylab/pde.hpp"

#include <cmath>
#include <random>

using namespace decaylab;

namespace {

EquationSpec power_spec(int n, PowerTerms terms) {
    EquationSpec spec;
    spec.n = n;
    spec.terms = terms;
    return spec;
}

PowerTerms absorption_only(double sigma, double c0 = 1.0, double l = 0.0) {
    PowerTerms t;
    t.c0 = c0;
    t.l = l;
    t.sigma = sigma;
    return t;
}

FieldState gaussian(const RadialGrid& grid, double amplitude) {
    FieldState s;
    for (int j = 0; j < grid.nodes(); ++j) {
        const double r = grid.node(j);
        s.values.push_back(amplitude * std::exp(-r * r));
    }
    return s;
}

double heat_error(int cells) {
    const double pi = std::acos(-1.0);
    const auto grid = RadialGrid::make(1.0, cells);
    const auto spec = power_spec(1, absorption_only(1.0, 0.0));
    FieldState init;
    for (int j = 0; j < grid.nodes(); ++j) init.values.push_back(std::cos(pi * grid.node(j)));
    SimulationOptions opt;
    opt.t_end = 0.1;
    opt.dt = 1e-4;
    opt.probe = 0.25;
    opt.implicitness = 0.5;
    opt.sample_every = 1000000;
    const auto res = simulate(spec, grid, init, opt);
    const double decay = std::exp(-pi * pi * 0.1);
    double err = 0.0;
    for (int j = 0; j < grid.nodes(); ++j)
        err = std::max(err, std::fabs(res.final_state.values[j] - decay * init.values[j]));
    return err / decay;
}

}  // namespace

TEST_CASE("heat eigenfunction with Neumann ends") {
    const double e256 = heat_error(256);
    const double e512 = heat_error(512);
    CHECK(e256 < 1e-3);
    CHECK(e256 / e512 >= 3.5);
}

TEST_CASE("zero data stays zero") {
    const auto grid = RadialGrid::make(8.0, 64);
    PowerTerms t = absorption_only(2.0);
    t.b0 = 1.0;
    t.alpha = 1.5;
    const auto spec = power_spec(3, t);
    SimulationOptions opt;
    opt.t_end = 1.0;
    opt.dt = 1e-2;
    opt.probe = 2.0;
    const auto res = simulate(spec, grid, constant_state(grid, 0.0), opt);
    for (const auto& s : res.curve.samples) CHECK(s.sup_abs == 0.0);
    for (double v : res.final_state.values) CHECK(v == 0.0);
}

TEST_CASE("one step from constant data matches the explicit reaction to second order") {
    const auto grid = RadialGrid::make(8.0, 32);
    const auto spec = power_spec(1, absorption_only(2.0, 1.0, -1.0));
    const double A = 0.7;
    auto deviation = [&](double dt) {
        const auto step = step_imex(constant_state(grid, A), spec, grid, dt);
        // oracle: fully explicit Euler with 100 substeps
        std::vector<double> u(grid.nodes(), A);
        const double h = dt / 100.0, dr = grid.dr();
        for (int it = 0; it < 100; ++it) {
            std::vector<double> next(u.size());
            for (int j = 0; j < grid.nodes(); ++j) {
                const double left = j == 0 ? u[1] : u[j - 1];
                const double right = j == grid.cells ? u[j - 1] : u[j + 1];
                const double lap = (left - 2 * u[j] + right) / (dr * dr);
                next[j] = u[j] + h * (lap - spec.absorption(grid.node(j), u[j]));
            }
            u = next;
        }
        double err = 0.0;
        for (int j = 0; j < grid.nodes(); ++j) {
            err = std::max(err, std::fabs(step.values[j] - u[j]));
            CHECK(step.values[j] ==
                  doctest::Approx(A - dt * spec.absorption(grid.node(j), A)).epsilon(1e-4));
        }
        return err;
    };
    const double e1 = deviation(2e-3);
    const double e2 = deviation(1e-3);
    CHECK(e1 / e2 > 3.0);
}

TEST_CASE("exact ODE reduction for constant data") {
    const auto grid = RadialGrid::make(8.0, 128);
    const auto spec = power_spec(1, absorption_only(3.0));
    SimulationOptions opt;
    opt.t_end = 5.0;
    opt.dt = 1e-3;
    opt.probe = 1.0;
    opt.snapshot_times = {0.5, 1.0, 5.0};
    opt.sample_every = 100;
    const auto res = simulate(spec, grid, constant_state(grid, 2.0), opt);
    REQUIRE(res.snapshots.size() == 3);
    for (const auto& s : res.curve.samples) {
        const double exact = 1.0 / std::sqrt(0.25 + 2.0 * s.time);
        CHECK(std::fabs(s.sup_abs - exact) / exact < 1e-2);
    }
    for (std::size_t i = 1; i < res.curve.samples.size(); ++i)
        CHECK(res.curve.samples[i].time > res.curve.samples[i - 1].time);
}

TEST_CASE("mass conservation for pure diffusion") {
    const auto grid = RadialGrid::make(6.0, 96);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uv(0, 1);
    for (int n : {1, 2, 3, 5}) {
        const auto spec = power_spec(n, absorption_only(1.0, 0.0));
        FieldState s;
        for (int j = 0; j < grid.nodes(); ++j) s.values.push_back(uv(rng));
        double mass = discrete_mass(s, grid, n);
        for (int it = 0; it < 20; ++it) {
            s = step_imex(s, spec, grid, 0.05);
            const double next = discrete_mass(s, grid, n);
            CHECK(std::fabs(next - mass) / mass < 1e-10);
            mass = next;
        }
    }
}

TEST_CASE("positivity without the gradient term") {
    const auto grid = RadialGrid::make(16.0, 128);
    const auto spec = power_spec(2, absorption_only(2.0, 3.0, 0.5));
    SimulationOptions opt;
    opt.t_end = 3.0;
    opt.dt = 0.05;
    opt.probe = 1.0;
    opt.record_history = true;
    const auto res = simulate(spec, grid, gaussian(grid, 5.0), opt);
    for (const auto& s : res.curve.samples) CHECK(s.sup_pos >= 0.0);
    for (const auto& row : res.history_prefix_max) CHECK(row.front() >= -1e-10);
    for (double v : res.final_state.values) CHECK(v >= -1e-10);
}

TEST_CASE("comparison for ordered constant data") {
    const auto grid = RadialGrid::make(4.0, 32);
    const auto spec = power_spec(3, absorption_only(2.0));
    SimulationOptions opt;
    opt.t_end = 2.0;
    opt.dt = 1e-2;
    opt.probe = 1.0;
    const auto lo = simulate(spec, grid, constant_state(grid, 0.5), opt);
    const auto hi = simulate(spec, grid, constant_state(grid, 1.5), opt);
    REQUIRE(lo.curve.samples.size() == hi.curve.samples.size());
    for (std::size_t i = 0; i < lo.curve.samples.size(); ++i)
        CHECK(lo.curve.samples[i].sup_abs <= hi.curve.samples[i].sup_abs);
}

TEST_CASE("Gaussian data decays under quadratic absorption") {
    const auto spec = power_spec(1, absorption_only(2.0));
    auto run = [&](int cells, double dt) {
        const auto grid = RadialGrid::make(16.0, cells);
        SimulationOptions opt;
        opt.t_end = 20.0;
        opt.dt = dt;
        opt.probe = 1.0;
        opt.snapshot_times = {5.0, 10.0, 20.0};
        return simulate(spec, grid, gaussian(grid, 5.0), opt);
    };
    const auto coarse = run(256, 1e-2);
    const auto fine = run(512, 5e-3);
    CHECK(coarse.curve.samples.back().sup_abs < 0.25);
    for (std::size_t i = 0; i < coarse.snapshots.size(); ++i) {
        const double a = coarse.snapshots[i].values[0];
        const double b = fine.snapshots[i].values[0];
        CHECK(std::fabs(a - b) / b < 0.02);
    }
}

TEST_CASE("residual reference values") {
    const auto grid = RadialGrid::make(4.0, 32);
    const auto spec = power_spec(3, absorption_only(2.0));
    CHECK(residual(constant_state(grid, 0.0), spec, grid) == 0.0);
    CHECK(residual(constant_state(grid, 0.3), spec, grid) == doctest::Approx(0.09));
}

TEST_CASE("stability bound and blow-up detection") {
    const auto grid = RadialGrid::make(8.0, 64);
    const auto spec = power_spec(1, absorption_only(3.0));
    const auto s = constant_state(grid, 2.0);
    CHECK(stable_dt(s, spec, grid) == doctest::Approx(0.5 / 12.0).epsilon(1e-5));
    CHECK_THROWS_AS(step_imex(s, spec, grid, 0.1), StabilityViolation);

    PowerTerms t;
    t.b0 = 1.0;
    t.alpha = 0.01;
    t.mu = 3.0;
    t.c0 = 0.0;
    const auto blow = power_spec(1, t);
    SimulationOptions opt;
    opt.t_end = 10.0;
    opt.dt = 1e-2;
    opt.probe = 1.0;
    CHECK_THROWS_AS(simulate(blow, grid, gaussian(grid, 2.0), opt), BlowupDetected);
}

TEST_CASE("cylinder suprema from the history") {
    const auto grid = RadialGrid::make(8.0, 64);
    const auto spec = power_spec(1, absorption_only(2.0));
    SimulationOptions opt;
    opt.t_end = 2.0;
    opt.dt = 1e-2;
    opt.probe = 1.0;
    opt.record_history = true;
    const auto res = simulate(spec, grid, gaussian(grid, 3.0), opt);
    const auto inner = cylinder_sup(res, grid, 1.0, 1.0, 2.0);
    const auto outer = cylinder_sup(res, grid, 2.0, 0.0, 2.0);
    REQUIRE(inner);
    REQUIRE(outer);
    CHECK(*inner <= *outer);
    CHECK(*outer == doctest::Approx(3.0));
    CHECK_FALSE(cylinder_sup(res, grid, 1.0, 5.0, 6.0));
}

TEST_CASE("function-mode equation") {
    EquationSpec spec;
    spec.n = 2;
    spec.terms = FunctionTerms{ScalarFunction::power(1, 1), ScalarFunction::power(1, 2), 1.0};
    const auto grid = RadialGrid::make(8.0, 64);
    CHECK(spec.gradient_term(1.0, 0.5, -0.3) == doctest::Approx(0.3));
    CHECK(spec.absorption(1.0, -0.5) == doctest::Approx(-0.25));
    SimulationOptions opt;
    opt.t_end = 5.0;
    opt.dt = 1e-2;
    opt.probe = 1.0;
    const auto res = simulate(spec, grid, gaussian(grid, 2.0), opt);
    CHECK(res.curve.samples.back().sup_abs < res.curve.samples.front().sup_abs);
    spec.terms = FunctionTerms{ScalarFunction::power(1, -1), ScalarFunction::power(1, 2), 1.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
