#include "doctest.h"

#include "decaylab/errors.hpp"
#include "decaylab/stationary.hpp"

#include <cmath>

using namespace decaylab;

namespace {

EquationSpec absorption_spec(int n, double sigma, double l, double c0 = 1.0) {
    PowerTerms t;
    t.c0 = c0;
    t.l = l;
    t.sigma = sigma;
    EquationSpec spec;
    spec.n = n;
    spec.terms = t;
    return spec;
}

}  // namespace

TEST_CASE("no absorption keeps the constant solution") {
    const auto spec = absorption_spec(3, 2.0, 0.0, 0.0);
    const auto s = shoot(spec, 0.37, 100.0);
    CHECK(s.outcome == ShootOutcome::BoundedPositive);
    for (const auto& p : s.profile) {
        CHECK(p.u == 0.37);
        CHECK(p.du == 0.0);
    }
}

TEST_CASE("integrable absorption weight gives a bounded positive profile") {
    const auto spec = absorption_spec(3, 2.0, -4.0);
    const auto s = shoot(spec, 0.1, 1e3);
    REQUIRE(s.outcome == ShootOutcome::BoundedPositive);
    // u' ≥ 0 since r²u' = ∫ s² c u², so the plateau sits slightly above A
    CHECK(s.terminal_value > 0.1);
    CHECK(s.terminal_value < 0.2);
    // cross-check u'(r) = r^{-2} ∫_0^r s² c(s) u(s)² ds by the trapezoid rule on the profile
    double integral = 0.0;
    for (std::size_t i = 1; i < s.profile.size(); ++i) {
        const auto& a = s.profile[i - 1];
        const auto& b = s.profile[i];
        auto f = [](const ProfilePoint& p) {
            return p.r * p.r * std::pow(1.0 + p.r, -4.0) * p.u * p.u;
        };
        integral += 0.5 * (f(a) + f(b)) * (b.r - a.r);
        if (b.r == 10.0 || i + 1 == s.profile.size()) {
            CHECK(b.du == doctest::Approx(integral / (b.r * b.r)).epsilon(1e-3));
        }
    }
}

TEST_CASE("constant absorption weight blows up at a finite radius") {
    const auto spec = absorption_spec(3, 2.0, 0.0);
    const auto s = shoot(spec, 1.0, 1e3);
    CHECK(s.outcome == ShootOutcome::Blowup);
    CHECK(s.event_radius < 100.0);
    CHECK(s.event_radius > 1.0);
}

TEST_CASE("the gradient term vanishes on a flat profile") {
    PowerTerms t;
    t.b0 = 5.0;
    t.alpha = 1.0;
    t.mu = 1.0;
    t.c0 = 0.0;
    EquationSpec spec;
    spec.n = 3;
    spec.terms = t;
    const auto s = shoot(spec, 1.0, 10.0);
    CHECK(s.outcome == ShootOutcome::BoundedPositive);
    CHECK(s.terminal_value == 1.0);
}

TEST_CASE("witness search") {
    const auto failing = absorption_spec(3, 2.0, -4.0);
    const auto w = find_witness(failing, 0.01, 1.0);
    REQUIRE(w);
    CHECK(w->initial_value == doctest::Approx(0.01));
    CHECK(w->shot.outcome == ShootOutcome::BoundedPositive);

    const auto passing = absorption_spec(3, 2.0, 0.0);
    CHECK_FALSE(find_witness(passing, 0.01, 10.0));
    CHECK_FALSE(find_witness(failing, 1.0, 0.5));
    CHECK_THROWS_AS(find_witness(absorption_spec(2, 2.0, -4.0), 0.01, 1.0), ConfigError);
}

TEST_CASE("amplitude scaling of the absorption coefficient") {
    // v = λ^{-1/(σ−1)} u solves the equation with c replaced by λc
    const double sigma = 3.0, lambda = 4.0, A = 0.2;
    const auto base = absorption_spec(3, sigma, -4.0, 1.0);
    const auto scaled = absorption_spec(3, sigma, -4.0, lambda);
    const double factor = std::pow(lambda, -1.0 / (sigma - 1.0));
    ShootOptions opt;
    for (int i = 0; i <= 50; ++i) opt.output_radii.push_back(0.4 * i);
    const auto u = shoot(base, A, 20.0, opt);
    const auto v = shoot(scaled, factor * A, 20.0, opt);
    REQUIRE(u.profile.size() == v.profile.size());
    for (std::size_t i = 0; i < u.profile.size(); ++i) {
        CHECK(std::fabs(v.profile[i].u - factor * u.profile[i].u) < 1e-8 * factor * A);
        CHECK(std::fabs(v.profile[i].du - factor * u.profile[i].du) < 1e-8 * factor * A);
    }
}

TEST_CASE("classification is stable under tolerance tightening") {
    ShootOptions loose;
    loose.rtol = 1e-8;
    for (double l : {-4.0, 0.0})
        for (double A : {0.05, 0.5, 2.0}) {
            const auto spec = absorption_spec(3, 2.0, l);
            CHECK(shoot(spec, A, 1e3, loose).outcome == shoot(spec, A, 1e3).outcome);
        }
}

TEST_CASE("witness sampled on a grid") {
    const auto spec = absorption_spec(3, 2.0, -4.0);
    const auto grid = RadialGrid::make(32.0, 640);
    const auto state = witness_on_grid(spec, 0.01, grid);
    REQUIRE(static_cast<int>(state.values.size()) == grid.nodes());
    CHECK(state.values.front() == 0.01);
    CHECK(residual(state, spec, grid) < 1e-4);
    CHECK_THROWS_AS(witness_on_grid(absorption_spec(3, 2.0, 0.0), 5.0, grid), DomainError);
}
