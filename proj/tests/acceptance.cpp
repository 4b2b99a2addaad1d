// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "cli_harness.hpp"
#include "decaylab/criterion.hpp"
#include "decaylab/envelope.hpp"
#include "decaylab/funcs.hpp"
#include "decaylab/pde.hpp"
#include "decaylab/stationary.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace decaylab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

EquationSpec absorption(int n, double sigma, double l = 0.0, double c0 = 1.0) {
    PowerTerms t;
    t.c0 = c0;
    t.l = l;
    t.sigma = sigma;
    EquationSpec spec;
    spec.n = n;
    spec.terms = t;
    return spec;
}

double max_abs(const FieldState& s) {
    double m = 0.0;
    for (double v : s.values) m = std::max(m, std::fabs(v));
    return m;
}

// Power-law exponent grid kept away from every critical value the classifier sees.
Outcome phase_diagram() {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ua(0.25, 3.0), um(0.0, 2.0), us(0.3, 5.0), uk(-3.0, 3.0),
        ul(-5.0, 3.0);
    const double margin = 0.05;
    int tuples = 0, disagreements = 0, stabilizing = 0;
    while (tuples < 200) {
        const double alpha = ua(rng), mu = um(rng), sigma = us(rng), k = uk(rng), l = ul(rng);
        const double p_exp = std::min((l - k) / alpha - 1.0, l);
        const bool far = std::fabs(std::min(l - k + alpha, l + 2.0)) >= margin &&
                         std::fabs(sigma - 1.0) >= margin && std::fabs(sigma - alpha - mu) >= margin &&
                         std::fabs((sigma - mu) / alpha - 1.0) >= margin &&
                         std::fabs(p_exp + 2.0) >= margin;
        if (!far) continue;
        ++tuples;
        const bool closed = example21_check(alpha, mu, sigma, k, l).passes;
        const auto triple = example21_triple(alpha, mu, sigma, k, l);
        const auto numeric = stabilization_verdict(triple, ClassifyMethod::Numeric).verdict;
        stabilizing += closed;
        if (closed != (numeric == Verdict::Stabilizes)) ++disagreements;
    }
    return {disagreements == 0, std::to_string(tuples) + " tuples, " + std::to_string(stabilizing) +
                                    " stabilizing, " + std::to_string(disagreements) +
                                    " disagreements"};
}

Outcome ode_decay() {
    const auto grid = RadialGrid::make(16.0, 128);
    SimulationOptions opt;
    opt.t_end = 5.0;
    opt.dt = 1e-3;
    opt.probe = 1.0;
    opt.sample_every = 1000;
    opt.snapshot_times = {0.5, 1.0, 5.0};
    const auto res = simulate(absorption(1, 3.0), grid, constant_state(grid, 2.0), opt);
    double worst = 0.0;
    for (const auto& s : res.snapshots) {
        const double exact = 1.0 / std::sqrt(0.25 + 2.0 * s.time);
        worst = std::max(worst, std::fabs(max_abs(s) - exact) / exact);
    }
    return {res.snapshots.size() == 3 && worst < 0.01, "max relative error " + fmt("%.3g", worst)};
}

double heat_error(int cells) {
    const double pi = std::acos(-1.0);
    const auto grid = RadialGrid::make(1.0, cells);
    FieldState init;
    for (int j = 0; j < grid.nodes(); ++j) init.values.push_back(std::cos(pi * grid.node(j)));
    SimulationOptions opt;
    opt.t_end = 0.1;
    opt.dt = 1e-4;
    opt.probe = 0.25;
    opt.implicitness = 0.5;
    opt.sample_every = 1000000;
    const auto res = simulate(absorption(1, 1.0, 0.0, 0.0), grid, init, opt);
    const double decay = std::exp(-pi * pi * 0.1);
    double err = 0.0;
    for (int j = 0; j < grid.nodes(); ++j)
        err = std::max(err, std::fabs(res.final_state.values[j] - decay * init.values[j]));
    return err / decay;
}

Outcome heat_convergence() {
    const double e256 = heat_error(256);
    const double e512 = heat_error(512);
    return {e256 < 1e-3 && e256 / e512 >= 3.5,
            "error " + fmt("%.3g", e256) + " at N=256, ratio " + fmt("%.3f", e256 / e512)};
}

DecayCurve gaussian_run(double radius, int cells) {
    const auto grid = RadialGrid::make(radius, cells);
    FieldState init;
    for (int j = 0; j < grid.nodes(); ++j)
        init.values.push_back(5.0 * std::exp(-grid.node(j) * grid.node(j)));
    SimulationOptions opt;
    opt.t_end = 20.0;
    opt.dt = 1e-2;
    opt.probe = 1.0;
    opt.sample_every = 50;
    return simulate(absorption(1, 2.0), grid, init, opt).curve;
}

Outcome stabilizing_regime() {
    const auto base = gaussian_run(16.0, 256);
    const auto wide = gaussian_run(32.0, 512);
    const double start = base.samples.front().sup_abs;
    const double end = base.samples.back().sup_abs;
    double change = 0.0;
    const bool aligned = base.samples.size() == wide.samples.size();
    for (std::size_t i = 0; aligned && i < base.samples.size(); ++i)
        change = std::max(change, std::fabs(base.samples[i].sup_abs - wide.samples[i].sup_abs) /
                                      base.samples[i].sup_abs);
    return {aligned && end < 0.05 * start && change < 0.01,
            "sup ratio " + fmt("%.4f", end / start) + ", R-doubling change " + fmt("%.2e", change)};
}

Outcome witness() {
    const auto failing = absorption(3, 2.0, -4.0);
    const auto w = find_witness(failing, 0.01, 1.0);
    const bool none_at_l0 = !find_witness(absorption(3, 2.0, 0.0), 0.01, 10.0).has_value();
    if (!w) return {false, "no witness at l = -4"};
    const auto grid = RadialGrid::make(32.0, 640);
    const auto state = witness_on_grid(failing, w->initial_value, grid);
    const double res = residual(state, failing, grid);
    SimulationOptions opt;
    opt.t_end = 10.0;
    opt.dt = 1e-2;
    opt.probe = 1.0;
    opt.sample_every = 10;
    const auto run = simulate(failing, grid, state, opt);
    const double start = run.curve.samples.front().sup_abs;
    double drift = 0.0;
    for (const auto& s : run.curve.samples) drift = std::max(drift, std::fabs(s.sup_abs - start) / start);
    return {res < 1e-4 && drift < 0.01 && none_at_l0,
            "A=" + fmt("%.4g", w->initial_value) + ", residual " + fmt("%.2e", res) + ", drift " +
                fmt("%.2e", drift) + (none_at_l0 ? ", none at l=0" : ", unexpected witness at l=0")};
}

Outcome envelope() {
    const auto g = ScalarFunction::power(1.0, 3.0);
    const auto h = ScalarFunction::power(1.0, 2.0);
    const auto p = ScalarFunction::spatial(1.0, 0.0);
    const EnvelopeParams params{2.0, 1.0, 1.0};
    const GTransform transform(g, h, params.theta);
    const auto at17 = decay_bound(transform, p, params, 17.0);
    const double resid = std::fabs(transform(at17.value) - at17.budget) / at17.budget;
    bool monotone = true;
    double prev = INFINITY, last = INFINITY;
    for (int e : {2, 5, 10, 20}) {
        const auto b = decay_bound(transform, p, params, std::pow(4.0, e));
        monotone = monotone && b.value <= prev;
        prev = last = b.value;
    }
    return {at17.kind == DecayBound::Kind::Finite && std::fabs(at17.value - 1.331) < 5e-3 &&
                resid < 1e-8 && monotone && last < 1e-3,
            "bound " + fmt("%.10f", at17.value) + ", residual " + fmt("%.1e", resid) + ", last " +
                fmt("%.3e", last)};
}

Outcome theta_infimum() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(-3, 3), us(-3, 3), ushift(1, 3), uc(-2, 2),
        uth(1.05, 4), ulz(-4, 9);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto f = ScalarFunction::power_log(std::exp(uc(rng)), ua(rng), us(rng), ushift(rng));
        const double theta = uth(rng);
        const double z = std::exp(ulz(rng));
        const double la = std::log(z / theta), lb = std::log(z * theta);
        double brute = INFINITY;
        for (int i = 0; i < 100000; ++i)
            brute = std::min(brute, eval(f, std::exp(la + (lb - la) * i / 99999.0)));
        worst = std::max(worst, std::fabs(theta_inf(f, theta, z) - brute) / brute);
    }
    return {worst < 1e-6, "max relative error " + fmt("%.2e", worst)};
}

Outcome example24() {
    struct Case {
        double phi, psi;
        Verdict expected;
    };
    const Case cases[] = {{1, 2, Verdict::Stabilizes}, {3, 2, Verdict::Unknown}, {1, 1, Verdict::Unknown}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto phi = ScalarFunction::power(1.0, c.phi);
        const auto psi = ScalarFunction::power(1.0, c.psi);
        const auto closed = example24_check(phi, psi, 1.0, 2.0, ClassifyMethod::ClosedForm).verdict;
        const auto numeric = example24_check(phi, psi, 1.0, 2.0, ClassifyMethod::Numeric).verdict;
        ok = ok && closed == c.expected && numeric == c.expected;
        detail += std::string(detail.empty() ? "" : ", ") + fmt("(%g", c.phi) + fmt(",%g)->", c.psi) +
                  to_string(closed) + "/" + to_string(numeric);
    }
    return {ok, detail};
}

Outcome cli_contract() {
    using cli_harness::config_path;
    struct Case {
        const char* command;
        const char* config;
        int code;
    };
    const Case cases[] = {
        {"check", "check_example21", 0},       {"check", "check_example21_sigma1", 10},
        {"check", "truncated", 2},             {"sweep", "sweep_example21", 0},
        {"sweep", "sweep_empty_axis", 2},      {"envelope", "envelope_cubic", 0},
        {"envelope", "envelope_divergent", 11}, {"simulate", "simulate_ode", 0},
        {"simulate", "simulate_blowup", 12},   {"stationary", "stationary_witness", 0},
    };
    int bad_codes = 0, unstable = 0;
    for (const auto& c : cases) {
        const auto a = cli_harness::run(c.command, config_path(c.config), std::string("acc_a_") + c.config);
        const auto b = cli_harness::run(c.command, config_path(c.config), std::string("acc_b_") + c.config,
                                        "--jobs 3");
        if (a.code != c.code) ++bad_codes;
        if (!cli_harness::same(a, b)) ++unstable;
    }
    return {bad_codes == 0 && unstable == 0,
            std::to_string(std::size(cases)) + " runs, " + std::to_string(bad_codes) +
                " wrong exit codes, " + std::to_string(unstable) + " non-identical reruns"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // runtime limit, 0 = none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "example phase diagram: numeric equals closed form", 60, phase_diagram},
        {2, "constant-data ODE decay", 30, ode_decay},
        {3, "heat eigenfunction convergence", 0, heat_convergence},
        {4, "stabilizing regime and domain independence", 120, stabilizing_regime},
        {5, "stationary non-stabilization witness", 120, witness},
        {6, "decay envelope bisection", 0, envelope},
        {7, "theta-infimum against brute force", 0, theta_infimum},
        {8, "closed forms for bounded-gradient absorption", 0, example24},
        {9, "CLI determinism and exit codes", 0, cli_contract},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += ", over the time limit";
        }
        failures += !o.pass;
        std::printf("[%s] criterion %d: %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
