#include "decaylab/pde.hpp"

#include "decaylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decaylab {

namespace {

constexpr double kBlowupLevel = 1e150;
constexpr double kMinDt = 1e-12;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double spatial_weight(double c0, double a, double s, double r) {
    double w = c0 * std::pow(1.0 + r, a);
    if (s != 0.0) w *= std::pow(std::log(2.0 + r), s);
    return w;
}

double eval_at_zero_limit(const ScalarFunction& f, double x) {
    if (x > 0.0) return eval(f, x);
    return std::exp(limit_at_zero_log(f));
}

// Reaction with the spatial coefficients of every node precomputed.
class NodeReaction {
public:
    NodeReaction(const EquationSpec& spec, const RadialGrid& grid) {
        if (const auto* p = std::get_if<PowerTerms>(&spec.terms)) {
            power_ = p;
            for (int j = 0; j < grid.nodes(); ++j) {
                const double r = grid.node(j);
                b_weight_.push_back(p->b0 == 0.0 ? 0.0 : spatial_weight(p->b0, p->k, p->s, r));
                c_weight_.push_back(p->c0 == 0.0 ? 0.0 : spatial_weight(p->c0, p->l, p->m, r));
            }
        } else {
            functions_ = &std::get<FunctionTerms>(spec.terms);
        }
    }

    double gradient_term(int j, double u, double du) const {
        if (power_) {
            if (b_weight_[j] == 0.0 || u == 0.0) return 0.0;
            const auto& p = *power_;
            double v = p.sign * sgn(u) * b_weight_[j] * std::pow(std::fabs(du), p.alpha);
            if (p.mu != 0.0)
                v *= std::pow(u * u + kPowerRegularization * kPowerRegularization, 0.5 * p.mu);
            return v;
        }
        if (u == 0.0) return 0.0;
        return functions_->sign * sgn(u) * eval_at_zero_limit(functions_->phi, std::fabs(du));
    }

    double absorption(int j, double u) const {
        if (u == 0.0) return 0.0;
        if (power_) {
            if (c_weight_[j] == 0.0) return 0.0;
            const auto& p = *power_;
            const double a = std::fabs(u);
            double v = c_weight_[j] * std::pow(a, p.sigma) * sgn(u);
            if (p.nu != 0.0) v *= std::pow(std::log1p(a), p.nu);
            return v;
        }
        return eval(functions_->psi, std::fabs(u)) * sgn(u);
    }

    double operator()(int j, double u, double du) const {
        return gradient_term(j, u, du) - absorption(j, u);
    }

private:
    const PowerTerms* power_ = nullptr;
    const FunctionTerms* functions_ = nullptr;
    std::vector<double> b_weight_;
    std::vector<double> c_weight_;
};

// (Δ_h u)_j = west_j (u_{j−1} − u_j) + east_j (u_{j+1} − u_j) from the flux form
// with control volumes V_j = (r_{j+½}ⁿ − r_{j−½}ⁿ)/n and face areas r_{j±½}^{n−1}.
struct Laplacian {
    std::vector<double> west;
    std::vector<double> east;
    std::vector<double> volume;

    Laplacian(const RadialGrid& grid, int n) {
        const int N = grid.cells;
        const double dr = grid.dr();
        west.assign(N + 1, 0.0);
        east.assign(N + 1, 0.0);
        volume.assign(N + 1, 0.0);
        auto area = [&](double r) { return n == 1 ? 1.0 : std::pow(r, n - 1); };
        for (int j = 0; j <= N; ++j) {
            const double lo = j == 0 ? 0.0 : (j - 0.5) * dr;
            const double hi = j == N ? grid.radius : (j + 0.5) * dr;
            volume[j] = (std::pow(hi, n) - std::pow(lo, n)) / n;
            if (j > 0) west[j] = area(lo) / (dr * volume[j]);
            if (j < N) east[j] = area(hi) / (dr * volume[j]);
        }
    }

    double apply(const std::vector<double>& u, int j) const {
        double v = 0.0;
        if (j > 0) v += west[j] * (u[j - 1] - u[j]);
        if (j + 1 < static_cast<int>(u.size())) v += east[j] * (u[j + 1] - u[j]);
        return v;
    }
};

double central_gradient(const std::vector<double>& u, int j, double dr) {
    const int last = static_cast<int>(u.size()) - 1;
    if (j == 0 || j == last) return 0.0;
    return (u[j + 1] - u[j - 1]) / (2.0 * dr);
}

void check_state(const FieldState& state, const RadialGrid& grid) {
    if (static_cast<int>(state.values.size()) != grid.nodes())
        throw ConfigError("state has " + std::to_string(state.values.size()) +
                          " values, grid has " + std::to_string(grid.nodes()) + " nodes");
}

double stable_dt_impl(const std::vector<double>& u, const NodeReaction& reaction,
                      const RadialGrid& grid) {
    const double dr = grid.dr();
    double max_du = 0.0, max_dg = 0.0;
    const int last = grid.nodes() - 1;
    for (int j = 0; j <= last; ++j) {
        const double x = u[j];
        const double g = central_gradient(u, j, dr);
        double d_u;
        if (x != 0.0) {
            const double h = 1e-7 * std::fabs(x);
            d_u = (reaction(j, x + h, g) - reaction(j, x - h, g)) / (2.0 * h);
        } else {
            // derivative of the branch on the positive side; sign(u) jumps at 0
            const double h = 1e-12;
            d_u = (reaction(j, 2.0 * h, g) - reaction(j, h, g)) / h;
        }
        max_du = std::max(max_du, std::fabs(d_u));
        if (j > 0 && j < last) {
            const double h = 1e-7 * std::fabs(g) + 1e-12;
            const double d_g = (reaction(j, x, g + h) - reaction(j, x, g - h)) / (2.0 * h);
            max_dg = std::max(max_dg, std::fabs(d_g));
        }
    }
    double bound = std::numeric_limits<double>::infinity();
    if (max_du > 0.0) bound = std::min(bound, 0.5 / max_du);
    if (max_dg > 0.0) bound = std::min(bound, dr / max_dg);
    if (std::isnan(bound)) bound = 0.0;
    return bound;
}

std::vector<double> advance(const std::vector<double>& u, const Laplacian& lap,
                            const NodeReaction& reaction, const RadialGrid& grid, double dt,
                            double implicitness, double time) {
    const int size = grid.nodes();
    const double dr = grid.dr();
    const double th = implicitness;
    std::vector<double> lower(size), diag(size), upper(size), rhs(size);
    for (int j = 0; j < size; ++j) {
        const double react = reaction(j, u[j], central_gradient(u, j, dr));
        rhs[j] = u[j] + (1.0 - th) * dt * lap.apply(u, j) + dt * react;
        lower[j] = -th * dt * lap.west[j];
        upper[j] = -th * dt * lap.east[j];
        diag[j] = 1.0 + th * dt * (lap.west[j] + lap.east[j]);
    }
    // Thomas algorithm
    for (int j = 1; j < size; ++j) {
        const double w = lower[j] / diag[j - 1];
        diag[j] -= w * upper[j - 1];
        rhs[j] -= w * rhs[j - 1];
    }
    std::vector<double> out(size);
    out[size - 1] = rhs[size - 1] / diag[size - 1];
    for (int j = size - 2; j >= 0; --j) out[j] = (rhs[j] - upper[j] * out[j + 1]) / diag[j];
    for (double v : out)
        if (!std::isfinite(v) || std::fabs(v) > kBlowupLevel) throw BlowupDetected(time + dt);
    return out;
}

DecaySample probe_sample(const std::vector<double>& u, double time, int probe_last) {
    DecaySample s;
    s.time = time;
    for (int j = 0; j <= probe_last; ++j) {
        s.sup_abs = std::max(s.sup_abs, std::fabs(u[j]));
        s.sup_pos = std::max(s.sup_pos, u[j]);
    }
    return s;
}

std::vector<double> prefix_max(const std::vector<double>& u) {
    std::vector<double> out(u.size());
    double run = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = run = std::max(run, u[j]);
    return out;
}

}  // namespace

void EquationSpec::validate() const {
    if (n < 1) throw ConfigError("dimension n must be >= 1");
    if (const auto* p = std::get_if<PowerTerms>(&terms)) {
        for (double v : {p->b0, p->k, p->s, p->mu, p->alpha, p->sign, p->c0, p->l, p->m, p->sigma,
                         p->nu})
            if (!std::isfinite(v)) throw ConfigError("equation coefficients must be finite");
        if (p->b0 < 0.0) throw ConfigError("b0 must be >= 0");
        if (!(p->alpha > 0.0)) throw ConfigError("alpha must be > 0");
        if (p->c0 < 0.0) throw ConfigError("c0 must be >= 0");
        if (p->nu < 0.0) throw ConfigError("nu must be >= 0");
        if (!(p->sigma > 0.0)) throw ConfigError("sigma must be > 0");
        if (p->sign != 1.0 && p->sign != -1.0) throw ConfigError("sign must be +1 or -1");
    } else {
        const auto& f = std::get<FunctionTerms>(terms);
        if (f.sign != 1.0 && f.sign != -1.0) throw ConfigError("sign must be +1 or -1");
        if (monotonicity(f.phi) != Monotonicity::Increasing)
            throw ConfigError("phi must be strictly increasing");
        const auto mp = monotonicity(f.psi);
        if (mp != Monotonicity::Increasing && mp != Monotonicity::Constant)
            throw ConfigError("psi must be non-decreasing");
    }
}

double EquationSpec::gradient_term(double r, double u, double du) const {
    if (u == 0.0) return 0.0;
    if (const auto* p = std::get_if<PowerTerms>(&terms)) {
        if (p->b0 == 0.0) return 0.0;
        double v = p->sign * sgn(u) * spatial_weight(p->b0, p->k, p->s, r) *
                   std::pow(std::fabs(du), p->alpha);
        if (p->mu != 0.0)
            v *= std::pow(u * u + kPowerRegularization * kPowerRegularization, 0.5 * p->mu);
        return v;
    }
    const auto& f = std::get<FunctionTerms>(terms);
    return f.sign * sgn(u) * eval_at_zero_limit(f.phi, std::fabs(du));
}

double EquationSpec::absorption(double r, double u) const {
    if (u == 0.0) return 0.0;
    if (const auto* p = std::get_if<PowerTerms>(&terms)) {
        if (p->c0 == 0.0) return 0.0;
        const double a = std::fabs(u);
        double v = spatial_weight(p->c0, p->l, p->m, r) * std::pow(a, p->sigma) * sgn(u);
        if (p->nu != 0.0) v *= std::pow(std::log1p(a), p->nu);
        return v;
    }
    return eval(std::get<FunctionTerms>(terms).psi, std::fabs(u)) * sgn(u);
}

RadialGrid RadialGrid::make(double radius, int cells) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("grid radius must be > 0");
    if (cells < 16) throw ConfigError("grid needs at least 16 cells");
    return RadialGrid{radius, cells};
}

int RadialGrid::last_node_within(double r) const {
    const int j = static_cast<int>(std::floor(r / dr() * (1.0 + 1e-12)));
    return std::clamp(j, 0, cells);
}

FieldState constant_state(const RadialGrid& grid, double value) {
    return FieldState{std::vector<double>(grid.nodes(), value), 0.0};
}

double stable_dt(const FieldState& state, const EquationSpec& spec, const RadialGrid& grid) {
    check_state(state, grid);
    return stable_dt_impl(state.values, NodeReaction(spec, grid), grid);
}

FieldState step_imex(const FieldState& state, const EquationSpec& spec, const RadialGrid& grid,
                     double dt, double implicitness) {
    spec.validate();
    check_state(state, grid);
    if (!(dt > 0.0)) throw ConfigError("time step must be > 0");
    if (!(implicitness >= 0.5 && implicitness <= 1.0))
        throw ConfigError("implicitness must lie in [0.5, 1]");
    for (double v : state.values)
        if (!std::isfinite(v)) throw BlowupDetected(state.time);
    const NodeReaction reaction(spec, grid);
    const double bound = stable_dt_impl(state.values, reaction, grid);
    if (dt > bound) throw StabilityViolation(dt, bound);
    const Laplacian lap(grid, spec.n);
    return FieldState{advance(state.values, lap, reaction, grid, dt, implicitness, state.time),
                      state.time + dt};
}

SimulationResult simulate(const EquationSpec& spec, const RadialGrid& grid,
                          const FieldState& initial, const SimulationOptions& options) {
    spec.validate();
    check_state(initial, grid);
    if (!(options.probe > 0.0) || options.probe > grid.radius / 4.0 * (1.0 + 1e-12))
        throw ConfigError("probe radius must lie in (0, R/4]");
    if (!(options.dt > 0.0)) throw ConfigError("time step must be > 0");
    if (!(options.t_end >= initial.time)) throw ConfigError("t_end precedes the initial time");
    if (options.sample_every < 1) throw ConfigError("sample_every must be >= 1");
    if (!(options.implicitness >= 0.5 && options.implicitness <= 1.0))
        throw ConfigError("implicitness must lie in [0.5, 1]");
    for (double v : initial.values)
        if (!std::isfinite(v)) throw ConfigError("initial state must be finite");

    std::vector<double> snaps;
    for (double s : options.snapshot_times)
        if (s >= initial.time && s <= options.t_end) snaps.push_back(s);
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

    const NodeReaction reaction(spec, grid);
    const Laplacian lap(grid, spec.n);
    const int probe_last = grid.last_node_within(options.probe);

    SimulationResult out;
    out.curve.probe = options.probe;
    out.min_dt = options.dt;
    std::vector<double> u = initial.values;
    double t = initial.time;
    std::size_t next_snap = 0;

    auto record = [&](bool sample) {
        if (sample) {
            out.curve.samples.push_back(probe_sample(u, t, probe_last));
            if (options.record_history) {
                out.history_times.push_back(t);
                out.history_prefix_max.push_back(prefix_max(u));
            }
        }
        while (next_snap < snaps.size() && snaps[next_snap] == t) {
            out.snapshots.push_back(FieldState{u, t});
            ++next_snap;
        }
    };
    record(true);

    while (t < options.t_end) {
        const double bound = stable_dt_impl(u, reaction, grid);
        if (!(bound >= kMinDt)) throw BlowupDetected(t);
        double target = options.t_end;
        if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
        double h = std::min(options.dt, 0.9 * bound);
        double t_next = t + h;
        if (t_next >= target || target - t_next < 1e-9 * h) {
            h = target - t;
            t_next = target;
        }
        u = advance(u, lap, reaction, grid, h, options.implicitness, t);
        t = t_next;
        ++out.steps;
        out.min_dt = std::min(out.min_dt, h);
        const bool at_snapshot = next_snap < snaps.size() && snaps[next_snap] == t;
        record(out.steps % options.sample_every == 0 || t == options.t_end || at_snapshot);
    }
    out.final_state = FieldState{u, t};
    return out;
}

std::optional<double> cylinder_sup(const SimulationResult& result, const RadialGrid& grid,
                                   double radius, double t0, double t1) {
    const int j = grid.last_node_within(radius);
    std::optional<double> best;
    for (std::size_t i = 0; i < result.history_times.size(); ++i) {
        const double t = result.history_times[i];
        if (t < t0 || t > t1) continue;
        const double v = result.history_prefix_max[i][j];
        best = best ? std::max(*best, v) : v;
    }
    return best;
}

double residual(const FieldState& state, const EquationSpec& spec, const RadialGrid& grid) {
    check_state(state, grid);
    const NodeReaction reaction(spec, grid);
    const Laplacian lap(grid, spec.n);
    const auto& u = state.values;
    double worst = 0.0;
    for (int j = 0; j < grid.cells; ++j) {
        const double v = lap.apply(u, j) + reaction(j, u[j], central_gradient(u, j, grid.dr()));
        worst = std::max(worst, std::fabs(v));
    }
    return worst;
}

double discrete_mass(const FieldState& state, const RadialGrid& grid, int n) {
    check_state(state, grid);
    const Laplacian lap(grid, n);
    double mass = 0.0;
    for (int j = 0; j < grid.nodes(); ++j) mass += lap.volume[j] * state.values[j];
    return mass;
}

}  // namespace decaylab
