#include "commands.hpp"

#include "config.hpp"
#include "decaylab/criterion.hpp"
#include "decaylab/envelope.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/pde.hpp"
#include "decaylab/stationary.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace decaylab {

namespace {

using config::format_double;
using config::json;
using config::Object;
using config::Role;

const std::vector<std::string> kCommands{"check", "sweep", "envelope", "simulate", "stationary"};

struct Context {
    std::string command;
    double theta = 2.0;
    double calibration_c = 1.0;
    int jobs = 0;
    json resolved;  // echoed into manifests
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line + "\n";
}

ClassifyMethod method_from(Object& o) {
    if (!o.has("method")) return ClassifyMethod::Auto;
    const std::string m = o.string("method");
    if (m == "auto") return ClassifyMethod::Auto;
    if (m == "closed_form") return ClassifyMethod::ClosedForm;
    if (m == "numeric") return ClassifyMethod::Numeric;
    throw ConfigError(o.child_path("method") + ": expected auto, closed_form or numeric");
}

const char* method_name(ClassifyMethod m) {
    switch (m) {
        case ClassifyMethod::Auto:
            return "auto";
        case ClassifyMethod::ClosedForm:
            return "closed_form";
        case ClassifyMethod::Numeric:
            return "numeric";
    }
    return "auto";
}

// --- example families as parameter maps -------------------------------------------

using Params = std::map<std::string, double>;

struct Family {
    std::vector<std::string> names;
    std::map<std::string, double> defaults;  // optional parameters
    std::function<bool(const Params&)> closed_form;
    std::function<StructureTriple(const Params&, double theta)> triple;
    std::function<json(const Params&)> details;
};

const Family& family(const std::string& name, const std::string& path) {
    static const std::map<std::string, Family> families = [] {
        std::map<std::string, Family> f;
        f["example21"] = Family{
            {"alpha", "mu", "sigma", "k", "l"},
            {{"p0", 1.0}},
            [](const Params& p) {
                return example21_check(p.at("alpha"), p.at("mu"), p.at("sigma"), p.at("k"),
                                       p.at("l"))
                    .passes;
            },
            [](const Params& p, double theta) {
                return example21_triple(p.at("alpha"), p.at("mu"), p.at("sigma"), p.at("k"),
                                        p.at("l"), p.at("p0"), theta);
            },
            [](const Params& p) {
                const auto r = example21_check(p.at("alpha"), p.at("mu"), p.at("sigma"),
                                               p.at("k"), p.at("l"));
                return json{{"passes", r.passes}, {"p_exponent", r.p_exponent}};
            }};
        f["example22"] = Family{
            {"alpha", "k", "s", "l", "m", "sigma", "mu"},
            {{"p0", 1.0}},
            [](const Params& p) {
                return example22_check(p.at("alpha"), p.at("k"), p.at("s"), p.at("l"), p.at("m"),
                                       p.at("sigma"), p.at("mu"))
                    .passes;
            },
            [](const Params& p, double theta) {
                return example22_triple(p.at("alpha"), p.at("k"), p.at("s"), p.at("l"), p.at("m"),
                                        p.at("sigma"), p.at("mu"), p.at("p0"), theta);
            },
            [](const Params& p) {
                const auto r = example22_check(p.at("alpha"), p.at("k"), p.at("s"), p.at("l"),
                                               p.at("m"), p.at("sigma"), p.at("mu"));
                return json{{"passes", r.passes}, {"gamma", r.gamma}};
            }};
        f["example23"] = Family{
            {"alpha", "mu", "nu", "k", "l"},
            {{"p0", 1.0}},
            [](const Params& p) {
                return example23_check(p.at("alpha"), p.at("mu"), p.at("nu"), p.at("k"), p.at("l"))
                    .passes;
            },
            [](const Params& p, double theta) {
                return example23_triple(p.at("alpha"), p.at("mu"), p.at("nu"), p.at("k"),
                                        p.at("l"), p.at("p0"), theta);
            },
            [](const Params& p) {
                const auto r = example23_check(p.at("alpha"), p.at("mu"), p.at("nu"), p.at("k"),
                                               p.at("l"));
                return json{{"passes", r.passes}, {"threshold", r.threshold}};
            }};
        return f;
    }();
    auto it = families.find(name);
    if (it == families.end()) throw ConfigError(path + ": unknown example family '" + name + "'");
    return it->second;
}

Params read_params(Object& o, const Family& fam, const std::set<std::string>& supplied_elsewhere) {
    Params p;
    for (const auto& n : fam.names) {
        if (supplied_elsewhere.count(n)) continue;
        p[n] = o.number(n);
    }
    for (const auto& [n, v] : fam.defaults)
        if (!supplied_elsewhere.count(n)) p[n] = o.number(n, v);
    o.finish();
    return p;
}

json params_json(const Params& p) {
    json j = json::object();
    for (const auto& [k, v] : p) j[k] = v;
    return j;
}

// --- check ----------------------------------------------------------------------

RunOutput run_check(Context& ctx, const json& block) {
    Object o(block, "check");
    const ClassifyMethod method = method_from(o);
    static const std::vector<std::string> kinds{"triple", "example21", "example22", "example23",
                                                "example24"};
    std::string kind;
    for (const auto& k : kinds)
        if (o.has(k)) {
            if (!kind.empty()) throw ConfigError("check: give exactly one of triple or exampleNN");
            kind = k;
        }
    if (kind.empty()) throw ConfigError("check: needs a triple or an example21..example24 block");

    json resolved{{"method", method_name(method)}};
    json extra;
    StabilizationReport report;
    if (kind == "triple") {
        Object t(o.at("triple"), "check.triple");
        auto g = config::function_from_json(t.at("g"), Role::State, "check.triple.g");
        auto h = config::function_from_json(t.at("h"), Role::State, "check.triple.h");
        auto p = config::function_from_json(t.at("p"), Role::Spatial, "check.triple.p");
        t.finish();
        o.finish();
        const auto triple = StructureTriple::make(g, h, p, ctx.theta);
        resolved["triple"] = {{"g", config::function_to_json(g)},
                              {"h", config::function_to_json(h)},
                              {"p", config::function_to_json(p)}};
        report = stabilization_verdict(triple, method);
    } else if (kind == "example24") {
        Object e(o.at("example24"), "check.example24");
        auto phi = config::function_from_json(e.at("phi"), Role::State, "check.example24.phi");
        auto psi = config::function_from_json(e.at("psi"), Role::State, "check.example24.psi");
        const double eps = e.number("epsilon", 1.0);
        e.finish();
        o.finish();
        resolved["example24"] = {{"phi", config::function_to_json(phi)},
                                 {"psi", config::function_to_json(psi)},
                                 {"epsilon", eps}};
        report = example24_check(phi, psi, eps, ctx.theta, method);
    } else {
        const Family& fam = family(kind, "check");
        Object e(o.at(kind), "check." + kind);
        const Params p = read_params(e, fam, {});
        o.finish();
        resolved[kind] = params_json(p);
        extra = fam.details(p);
        report = stabilization_verdict(fam.triple(p, ctx.theta), method);
    }
    ctx.resolved["check"] = resolved;

    json out = config::report_to_json(report);
    if (!extra.is_null()) out["example"] = extra;
    RunOutput r;
    r.status = report.verdict == Verdict::Stabilizes ? kOk : kUnknownVerdict;
    r.out = dump(out);
    r.files.emplace_back("report.json", r.out);
    r.files.emplace_back("manifest.json", dump(ctx.resolved));
    return r;
}

// --- sweep ----------------------------------------------------------------------

RunOutput run_sweep(Context& ctx, const json& block) {
    Object o(block, "sweep");
    const std::string fam_name = o.string("family");
    const Family& fam = family(fam_name, "sweep.family");

    const json& axes_json = o.at("axes");
    if (!axes_json.is_array() || axes_json.empty())
        throw ConfigError("sweep.axes: expected a non-empty array");
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    std::set<std::string> axis_names;
    for (std::size_t i = 0; i < axes_json.size(); ++i) {
        const std::string path = "sweep.axes[" + std::to_string(i) + "]";
        Object a(axes_json[i], path);
        const std::string name = a.string("name");
        auto values = a.numbers("values");
        a.finish();
        const bool known = std::find(fam.names.begin(), fam.names.end(), name) != fam.names.end() ||
                           fam.defaults.count(name);
        if (!known) throw ConfigError(path + ".name: '" + name + "' is not a parameter of " + fam_name);
        if (!axis_names.insert(name).second) throw ConfigError(path + ".name: duplicate axis " + name);
        if (values.empty()) throw ConfigError(path + ".values: axis has no values");
        std::sort(values.begin(), values.end());
        axes.emplace_back(name, std::move(values));
    }
    Params base;
    if (o.has("base")) {
        Object b(o.at("base"), "sweep.base");
        base = read_params(b, fam, axis_names);
    } else {
        json empty = json::object();
        Object b(empty, "sweep.base");
        base = read_params(b, fam, axis_names);
    }
    o.finish();

    // lexicographic grid: the first axis varies slowest
    std::vector<Params> points;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        Params p = base;
        for (std::size_t a = 0; a < axes.size(); ++a) p[axes[a].first] = axes[a].second[idx[a]];
        points.push_back(std::move(p));
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].second.size()) break;
            idx[a] = 0;
            if (a == 0) {
                a = axes.size() + 1;
                break;
            }
        }
        if (a == axes.size() + 1) break;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            fam.details(points[i]);
        } catch (const ConfigError& e) {
            throw ConfigError("sweep point " + std::to_string(i) + ": " + e.what());
        }
    }

    struct Row {
        bool closed = false;
        Verdict numeric = Verdict::Unknown;
    };
    const double theta = ctx.theta;
    const auto rows = detail::parallel_map<Row>(points.size(), ctx.jobs, [&](std::size_t i) {
        Row r;
        r.closed = fam.closed_form(points[i]);
        r.numeric = stabilization_verdict(fam.triple(points[i], theta), ClassifyMethod::Numeric).verdict;
        return r;
    });

    std::vector<std::string> header = fam.names;
    for (const auto& [n, v] : fam.defaults) header.push_back(n);
    header.push_back("closed_form");
    header.push_back("numeric");
    std::string csv = csv_row(header);
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<std::string> cells;
        for (const auto& n : fam.names) cells.push_back(format_double(points[i].at(n)));
        for (const auto& [n, v] : fam.defaults) cells.push_back(format_double(points[i].at(n)));
        cells.push_back(rows[i].closed ? "stabilizes" : "unknown");
        cells.push_back(to_string(rows[i].numeric));
        csv += csv_row(cells);
    }

    json axes_out = json::array();
    for (const auto& [n, v] : axes) axes_out.push_back({{"name", n}, {"values", v}});
    ctx.resolved["sweep"] = {{"family", fam_name}, {"base", params_json(base)}, {"axes", axes_out},
                             {"rows", points.size()}};
    RunOutput r;
    r.out = csv;
    r.files.emplace_back("sweep.csv", csv);
    r.files.emplace_back("manifest.json", dump(ctx.resolved));
    return r;
}

// --- envelope -------------------------------------------------------------------

RunOutput run_envelope(Context& ctx, const json& block) {
    Object o(block, "envelope");
    auto g = config::function_from_json(o.at("g"), Role::State, "envelope.g");
    auto h = config::function_from_json(o.at("h"), Role::State, "envelope.h");
    auto p = config::function_from_json(o.at("p"), Role::Spatial, "envelope.p");
    EnvelopeParams params{ctx.theta, ctx.calibration_c, o.number("radius", 1.0)};
    params.validate();

    std::vector<double> times;
    if (o.has("times") == o.has("t_grid"))
        throw ConfigError("envelope: give exactly one of times or t_grid");
    if (o.has("times")) {
        times = o.numbers("times");
    } else {
        Object tg(o.at("t_grid"), "envelope.t_grid");
        const double start = tg.number("start");
        const double stop = tg.number("stop");
        const int count = tg.integer("count", 16);
        tg.finish();
        if (!(start > 0.0) || !(stop >= start) || count < 1)
            throw ConfigError("envelope.t_grid: need 0 < start <= stop and count >= 1");
        for (int i = 0; i < count; ++i)
            times.push_back(count == 1 ? start
                                       : std::exp(std::log(start) +
                                                  (std::log(stop) - std::log(start)) * i / (count - 1)));
    }
    if (times.empty()) throw ConfigError("envelope.times: no times given");
    for (double t : times)
        if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("envelope.times: times must be > 0");

    std::optional<DyadicLadder> ladder;
    json ladder_json;
    if (o.has("ladder")) {
        Object l(o.at("ladder"), "envelope.ladder");
        auto sups = l.numbers("sups");
        const double t = l.number("time");
        l.finish();
        ladder = DyadicLadder::make(params.radius, sups, t);
        ladder_json = {{"sups", sups}, {"time", t}};
    }
    o.finish();

    json resolved{{"g", config::function_to_json(g)},
                  {"h", config::function_to_json(h)},
                  {"p", config::function_to_json(p)},
                  {"radius", params.radius},
                  {"times", times}};
    if (ladder) resolved["ladder"] = ladder_json;
    ctx.resolved["envelope"] = resolved;

    const GTransform transform(g, h, params.theta);
    const auto bounds = detail::parallel_map<DecayBound>(
        times.size(), ctx.jobs, [&](std::size_t i) { return decay_bound(transform, p, params, times[i]); });

    std::string csv = csv_row({"t", "k", "budget", "bound", "status"});
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& b = bounds[i];
        csv += csv_row({format_double(times[i]), std::to_string(b.k), format_double(b.budget),
                        format_double(b.value), to_string(b.kind)});
    }
    RunOutput r;
    r.out = csv;
    r.files.emplace_back("envelope.csv", csv);
    if (ladder) {
        const auto rep = dyadic_diagnostics(*ladder, g, h, p, params);
        json steps = json::array();
        for (const auto& s : rep.steps) {
            json est = json::array();
            for (const auto& e : s.estimates)
                est.push_back({{"name", e.name},
                               {"lhs", e.lhs},
                               {"rhs", e.rhs},
                               {"ratio", std::isfinite(e.ratio) ? json(e.ratio) : json("inf")},
                               {"holds", e.holds}});
            steps.push_back({{"index", s.index},
                             {"inner_radius", s.inner_radius},
                             {"outer_radius", s.outer_radius},
                             {"inner_sup", s.inner_sup},
                             {"outer_sup", s.outer_sup},
                             {"regime", to_string(s.regime)},
                             {"flat", s.flat},
                             {"satisfied", s.satisfied},
                             {"estimates", est},
                             {"note", s.note}});
        }
        json diag{{"steps", steps},
                  {"max_consistent_c", std::isfinite(rep.max_consistent_c)
                                           ? json(rep.max_consistent_c)
                                           : json("inf")}};
        r.files.emplace_back("diagnostics.json", dump(diag));
    }
    r.files.emplace_back("manifest.json", dump(ctx.resolved));
    return r;
}

// --- simulate -------------------------------------------------------------------

RadialGrid grid_from(Object& parent, const std::string& key, double radius, int cells) {
    if (parent.has(key)) {
        Object g(parent.at(key), parent.child_path(key));
        radius = g.number("radius", radius);
        cells = g.integer("cells", cells);
        g.finish();
    }
    return RadialGrid::make(radius, cells);
}

json grid_json(const RadialGrid& g) { return {{"radius", g.radius}, {"cells", g.cells}}; }

RunOutput run_simulate(Context& ctx, const json& block) {
    Object o(block, "simulate");
    const EquationSpec spec = config::equation_from_json(o.at("equation"), "simulate.equation");
    const RadialGrid grid = grid_from(o, "grid", 16.0, 256);
    SimulationOptions opt;
    opt.t_end = o.number("t_end");
    opt.dt = o.number("dt", 1e-2);
    opt.probe = o.number("probe", 1.0);
    opt.sample_every = o.integer("sample_every", 1);
    opt.implicitness = o.number("implicitness", 1.0);
    if (o.has("snapshots")) opt.snapshot_times = o.numbers("snapshots");
    const int seed = o.integer("seed", 0);

    Object init(o.at("initial"), "simulate.initial");
    const std::string kind = init.string("kind");
    FieldState state;
    json init_json{{"kind", kind}};
    if (kind == "constant") {
        const double v = init.number("value");
        state = constant_state(grid, v);
        init_json["value"] = v;
    } else if (kind == "gaussian") {
        const double a = init.number("amplitude");
        const double w = init.number("width", 1.0);
        if (!(w > 0.0)) throw ConfigError("simulate.initial.width must be > 0");
        for (int j = 0; j < grid.nodes(); ++j) {
            const double x = grid.node(j) / w;
            state.values.push_back(a * std::exp(-x * x));
        }
        init_json["amplitude"] = a;
        init_json["width"] = w;
    } else if (kind == "random") {
        const double a = init.number("amplitude");
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (int j = 0; j < grid.nodes(); ++j) state.values.push_back(a * dist(rng));
        init_json["amplitude"] = a;
    } else if (kind == "values") {
        state.values = init.numbers("values");
        if (static_cast<int>(state.values.size()) != grid.nodes())
            throw ConfigError("simulate.initial.values: need one value per grid node (" +
                              std::to_string(grid.nodes()) + ")");
        init_json["values"] = state.values;
    } else if (kind == "witness") {
        const double a = init.number("a");
        const double rtol = init.number("rtol", 1e-10);
        state = witness_on_grid(spec, a, grid, rtol);
        init_json["a"] = a;
        init_json["rtol"] = rtol;
    } else {
        throw ConfigError("simulate.initial.kind: expected constant, gaussian, random, values or witness");
    }
    init.finish();
    o.finish();
    state.time = 0.0;

    std::sort(opt.snapshot_times.begin(), opt.snapshot_times.end());
    ctx.resolved["simulate"] = {{"equation", config::equation_to_json(spec)},
                                {"grid", grid_json(grid)},
                                {"initial", init_json},
                                {"t_end", opt.t_end},
                                {"dt", opt.dt},
                                {"probe", opt.probe},
                                {"sample_every", opt.sample_every},
                                {"implicitness", opt.implicitness},
                                {"snapshots", opt.snapshot_times},
                                {"seed", seed}};

    const auto res = simulate(spec, grid, state, opt);

    std::string decay = csv_row({"t", "sup_abs", "sup_pos"});
    for (const auto& s : res.curve.samples)
        decay += csv_row({format_double(s.time), format_double(s.sup_abs), format_double(s.sup_pos)});

    RunOutput r;
    r.out = decay;
    r.files.emplace_back("decay.csv", decay);
    json snaps = json::array();
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
        std::string csv = csv_row({"r", "u"});
        for (int j = 0; j < grid.nodes(); ++j)
            csv += csv_row({format_double(grid.node(j)), format_double(res.snapshots[i].values[j])});
        r.files.emplace_back(name, csv);
        snaps.push_back({{"file", name}, {"time", res.snapshots[i].time}});
    }
    json manifest = ctx.resolved;
    manifest["run"] = {{"steps", res.steps},
                       {"min_dt", res.min_dt},
                       {"final_time", res.final_state.time},
                       {"snapshot_files", snaps}};
    r.files.emplace_back("manifest.json", dump(manifest));
    return r;
}

// --- stationary -----------------------------------------------------------------

RunOutput run_stationary(Context& ctx, const json& block) {
    Object o(block, "stationary");
    const EquationSpec spec = config::equation_from_json(o.at("equation"), "stationary.equation");
    const auto range = o.numbers("a_range");
    if (range.size() != 2) throw ConfigError("stationary.a_range: expected [lo, hi]");
    const double r_max = o.number("r_max", kDefaultWitnessRadius);
    WitnessOptions wo;
    wo.scan_points = o.integer("scan_points", wo.scan_points);
    wo.plateau_tolerance = o.number("plateau_tolerance", wo.plateau_tolerance);
    wo.shoot.rtol = o.number("rtol", wo.shoot.rtol);
    wo.shoot.blowup_factor = o.number("blowup_factor", wo.shoot.blowup_factor);
    wo.jobs = ctx.jobs;
    const RadialGrid grid = grid_from(o, "grid", 32.0, 640);
    o.finish();
    if (!(r_max >= grid.radius)) throw ConfigError("stationary: r_max must be >= grid radius");

    ctx.resolved["stationary"] = {{"equation", config::equation_to_json(spec)},
                                  {"a_range", range},
                                  {"r_max", r_max},
                                  {"scan_points", wo.scan_points},
                                  {"plateau_tolerance", wo.plateau_tolerance},
                                  {"rtol", wo.shoot.rtol},
                                  {"blowup_factor", wo.shoot.blowup_factor},
                                  {"grid", grid_json(grid)}};

    const auto witness = find_witness(spec, range[0], range[1], r_max, wo);
    json manifest{{"config", ctx.resolved},
                  {"tolerances",
                   {{"rtol", wo.shoot.rtol},
                    {"blowup_factor", wo.shoot.blowup_factor},
                    {"plateau_tolerance", wo.plateau_tolerance}}}};
    RunOutput r;
    if (witness) {
        const auto& shot = witness->shot;
        const FieldState on_grid = witness_on_grid(spec, witness->initial_value, grid, wo.shoot.rtol);
        manifest["classification"] = to_string(shot.outcome);
        manifest["initial_value"] = witness->initial_value;
        manifest["terminal_value"] = shot.terminal_value;
        manifest["terminal_slope"] = shot.terminal_slope;
        manifest["residual"] = residual(on_grid, spec, grid);
        std::string csv = csv_row({"r", "u", "du_dr"});
        for (const auto& p : shot.profile)
            csv += csv_row({format_double(p.r), format_double(p.u), format_double(p.du)});
        r.files.emplace_back("witness.csv", csv);
    } else {
        manifest["classification"] = "none";
    }
    r.out = dump(manifest);
    r.files.emplace_back("witness_manifest.json", r.out);
    return r;
}

json error_json(const std::string& kind, const std::string& message) {
    return {{"error", kind}, {"message", message}};
}

RunOutput failure(int status, json err) {
    RunOutput r;
    r.status = status;
    r.err = err.dump() + "\n";
    return r;
}

RunOutput dispatch(const std::string& command, const std::string& text, const RunOptions& options) {
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw ConfigError("unknown command '" + command + "'");
    const json doc = config::parse_document(text);
    Object top(doc, "config");
    std::string block_name;
    for (const auto& c : kCommands)
        if (top.has(c)) {
            if (!block_name.empty())
                throw ConfigError("config: exactly one command block is allowed (found " +
                                  block_name + " and " + c + ")");
            block_name = c;
        }
    if (block_name.empty()) throw ConfigError("config: no command block (expected '" + command + "')");
    if (block_name != command)
        throw ConfigError("config: block '" + block_name + "' does not match command '" + command + "'");

    Context ctx;
    ctx.command = command;
    ctx.jobs = options.jobs;
    // config values are read even when overridden so they still pass key checking
    ctx.theta = top.number("theta", 2.0);
    ctx.calibration_c = top.number("calibration_c", 1.0);
    if (options.theta) ctx.theta = *options.theta;
    if (options.calibration_c) ctx.calibration_c = *options.calibration_c;
    if (!(ctx.theta > 1.0) || !std::isfinite(ctx.theta)) throw ConfigError("theta must be > 1");
    if (!(ctx.calibration_c > 0.0) || !std::isfinite(ctx.calibration_c))
        throw ConfigError("calibration_c must be > 0");
    const json& block = top.at(block_name);
    top.finish();
    ctx.resolved = {{"command", command}, {"theta", ctx.theta}, {"calibration_c", ctx.calibration_c}};

    if (command == "check") return run_check(ctx, block);
    if (command == "sweep") return run_sweep(ctx, block);
    if (command == "envelope") return run_envelope(ctx, block);
    if (command == "simulate") return run_simulate(ctx, block);
    return run_stationary(ctx, block);
}

}  // namespace

RunOutput run_command(const std::string& command, const std::string& config_text,
                      const RunOptions& options) {
    try {
        return dispatch(command, config_text, options);
    } catch (const BlowupDetected& e) {
        json err = error_json("blowup", e.what());
        err["time"] = e.time();
        return failure(kBlowup, err);
    } catch (const DivergentTailError& e) {
        return failure(kDivergent, error_json("divergent", e.what()));
    } catch (const ConfigError& e) {
        return failure(kConfig, error_json("config", e.what()));
    } catch (const DomainError& e) {
        return failure(kConfig, error_json("config", e.what()));
    } catch (const std::exception& e) {
        return failure(kInternal, error_json("internal", e.what()));
    }
}

}  // namespace decaylab
