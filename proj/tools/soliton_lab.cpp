// Command-line front end for the soliton laboratory. Every subcommand
// resolves its configuration from defaults, an optional config file, and
// command-line flags (flags win), writes the resolved config next to the
// results, and emits CSV/JSON with 17-significant-digit floats so a rerun
// from the emitted config is byte-identical.

#include "CLI11.hpp"
#include "json.hpp"

#include "dnls/errors.hpp"
#include "dnls/evolve.hpp"
#include "dnls/functionals.hpp"
#include "dnls/params.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectral.hpp"
#include "dnls/stability.hpp"
#include "dnls/variational.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dnls;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

struct CsvWriter {
    std::ofstream f;
    explicit CsvWriter(const fs::path& path) : f(path, std::ios::binary) {
        if (!f)
            throw IoError("cannot open " + path.string() + " for writing");
    }
    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i)
                f << ',';
            f << csv_field(fields[i]);
        }
        f << "\r\n"; // RFC 4180 line ending
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f)
        throw IoError("write failed for " + path.string());
}

void write_json(const fs::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

// flat key-value config with [section] headers; keys stored as section.key
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line without '=': " + line);
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ValidationError("config line with empty key: " + line);
        kv[section.empty() ? key : section + "." + key] =
            trim(line.substr(eq + 1));
    }
    return kv;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ValidationError("config value for " + key +
                              " is not a number: " + v);
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ValidationError("config value for " + key +
                              " is not an integer: " + v);
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, item));
    if (out.empty())
        throw ValidationError("empty list for " + key);
    return out;
}

PerturbKind parse_kind(const std::string& v) {
    if (v == "even")
        return PerturbKind::EvenBump;
    if (v == "odd")
        return PerturbKind::OddBump;
    if (v == "random")
        return PerturbKind::RandomSmooth;
    if (v == "scaling")
        return PerturbKind::Scaling;
    throw ValidationError("unknown perturbation kind: " + v +
                          " (expected even|odd|random|scaling)");
}

EquationForm parse_form(const std::string& v) {
    if (v == "derivative")
        return EquationForm::Derivative;
    if (v == "gauged")
        return EquationForm::Gauged;
    throw ValidationError("unknown equation form: " + v +
                          " (expected derivative|gauged)");
}

const char* region_name(ParamRegion r) {
    switch (r) {
    case ParamRegion::ExponentialInterior:
        return "interior";
    case ParamRegion::AlgebraicBoundary:
        return "algebraic";
    default:
        return "inadmissible";
    }
}

int thread_cap() {
    const char* env = std::getenv("SOLITON_LAB_THREADS");
    int n = env ? std::atoi(env) : 0;
    if (n <= 0)
        n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

// All options of all subcommands; each handler consumes the blocks it
// declares in its resolved config.
struct Opts {
    std::string config_path;

    // params
    std::string b, gamma, omega = "1", c, s;
    // grid
    std::string L, N;
    // evolve
    // form empty selects the per-command default: evolve integrates the
    // derivative equation, stability the gauged one
    std::string dt = "0", T = "1", stride = "100", form, safety = "0.2";
    // experiment
    std::string delta = "0.01", kind = "even", seed = "12345", comoving = "0";
    // subcommand extras
    std::string m = "1";        // converge Sobolev index
    std::string mass;           // massmin constraint
    std::string h = "0";        // hessian step
    std::string tol = "1e-8", max_iters = "20000";
    std::string dir;            // report input directory
    // output
    std::string out_dir = ".", prefix;
};

struct Resolved {
    ModelParams p;
    bool have_b = false;
    double omega = 1.0;
    double c = 0.0;
    bool have_c = false;
};

// b/gamma and c/s are alternatives; giving both members of a pair is an
// error. skip_s leaves c unresolved (converge reads s as a list itself).
Resolved resolve_params(const Opts& o, bool need_c, bool skip_s = false) {
    Resolved r;
    if (!o.b.empty() && !o.gamma.empty())
        throw ValidationError("give --b or --gamma, not both");
    if (!o.b.empty()) {
        r.p = ModelParams::from_b(parse_double("params.b", o.b));
        r.have_b = true;
    } else if (!o.gamma.empty()) {
        r.p = ModelParams::from_gamma(parse_double("params.gamma", o.gamma));
        r.have_b = true;
    }
    r.omega = parse_double("params.omega", o.omega);
    if (!o.c.empty() && !o.s.empty() && !skip_s)
        throw ValidationError("give --c or --s, not both");
    if (!o.c.empty()) {
        r.c = parse_double("params.c", o.c);
        r.have_c = true;
    } else if (!o.s.empty() && !skip_s) {
        r.c = 2.0 * parse_double("params.s", o.s) * std::sqrt(r.omega);
        r.have_c = true;
    }
    if (need_c && !r.have_c)
        throw ValidationError("this subcommand needs --c or --s");
    return r;
}

SpectralGrid resolve_grid(const Opts& o, double defL, int defN) {
    const double L = o.L.empty() ? defL : parse_double("grid.L", o.L);
    const int N = o.N.empty() ? defN : parse_int("grid.N", o.N);
    return SpectralGrid(L, N);
}

struct ConfigBlock {
    std::string section;
    std::vector<std::pair<std::string, std::string>> entries;
};

void write_resolved_config(const fs::path& path, const std::string& subcommand,
                           const std::vector<ConfigBlock>& blocks) {
    std::string text = "[run]\nsubcommand = " + subcommand + "\n";
    for (const auto& b : blocks) {
        text += "\n[" + b.section + "]\n";
        for (const auto& [k, v] : b.entries)
            text += k + " = " + v + "\n";
    }
    write_text(path, text);
}

ConfigBlock params_block(const Resolved& r, bool with_c) {
    ConfigBlock b{"params", {{"b", fmt(r.p.b)}, {"omega", fmt(r.omega)}}};
    if (with_c)
        b.entries.push_back({"c", fmt(r.c)});
    return b;
}

ConfigBlock grid_block(const SpectralGrid& g) {
    return {"grid", {{"L", fmt(g.L())}, {"N", std::to_string(g.N())}}};
}

ConfigBlock output_block(const Opts& o, const std::string& prefix) {
    return {"output", {{"dir", o.out_dir}, {"prefix", prefix}}};
}

json invariant_json(const InvariantRecord& q) {
    json j;
    j["energy"] = q.energy;
    j["mass"] = q.mass;
    j["momentum"] = q.momentum;
    return j;
}

// ---------------------------------------------------------------- handlers

int cmd_profile(const Opts& o) {
    const Resolved r = resolve_params(o, true);
    const SpectralGrid g = resolve_grid(o, 40.0, 2048);
    const std::string prefix = o.prefix.empty() ? "profile" : o.prefix;
    const fs::path dir(o.out_dir);

    const SolitonProfile prof = sample_profile(r.omega, r.c, r.p, g);
    CsvWriter csv(dir / (prefix + ".csv"));
    csv.row({"x", "Phi", "Re_varphi", "Im_varphi"});
    for (int j = 0; j < g.N(); ++j)
        csv.row({fmt(g.x()[j]), fmt(prof.Phi[j]), fmt(prof.varphi[j].real()),
                 fmt(prof.varphi[j].imag())});

    const ClosedFormInvariants ci = closed_invariants(r.omega, r.c, r.p);
    json j;
    j["omega"] = r.omega;
    j["c"] = r.c;
    j["s"] = r.c / (2.0 * std::sqrt(r.omega));
    j["b"] = r.p.b;
    j["gamma"] = r.p.gamma;
    j["region"] = region_name(prof.region);
    j["mass"] = ci.mass;
    j["momentum"] = ci.momentum;
    j["energy"] = ci.energy;
    j["action_d"] = ci.action_d;
    j["alpha"] = ci.alpha;
    write_json(dir / (prefix + ".json"), j);

    write_resolved_config(dir / (prefix + "_config.txt"), "profile",
                          {params_block(r, true), grid_block(g),
                           output_block(o, prefix)});
    return 0;
}

int cmd_invariants(const Opts& o) {
    const Resolved r = resolve_params(o, true);
    const SpectralGrid g = resolve_grid(o, 40.0, 2048);
    const std::string prefix = o.prefix.empty() ? "invariants" : o.prefix;
    const fs::path dir(o.out_dir);

    const SolitonProfile prof = sample_profile(r.omega, r.c, r.p, g);
    const ClosedFormInvariants ci = closed_invariants(r.omega, r.c, r.p);
    const InvariantRecord qu = invariants_u(g, prof.dnls, r.p);
    const InvariantRecord qv = invariants_v(g, prof.varphi, r.p);

    json j;
    j["omega"] = r.omega;
    j["c"] = r.c;
    j["b"] = r.p.b;
    j["gamma"] = r.p.gamma;
    j["region"] = region_name(prof.region);
    j["closed"] = {{"mass", ci.mass},
                   {"momentum", ci.momentum},
                   {"energy", ci.energy},
                   {"action_d", ci.action_d}};
    j["derivative_gauge"] = invariant_json(qu);
    j["gauged"] = invariant_json(qv);
    j["abs_error"] = {
        {"mass_u", std::abs(qu.mass - ci.mass)},
        {"momentum_u", std::abs(qu.momentum - ci.momentum)},
        {"energy_u", std::abs(qu.energy - ci.energy)},
        {"mass_v", std::abs(qv.mass - ci.mass)},
        {"momentum_v", std::abs(qv.momentum - ci.momentum)},
        {"energy_v", std::abs(qv.energy - ci.energy)},
    };
    write_json(dir / (prefix + ".json"), j);

    write_resolved_config(dir / (prefix + "_config.txt"), "invariants",
                          {params_block(r, true), grid_block(g),
                           output_block(o, prefix)});
    return 0;
}

int cmd_hessian(const Opts& o) {
    const Resolved r = resolve_params(o, true);
    const std::string prefix = o.prefix.empty() ? "hessian" : o.prefix;
    const fs::path dir(o.out_dir);
    const double h = parse_double("hessian.step", o.h);

    const HessianResult hr = hessian_d(r.omega, r.c, r.p, h);
    json j;
    j["omega"] = r.omega;
    j["c"] = r.c;
    j["b"] = r.p.b;
    j["gamma"] = r.p.gamma;
    j["d_omega_omega"] = hr.matrix(0, 0);
    j["d_omega_c"] = hr.matrix(0, 1);
    j["d_c_c"] = hr.matrix(1, 1);
    j["fd_det"] = hr.fd_det;
    j["closed_det"] = hr.closed_det;
    j["dmass_domega"] = dmass_domega_closed(r.omega, r.c, r.p);
    write_json(dir / (prefix + ".json"), j);

    write_resolved_config(dir / (prefix + "_config.txt"), "hessian",
                          {params_block(r, true),
                           {"hessian", {{"step", fmt(h)}}},
                           output_block(o, prefix)});
    return 0;
}

int cmd_sstar(const Opts& o) {
    Resolved r = resolve_params(o, false);
    if (!r.have_b)
        throw ValidationError("sstar needs --b or --gamma");
    const std::string prefix = o.prefix.empty() ? "sstar" : o.prefix;
    const fs::path dir(o.out_dir);

    json j;
    j["b"] = r.p.b;
    j["gamma"] = r.p.gamma;
    if (r.p.b > 0.0) {
        const double s = s_star(r.p.b);
        j["s_star"] = s;
        j["momentum_at_s_star"] = momentum_closed(1.0, 2.0 * s, r.p);
        j["mass_at_s_star"] = mass_closed(1.0, 2.0 * s, r.p);
    } else {
        // for gamma <= 0 the analogous distinguished velocity is the right
        // endpoint of the existence region
        j["s_star"] = nullptr;
        j["s_star_boundary"] =
            r.p.gamma <= 0.0 ? json(r.p.s_star_boundary()) : json(nullptr);
    }
    write_json(dir / (prefix + ".json"), j);

    write_resolved_config(dir / (prefix + "_config.txt"), "sstar",
                          {{"params", {{"b", fmt(r.p.b)}}},
                           output_block(o, prefix)});
    return 0;
}

int cmd_threshold(const Opts& o) {
    Resolved r = resolve_params(o, false);
    if (!r.have_b)
        throw ValidationError("threshold needs --b or --gamma");
    const std::string prefix = o.prefix.empty() ? "threshold" : o.prefix;
    const fs::path dir(o.out_dir);

    json j;
    j["b"] = r.p.b;
    j["gamma"] = r.p.gamma;
    j["mass_threshold"] = mass_threshold(r.p.b);
    write_json(dir / (prefix + ".json"), j);

    write_resolved_config(dir / (prefix + "_config.txt"), "threshold",
                          {{"params", {{"b", fmt(r.p.b)}}},
                           output_block(o, prefix)});
    return 0;
}

int cmd_converge(const Opts& o) {
    Resolved r = resolve_params(o, false, true);
    if (!r.have_b)
        throw ValidationError("converge needs --b or --gamma");
    if (o.s.empty())
        throw ValidationError("converge needs --s with a comma list, e.g. "
                              "--s 0.9,0.99,0.999");
    const std::vector<double> s_list = parse_list("params.s", o.s);
    const int m = parse_int("converge.m", o.m);
    const SpectralGrid g = resolve_grid(o, 400.0, 16384);
    const std::string prefix = o.prefix.empty() ? "converge" : o.prefix;
    const fs::path dir(o.out_dir);

    const std::vector<double> dist = converge_to_algebraic(s_list, m, r.p, g);

    CsvWriter csv(dir / (prefix + ".csv"));
    csv.row({"s", "m", "distance"});
    for (std::size_t i = 0; i < s_list.size(); ++i)
        csv.row({fmt(s_list[i]), std::to_string(m), fmt(dist[i])});

    bool decreasing = true;
    for (std::size_t i = 1; i < dist.size(); ++i)
        decreasing = decreasing && dist[i] < dist[i - 1];
    json j;
    j["b"] = r.p.b;
    j["m"] = m;
    j["strictly_decreasing"] = decreasing;
    write_json(dir / (prefix + ".json"), j);

    std::string slist = fmt(s_list[0]);
    for (std::size_t i = 1; i < s_list.size(); ++i)
        slist += "," + fmt(s_list[i]);
    write_resolved_config(dir / (prefix + "_config.txt"), "converge",
                          {{"params", {{"b", fmt(r.p.b)}, {"s", slist}}},
                           grid_block(g),
                           {"converge", {{"m", std::to_string(m)}}},
                           output_block(o, prefix)});
    return 0;
}

ConfigBlock evolve_block(const EvolveConfig& cfg) {
    return {"evolve",
            {{"dt", fmt(cfg.dt)},
             {"T", fmt(cfg.t_final)},
             {"stride", std::to_string(cfg.snapshot_stride)},
             {"form",
              cfg.equation == EquationForm::Derivative ? "derivative"
                                                       : "gauged"},
             {"safety", fmt(cfg.safety)}}};
}

int cmd_evolve(const Opts& o) {
    const Resolved r = resolve_params(o, true);
    const SpectralGrid g = resolve_grid(o, 40.0, 2048);
    const std::string prefix = o.prefix.empty() ? "evolve" : o.prefix;
    const fs::path dir(o.out_dir);

    EvolveConfig cfg;
    cfg.params = r.p;
    cfg.equation = parse_form(o.form.empty() ? "derivative" : o.form);
    cfg.dt = parse_double("evolve.dt", o.dt);
    cfg.t_final = parse_double("evolve.T", o.T);
    cfg.snapshot_stride = parse_int("evolve.stride", o.stride);
    cfg.safety = parse_double("evolve.safety", o.safety);

    const SolitonProfile prof = sample_profile(r.omega, r.c, r.p, g);
    const CArray& u0 =
        cfg.equation == EquationForm::Derivative ? prof.dnls : prof.varphi;
    const Trajectory traj = run(g, u0, cfg);

    CsvWriter csv(dir / (prefix + ".csv"));
    csv.row({"t", "energy", "mass", "momentum", "h1_error", "guarded"});
    double final_err = 0.0;
    for (const Snapshot& s : traj.snapshots) {
        const InvariantRecord q = cfg.equation == EquationForm::Derivative
                                      ? invariants_u(g, s.field, r.p)
                                      : invariants_v(g, s.field, r.p);
        const CArray exact = std::exp(Complex(0.0, r.omega * s.t)) *
                             translate(g, u0, r.c * s.t);
        final_err = hm_norm(g, CArray(s.field - exact), 1);
        csv.row({fmt(s.t), fmt(q.energy), fmt(q.mass), fmt(q.momentum),
                 fmt(final_err), s.guarded ? "1" : "0"});
    }

    json j;
    j["blew_up"] = traj.blew_up;
    j["energy_drift"] = traj.energy_drift;
    j["mass_drift"] = traj.mass_drift;
    j["momentum_drift"] = traj.momentum_drift;
    j["final_h1_error"] = final_err;
    j["snapshots"] = traj.snapshots.size();
    write_json(dir / (prefix + ".json"), j);

    // the config echoes the step actually used, so a rerun repeats it even
    // if it was auto-selected here
    EvolveConfig echo = cfg;
    if (echo.dt <= 0.0)
        echo.dt = default_dt(g, cfg);
    write_resolved_config(dir / (prefix + "_config.txt"), "evolve",
                          {params_block(r, true), grid_block(g),
                           evolve_block(echo), output_block(o, prefix)});
    return traj.blew_up ? 3 : 0;
}

int cmd_stability(const Opts& o) {
    const Resolved r = resolve_params(o, true);
    if (!r.have_b)
        throw ValidationError("stability needs --b or --gamma");
    const std::string prefix = o.prefix.empty() ? "stability" : o.prefix;
    const fs::path dir(o.out_dir);

    StabilityConfig cfg;
    if (!o.L.empty() || !o.N.empty())
        cfg.grid = resolve_grid(o, 40.0, 2048);
    cfg.equation = parse_form(o.form.empty() ? "gauged" : o.form);
    cfg.dt = parse_double("evolve.dt", o.dt);
    cfg.snapshot_stride = parse_int("evolve.stride", o.stride);
    cfg.safety = parse_double("evolve.safety", o.safety);
    cfg.comoving = parse_int("experiment.comoving", o.comoving) != 0;

    const double delta = parse_double("experiment.delta", o.delta);
    const PerturbKind kind = parse_kind(o.kind);
    const auto seed =
        static_cast<std::uint64_t>(parse_int("experiment.seed", o.seed));
    const double T = parse_double("evolve.T", o.T);

    const StabilityReport rep = stability_experiment(
        r.p.b, r.omega, r.c, delta, kind, T, cfg, seed);

    CsvWriter csv(dir / (prefix + ".csv"));
    csv.row({"t", "distance", "theta", "shift", "k_sign", "jc"});
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        csv.row({fmt(rep.times[i]), fmt(rep.distance[i]), fmt(rep.theta[i]),
                 fmt(rep.shift[i]),
                 i < rep.k_sign.size() ? std::to_string(rep.k_sign[i]) : "",
                 i < rep.jc_series.size() ? fmt(rep.jc_series[i]) : ""});

    json j;
    j["b"] = rep.b;
    j["omega"] = rep.omega;
    j["c"] = rep.c;
    j["delta"] = rep.delta;
    j["kind"] = o.kind;
    j["seed"] = rep.seed;
    j["equation"] =
        rep.equation == EquationForm::Derivative ? "derivative" : "gauged";
    j["sup_distance"] = rep.sup_distance;
    j["ratio"] = rep.ratio;
    j["blew_up"] = rep.blew_up;
    j["valid"] = rep.valid;
    j["energy_drift"] = rep.energy_drift;
    j["mass_drift"] = rep.mass_drift;
    j["momentum_drift"] = rep.momentum_drift;
    j["k_sign_constant"] = rep.k_sign_constant;
    json cj;
    cj["applicable"] = rep.corridor.applicable;
    cj["case_index"] = rep.corridor.case_index;
    cj["epsilon"] = rep.corridor.epsilon;
    cj["margin_min"] = rep.corridor.margin_min;
    cj["initial_member"] = rep.corridor.initial_member;
    cj["held"] = rep.corridor.held;
    cj["slack_min"] = rep.corridor.slack_min;
    cj["k_signs_held"] = rep.corridor.k_signs_held;
    cj["k_margin_min"] = rep.corridor.k_margin_min;
    j["corridor"] = cj;
    write_json(dir / (prefix + ".json"), j);

    const SpectralGrid& g = cfg.grid;
    std::vector<ConfigBlock> blocks = {params_block(r, true)};
    if (g.N() > 0)
        blocks.push_back(grid_block(g));
    blocks.push_back({"evolve",
                      {{"dt", fmt(cfg.dt)},
                       {"T", fmt(T)},
                       {"stride", std::to_string(cfg.snapshot_stride)},
                       {"form", cfg.equation == EquationForm::Derivative
                                    ? "derivative"
                                    : "gauged"},
                       {"safety", fmt(cfg.safety)}}});
    blocks.push_back({"experiment",
                      {{"delta", fmt(delta)},
                       {"kind", o.kind},
                       {"seed", std::to_string(seed)},
                       {"comoving", cfg.comoving ? "1" : "0"}}});
    blocks.push_back(output_block(o, prefix));
    write_resolved_config(dir / (prefix + "_config.txt"), "stability", blocks);
    return rep.blew_up ? 3 : 0;
}

int cmd_nehari(const Opts& o) {
    const Resolved r = resolve_params(o, true);
    const SpectralGrid g = resolve_grid(o, 40.0, 2048);
    const std::string prefix = o.prefix.empty() ? "nehari" : o.prefix;
    const fs::path dir(o.out_dir);
    const double tol = parse_double("nehari.tol", o.tol);
    const int iters = parse_int("nehari.max_iters", o.max_iters);

    const NehariResult res = nehari_minimize(g, r.omega, r.c, r.p, iters, tol);
    const double d = action_d(r.omega, r.c, r.p);
    const SolitonProfile prof = sample_profile(r.omega, r.c, r.p, g);
    const bool boundary = prof.region == ParamRegion::AlgebraicBoundary;
    const OrbitalFit fit =
        boundary ? orbital_distance_x(g, res.minimizer, prof.varphi, r.omega,
                                      r.c)
                 : orbital_distance_to(g, res.minimizer, prof.varphi);

    json j;
    j["omega"] = r.omega;
    j["c"] = r.c;
    j["b"] = r.p.b;
    j["gamma"] = r.p.gamma;
    j["value"] = res.value;
    j["action_d"] = d;
    j["rel_gap"] = std::abs(res.value - d) / std::abs(d);
    j["iterations"] = res.iterations;
    j["residual"] = res.residual;
    j["converged"] = res.converged;
    j["orbit_metric"] = boundary ? "x_form" : "h1";
    j["orbit_distance"] = fit.distance;
    write_json(dir / (prefix + ".json"), j);

    write_resolved_config(
        dir / (prefix + "_config.txt"), "nehari",
        {params_block(r, true), grid_block(g),
         {"nehari", {{"tol", fmt(tol)}, {"max_iters", std::to_string(iters)}}},
         output_block(o, prefix)});
    return res.converged ? 0 : 3;
}

int cmd_massmin(const Opts& o) {
    const Resolved r = resolve_params(o, true);
    if (o.mass.empty())
        throw ValidationError("massmin needs --mass");
    const double m = parse_double("massmin.mass", o.mass);
    const SpectralGrid g = resolve_grid(o, 40.0, 2048);
    const std::string prefix = o.prefix.empty() ? "massmin" : o.prefix;
    const fs::path dir(o.out_dir);
    const double tol = parse_double("nehari.tol", o.tol);
    const int iters = parse_int("nehari.max_iters", o.max_iters);

    const MassConstrainedResult res =
        mass_constrained_minimize(g, r.c, m, r.p, iters, tol);

    json j;
    j["c"] = r.c;
    j["b"] = r.p.b;
    j["gamma"] = r.p.gamma;
    j["mass"] = m;
    j["value"] = res.value;
    j["multiplier"] = res.multiplier;
    j["omega_tilde"] = res.omega_tilde;
    j["iterations"] = res.iterations;
    j["residual"] = res.residual;
    j["converged"] = res.converged;
    if (admissible(res.omega_tilde, r.c, r.p)) {
        const SolitonProfile prof =
            sample_profile(res.omega_tilde, r.c, r.p, g);
        const OrbitalFit fit = orbital_distance_to(
            g, res.minimizer, prof.Phi.cast<Complex>());
        j["profile_distance"] = fit.distance;
    } else {
        j["profile_distance"] = nullptr;
    }
    write_json(dir / (prefix + ".json"), j);

    write_resolved_config(
        dir / (prefix + "_config.txt"), "massmin",
        {{"params", {{"b", fmt(r.p.b)}, {"c", fmt(r.c)}}}, grid_block(g),
         {"massmin", {{"mass", fmt(m)}}},
         {"nehari", {{"tol", fmt(tol)}, {"max_iters", std::to_string(iters)}}},
         output_block(o, prefix)});
    return res.converged ? 0 : 3;
}

// flatten scalar leaves to dotted paths for the aggregate table
void flatten(const json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_number_float()) {
        out.push_back({path, fmt(j.get<double>())});
    } else if (j.is_null()) {
        out.push_back({path, ""});
    } else {
        out.push_back({path, j.dump()});
    }
}

int cmd_report(const Opts& o) {
    const std::string in_dir = o.dir.empty() ? o.out_dir : o.dir;
    const std::string prefix = o.prefix.empty() ? "report" : o.prefix;
    const fs::path dir(o.out_dir);

    std::vector<fs::path> files;
    std::error_code ec_fs;
    for (const auto& e : fs::directory_iterator(in_dir, ec_fs))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path());
    if (ec_fs)
        throw IoError("cannot list directory " + in_dir);
    std::sort(files.begin(), files.end());

    // parse concurrently, capped by SOLITON_LAB_THREADS
    std::vector<std::vector<std::pair<std::string, std::string>>> rows(
        files.size());
    std::vector<std::string> errors(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= files.size())
                return;
            try {
                std::ifstream f(files[i]);
                const json j = json::parse(f);
                flatten(j, "", rows[i]);
            } catch (const std::exception& ex) {
                errors[i] = ex.what();
            }
        }
    };
    const int nt =
        std::min<int>(thread_cap(), std::max<std::size_t>(files.size(), 1));
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();

    CsvWriter csv(dir / (prefix + ".csv"));
    csv.row({"file", "key", "value"});
    int bad = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const std::string name = files[i].filename().string();
        if (!errors[i].empty()) {
            csv.row({name, "parse_error", errors[i]});
            ++bad;
            continue;
        }
        for (const auto& [k, v] : rows[i])
            csv.row({name, k, v});
    }

    write_resolved_config(dir / (prefix + "_config.txt"), "report",
                          {{"report", {{"dir", in_dir}}},
                           output_block(o, prefix)});
    if (files.empty())
        throw ValidationError("no .json files found in " + in_dir);
    return bad > 0 ? 3 : 0;
}

// --------------------------------------------------------------- main glue

struct Bound {
    CLI::Option* opt;
    std::string key;
    std::string* target;
};

void bind_opt(std::vector<Bound>& binds, CLI::App* cmd, std::string* target,
          const std::string& flag, const std::string& key,
          const std::string& help) {
    CLI::Option* opt = cmd->add_option(flag, *target, help);
    binds.push_back({opt, key, target});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for derivative NLS solitons"};
    app.require_subcommand(1);

    Opts o;
    std::vector<Bound> binds;

    const auto add_common = [&](CLI::App* cmd, bool grid, bool evolve,
                                bool experiment) {
        cmd->add_option("--config", o.config_path,
                        "flat key-value config file; flags override it");
        bind_opt(binds, cmd, &o.b, "--b", "params.b", "quintic coefficient b");
        bind_opt(binds, cmd, &o.gamma, "--gamma", "params.gamma",
             "gamma = 1 + 16b/3 (alternative to --b)");
        bind_opt(binds, cmd, &o.omega, "--omega", "params.omega", "frequency");
        bind_opt(binds, cmd, &o.c, "--c", "params.c", "velocity");
        bind_opt(binds, cmd, &o.s, "--s", "params.s",
             "normalized velocity c/(2 sqrt(omega)); list for converge");
        if (grid) {
            bind_opt(binds, cmd, &o.L, "--L", "grid.L", "half window length");
            bind_opt(binds, cmd, &o.N, "--N", "grid.N", "grid points, power of 2");
        }
        if (evolve) {
            bind_opt(binds, cmd, &o.dt, "--dt", "evolve.dt",
                 "time step; 0 auto-selects");
            bind_opt(binds, cmd, &o.T, "--T", "evolve.T", "final time");
            bind_opt(binds, cmd, &o.stride, "--stride", "evolve.stride",
                 "steps between snapshots");
            bind_opt(binds, cmd, &o.form, "--form", "evolve.form",
                 "derivative|gauged");
            bind_opt(binds, cmd, &o.safety, "--safety", "evolve.safety",
                 "explicit-substep ceiling factor");
        }
        if (experiment) {
            bind_opt(binds, cmd, &o.delta, "--delta", "experiment.delta",
                 "perturbation H^1 size");
            bind_opt(binds, cmd, &o.kind, "--kind", "experiment.kind",
                 "even|odd|random|scaling");
            bind_opt(binds, cmd, &o.seed, "--seed", "experiment.seed",
                 "random perturbation seed");
            bind_opt(binds, cmd, &o.comoving, "--comoving", "experiment.comoving",
                 "recenter snapshots by the fitted shift (0|1)");
        }
        bind_opt(binds, cmd, &o.out_dir, "--out", "output.dir",
             "output directory");
        bind_opt(binds, cmd, &o.prefix, "--prefix", "output.prefix",
             "output file prefix");
    };

    CLI::App* c_profile = app.add_subcommand(
        "profile", "sample a soliton profile and its closed-form invariants");
    add_common(c_profile, true, false, false);
    CLI::App* c_invariants = app.add_subcommand(
        "invariants", "closed forms vs quadrature in both gauges");
    add_common(c_invariants, true, false, false);
    CLI::App* c_hessian =
        app.add_subcommand("hessian", "d-Hessian: finite difference vs closed "
                                      "determinant");
    add_common(c_hessian, false, false, false);
    bind_opt(binds, c_hessian, &o.h, "--step", "hessian.step",
         "finite-difference step; 0 auto-selects");
    CLI::App* c_sstar = app.add_subcommand(
        "sstar", "distinguished velocity: momentum zero (b > 0)");
    add_common(c_sstar, false, false, false);
    CLI::App* c_threshold =
        app.add_subcommand("threshold", "mass threshold M*(b)");
    add_common(c_threshold, false, false, false);
    CLI::App* c_converge = app.add_subcommand(
        "converge", "H^m convergence to the algebraic profile along s -> 1");
    add_common(c_converge, true, false, false);
    bind_opt(binds, c_converge, &o.m, "--m", "converge.m", "Sobolev index");
    CLI::App* c_evolve = app.add_subcommand(
        "evolve", "integrate soliton data and track the exact solution");
    add_common(c_evolve, true, true, false);
    CLI::App* c_stability = app.add_subcommand(
        "stability", "perturb a soliton and track the orbital distance");
    add_common(c_stability, true, true, true);
    CLI::App* c_nehari = app.add_subcommand(
        "nehari", "action minimization on the Nehari manifold");
    add_common(c_nehari, true, false, false);
    bind_opt(binds, c_nehari, &o.tol, "--tol", "nehari.tol",
         "descent stopping tolerance");
    bind_opt(binds, c_nehari, &o.max_iters, "--max-iters", "nehari.max_iters",
         "descent iteration cap");
    CLI::App* c_massmin = app.add_subcommand(
        "massmin", "energy minimization at fixed mass");
    add_common(c_massmin, true, false, false);
    bind_opt(binds, c_massmin, &o.mass, "--mass", "massmin.mass",
         "mass constraint");
    bind_opt(binds, c_massmin, &o.tol, "--tol", "nehari.tol",
         "descent stopping tolerance");
    bind_opt(binds, c_massmin, &o.max_iters, "--max-iters", "nehari.max_iters",
         "descent iteration cap");
    CLI::App* c_report = app.add_subcommand(
        "report", "aggregate a directory of JSON results into one table");
    c_report->add_option("--config", o.config_path,
                         "flat key-value config file; flags override it");
    bind_opt(binds, c_report, &o.dir, "--dir", "report.dir", "input directory");
    bind_opt(binds, c_report, &o.out_dir, "--out", "output.dir",
         "output directory");
    bind_opt(binds, c_report, &o.prefix, "--prefix", "output.prefix",
         "output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        // config file fills every option the command line left untouched;
        // options of different subcommands share targets, so a key counts as
        // given when any option bound to it was parsed
        if (!o.config_path.empty()) {
            const auto kv = read_config(o.config_path);
            std::map<std::string, bool> given;
            for (const Bound& bd : binds)
                if (bd.opt->count() > 0)
                    given[bd.key] = true;
            for (const Bound& bd : binds)
                if (!given[bd.key]) {
                    const auto it = kv.find(bd.key);
                    if (it != kv.end())
                        *bd.target = it->second;
                }
        }

        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (!fs::exists(o.out_dir))
            throw IoError("output directory does not exist: " + o.out_dir);

        if (name == "profile")
            return cmd_profile(o);
        if (name == "invariants")
            return cmd_invariants(o);
        if (name == "hessian")
            return cmd_hessian(o);
        if (name == "sstar")
            return cmd_sstar(o);
        if (name == "threshold")
            return cmd_threshold(o);
        if (name == "converge")
            return cmd_converge(o);
        if (name == "evolve")
            return cmd_evolve(o);
        if (name == "stability")
            return cmd_stability(o);
        if (name == "nehari")
            return cmd_nehari(o);
        if (name == "massmin")
            return cmd_massmin(o);
        if (name == "report")
            return cmd_report(o);
        throw ValidationError("unknown subcommand " + name);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
