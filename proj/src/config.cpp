#include "degenflow/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace degenflow {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError("config: expected an object at " + path);
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key))
            throw ConfigError("config: unknown key \"" + path + key + "\"");
    }
}

double get_num(const json& j, const std::string& path, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number())
        throw ConfigError("config: \"" + path + key + "\" must be a number");
    return j.at(key).get<double>();
}

double require_num(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key))
        throw ConfigError("config: missing required key \"" + path + key + "\"");
    if (!j.at(key).is_number())
        throw ConfigError("config: \"" + path + key + "\" must be a number");
    return j.at(key).get<double>();
}

Coefficients parse_coefficients(const json& j, const std::string& path) {
    check_keys(j, path,
               {"eta0", "alpha", "kappa0", "beta", "sink_a", "sink_exp", "eps_floor"});
    Coefficients c;
    c.eta0 = get_num(j, path, "eta0", 1.0);
    c.alpha = get_num(j, path, "alpha", 1.0);
    c.kappa0 = get_num(j, path, "kappa0", 1.0);
    c.beta = get_num(j, path, "beta", 1.0);
    c.sink_a = get_num(j, path, "sink_a", 0.0);
    c.sink_exp = get_num(j, path, "sink_exp", 1.5);
    c.eps_floor = get_num(j, path, "eps_floor", 0.0);
    c.validate();
    return c;
}

SolverConfig parse_solver(const json& j, const std::string& path) {
    check_keys(j, path,
               {"form", "cfl", "w_clamp_tol", "t_end", "snapshot_times", "coefficients", "law",
                "law_B"});
    SolverConfig cfg;
    if (j.contains("form")) {
        const std::string f = j.at("form").get<std::string>();
        if (f == "primitive")
            cfg.form = SolverForm::primitive;
        else if (f == "energy")
            cfg.form = SolverForm::energy;
        else
            throw ConfigError("config: \"" + path + "form\" must be primitive or energy");
    }
    cfg.cfl = get_num(j, path, "cfl", 0.45);
    cfg.w_clamp_tol = get_num(j, path, "w_clamp_tol", 0.0);
    cfg.t_end = require_num(j, path, "t_end");
    if (j.contains("snapshot_times")) {
        if (!j.at("snapshot_times").is_array())
            throw ConfigError("config: \"" + path + "snapshot_times\" must be an array");
        for (const auto& v : j.at("snapshot_times")) cfg.snapshot_times.push_back(v.get<double>());
    }
    Coefficients coeffs;
    if (j.contains("coefficients"))
        coeffs = parse_coefficients(j.at("coefficients"), path + "coefficients.");
    std::string law = "power";
    if (j.contains("law")) law = j.at("law").get<std::string>();
    if (law == "power") {
        cfg.law = CoefficientLaw::power(coeffs);
    } else if (law == "piecewise_44") {
        cfg.law = CoefficientLaw::piecewise44(require_num(j, path, "law_B"), coeffs.sink_a);
    } else {
        throw ConfigError("config: \"" + path + "law\" must be power or piecewise_44");
    }
    cfg.validate();
    return cfg;
}

InitialSpec parse_initial(const json& j, const std::string& path) {
    check_keys(j, path,
               {"preset", "B", "x_star", "t_star", "E0", "ell", "v_coeffs", "w_coeffs", "clip"});
    InitialSpec spec;
    if (!j.contains("preset"))
        throw ConfigError("config: missing required key \"" + path + "preset\"");
    const std::string p = j.at("preset").get<std::string>();
    if (p == "compact_45")
        spec.preset = InitialSpec::Preset::compact_45;
    else if (p == "barenblatt")
        spec.preset = InitialSpec::Preset::barenblatt;
    else if (p == "sec723")
        spec.preset = InitialSpec::Preset::sec723;
    else if (p == "example24")
        spec.preset = InitialSpec::Preset::example24;
    else if (p == "custom_polynomial")
        spec.preset = InitialSpec::Preset::custom_polynomial;
    else
        throw ConfigError("config: unknown preset \"" + p + "\" at " + path + "preset");

    spec.B = get_num(j, path, "B", 1.0);
    spec.x_star = get_num(j, path, "x_star", 2.0);
    spec.t_star = get_num(j, path, "t_star", 0.25);
    spec.E0 = get_num(j, path, "E0", 1.0);
    spec.ell = get_num(j, path, "ell", 8.0);
    if (j.contains("clip")) spec.clip = j.at("clip").get<bool>();
    if (j.contains("v_coeffs"))
        for (const auto& v : j.at("v_coeffs")) spec.v_coeffs.push_back(v.get<double>());
    if (j.contains("w_coeffs"))
        for (const auto& v : j.at("w_coeffs")) spec.w_coeffs.push_back(v.get<double>());

    if (spec.preset == InitialSpec::Preset::compact_45) {
        CompactSolutionParams cp{spec.B, spec.x_star, spec.t_star};
        cp.validate(); // enforces the lifespan condition t* < x*^2/(4B^2)
    }
    if (spec.preset == InitialSpec::Preset::custom_polynomial &&
        spec.v_coeffs.empty() && spec.w_coeffs.empty())
        throw ConfigError("config: custom_polynomial needs v_coeffs or w_coeffs");
    return spec;
}

FrontRunConfig parse_front(const json& j, const std::string& path) {
    check_keys(j, path,
               {"alpha", "beta", "eta0", "kappa0", "v_star", "w_star", "c_F", "z0", "V0", "W0",
                "z_max", "W_floor"});
    FrontRunConfig f;
    f.params.alpha = get_num(j, path, "alpha", 1.0);
    f.params.beta = get_num(j, path, "beta", 1.0);
    f.params.eta0 = get_num(j, path, "eta0", 1.0);
    f.params.kappa0 = get_num(j, path, "kappa0", 1.0);
    f.params.v_star = get_num(j, path, "v_star", 0.0);
    f.params.w_star = get_num(j, path, "w_star", 0.0);
    f.params.c_F = get_num(j, path, "c_F", 1.0);
    f.params.validate();
    f.z0 = get_num(j, path, "z0", 0.0);
    f.V0 = get_num(j, path, "V0", 0.0);
    f.W0 = require_num(j, path, "W0");
    f.z_max = get_num(j, path, "z_max", f.z0 + 5.0);
    f.W_floor = get_num(j, path, "W_floor", 1e-12 * f.W0);
    return f;
}

SteadyRunConfig parse_steady(const json& j, const std::string& path) {
    check_keys(j, path, {"V0", "E0", "d", "coefficients"});
    SteadyRunConfig s;
    s.V0 = get_num(j, path, "V0", 0.0);
    s.E0 = require_num(j, path, "E0");
    s.d = static_cast<int>(get_num(j, path, "d", 1.0));
    if (j.contains("coefficients"))
        s.coeffs = parse_coefficients(j.at("coefficients"), path + "coefficients.");
    return s;
}

RescaleRunConfig parse_rescale(const json& j, const std::string& path) {
    check_keys(j, path,
               {"theta", "d", "beta", "y_min", "y_max", "y_cells", "snapshot_dir", "target_V0",
                "target_E0", "coefficients"});
    RescaleRunConfig r;
    r.spec.theta = get_num(j, path, "theta", 1.0);
    r.spec.d = static_cast<int>(get_num(j, path, "d", 1.0));
    r.spec.beta = get_num(j, path, "beta", 1.0);
    r.spec.y_min = get_num(j, path, "y_min", -10.0);
    r.spec.y_max = get_num(j, path, "y_max", 10.0);
    r.spec.y_cells = static_cast<std::size_t>(get_num(j, path, "y_cells", 512.0));
    r.spec.validate();
    if (!j.contains("snapshot_dir"))
        throw ConfigError("config: missing required key \"" + path + "snapshot_dir\"");
    r.snapshot_dir = j.at("snapshot_dir").get<std::string>();
    if (j.contains("target_V0")) r.target_V0 = j.at("target_V0").get<double>();
    if (j.contains("target_E0")) r.target_E0 = j.at("target_E0").get<double>();
    if (j.contains("coefficients"))
        r.coeffs = parse_coefficients(j.at("coefficients"), path + "coefficients.");
    return r;
}

ExactRunConfig parse_exact(const json& j, const std::string& path) {
    check_keys(j, path,
               {"solution", "B", "x_star", "t_star", "E0", "beta", "kappa0", "alpha", "c_F",
                "t_plus", "t_minus", "times", "domain", "samples"});
    ExactRunConfig e;
    if (!j.contains("solution"))
        throw ConfigError("config: missing required key \"" + path + "solution\"");
    const std::string s = j.at("solution").get<std::string>();
    if (s == "compact_45")
        e.solution = ExactRunConfig::Solution::compact_45;
    else if (s == "barenblatt")
        e.solution = ExactRunConfig::Solution::barenblatt;
    else if (s == "similarity_ex22")
        e.solution = ExactRunConfig::Solution::similarity_ex22;
    else if (s == "front_pme")
        e.solution = ExactRunConfig::Solution::front_pme;
    else if (s == "front_coupled")
        e.solution = ExactRunConfig::Solution::front_coupled;
    else if (s == "delayed")
        e.solution = ExactRunConfig::Solution::delayed;
    else
        throw ConfigError("config: unknown solution \"" + s + "\" at " + path + "solution");
    e.B = get_num(j, path, "B", 1.0);
    e.x_star = get_num(j, path, "x_star", 2.0);
    e.t_star = get_num(j, path, "t_star", 0.25);
    e.E0 = get_num(j, path, "E0", 1.0);
    e.beta = get_num(j, path, "beta", 1.0);
    e.kappa0 = get_num(j, path, "kappa0", 1.0);
    e.alpha = get_num(j, path, "alpha", 1.0);
    e.c_F = get_num(j, path, "c_F", 1.0);
    e.t_plus = get_num(j, path, "t_plus", 0.0);
    e.t_minus = get_num(j, path, "t_minus", 0.0);
    if (j.contains("times")) {
        e.times.clear();
        for (const auto& v : j.at("times")) e.times.push_back(v.get<double>());
    }
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        if (!d.is_array() || d.size() != 2)
            throw ConfigError("config: \"" + path + "domain\" must be [x_left, x_right]");
        e.x_left = d[0].get<double>();
        e.x_right = d[1].get<double>();
        if (!(e.x_right > e.x_left))
            throw ConfigError("config: degenerate domain at " + path + "domain");
    }
    e.samples = static_cast<std::size_t>(get_num(j, path, "samples", 512.0));
    return e;
}

} // namespace

RunConfig parse_config(const nlohmann::json& doc) {
    check_keys(doc, "",
               {"domain", "cells", "initial", "solver", "front", "steady", "rescale", "exact"});
    RunConfig cfg;
    if (doc.contains("domain") || doc.contains("cells")) {
        if (!doc.contains("domain") || !doc.contains("cells"))
            throw ConfigError("config: domain and cells must be given together");
        const auto& d = doc.at("domain");
        if (!d.is_array() || d.size() != 2)
            throw ConfigError("config: \"domain\" must be [x_left, x_right]");
        cfg.x_left = d[0].get<double>();
        cfg.x_right = d[1].get<double>();
        if (!(cfg.x_right > cfg.x_left)) throw ConfigError("config: degenerate domain");
        if (!doc.at("cells").is_number_unsigned())
            throw ConfigError("config: \"cells\" must be a nonnegative integer");
        cfg.cells = doc.at("cells").get<std::size_t>();
        if (cfg.cells < 16) throw ConfigError("config: need at least 16 cells");
        cfg.has_grid = true;
    }
    if (doc.contains("initial")) cfg.initial = parse_initial(doc.at("initial"), "initial.");
    if (doc.contains("solver")) cfg.solver = parse_solver(doc.at("solver"), "solver.");
    if (doc.contains("front")) cfg.front = parse_front(doc.at("front"), "front.");
    if (doc.contains("steady")) cfg.steady = parse_steady(doc.at("steady"), "steady.");
    if (doc.contains("rescale")) cfg.rescale = parse_rescale(doc.at("rescale"), "rescale.");
    if (doc.contains("exact")) cfg.exact = parse_exact(doc.at("exact"), "exact.");
    return cfg;
}

RunConfig parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

namespace {

double poly_eval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

} // namespace

State build_initial_state(const RunConfig& cfg) {
    if (!cfg.has_grid) throw ConfigError("build_initial_state: config has no grid");
    if (!cfg.initial) throw ConfigError("build_initial_state: config has no initial section");
    const InitialSpec& spec = *cfg.initial;

    State s;
    s.t = 0.0;
    s.x0 = cfg.x_left;
    s.h = (cfg.x_right - cfg.x_left) / static_cast<double>(cfg.cells);
    s.v.resize(cfg.cells, 0.0);
    s.w.resize(cfg.cells, 0.0);

    switch (spec.preset) {
        case InitialSpec::Preset::compact_45: {
            CompactSolutionParams p{spec.B, spec.x_star, spec.t_star};
            p.validate();
            for (std::size_t i = 0; i < cfg.cells; ++i) {
                const VW vw = compact_solution(0.0, s.cell_center(i), p);
                s.v[i] = vw.v;
                s.w[i] = vw.w;
            }
            break;
        }
        case InitialSpec::Preset::barenblatt: {
            if (!cfg.solver)
                throw ConfigError("barenblatt preset needs the solver coefficients");
            const Coefficients& c = cfg.solver->law.coeffs;
            const BarenblattParams p =
                BarenblattParams::from_energy(spec.E0, c.beta, c.kappa0, 1, spec.t_star);
            for (std::size_t i = 0; i < cfg.cells; ++i)
                s.w[i] = barenblatt(0.0, std::abs(s.cell_center(i)), p);
            break;
        }
        case InitialSpec::Preset::sec723: {
            for (std::size_t i = 0; i < cfg.cells; ++i) {
                const double x = s.cell_center(i);
                s.v[i] = std::max(0.0, 10.0 - 10.0 * (x + 2.0) * (x + 2.0));
                s.w[i] = std::max(0.0, 15.0 - 15.0 * (x - 2.0) * (x - 2.0));
            }
            break;
        }
        case InitialSpec::Preset::example24: {
            const double ell = spec.ell;
            for (std::size_t i = 0; i < cfg.cells; ++i) {
                const double x = s.cell_center(i);
                const double sgn = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
                s.v[i] = sgn * std::max(0.0, 2.0 * std::abs(x) - ell);
                const double cap = std::max(1.0 - x * x, 0.0) / 15.0;
                s.w[i] = cap * cap;
            }
            break;
        }
        case InitialSpec::Preset::custom_polynomial: {
            for (std::size_t i = 0; i < cfg.cells; ++i) {
                const double x = s.cell_center(i);
                double v = spec.v_coeffs.empty() ? 0.0 : poly_eval(spec.v_coeffs, x);
                double w = spec.w_coeffs.empty() ? 0.0 : poly_eval(spec.w_coeffs, x);
                if (spec.clip) {
                    v = std::max(0.0, v);
                    w = std::max(0.0, w);
                }
                s.v[i] = v;
                s.w[i] = std::max(0.0, w); // w must be nonnegative regardless
            }
            break;
        }
    }

    if (cfg.solver && cfg.solver->law.coeffs.eps_floor > 0.0)
        s.w = regularize(s.w, cfg.solver->law.coeffs.eps_floor);
    s.validate();
    return s;
}

} // namespace degenflow
