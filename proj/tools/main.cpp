#include <filesystem>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "degenflow/config.hpp"
#include "degenflow/functionals.hpp"
#include "degenflow/diagnostics.hpp"
#include "degenflow/exact.hpp"
#include "degenflow/fronts.hpp"
#include "degenflow/io.hpp"
#include "degenflow/selfsim.hpp"
#include "degenflow/solver.hpp"
#include "degenflow/verify.hpp"

namespace fs = std::filesystem;
using namespace degenflow;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void plot_state(const fs::path& path, const State& s, const std::string& title) {
    SvgSeries sv, sw;
    sv.color = "#1f77b4";
    sw.color = "#ff7f0e";
    for (std::size_t i = 0; i < s.size(); ++i) {
        sv.points.push_back({s.cell_center(i), s.v[i]});
        sw.points.push_back({s.cell_center(i), s.w[i]});
    }
    write_svg_plot(path, title, {sv, sw});
}

void write_scalar_series_csv(const fs::path& path, const SnapshotSeries& series) {
    std::ofstream out(path);
    out << "t,momentum,energy,heat,entropy_sqrt,v_l1,v_l2,v_linf\n";
    for (const State& s : series.snapshots) {
        out << format_g17(s.t) << ',' << format_g17(momentum(s)) << ','
            << format_g17(energy(s)) << ',' << format_g17(heat_content(s)) << ','
            << format_g17(entropy(s, EntropySpec::sqrt_kind())) << ','
            << format_g17(lp_norm(s.v, s.h, 1.0)) << ',' << format_g17(lp_norm(s.v, s.h, 2.0))
            << ',' << format_g17(lp_norm(s.v, s.h, std::numeric_limits<double>::infinity()))
            << '\n';
    }
}

int cmd_simulate(const RunConfig& cfg, const fs::path& out_dir, bool svg) {
    if (!cfg.solver) throw ConfigError("simulate: config needs a \"solver\" section");
    const State s0 = build_initial_state(cfg);
    const SnapshotSeries series = run(s0, *cfg.solver);
    fs::create_directories(out_dir);
    write_snapshot_bundle(out_dir, series);
    write_json(out_dir / "diagnostics.json", diagnostics_report(series));
    write_scalar_series_csv(out_dir / "scalars.csv", series);
    if (svg) {
        for (std::size_t k = 0; k < series.snapshots.size(); ++k) {
            char name[64];
            std::snprintf(name, sizeof(name), "plot_%03zu.svg", k);
            char title[64];
            std::snprintf(title, sizeof(title), "v, w at t = %.6f", series.snapshots[k].t);
            plot_state(out_dir / name, series.snapshots[k], title);
        }
    }
    return 0;
}

int cmd_front(const RunConfig& cfg, const fs::path& out_dir, bool svg) {
    if (!cfg.front) throw ConfigError("front: config needs a \"front\" section");
    const FrontRunConfig& f = *cfg.front;
    const FrontTrajectory traj =
        integrate_front(f.z0, f.V0, f.W0, f.params, f.z_max, f.W_floor);
    const FrontClassification cls = classify_front(traj, f.params);

    fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "trajectory.csv");
        out << "z,V,W\n";
        for (const auto& s : traj.samples)
            out << format_g17(s.z) << ',' << format_g17(s.V) << ',' << format_g17(s.W) << '\n';
    }
    nlohmann::ordered_json j;
    const char* term = traj.termination == FrontTermination::reached_z_max ? "reached_z_max"
                       : traj.termination == FrontTermination::hit_W_floor ? "hit_W_floor"
                                                                           : "blow_up";
    const char* label = cls.label == FrontClass::pme_front         ? "pme_front"
                        : cls.label == FrontClass::coupled_front   ? "coupled_front"
                        : cls.label == FrontClass::above_parabola  ? "above_parabola"
                        : cls.label == FrontClass::non_extendable  ? "non_extendable"
                                                                   : "extinct";
    j["termination"] = term;
    j["classification"] = label;
    j["W_prime_origin"] = cls.W_prime_origin;
    j["c_F_estimate"] = cls.c_F_estimate;
    j["max_parabola_deviation"] = cls.max_parabola_deviation;
    if (traj.termination == FrontTermination::hit_W_floor) {
        j["z_floor"] = traj.z_floor;
        j["V_floor"] = traj.V_floor;
        j["trailing_WVprime"] = traj.trailing_WVprime;
    }
    write_json(out_dir / "front.json", j);

    if (svg) {
        SvgSeries path;
        path.color = "#1f77b4";
        for (const auto& s : traj.samples) path.points.push_back({s.V, s.W});
        std::vector<SvgSeries> series{path};
        if (f.params.alpha == f.params.beta && f.params.kappa0 != 0.5) {
            SvgSeries par;
            par.color = "#2ca02c";
            par.dashed = true;
            double v_lo = traj.samples.front().V, v_hi = v_lo;
            for (const auto& s : traj.samples) {
                v_lo = std::min(v_lo, s.V);
                v_hi = std::max(v_hi, s.V);
            }
            for (int i = 0; i <= 200; ++i) {
                const double V = v_lo + (v_hi - v_lo) * i / 200.0;
                par.points.push_back({V, f.params.parabola(V)});
            }
            series.push_back(par);
        }
        write_svg_plot(out_dir / "phase.svg", "front phase portrait (V, W)", series);
    }
    return 0;
}

int cmd_exact(const RunConfig& cfg, const fs::path& out_dir, bool svg) {
    if (!cfg.exact) throw ConfigError("exact: config needs an \"exact\" section");
    const ExactRunConfig& e = *cfg.exact;
    fs::create_directories(out_dir);

    std::optional<BarenblattParams> bb;
    if (e.solution == ExactRunConfig::Solution::barenblatt)
        bb = BarenblattParams::from_energy(e.E0, e.beta, e.kappa0, 1, e.t_star);
    auto eval = [&](double t, double x) -> VW {
        switch (e.solution) {
            case ExactRunConfig::Solution::compact_45:
                return compact_solution(t, x, {e.B, e.x_star, e.t_star});
            case ExactRunConfig::Solution::barenblatt:
                return {0.0, barenblatt(t, std::abs(x), *bb)};
            case ExactRunConfig::Solution::similarity_ex22:
                return similarity_ex22(x, e.B);
            case ExactRunConfig::Solution::front_pme: {
                const FrontPoint fp = front_exact(x + e.c_F * t, FrontCase::pme, e.alpha,
                                                  e.kappa0, e.c_F);
                return {fp.V, fp.W};
            }
            case ExactRunConfig::Solution::front_coupled: {
                const FrontPoint fp = front_exact(x + e.c_F * t, FrontCase::coupled_parabola,
                                                  e.alpha, e.kappa0, e.c_F);
                return {fp.V, fp.W};
            }
            case ExactRunConfig::Solution::delayed:
                return delayed_family(t, x, e.B, e.x_star, e.t_plus, e.t_minus);
        }
        return {};
    };

    for (std::size_t k = 0; k < e.times.size(); ++k) {
        const double t = e.times[k];
        State s;
        s.t = t;
        s.x0 = e.x_left;
        s.h = (e.x_right - e.x_left) / static_cast<double>(e.samples);
        s.v.resize(e.samples);
        s.w.resize(e.samples);
        for (std::size_t i = 0; i < e.samples; ++i) {
            const VW vw = eval(t, s.cell_center(i));
            s.v[i] = vw.v;
            s.w[i] = vw.w;
        }
        write_state_csv(out_dir / snapshot_filename(k, t), s);
        if (svg) {
            char name[64];
            std::snprintf(name, sizeof(name), "plot_%03zu.svg", k);
            plot_state(out_dir / name, s, "closed form at t = " + std::to_string(t));
        }
    }
    return 0;
}

int cmd_steady(const RunConfig& cfg, const fs::path& out_dir) {
    if (!cfg.steady) throw ConfigError("steady: config needs a \"steady\" section");
    const SteadyRunConfig& s = *cfg.steady;
    const SteadyProfile sp = steady_profile(s.V0, s.E0, s.coeffs, s.d);
    nlohmann::ordered_json j;
    j["a"] = sp.a;
    j["b"] = sp.b;
    j["c"] = sp.c;
    j["sigma"] = sp.sigma;
    j["sigma_w"] = sp.sigma_w;
    j["delta"] = sp.delta;
    j["d"] = sp.d;
    j["theta_sigma"] = theta_mass(sp.sigma, sp.d);
    j["theta_w"] = theta_mass(sp.sigma_w, sp.d);
    fs::create_directories(out_dir);
    write_json(out_dir / "steady.json", j);
    return 0;
}

int cmd_rescale(const RunConfig& cfg, const fs::path& out_dir) {
    if (!cfg.rescale) throw ConfigError("rescale: config needs a \"rescale\" section");
    const RescaleRunConfig& r = *cfg.rescale;
    const auto manifest = read_manifest(r.snapshot_dir);
    fs::create_directories(out_dir);

    std::optional<SteadyProfile> target;
    if (r.target_V0 && r.target_E0)
        target = steady_profile(*r.target_V0, *r.target_E0, r.coeffs, r.spec.d);

    nlohmann::ordered_json dist = nlohmann::ordered_json::array();
    nlohmann::ordered_json expo = nlohmann::ordered_json::array();
    for (const auto& entry : manifest) {
        const State s = read_state_csv(fs::path(r.snapshot_dir) / entry.filename, entry.t);
        const RescaledProfile p = rescale_snapshot(s, r.spec);
        char name[64];
        std::snprintf(name, sizeof(name), "rescaled_%03zu.csv", entry.index);
        write_rescaled_csv(out_dir / name, p);

        if (target) {
            const ProfileDistance dw = profile_distance(
                p.w, p.y0, p.hy, [&](double y) { return target->w_tilde(std::abs(y)); });
            const ProfileDistance dv = profile_distance(
                p.v, p.y0, p.hy, [&](double y) { return target->v_hat(std::abs(y)); });
            dist.push_back({{"t", entry.t},
                            {"w_l1", dw.l1},
                            {"w_l2", dw.l2},
                            {"v_l1", dv.l1},
                            {"v_l2", dv.l2}});
        }
        const ExponentFit ef = rescaled_exponent_fit(p.v, p.y0, p.hy, 1e-6);
        expo.push_back({{"t", entry.t}, {"sigma_hat", ef.gamma}, {"ok", ef.ok}});
    }
    nlohmann::ordered_json j;
    j["theta"] = r.spec.theta;
    j["delta"] = r.spec.delta();
    j["distances"] = dist;
    j["exponents"] = expo;
    write_json(out_dir / "rescale.json", j);
    return 0;
}

int cmd_verify(const std::string& suite, const fs::path& out_dir) {
    const auto items = verify_suite(suite);
    for (const auto& it : items) {
        std::cout << (it.pass ? "[PASS] " : "[FAIL] ") << "criterion " << it.criterion << ": "
                  << it.name;
        if (it.expected_fail) std::cout << " (expected-fail probe)";
        if (!it.detail.empty()) std::cout << " -- " << it.detail;
        std::cout << "\n";
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_json(out_dir / "verdicts.json", verdict_table(items));
    }
    return all_pass(items) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"degenflow: coupled degenerate diffusion laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", suite = "all";
    bool svg = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--svg", svg, "also write SVG plots");
    };
    CLI::App* sim = app.add_subcommand("simulate", "run the finite-volume solver");
    add_common(sim, true);
    CLI::App* fro = app.add_subcommand("front", "integrate the traveling-front ODE");
    add_common(fro, true);
    CLI::App* exa = app.add_subcommand("exact", "sample closed-form solutions");
    add_common(exa, true);
    CLI::App* ste = app.add_subcommand("steady", "rescaled steady-profile parameters");
    add_common(ste, true);
    CLI::App* res = app.add_subcommand("rescale", "self-similar rescaling of snapshots");
    add_common(res, true);
    CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite, "suite name or 'all'");
    ver->add_option("--out", out_dir, "output directory for verdicts.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (ver->parsed()) return cmd_verify(suite, out_dir);
        const RunConfig cfg = parse_config(slurp(config_path));
        if (sim->parsed()) return cmd_simulate(cfg, out_dir, svg);
        if (fro->parsed()) return cmd_front(cfg, out_dir, svg);
        if (exa->parsed()) return cmd_exact(cfg, out_dir, svg);
        if (ste->parsed()) return cmd_steady(cfg, out_dir);
        if (res->parsed()) return cmd_rescale(cfg, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
