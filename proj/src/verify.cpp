#include "degenflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "degenflow/diagnostics.hpp"
#include "degenflow/exact.hpp"
#include "degenflow/fronts.hpp"
#include "degenflow/functionals.hpp"
#include "degenflow/ode.hpp"
#include "degenflow/selfsim.hpp"
#include "degenflow/solver.hpp"

namespace degenflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

struct Check {
    std::vector<VerdictItem> items;
    void add(const std::string& criterion, const std::string& name, bool pass,
             const std::string& detail = "", bool expected_fail = false) {
        items.push_back({criterion, name, pass, expected_fail, detail});
    }
    void append(const std::vector<VerdictItem>& more) {
        items.insert(items.end(), more.begin(), more.end());
    }
};

// ---------------------------------------------------------------- shared

State grid_state(double x_left, double x_right, std::size_t n) {
    State s;
    s.x0 = x_left;
    s.h = (x_right - x_left) / static_cast<double>(n);
    s.v.assign(n, 0.0);
    s.w.assign(n, 0.0);
    return s;
}

SolverConfig power_cfg(const Coefficients& c, double t_end,
                       const std::vector<double>& snaps,
                       SolverForm form = SolverForm::primitive) {
    SolverConfig cfg;
    cfg.form = form;
    cfg.t_end = t_end;
    cfg.snapshot_times = snaps;
    cfg.law = CoefficientLaw::power(c);
    return cfg;
}

std::vector<double> linspace_times(double t0, double t1, std::size_t count) {
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(t0 + (t1 - t0) * static_cast<double>(k) /
                               static_cast<double>(count - 1));
    out.back() = t1;
    return out;
}

/// Identity battery of criterion 6 applied to one run.
std::vector<VerdictItem> identity_battery(const SnapshotSeries& series, const std::string& run,
                                          bool check_entropy = true) {
    Check ck;
    const auto& st = series.steps;
    const double V0 = st.front().momentum;
    double vdrift = 0.0;
    for (const auto& s : st) vdrift = std::max(vdrift, std::abs(s.momentum - V0));
    ck.add("6", "momentum drift [" + run + "]", vdrift <= 1e-12 * std::max(1.0, std::abs(V0)),
           fmt("drift %.3e (tol %.3e)", vdrift, 1e-12 * std::max(1.0, std::abs(V0))));

    const MonitorVerdict hm = heat_content_monitor(series);
    ck.add("6", "heat content nondecreasing [" + run + "]", hm.pass,
           fmt("worst violation %.3e at t=%.4g", hm.worst, hm.worst_t));

    const double E0 = st.front().energy;
    ck.add("6", "clamped mass at round-off level [" + run + "]",
           series.total_clamped_mass <= 1e-10 * std::max(E0, 1.0),
           fmt("clamped %.3e (tol %.3e)", series.total_clamped_mass,
               1e-10 * std::max(E0, 1.0)));

    const std::pair<const char*, double> norms[] = {{"L1", 1.0}, {"L2", 2.0}, {"Linf", kInf}};
    for (const auto& [nm, p] : norms) {
        const MonitorVerdict lv = lp_monitor(series, p);
        ck.add("6", std::string("v ") + nm + " nonincreasing [" + run + "]", lv.pass,
               fmt("worst violation %.3e at t=%.4g", lv.worst, lv.worst_t));
    }

    if (check_entropy) {
        double worst = 0.0, worst_t = 0.0;
        for (std::size_t k = 0; k + 1 < st.size(); ++k) {
            const double drop = st[k].entropy_sqrt - st[k + 1].entropy_sqrt -
                                1e-10 * std::max(1.0, std::abs(st[k].entropy_sqrt));
            if (drop > worst) {
                worst = drop;
                worst_t = st[k + 1].t;
            }
        }
        ck.add("6", "entropy sqrt nondecreasing [" + run + "]", worst <= 0.0,
               fmt("worst drop %.3e at t=%.4g", worst, worst_t));

        // The whole concave family, snapshot to snapshot. The log entropy only
        // applies on uniformly positive runs.
        std::vector<EntropySpec> specs{EntropySpec::power_kind(0.3),
                                       EntropySpec::power_kind(0.8)};
        bool positive = !series.snapshots.empty();
        for (const State& s : series.snapshots)
            for (double wi : s.w) positive = positive && wi > 0.0;
        if (positive) specs.push_back(EntropySpec::log_kind());
        bool family_ok = true;
        double family_worst = 0.0;
        for (const auto& spec : specs) {
            double prev = -kInf;
            for (const State& s : series.snapshots) {
                const double S = entropy(s, spec);
                if (prev > -kInf && S < prev - 1e-10 * std::max(1.0, std::abs(prev))) {
                    family_ok = false;
                    family_worst = std::max(family_worst, prev - S);
                }
                prev = S;
            }
        }
        ck.add("6", "entropy family nondecreasing [" + run + "]", family_ok,
               fmt("worst drop %.3e", family_worst));
    }

    // Per-step e-norm decay telescopes exactly only when e itself is the
    // evolved variable; the primitive form carries the O(h) energy defect.
    if (series.config.law.eta_equals_kappa() && series.config.form == SolverForm::energy) {
        const std::pair<const char*, double> enorms[] = {{"L1", 1.0}, {"L2", 2.0}, {"Linf", kInf}};
        for (const auto& [nm, p] : enorms) {
            const MonitorVerdict lv = lp_monitor(series, p, /*check_e=*/true);
            ck.add("6", std::string("e ") + nm + " nonincreasing [" + run + "]", lv.pass,
                   fmt("worst violation %.3e at t=%.4g", lv.worst, lv.worst_t));
        }
    }

    const DissipationBudget db = dissipation_budget(series, series.config.law, 2.0);
    ck.add("6", "dissipation budget p=2 [" + run + "]", db.pass,
           fmt("accumulated %.6g <= bound %.6g", db.accumulated, db.bound));
    return ck.items;
}

// ------------------------------------------------------- criterion 9

/// Independent quadrature oracle for Theta: surface measure of S^{d-1} times
/// the radial integral, written with r = sin(t) so the integrand is smooth.
double theta_quadrature(double sigma, int d) {
    const double surf = d == 1 ? 2.0 : (d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
    const std::size_t n = 400000;
    const double hq = 0.5 * std::numbers::pi / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) * hq;
        acc += std::pow(std::cos(t), 2.0 * sigma + 1.0) * std::pow(std::sin(t), d - 1);
    }
    return surf * acc * hq;
}

std::vector<VerdictItem> suite_closed_forms() {
    Check ck;
    // Theta battery: exact constants and the quadrature oracle. The printed
    // value for (1/2, 2) in the criterion is an arithmetic slip (2 pi / 3 is
    // what both the formula and the quadrature give).
    ck.add("9", "Theta(0,1) = 2", std::abs(theta_mass(0.0, 1) - 2.0) <= 1e-12,
           fmt("value %.15g", theta_mass(0.0, 1)));
    ck.add("9", "Theta(1,1) = 4/3", std::abs(theta_mass(1.0, 1) - 4.0 / 3.0) <= 1e-12,
           fmt("value %.15g", theta_mass(1.0, 1)));
    ck.add("9", "Theta(1/2,2) = 2pi/3",
           std::abs(theta_mass(0.5, 2) - 2.0 * std::numbers::pi / 3.0) <= 1e-12,
           fmt("value %.15g", theta_mass(0.5, 2)));
    for (const auto& [sg, dd] : std::vector<std::pair<double, int>>{{0.0, 1}, {1.0, 1}, {0.5, 2}}) {
        const double tf = theta_mass(sg, dd);
        const double tq = theta_quadrature(sg, dd);
        ck.add("9", fmt("Theta(%.3g,%d) vs quadrature", sg, dd),
               std::abs(tf - tq) <= 1e-8,
               fmt("formula %.12g quad %.12g diff %.2e", tf, tq, std::abs(tf - tq)));
    }

    // steady_profile constraint round trip at the exponents of the rescaled
    // experiment (eta0 = 2, kappa0 = 1/2, beta = 1).
    {
        Coefficients c;
        c.eta0 = 2.0;
        c.alpha = 1.0;
        c.kappa0 = 0.5;
        c.beta = 1.0;
        const double V0 = 40.0 / 3.0, E0 = 220.0 / 3.0;
        const SteadyProfile sp = steady_profile(V0, E0, c, 1);
        const double e_res =
            std::abs(sp.c / sp.b * theta_mass(1.0 / c.beta, 1) - E0) / E0;
        const double b_res =
            std::abs(sp.b * sp.b - c.beta * sp.delta / (2.0 * std::pow(sp.c, c.beta) * c.kappa0)) /
            (sp.b * sp.b);
        const double v_res = std::abs(sp.a / sp.b * theta_mass(sp.sigma, 1) - V0) / V0;
        ck.add("9", "steady_profile round trip", e_res <= 1e-10 && b_res <= 1e-10 && v_res <= 1e-10,
               fmt("residuals E %.2e b %.2e V %.2e", e_res, b_res, v_res));
        ck.add("9", "steady_profile sigma = kappa0/(eta0 beta)", std::abs(sp.sigma - 0.25) <= 1e-15,
               fmt("sigma %.15g", sp.sigma));
    }

    // Piecewise law (4.7): the run-level e = B v manifold check in energy form.
    {
        const double B = 2.0;
        SolverConfig cfg;
        cfg.form = SolverForm::energy;
        cfg.t_end = 0.5;
        cfg.snapshot_times = linspace_times(0.0, 0.5, 6);
        cfg.law = CoefficientLaw::piecewise44(B);

        State s0 = grid_state(-4.0, 4.0, 256);
        for (std::size_t i = 0; i < s0.size(); ++i) {
            const double x = s0.cell_center(i);
            const double v = std::max(0.0, 0.5 * B * (1.0 - 0.25 * x * x)); // v in [0, B/2]
            s0.v[i] = v;
            s0.w[i] = B * v - 0.5 * v * v;
        }
        const SnapshotSeries series = run(s0, cfg);
        double worst = 0.0;
        for (const State& s : series.snapshots)
            for (std::size_t i = 0; i < s.size(); ++i)
                worst = std::max(worst,
                                 std::abs(0.5 * s.v[i] * s.v[i] + s.w[i] - B * s.v[i]));
        ck.add("9", "piecewise_44: e - B v stays on the manifold (energy form)", worst <= 1e-10,
               fmt("max |e - B v| = %.3e", worst));
        ck.append(identity_battery(series, "piecewise44", true));
    }
    return ck.items;
}

// ------------------------------------------------------- criterion 1

struct Compact45Run {
    SnapshotSeries series;
    double l1_error = 0.0; // L1(v) + L1(w) against the closed form at t_end
    double energy_drift = 0.0;
    double momentum_drift = 0.0;
    double h = 0.0;
};

Compact45Run run_compact45(std::size_t n, double t_end, SolverForm form) {
    const CompactSolutionParams p{1.0, 2.0, 0.25};
    Coefficients c; // eta = kappa = w
    State s0 = grid_state(-6.0, 6.0, n);
    for (std::size_t i = 0; i < n; ++i) {
        const VW vw = compact_solution(0.0, s0.cell_center(i), p);
        s0.v[i] = vw.v;
        s0.w[i] = vw.w;
    }
    SolverConfig cfg = power_cfg(c, t_end, {0.0, t_end}, form);
    Compact45Run out;
    out.series = run(s0, cfg);
    out.h = s0.h;

    const State& sf = out.series.snapshots.back();
    double e1 = 0.0;
    for (std::size_t i = 0; i < sf.size(); ++i) {
        const VW vw = compact_solution(sf.t, sf.cell_center(i), p);
        e1 += std::abs(sf.v[i] - vw.v) + std::abs(sf.w[i] - vw.w);
    }
    out.l1_error = sf.h * e1;

    const auto& st = out.series.steps;
    for (const auto& rec : st) {
        out.momentum_drift =
            std::max(out.momentum_drift, std::abs(rec.momentum - st.front().momentum));
        out.energy_drift = std::max(out.energy_drift, std::abs(rec.energy - st.front().energy));
    }
    return out;
}

std::vector<VerdictItem> suite_compact45() {
    Check ck;
    const double t_end = 0.5;
    const double V_exact = std::sqrt(32.0) * 1.0 * 2.0; // 8 sqrt(2)
    const double E_exact = 8.0 * 1.0 * 2.0;             // 16

    const Compact45Run r128 = run_compact45(128, t_end, SolverForm::primitive);
    const Compact45Run r256 = run_compact45(256, t_end, SolverForm::primitive);
    const Compact45Run r512 = run_compact45(512, t_end, SolverForm::primitive);

    const double ratio1 = r128.l1_error / r256.l1_error;
    const double ratio2 = r256.l1_error / r512.l1_error;
    ck.add("1", "compact45 L1 convergence 128 -> 256", ratio1 >= 1.5,
           fmt("errors %.4e / %.4e, ratio %.3f", r128.l1_error, r256.l1_error, ratio1));
    ck.add("1", "compact45 L1 convergence 256 -> 512", ratio2 >= 1.5,
           fmt("errors %.4e / %.4e, ratio %.3f", r256.l1_error, r512.l1_error, ratio2));

    for (const Compact45Run* r : {&r128, &r256, &r512}) {
        const double V0 = r->series.steps.front().momentum;
        const double E0 = r->series.steps.front().energy;
        const double h2 = r->h * r->h;
        ck.add("1", fmt("compact45 momentum quadrature (N=%g)", 12.0 / r->h),
               std::abs(V0 - V_exact) <= 5.0 * h2,
               fmt("V0 %.12g vs 8 sqrt2 %.12g (tol %.2e)", V0, V_exact, 5.0 * h2));
        ck.add("1", fmt("compact45 energy quadrature (N=%g)", 12.0 / r->h),
               std::abs(E0 - E_exact) <= 5.0 * h2,
               fmt("E0 %.12g vs 16 (tol %.2e)", E0, 5.0 * h2));
        ck.add("1", fmt("compact45 momentum round-off drift (N=%g)", 12.0 / r->h),
               r->momentum_drift <= 1e-12 * V_exact,
               fmt("drift %.3e", r->momentum_drift));
    }
    // Primitive-form energy drift is O(h): certified by the refinement ratio.
    ck.add("1", "compact45 primitive energy drift shrinks under refinement",
           r256.energy_drift <= 0.75 * r128.energy_drift &&
               r512.energy_drift <= 0.75 * r256.energy_drift,
           fmt("drifts %.3e / %.3e / %.3e", r128.energy_drift, r256.energy_drift,
               r512.energy_drift));
    ck.add("1", "compact45 primitive energy drift magnitude",
           r128.energy_drift <= 0.05 * E_exact, fmt("drift %.3e", r128.energy_drift));

    ck.append(identity_battery(r256.series, "compact45 N=256"));

    // Energy form on the same data conserves energy to round-off (criterion 6).
    const Compact45Run re = run_compact45(256, t_end, SolverForm::energy);
    ck.add("6", "compact45 energy form: energy conserved to round-off",
           re.energy_drift <= 1e-12 * E_exact, fmt("drift %.3e", re.energy_drift));
    ck.add("6", "compact45 energy form: momentum conserved to round-off",
           re.momentum_drift <= 1e-12 * V_exact, fmt("drift %.3e", re.momentum_drift));
    ck.append(identity_battery(re.series, "compact45 energy form", /*check_entropy=*/false));
    return ck.items;
}

// ------------------------------------------------------- criterion 2

std::vector<VerdictItem> suite_barenblatt() {
    Check ck;
    Coefficients c; // beta = 1, kappa0 = 1
    const BarenblattParams p = BarenblattParams::from_amplitude(1.0, c.beta, c.kappa0, 1, 1.0);
    const double t_end = 7.0;

    State s0 = grid_state(-8.0, 8.0, 512);
    for (std::size_t i = 0; i < s0.size(); ++i)
        s0.w[i] = barenblatt(0.0, std::abs(s0.cell_center(i)), p);

    SolverConfig cfg = power_cfg(c, t_end, linspace_times(0.0, t_end, 15));
    const SnapshotSeries series = run(s0, cfg);

    const double w_tol = 1e-10 * *std::max_element(s0.w.begin(), s0.w.end());
    const auto supports = support_tracker(series, w_tol);

    const double r_exact = barenblatt_support_radius(t_end, p);
    const double r_meas = supports.back().right;
    ck.add("2", "barenblatt support radius at t_end (2%)",
           std::abs(r_meas - r_exact) <= 0.02 * r_exact,
           fmt("measured %.5g expected %.5g", r_meas, r_exact));

    const FitResult f = fit_similarity_exponent(supports, p.t_star);
    ck.add("2", "barenblatt support exponent delta = 1/3 (+-0.01)",
           f.ok && std::abs(f.slope - 1.0 / 3.0) <= 0.01, fmt("delta-hat %.4f", f.slope));

    ck.append(identity_battery(series, "barenblatt"));
    return ck.items;
}

// ------------------------------------------------------- criterion 3

std::vector<VerdictItem> suite_fronts() {
    Check ck;
    // (a) on-parabola invariance.
    for (double k0 : {0.1, 0.25, 0.4}) {
        FrontParams p;
        p.kappa0 = k0;
        const double W0 = 1.0;
        const double V0 = std::sqrt(2.0 * (1.0 - 2.0 * k0) * W0);
        const auto traj = integrate_front(0.0, V0, W0, p, 2.0, 1e-12, 1e-12);
        double worst = 0.0;
        for (const auto& s : traj.samples)
            worst = std::max(worst, std::abs(s.W - p.parabola(s.V)) / s.W);
        ck.add("3", fmt("on-parabola invariance kappa0=%.2f", k0), worst <= 1e-8,
               fmt("max relative deviation %.3e", worst));
    }

    // (b) closed forms satisfy the front ODE pointwise.
    {
        double worst = 0.0;
        for (const double cf : {1.0, 1.7}) {
            for (const double z : {0.3, 1.0, 2.3}) {
                for (const double k0 : {0.5, 2.0}) {
                    const FrontPoint fp = front_exact(z, FrontCase::pme, 1.0, k0, cf);
                    FrontParams p;
                    p.kappa0 = k0;
                    p.c_F = cf;
                    const FrontRhs r = front_rhs(fp.V, fp.W, p);
                    worst = std::max({worst, std::abs(fp.dV - r.dV), std::abs(fp.dW - r.dW)});
                }
                for (const double k0 : {0.1, 0.25}) {
                    const FrontPoint fp = front_exact(z, FrontCase::coupled_parabola, 1.0, k0, cf);
                    FrontParams p;
                    p.kappa0 = k0;
                    p.c_F = cf;
                    const FrontRhs r = front_rhs(fp.V, fp.W, p);
                    worst = std::max({worst, std::abs(fp.dV - r.dV), std::abs(fp.dW - r.dW)});
                }
            }
        }
        ck.add("3", "closed-form fronts: ODE residual", worst <= 1e-10,
               fmt("max residual %.3e", worst));
    }

    // (c) classifier speed recovery on both branches, cF = 0.8.
    {
        const double cf = 0.8;
        auto sampled = [&](FrontCase fc, double k0) {
            FrontTrajectory traj;
            for (int i = 0; i <= 200; ++i) {
                const double z = 2.0 * static_cast<double>(i) / 200.0;
                const FrontPoint fp = front_exact(z, fc, 1.0, k0, cf);
                traj.samples.push_back({z, fp.V, fp.W});
            }
            traj.termination = FrontTermination::reached_z_max;
            return traj;
        };
        FrontParams pc;
        pc.kappa0 = 0.25;
        const FrontClassification cc = classify_front(sampled(FrontCase::coupled_parabola, 0.25), pc);
        ck.add("3", "classifier: coupled branch label (kappa0=0.25)",
               cc.label == FrontClass::coupled_front,
               fmt("parabola deviation %.2e", cc.max_parabola_deviation));
        ck.add("3", "classifier: coupled branch speed (2%)",
               std::abs(cc.c_F_estimate - cf) <= 0.02 * cf,
               fmt("estimate %.4f expected %.4f", cc.c_F_estimate, cf));

        FrontParams pp;
        pp.kappa0 = 2.0;
        const FrontClassification cp = classify_front(sampled(FrontCase::pme, 2.0), pp);
        ck.add("3", "classifier: pme branch label (kappa0=2)", cp.label == FrontClass::pme_front,
               "");
        ck.add("3", "classifier: pme branch speed (2%)",
               std::abs(cp.c_F_estimate - cf) <= 0.02 * cf,
               fmt("estimate %.4f expected %.4f", cp.c_F_estimate, cf));
    }
    return ck.items;
}

// ------------------------------------------------------- criterion 4

/// Frozen oracle: min W over y in [0, 10] of the V'(0) = 0.5 trajectory,
/// measured once from a rel-tol 1e-12 rerun and asserted with a 1e-4
/// relative guard band. Consistent with W(inf) = 1 - V(inf)^2 / 2 at the
/// observed V(inf) = 0.92807755.
constexpr double kRegimeMinW = 0.5693360324;

std::vector<VerdictItem> suite_similarity_regimes() {
    Check ck;
    Coefficients c; // eta = kappa = w

    // V'(0) = 1/sqrt(2): the explicit parabola profile. March target to
    // target so the comparison points are hit exactly.
    {
        Dopri5<4> ode;
        ode.rel_tol = 1e-10;
        ode.abs_tol = 1e-14;
        ode.h_init = 1e-6;
        auto rhs = [&](double y, const Dopri5<4>::StateVec& s) -> Dopri5<4>::StateVec {
            const double W = s[2];
            if (!(W > 0.0)) throw DomainError("W <= 0");
            const double Vp = s[1] / eta(W, c);
            const double Wp = s[3] / kappa(W, c);
            return {Vp, -0.5 * y * Vp, Wp, -0.5 * y * Wp - s[1] * s[1] / eta(W, c)};
        };
        double worst = 0.0;
        double y = 0.0;
        Dopri5<4>::StateVec state = {0.0, eta(1.0, c) / std::sqrt(2.0), 1.0, 0.0};
        for (int k = 1; k <= 19; ++k) {
            const double y_target = 0.1 * k;
            const auto r = ode.integrate(rhs, y, state, y_target);
            y = r.xs.back();
            state = r.ys.back();
            const VW ex = similarity_ex22(y_target, 1.0);
            worst = std::max({worst, std::abs(state[0] - ex.v), std::abs(state[2] - ex.w)});
        }
        ck.add("4", "similarity regimes: V'(0)=1/sqrt(2) matches the explicit profile (1e-6)",
               worst <= 1e-6, fmt("max deviation %.3e on y in [0,1.9]", worst));
    }

    // V'(0) = 0.5: global profile with a positive W floor (frozen oracle).
    {
        const auto traj = integrate_similarity(0.0, 1.0, 0.5, 0.0, c, 10.0, 1e-10);
        double min_w = kInf;
        for (const auto& s : traj.samples) min_w = std::min(min_w, s.W);
        ck.add("4", "similarity regimes: V'(0)=0.5 reaches y=10",
               traj.termination == FrontTermination::reached_z_max,
               fmt("min W %.8f", min_w));
        ck.add("4", "similarity regimes: V'(0)=0.5 W floor matches frozen oracle",
               min_w >= kRegimeMinW * (1.0 - 1e-4) && min_w <= kRegimeMinW * (1.0 + 1e-4),
               fmt("min W %.8f frozen %.8f", min_w, kRegimeMinW));
    }

    // V'(0) = 1.0: terminates with positive trailing W V'.
    {
        const auto traj = integrate_similarity(0.0, 1.0, 1.0, 0.0, c, 10.0, 1e-10);
        const bool hit = traj.termination == FrontTermination::hit_W_floor;
        ck.add("4", "similarity regimes: V'(0)=1.0 hits W floor in y* in (0,2)",
               hit && traj.y_floor > 0.0 && traj.y_floor < 2.0,
               fmt("y* %.5f", traj.y_floor));
        ck.add("4", "similarity regimes: V'(0)=1.0 trailing W V' positive",
               hit && traj.trailing_WVprime > 0.0, fmt("W V' -> %.6f", traj.trailing_WVprime));
    }
    return ck.items;
}

// ------------------------------------------------------- criterion 5

SnapshotSeries run_decay_estimate(std::size_t n) {
    Coefficients c;
    c.alpha = c.beta = 0.5;
    State s0 = grid_state(0.0, 1.0, n);
    for (std::size_t i = 0; i < n; ++i)
        s0.w[i] = 1.0 + 0.1 * std::cos(std::numbers::pi * s0.cell_center(i));
    SolverConfig cfg = power_cfg(c, 0.5, linspace_times(0.0, 0.5, 21));
    return run(s0, cfg);
}

std::vector<VerdictItem> suite_decay() {
    Check ck;
    const SnapshotSeries series = run_decay_estimate(256);
    DecayParams dp;
    dp.V0 = series.steps.front().momentum;
    dp.E0 = series.steps.front().energy;
    dp.domain_length = 1.0;
    dp.c_eta = 1.0;
    dp.c_kappa = 1.0;

    const double pi2 = std::numbers::pi * std::numbers::pi;
    ck.add("5", "decay rate Lambda = pi^2", std::abs(dp.Lambda() - pi2) <= 1e-6 * pi2,
           fmt("Lambda %.8f", dp.Lambda()));

    const DecayCheckResult dc = decay_check(series, dp);
    ck.add("5", "decay bound H(t) <= H(0) exp(-Lambda t) (1+1e-3)", dc.bound_holds,
           fmt("worst ratio %.6f", dc.worst_ratio));
    const double ceiling = 2.0 * std::min(eta(dp.w_hat(), series.config.law.coeffs),
                                          kappa(dp.w_hat(), series.config.law.coeffs)) *
                           dp.lambda_N() * 1.05;
    ck.add("5", "fitted rate below the linearization ceiling", dc.fitted_rate <= ceiling,
           fmt("fitted %.4f ceiling %.4f", dc.fitted_rate, ceiling));

    ck.append(identity_battery(series, "decay"));
    return ck.items;
}

std::vector<VerdictItem> suite_example24() {
    Check ck;
    const double ell = 8.0;
    Coefficients c;
    c.alpha = c.beta = 0.5;
    c.eta0 = c.kappa0 = 1.5;

    const std::size_t n = 512;
    State s0 = grid_state(-ell, ell, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s0.cell_center(i);
        const double sgn = x > 0.0 ? 1.0 : -1.0;
        s0.v[i] = sgn * std::max(0.0, 2.0 * std::abs(x) - ell);
        const double cap = std::max(1.0 - x * x, 0.0) / 15.0;
        s0.w[i] = cap * cap;
    }
    SolverConfig cfg = power_cfg(c, 5.0, linspace_times(0.0, 5.0, 21));
    const SnapshotSeries series = run(s0, cfg);

    DecayParams dp;
    dp.V0 = series.steps.front().momentum;
    dp.E0 = series.steps.front().energy;
    dp.domain_length = 2.0 * ell;
    dp.c_eta = dp.c_kappa = 1.5;

    const DecayCheckResult dc = decay_check(series, dp, /*require_positive_w0=*/false);
    ck.add("5", "example24 data: decay bound violated (expected failure of the estimate)",
           !dc.bound_holds, fmt("worst ratio %.4f (>1 means violated)", dc.worst_ratio),
           /*expected_fail=*/true);
    return ck.items;
}

// ------------------------------------------------------- criterion 6 extras

SnapshotSeries rate_closure_run(std::size_t n) {
    Coefficients c;
    c.alpha = c.beta = 0.5;
    State s0 = grid_state(0.0, 1.0, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s0.cell_center(i);
        s0.v[i] = 0.1 * std::cos(std::numbers::pi * x);
        s0.w[i] = 1.0 + 0.1 * std::cos(std::numbers::pi * x);
    }
    SolverConfig probe = power_cfg(c, 1.0, {});
    const double dt0 = cfl_dt(s0, probe);
    const double spacing = 8.0 * dt0;
    SolverConfig cfg = power_cfg(c, 24.0 * spacing, linspace_times(0.0, 24.0 * spacing, 25));
    return run(s0, cfg);
}

std::vector<VerdictItem> suite_conservation() {
    Check ck;
    // Preset battery at reduced scale; the full-scale identity items live in
    // the owning suites.
    {
        const Compact45Run r = run_compact45(128, 0.2, SolverForm::primitive);
        ck.append(identity_battery(r.series, "battery compact45"));
    }
    {
        Coefficients c;
        const BarenblattParams p = BarenblattParams::from_amplitude(1.0, 1.0, 1.0, 1, 1.0);
        State s0 = grid_state(-8.0, 8.0, 128);
        for (std::size_t i = 0; i < s0.size(); ++i)
            s0.w[i] = barenblatt(0.0, std::abs(s0.cell_center(i)), p);
        const SnapshotSeries series = run(s0, power_cfg(c, 1.0, {0.0, 1.0}));
        ck.append(identity_battery(series, "battery barenblatt"));
    }
    {
        Coefficients c;
        c.eta0 = 2.0;
        c.kappa0 = 0.5;
        State s0 = grid_state(-8.0, 8.0, 256);
        for (std::size_t i = 0; i < s0.size(); ++i) {
            const double x = s0.cell_center(i);
            s0.v[i] = std::max(0.0, 10.0 - 10.0 * (x + 2.0) * (x + 2.0));
            s0.w[i] = std::max(0.0, 15.0 - 15.0 * (x - 2.0) * (x - 2.0));
        }
        const SnapshotSeries series = run(s0, power_cfg(c, 0.5, {0.0, 0.5}));
        ck.append(identity_battery(series, "battery sec723"));
    }
    {
        const SnapshotSeries series = run_decay_estimate(64);
        ck.append(identity_battery(series, "battery decay"));
    }

    // dS/dt vs entropy production closure shrinks under refinement, slope >= 0.9.
    {
        std::vector<double> hs, mism;
        for (std::size_t n : {64u, 128u, 256u}) {
            const SnapshotSeries series = rate_closure_run(n);
            const RateCheckResult rc = functional_rate_check(
                series, PhiFunctional::entropy_phi(EntropySpec::sqrt_kind()),
                series.config.law);
            hs.push_back(std::log(1.0 / static_cast<double>(n)));
            mism.push_back(std::log(rc.normalized));
        }
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            mx += hs[i];
            my += mism[i];
        }
        mx /= 3.0;
        my /= 3.0;
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            sxx += (hs[i] - mx) * (hs[i] - mx);
            sxy += (hs[i] - mx) * (mism[i] - my);
        }
        const double slope = sxy / sxx;
        ck.add("6", "dS/dt vs entropy production closure: refinement slope >= 0.9", slope >= 0.9,
               fmt("slope %.3f (mismatches e^{%.2f}..e^{%.2f})", slope, mism.front(),
                   mism.back()));
    }
    return ck.items;
}

// ------------------------------------------------------- criterion 7

std::vector<VerdictItem> suite_sec723() {
    Check ck;
    // The convergence conjecture concerns solutions constructed by
    // regularizing the initial data from above; the raw disjoint-support
    // caps would keep v frozen (and the kinetic energy exactly constant)
    // until the w front first touches the v bump.
    Coefficients c;
    c.eta0 = 2.0;
    c.kappa0 = 0.5;
    c.eps_floor = 1e-6;

    const std::size_t n = 1024;
    State s0 = grid_state(-16.0, 16.0, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s0.cell_center(i);
        s0.v[i] = std::max(0.0, 10.0 - 10.0 * (x + 2.0) * (x + 2.0));
        s0.w[i] = std::max(0.0, 15.0 - 15.0 * (x - 2.0) * (x - 2.0));
    }
    s0.w = regularize(s0.w, c.eps_floor);
    std::vector<double> snaps = linspace_times(0.0, 10.0, 21);
    SolverConfig cfg = power_cfg(c, 10.0, snaps);
    const SnapshotSeries series = run(s0, cfg);

    // Kinetic energy strictly decreasing across snapshots.
    {
        bool strict = true;
        double prev = kInf;
        for (const State& s : series.snapshots) {
            double ke = 0.0;
            for (double vi : s.v) ke += 0.5 * vi * vi;
            ke *= s.h;
            if (!(ke < prev)) strict = false;
            prev = ke;
        }
        ck.add("7", "two-cap collapse: kinetic energy strictly decreasing", strict, "");
    }

    // Rescaled w approaches the Barenblatt cap of the conserved energy.
    ScalingSpec spec;
    spec.theta = 1.0;
    spec.beta = 1.0;
    spec.y_min = -8.0;
    spec.y_max = 8.0;
    spec.y_cells = 2048;

    const double V0 = series.steps.front().momentum;
    const double E0 = series.steps.front().energy;
    const SteadyProfile target = steady_profile(V0, E0, c, 1);

    auto snapshot_at = [&](double t) -> const State& {
        const State* best = &series.snapshots.front();
        for (const State& s : series.snapshots)
            if (std::abs(s.t - t) < std::abs(best->t - t)) best = &s;
        return *best;
    };
    const RescaledProfile p1 = rescale_snapshot(snapshot_at(1.0), spec);
    const RescaledProfile p10 = rescale_snapshot(snapshot_at(10.0), spec);
    auto w_target = [&](double y) { return target.w_tilde(std::abs(y)); };
    const ProfileDistance d1 = profile_distance(p1.w, p1.y0, p1.hy, w_target);
    const ProfileDistance d10 = profile_distance(p10.w, p10.y0, p10.hy, w_target);
    ck.add("7", "two-cap collapse: L1 distance to the Barenblatt cap shrinks (t=10 vs t=1)",
           d10.l1 < d1.l1, fmt("d(1) %.4f -> d(10) %.4f", d1.l1, d10.l1));

    // Rescaled-v boundary exponent sigma = kappa0/(eta0 beta) = 1/4 (+- 0.1).
    // The strip of five physical cells at the edge is the numerically smeared
    // front zone and is excluded from the log-log window.
    const double smear = 5.0 * s0.h / std::pow(11.0, spec.delta());
    const ExponentFit ef = rescaled_exponent_fit(p10.v, p10.y0, p10.hy, 1e-2, 8, smear);
    ck.add("7", "two-cap collapse: rescaled v boundary exponent 0.25 (+-0.1)",
           ef.ok && std::abs(ef.gamma - 0.25) <= 0.1,
           fmt("sigma-hat %.4f from %.0f points", ef.gamma, static_cast<double>(ef.points)));

    ck.append(identity_battery(series, "sec723"));
    return ck.items;
}

// ------------------------------------------------------- criterion 8

std::vector<VerdictItem> suite_nonuniqueness() {
    Check ck;
    Coefficients c; // eta = kappa = w
    const double B = 1.0, x_star = 2.0;

    auto residual_pass = [&](double tp, double tm, const char* label) {
        const DelayedFamilyField field(B, x_star, tp, tm);
        std::vector<std::pair<double, double>> pts;
        for (double t : {0.55, 0.7})
            for (double x = -4.5; x <= 4.5; x += 0.15) pts.push_back({t, x});

        const double h0 = 0.02, dt0 = 0.01;
        const ResidualReport rep1 = residual_check(field, c, pts, dt0, h0);
        const ResidualReport rep2 = residual_check(field, c, pts, 0.5 * dt0, 0.5 * h0);
        // The coarse stencil flags a wider seam guard; compare the levels on
        // the samples admissible at both.
        double m1 = 0.0, m2 = 0.0;
        std::size_t used = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (rep1.samples[i].flagged || rep2.samples[i].flagged) continue;
            ++used;
            m1 = std::max({m1, std::abs(rep1.samples[i].r_v), std::abs(rep1.samples[i].r_w)});
            m2 = std::max({m2, std::abs(rep2.samples[i].r_v), std::abs(rep2.samples[i].r_w)});
        }
        ck.add("8", std::string("delayed family second-order residual decay ") + label,
               m1 / m2 >= 3.5 && used >= 50,
               fmt("max residuals %.3e -> %.3e (ratio %.2f)", m1, m2, m1 / m2));
    };
    residual_pass(0.0, 0.0, " (t+=0, t-=0)");
    residual_pass(0.2, 0.4, " (t+=0.2, t-=0.4)");

    // Same initial data, genuinely distinct solutions.
    {
        const VW a = delayed_family(0.0, -2.0, B, x_star, 0.0, 0.0);
        const VW b = delayed_family(0.0, -2.0, B, x_star, 0.2, 0.4);
        const VW a3 = delayed_family(0.3, -2.0, B, x_star, 0.0, 0.0);
        const VW b3 = delayed_family(0.3, -2.0, B, x_star, 0.2, 0.4);
        const bool same_start = a.v == b.v && a.w == b.w;
        const bool differ = std::abs(a3.v - b3.v) + std::abs(a3.w - b3.w) > 1e-6;
        ck.add("8", "delayed family: identical data, distinct solutions", same_start && differ,
               fmt("|dv|+|dw| at t=0.3: %.4f", std::abs(a3.v - b3.v) + std::abs(a3.w - b3.w)));
    }
    return ck.items;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"closed_forms", "compact45_convergence", "barenblatt", "fronts",  "similarity_regimes",
            "decay",        "example24",             "conservation", "sec723", "nonuniqueness"};
}

std::vector<VerdictItem> verify_suite(const std::string& name) {
    if (name == "closed_forms") return suite_closed_forms();
    if (name == "compact45_convergence") return suite_compact45();
    if (name == "barenblatt") return suite_barenblatt();
    if (name == "fronts") return suite_fronts();
    if (name == "similarity_regimes") return suite_similarity_regimes();
    if (name == "decay") return suite_decay();
    if (name == "example24") return suite_example24();
    if (name == "conservation") return suite_conservation();
    if (name == "sec723") return suite_sec723();
    if (name == "nonuniqueness") return suite_nonuniqueness();
    if (name == "all") {
        std::vector<VerdictItem> out;
        for (const std::string& s : verify_suite_names()) {
            const auto items = verify_suite(s);
            out.insert(out.end(), items.begin(), items.end());
        }
        return out;
    }
    throw ConfigError("verify: unknown suite \"" + name + "\"");
}

nlohmann::ordered_json verdict_table(const std::vector<VerdictItem>& items) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& it : items)
        j.push_back({{"criterion", it.criterion},
                     {"name", it.name},
                     {"pass", it.pass},
                     {"expected_fail", it.expected_fail},
                     {"detail", it.detail}});
    return j;
}

bool all_pass(const std::vector<VerdictItem>& items) {
    return std::all_of(items.begin(), items.end(),
                       [](const VerdictItem& i) { return i.pass; });
}

} // namespace degenflow
