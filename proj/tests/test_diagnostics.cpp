#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "degenflow/diagnostics.hpp"
#include "degenflow/exact.hpp"
#include "degenflow/functionals.hpp"
#include "degenflow/solver.hpp"

using namespace degenflow;

namespace {

State make_state(double x0, double x1, std::size_t n) {
    State s;
    s.x0 = x0;
    s.h = (x1 - x0) / static_cast<double>(n);
    s.v.assign(n, 0.0);
    s.w.assign(n, 0.0);
    return s;
}

SnapshotSeries smooth_run(std::size_t n, double t_end, std::size_t snaps,
                          SolverForm form = SolverForm::primitive) {
    State s = make_state(0.0, 1.0, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s.cell_center(i);
        s.v[i] = 0.2 * std::cos(std::numbers::pi * x);
        s.w[i] = 1.0 + 0.1 * std::cos(std::numbers::pi * x);
    }
    SolverConfig cfg;
    cfg.form = form;
    cfg.t_end = t_end;
    for (std::size_t k = 0; k < snaps; ++k)
        cfg.snapshot_times.push_back(t_end * static_cast<double>(k) /
                                     static_cast<double>(snaps - 1));
    cfg.snapshot_times.back() = t_end;
    cfg.law = CoefficientLaw::power(Coefficients{});
    return run(s, cfg);
}

/// Snapshot-only series built from dense samples of the exact compact solution.
SnapshotSeries exact_compact_series(std::size_t n, std::size_t snaps, double t_end) {
    const CompactSolutionParams p{1.0, 2.0, 0.25};
    SnapshotSeries series;
    series.config.law = CoefficientLaw::power(Coefficients{});
    for (std::size_t k = 0; k < snaps; ++k) {
        const double t = t_end * static_cast<double>(k) / static_cast<double>(snaps - 1);
        State s = make_state(-6.0, 6.0, n);
        s.t = t;
        for (std::size_t i = 0; i < n; ++i) {
            const VW vw = compact_solution(t, s.cell_center(i), p);
            s.v[i] = vw.v;
            s.w[i] = vw.w;
        }
        series.snapshots.push_back(std::move(s));
    }
    return series;
}

} // namespace

TEST_CASE("functional rate identity: conserved functionals vanish on both sides") {
    const SnapshotSeries series = smooth_run(128, 0.002, 21);
    const CoefficientLaw& law = series.config.law;
    const RateCheckResult momentum = functional_rate_check(series, PhiFunctional::momentum_phi(), law);
    CHECK(momentum.max_mismatch <= 1e-8);

    // Energy closes to round-off in the energy form.
    const SnapshotSeries es = smooth_run(128, 0.002, 21, SolverForm::energy);
    const RateCheckResult energy = functional_rate_check(es, PhiFunctional::energy_phi(), law);
    CHECK(energy.max_mismatch <= 1e-7);
}

TEST_CASE("functional rate identity: kinetic energy closes at first order") {
    std::vector<double> hs, ms;
    for (std::size_t n : {64u, 128u, 256u}) {
        // Snapshot spacing tied to the step size so the pre-condition
        // dt_snapshot <= 10 dt_step holds at every level.
        State probe = make_state(0.0, 1.0, n);
        for (std::size_t i = 0; i < n; ++i)
            probe.w[i] = 1.1;
        SolverConfig pc;
        pc.t_end = 1.0;
        pc.law = CoefficientLaw::power(Coefficients{});
        const double dt0 = cfl_dt(probe, pc);
        const SnapshotSeries series = smooth_run(n, 160.0 * dt0, 21);
        const RateCheckResult rc =
            functional_rate_check(series, PhiFunctional::kinetic_phi(), series.config.law);
        hs.push_back(std::log(1.0 / static_cast<double>(n)));
        ms.push_back(std::log(rc.normalized));
    }
    const double slope = (ms.back() - ms.front()) / (hs.back() - hs.front());
    CHECK(slope >= 0.9);
}

TEST_CASE("lp monitor") {
    const SnapshotSeries series = smooth_run(96, 0.01, 6);
    for (const double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
        CHECK(lp_monitor(series, p).pass);
    CHECK(lp_monitor(series, 3.0).pass); // snapshot-based general p
    // eta == kappa: the energy density decays in every Lp as well.
    for (const double p : {1.0, 2.0}) CHECK(lp_monitor(series, p, true).pass);
}

TEST_CASE("dissipation budget") {
    // v0 = 0: both sides vanish.
    {
        State s = make_state(0.0, 1.0, 64);
        for (std::size_t i = 0; i < 64; ++i) s.w[i] = 1.0;
        SolverConfig cfg;
        cfg.t_end = 0.01;
        cfg.snapshot_times = {0.0, 0.01};
        cfg.law = CoefficientLaw::power(Coefficients{});
        const DissipationBudget db = dissipation_budget(run(s, cfg), cfg.law, 2.0);
        CHECK(db.accumulated == 0.0);
        CHECK(db.bound == 0.0);
        CHECK(db.pass);
    }
    // Any run: accumulated <= bound; p = 4 via the snapshot path.
    {
        const SnapshotSeries series = smooth_run(128, 0.05, 26);
        CHECK(dissipation_budget(series, series.config.law, 2.0).pass);
        CHECK(dissipation_budget(series, series.config.law, 4.0).pass);
    }
    // Exact compact-solution series: the p = 2 budget saturates to the
    // kinetic-energy drop (16/3) B^3 (sqrt(T + t*) - sqrt(t*)).
    {
        const SnapshotSeries series = exact_compact_series(4096, 301, 0.5);
        const DissipationBudget db = dissipation_budget(series, series.config.law, 2.0);
        const double expected = 16.0 / 3.0 * (std::sqrt(0.75) - std::sqrt(0.25));
        CHECK(db.accumulated == doctest::Approx(expected).epsilon(0.01));
        CHECK(db.pass);
    }
}

TEST_CASE("comparison principle check") {
    // v0 = 0 gives zero violation.
    {
        State s = make_state(0.0, 1.0, 64);
        for (std::size_t i = 0; i < 64; ++i) s.w[i] = 1.0;
        SolverConfig cfg;
        cfg.t_end = 0.01;
        cfg.snapshot_times = {0.0, 0.01};
        cfg.law = CoefficientLaw::power(Coefficients{});
        CHECK(comparison_check(run(s, cfg), 0.5) == 0.0);
    }
    // |v0| <= M* w0 propagates up to discretization error (eta == kappa).
    {
        const std::size_t n = 512;
        State s = make_state(0.0, 1.0, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = s.cell_center(i);
            const double cw = std::cos(std::numbers::pi * x);
            s.w[i] = 1.0 + cw * cw;
            s.v[i] = 0.5 * s.w[i];
        }
        SolverConfig cfg;
        cfg.t_end = 0.1;
        cfg.snapshot_times = {0.0, 0.05, 0.1};
        cfg.law = CoefficientLaw::power(Coefficients{});
        CHECK(comparison_check(run(s, cfg), 0.5) <= 1e-6);
    }
    // Precondition gate: initial data must satisfy the bound.
    {
        State s = make_state(0.0, 1.0, 32);
        for (std::size_t i = 0; i < 32; ++i) {
            s.v[i] = 1.0;
            s.w[i] = 0.1;
        }
        SolverConfig cfg;
        cfg.t_end = 0.001;
        cfg.snapshot_times = {0.0, 0.001};
        cfg.law = CoefficientLaw::power(Coefficients{});
        const SnapshotSeries series = run(s, cfg);
        CHECK_THROWS_AS(comparison_check(series, 0.5), ConfigError);
    }
}

TEST_CASE("support tracker on exact fields") {
    // Trivial steady state: constant edges.
    {
        State s = make_state(-1.0, 1.0, 64);
        for (std::size_t i = 20; i < 40; ++i) s.w[i] = 1.0;
        SnapshotSeries series;
        series.config.law = CoefficientLaw::power(Coefficients{});
        for (double t : {0.0, 0.5, 1.0}) {
            State snap = s;
            snap.t = t;
            series.snapshots.push_back(snap);
        }
        const auto sup = support_tracker(series, 1e-10);
        for (const auto& e : sup) {
            CHECK(e.left == sup.front().left);
            CHECK(e.right == sup.front().right);
        }
    }
    // Exact compact solution: right edge tracks x* + 2B sqrt(t + t*) within h.
    {
        const SnapshotSeries series = exact_compact_series(2048, 11, 0.5);
        const CompactSolutionParams p{1.0, 2.0, 0.25};
        const auto sup = support_tracker(series, 1e-12);
        for (std::size_t k = 0; k < sup.size(); ++k) {
            const double exactedge = compact_support_edge(series.snapshots[k].t, p);
            CHECK(std::abs(sup[k].right - exactedge) <= series.snapshots[k].h);
        }
    }
}

TEST_CASE("decay check on equilibrium data") {
    State s = make_state(0.0, 1.0, 64);
    for (std::size_t i = 0; i < 64; ++i) {
        s.v[i] = 0.4;
        s.w[i] = 0.9;
    }
    SolverConfig cfg;
    cfg.t_end = 0.01;
    cfg.snapshot_times = {0.0, 0.005, 0.01};
    Coefficients c;
    c.alpha = c.beta = 0.5;
    cfg.law = CoefficientLaw::power(c);
    const SnapshotSeries series = run(s, cfg);

    DecayParams dp;
    dp.V0 = series.steps.front().momentum;
    dp.E0 = series.steps.front().energy;
    dp.domain_length = 1.0;
    const DecayCheckResult dc = decay_check(series, dp);
    CHECK(dc.bound_holds);
    for (const auto& [t, H] : dc.H) CHECK(H <= 1e-12);
}

TEST_CASE("heat content monitor") {
    // Pure PME: heat content constant.
    State s = make_state(-2.0, 2.0, 128);
    for (std::size_t i = 0; i < s.size(); ++i)
        s.w[i] = std::max(0.0, 1.0 - s.cell_center(i) * s.cell_center(i));
    SolverConfig cfg;
    cfg.t_end = 0.1;
    cfg.snapshot_times = {0.0, 0.1};
    cfg.law = CoefficientLaw::power(Coefficients{});
    const SnapshotSeries series = run(s, cfg);
    CHECK(heat_content_monitor(series).pass);
    const auto& st = series.steps;
    for (const auto& rec : st)
        CHECK(std::abs(rec.heat - st.front().heat) <= 1e-12 * st.front().heat);
}

TEST_CASE("diagnostics report has the stable field order") {
    const SnapshotSeries series = smooth_run(64, 0.01, 3);
    const nlohmann::ordered_json j = diagnostics_report(series);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    REQUIRE(keys.size() >= 8);
    CHECK(keys[0] == "momentum_initial");
    CHECK(keys[1] == "momentum_drift");
    CHECK(keys[2] == "energy_initial");
    CHECK(keys[3] == "energy_drift");
    CHECK(j["dissipation_budget_p2"]["pass"].get<bool>());
}

TEST_CASE("front speed and similarity exponent fits") {
    // Synthetic linear edge motion: edge = 1 + 2 t, fitted over the last half.
    std::vector<SupportSample> lin;
    for (int k = 0; k <= 20; ++k) {
        const double t = 0.1 * k;
        lin.push_back({t, -1.0 - 2.0 * t, 1.0 + 2.0 * t, false});
    }
    const FitResult f = fit_front_speed(lin);
    CHECK(f.ok);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));

    // Synthetic self-similar edge a (t + t*)^{1/3}.
    std::vector<SupportSample> sim;
    for (int k = 0; k <= 20; ++k) {
        const double t = 0.5 * k;
        const double r = 2.5 * std::pow(t + 1.0, 1.0 / 3.0);
        sim.push_back({t, -r, r, false});
    }
    const FitResult g = fit_similarity_exponent(sim, 1.0);
    CHECK(g.ok);
    CHECK(g.slope == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(g.intercept == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("heat content monitor with the sink active") {
    State s = make_state(-2.0, 2.0, 64);
    for (std::size_t i = 0; i < s.size(); ++i)
        s.w[i] = std::max(0.0, 1.0 - 0.5 * s.cell_center(i) * s.cell_center(i));
    SolverConfig cfg;
    cfg.t_end = 0.1;
    cfg.snapshot_times = {0.0, 0.1};
    Coefficients c;
    c.sink_a = 0.5;
    cfg.law = CoefficientLaw::power(c);
    const SnapshotSeries series = run(s, cfg);
    CHECK(heat_content_monitor(series).pass); // total energy nonincreasing
}
