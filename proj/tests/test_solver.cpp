#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

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

SolverConfig basic_cfg(double t_end, std::vector<double> snaps,
                       SolverForm form = SolverForm::primitive) {
    SolverConfig cfg;
    cfg.form = form;
    cfg.t_end = t_end;
    cfg.snapshot_times = std::move(snaps);
    cfg.law = CoefficientLaw::power(Coefficients{});
    return cfg;
}

} // namespace

TEST_CASE("cfl_dt") {
    SolverConfig cfg = basic_cfg(1.0, {0.0, 0.25, 1.0});
    State s = make_state(0.0, 1.6, 16);
    s.h = 0.1;

    // Fully degenerate state: gap to the next snapshot.
    s.t = 0.0;
    CHECK(cfl_dt(s, cfg) == doctest::Approx(0.25).epsilon(1e-13));
    s.t = 0.3;
    CHECK(cfl_dt(s, cfg) == doctest::Approx(0.7).epsilon(1e-13));

    // w = 1 with unit coefficients: cfl h^2 / 2.
    for (auto& wi : s.w) wi = 1.0;
    CHECK(cfl_dt(s, cfg) == doctest::Approx(0.45 * 0.01 / 2.0).epsilon(1e-13));

    // Doubling h quadruples dt.
    State s2 = s;
    s2.h = 0.2;
    CHECK(cfl_dt(s2, cfg) == doctest::Approx(4.0 * cfl_dt(s, cfg)).epsilon(1e-13));

    // Sink cap.
    SolverConfig cs = cfg;
    cs.law.coeffs.sink_a = 100.0;
    CHECK(cfl_dt(s, cs) <= 0.45 / 100.0 + 1e-15);
}

TEST_CASE("constant states are fixed points of both forms") {
    SolverConfig cfg = basic_cfg(0.0, {});
    State s = make_state(-1.0, 1.0, 32);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s.v[i] = 1.3;
        s.w[i] = 0.8;
    }
    for (SolverForm form : {SolverForm::primitive, SolverForm::energy}) {
        cfg.form = form;
        const StepResult r = form == SolverForm::primitive ? step_primitive(s, 1e-4, cfg)
                                                           : step_energy(s, 1e-4, cfg);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(r.state.v[i] == 1.3);
            CHECK(r.state.w[i] == doctest::Approx(0.8).epsilon(1e-15));
        }
        CHECK(r.report.clamped_cells == 0);
    }
}

TEST_CASE("CFL violation is rejected") {
    SolverConfig cfg = basic_cfg(1.0, {});
    State s = make_state(0.0, 1.0, 32);
    for (auto& wi : s.w) wi = 1.0;
    CHECK_THROWS_AS(step_primitive(s, 1.0, cfg), NumericError);
    CHECK_THROWS_AS(step_energy(s, 1.0, cfg), NumericError);
}

TEST_CASE("regularize") {
    const std::vector<double> zero(8, 0.0);
    CHECK(regularize(zero, 0.0) == zero);
    const auto lifted = regularize(zero, 1e-3);
    for (double w : lifted) CHECK(w == 1e-3);
    // Mass change is exactly h * sum of the deficits.
    const std::vector<double> mixed{0.0, 2e-3, 5e-4, 1.0};
    const auto r = regularize(mixed, 1e-3);
    double change = 0.0;
    for (std::size_t i = 0; i < mixed.size(); ++i) change += r[i] - mixed[i];
    CHECK(change == doctest::Approx(1e-3 + 0.5e-3).epsilon(1e-14));
    CHECK_THROWS_AS(regularize(zero, -1.0), ConfigError);
}

TEST_CASE("run: t_end = 0 returns the initial snapshot only") {
    SolverConfig cfg = basic_cfg(0.0, {0.0});
    State s = make_state(0.0, 1.0, 16);
    s.v[3] = 1.0;
    const SnapshotSeries series = run(s, cfg);
    CHECK(series.snapshots.size() == 1);
    CHECK(series.total_steps == 0);
    CHECK(series.snapshots[0].v == s.v);
}

TEST_CASE("run: trivial steady states stay frozen") {
    SolverConfig cfg = basic_cfg(0.5, {0.0, 0.25, 0.5});
    State s = make_state(-1.0, 1.0, 64);
    for (std::size_t i = 0; i < s.size(); ++i)
        s.v[i] = std::sin(3.0 * s.cell_center(i)); // arbitrary v0, w = 0
    const SnapshotSeries series = run(s, cfg);
    REQUIRE(series.snapshots.size() == 3);
    for (const State& snap : series.snapshots) {
        CHECK(snap.v == s.v);
        CHECK(snap.w == s.w);
    }
}

TEST_CASE("max principle and Lp decay for v") {
    SolverConfig cfg = basic_cfg(0.05, {0.05});
    State s = make_state(0.0, 1.0, 128);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = s.cell_center(i);
        s.v[i] = std::cos(2.0 * std::numbers::pi * x) + 0.3 * std::sin(5.0 * x);
        s.w[i] = 1.0 + 0.5 * std::cos(std::numbers::pi * x);
    }
    const double vmin = *std::min_element(s.v.begin(), s.v.end());
    const double vmax = *std::max_element(s.v.begin(), s.v.end());
    const SnapshotSeries series = run(s, cfg);
    for (const State& snap : series.snapshots)
        for (double vi : snap.v) {
            CHECK(vi >= vmin - 1e-14);
            CHECK(vi <= vmax + 1e-14);
        }
    const auto& st = series.steps;
    for (std::size_t k = 0; k + 1 < st.size(); ++k) {
        CHECK(st[k + 1].v_l1 <= st[k].v_l1 * (1.0 + 1e-12));
        CHECK(st[k + 1].v_l2 <= st[k].v_l2 * (1.0 + 1e-12));
        CHECK(st[k + 1].v_linf <= st[k].v_linf * (1.0 + 1e-12));
    }
}

TEST_CASE("conservation: momentum in both forms, energy in energy form") {
    State s = make_state(-2.0, 2.0, 128);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = s.cell_center(i);
        s.v[i] = std::max(0.0, 1.0 - x * x);
        s.w[i] = std::max(0.0, 0.8 - 0.5 * x * x);
    }
    for (SolverForm form : {SolverForm::primitive, SolverForm::energy}) {
        SolverConfig cfg = basic_cfg(0.1, {0.1}, form);
        const SnapshotSeries series = run(s, cfg);
        const double V0 = series.steps.front().momentum;
        const double E0 = series.steps.front().energy;
        for (const auto& rec : series.steps) {
            CHECK(std::abs(rec.momentum - V0) <= 1e-12 * std::abs(V0));
            if (form == SolverForm::energy)
                CHECK(std::abs(rec.energy - E0) <= 1e-12 * E0);
        }
        if (form == SolverForm::primitive) {
            // Heat content never decreases (nonnegative source, telescoping flux).
            for (std::size_t k = 0; k + 1 < series.steps.size(); ++k)
                CHECK(series.steps[k + 1].heat >=
                      series.steps[k].heat * (1.0 - 1e-12) - 1e-300);
        }
    }
}

TEST_CASE("positivity: clamping stays at the round-off level") {
    const BarenblattParams p = BarenblattParams::from_amplitude(1.0, 1.0, 1.0, 1, 1.0);
    State s = make_state(-6.0, 6.0, 128);
    for (std::size_t i = 0; i < s.size(); ++i)
        s.w[i] = barenblatt(0.0, std::abs(s.cell_center(i)), p);
    SolverConfig cfg = basic_cfg(1.0, {1.0});
    const SnapshotSeries series = run(s, cfg);
    CHECK(series.total_clamped_mass <= 1e-10 * p.E0);
    for (const State& snap : series.snapshots)
        for (double wi : snap.w) CHECK(wi >= 0.0);
}

TEST_CASE("parabolic scaling S1 commutes with the discrete update") {
    // (v, w)(lambda^2 t, lambda x) on a lambda-refined grid reproduces the
    // coarse run cell by cell (exactly, for power-of-two grids).
    auto initial = [](State& s, double stretch) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double x = stretch * s.cell_center(i);
            s.v[i] = std::max(0.0, 1.0 - x * x);
            s.w[i] = std::max(0.0, 0.5 - 0.25 * x * x);
        }
    };
    State a = make_state(-2.0, 2.0, 256);
    initial(a, 1.0);
    State b = make_state(-1.0, 1.0, 256); // lambda = 2: same samples, half the grid
    initial(b, 2.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.v[i] == b.v[i]);
        CHECK(a.w[i] == b.w[i]);
    }
    SolverConfig ca = basic_cfg(0.064, {0.064});
    SolverConfig cb = basic_cfg(0.016, {0.016});
    const SnapshotSeries ra = run(a, ca);
    const SnapshotSeries rb = run(b, cb);
    const State& fa = ra.snapshots.back();
    const State& fb = rb.snapshots.back();
    for (std::size_t i = 0; i < fa.size(); ++i) {
        CHECK(fa.v[i] == doctest::Approx(fb.v[i]).epsilon(1e-13));
        CHECK(fa.w[i] == doctest::Approx(fb.w[i]).epsilon(1e-13));
    }
}

TEST_CASE("sink term: exact energy bookkeeping for v = 0") {
    SolverConfig cfg = basic_cfg(0.2, {0.2});
    cfg.law.coeffs.sink_a = 0.5;
    State s = make_state(-2.0, 2.0, 64);
    for (std::size_t i = 0; i < s.size(); ++i)
        s.w[i] = std::max(0.0, 1.0 - 0.5 * s.cell_center(i) * s.cell_center(i));
    const SnapshotSeries series = run(s, cfg);
    const auto& st = series.steps;
    double sink_total = 0.0;
    for (const auto& rec : st) sink_total += rec.sink_increment;
    const double dE = st.front().energy - st.back().energy;
    CHECK(dE == doctest::Approx(sink_total).epsilon(1e-11));
    // Energy is nonincreasing step by step.
    for (std::size_t k = 0; k + 1 < st.size(); ++k)
        CHECK(st[k + 1].energy <= st[k].energy * (1.0 + 1e-12));
}

TEST_CASE("snapshots land exactly on the requested times") {
    SolverConfig cfg = basic_cfg(0.013, {0.0, 0.0042, 0.009, 0.013});
    State s = make_state(0.0, 1.0, 32);
    for (auto& wi : s.w) wi = 1.0;
    const SnapshotSeries series = run(s, cfg);
    REQUIRE(series.snapshots.size() == 4);
    CHECK(series.snapshots[0].t == 0.0);
    CHECK(series.snapshots[1].t == 0.0042);
    CHECK(series.snapshots[2].t == 0.009);
    CHECK(series.snapshots[3].t == 0.013);
}

TEST_CASE("solver config validation") {
    SolverConfig cfg = basic_cfg(1.0, {0.5, 0.2}); // unsorted
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = basic_cfg(1.0, {0.5, 2.0}); // beyond t_end
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = basic_cfg(1.0, {});
    cfg.cfl = 0.7;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
