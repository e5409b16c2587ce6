#include "degenflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "degenflow/functionals.hpp"

namespace degenflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Diffusive stability bound, infinity when the state is fully degenerate.
double stability_dt(const State& s, const SolverConfig& cfg) {
    const CoefficientLaw& law = cfg.law;
    double d_max = 0.0;
    double w_max = 0.0;
    for (double wi : s.w) {
        w_max = std::max(w_max, wi);
        const double et = law.eta(wi);
        const double ka = law.kappa(wi);
        const double d = cfg.form == SolverForm::energy
                             ? std::max(et, std::abs(ka - et)) + et
                             : std::max(et, ka);
        d_max = std::max(d_max, d);
    }
    double dt = d_max > 0.0 ? cfg.cfl * s.h * s.h / (2.0 * d_max) : kInf;
    const double a = law.sink_a();
    if (a > 0.0 && w_max > 0.0) dt = std::min(dt, cfg.cfl / (a * std::sqrt(w_max)));
    return dt;
}

double next_event_after(double t, const SolverConfig& cfg) {
    const double tiny = 1e-13 * std::max(1.0, std::abs(t));
    for (double ts : cfg.snapshot_times)
        if (ts > t + tiny) return ts;
    return cfg.t_end;
}

void clamp_w(std::vector<double>& w, double h, double tol, StepReport& rep) {
    for (double& wi : w) {
        if (wi < tol) {
            rep.clamped_mass += h * std::abs(wi);
            if (wi != 0.0) ++rep.clamped_cells;
            wi = 0.0;
        }
    }
}

/// Shared v update. Accumulates the face dissipation quadrature
/// h sum_f eta(w_f) (dv/dx)^2 into the report.
void update_v(const State& s, double dt, const CoefficientLaw& law, std::vector<double>& v_new,
              StepReport& rep) {
    const std::size_t n = s.size();
    const double h = s.h;
    thread_local std::vector<double> flux; // flux[f] sits between cells f-1 and f
    flux.assign(n + 1, 0.0);
    double diss = 0.0;
    for (std::size_t f = 1; f < n; ++f) {
        const double wf = 0.5 * (s.w[f - 1] + s.w[f]);
        const double ef = law.eta(wf);
        rep.max_coeff = std::max(rep.max_coeff, ef);
        const double dv = (s.v[f] - s.v[f - 1]) / h;
        flux[f] = ef * dv;
        diss += ef * dv * dv;
    }
    v_new.resize(n);
    for (std::size_t i = 0; i < n; ++i) v_new[i] = s.v[i] + dt / h * (flux[i + 1] - flux[i]);
    rep.diss2_increment = dt * h * diss;
}

/// Centered velocity gradient with one-sided fallback at boundary cells.
double grad_v(const State& s, std::size_t i) {
    const std::size_t n = s.size();
    if (i == 0) return (s.v[1] - s.v[0]) / s.h;
    if (i + 1 == n) return (s.v[n - 1] - s.v[n - 2]) / s.h;
    return (s.v[i + 1] - s.v[i - 1]) / (2.0 * s.h);
}

} // namespace

void SolverConfig::validate() const {
    if (!(cfl > 0.0) || cfl > 0.5) throw ConfigError("SolverConfig: cfl must lie in (0, 0.5]");
    if (w_clamp_tol < 0.0) throw ConfigError("SolverConfig: w_clamp_tol must be >= 0");
    if (t_end < 0.0) throw ConfigError("SolverConfig: t_end must be >= 0");
    double prev = -kInf;
    for (double ts : snapshot_times) {
        if (ts < prev) throw ConfigError("SolverConfig: snapshot_times must be sorted");
        if (ts < 0.0 || ts > t_end + 1e-12 * std::max(1.0, t_end))
            throw ConfigError("SolverConfig: snapshot_times must lie in [0, t_end]");
        prev = ts;
    }
    if (law.kind == CoefficientLaw::Kind::power) law.coeffs.validate();
    if (law.kind == CoefficientLaw::Kind::piecewise_44 && !(law.piecewise_B > 0.0))
        throw ConfigError("SolverConfig: piecewise_44 law needs B > 0");
}

double cfl_dt(const State& s, const SolverConfig& cfg) {
    const double dt = stability_dt(s, cfg);
    if (std::isinf(dt)) {
        const double gap = next_event_after(s.t, cfg) - s.t;
        return gap > 0.0 ? gap : 1.0;
    }
    return dt;
}

StepResult step_primitive(const State& s, double dt, const SolverConfig& cfg) {
    if (dt > stability_dt(s, cfg) * (1.0 + 1e-9))
        throw NumericError("step_primitive: CFL violation, step rejected");
    const CoefficientLaw& law = cfg.law;
    const std::size_t n = s.size();
    const double h = s.h;

    StepResult out;
    out.report.dt_used = dt;
    out.state.t = s.t + dt;
    out.state.x0 = s.x0;
    out.state.h = h;

    update_v(s, dt, law, out.state.v, out.report);

    thread_local std::vector<double> flux_w;
    flux_w.assign(n + 1, 0.0);
    for (std::size_t f = 1; f < n; ++f)
        flux_w[f] = (law.pressure(s.w[f]) - law.pressure(s.w[f - 1])) / h;

    const double a = law.sink_a();
    const double se = law.sink_exp();
    double source_sum = 0.0, sink_sum = 0.0;
    out.state.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dv = grad_v(s, i);
        const double src = law.eta(s.w[i]) * dv * dv;
        const double snk = a > 0.0 && s.w[i] > 0.0 ? a * power_law(s.w[i], se) : 0.0;
        source_sum += src;
        sink_sum += snk;
        out.state.w[i] = s.w[i] + dt / h * (flux_w[i + 1] - flux_w[i]) + dt * (src - snk);
    }
    out.report.source_increment = dt * h * source_sum;
    out.report.sink_increment = dt * h * sink_sum;
    clamp_w(out.state.w, h, cfg.w_clamp_tol, out.report);
    return out;
}

StepResult step_energy(const State& s, double dt, const SolverConfig& cfg) {
    if (dt > stability_dt(s, cfg) * (1.0 + 1e-9))
        throw NumericError("step_energy: CFL violation, step rejected");
    const CoefficientLaw& law = cfg.law;
    const std::size_t n = s.size();
    const double h = s.h;

    StepResult out;
    out.report.dt_used = dt;
    out.state.t = s.t + dt;
    out.state.x0 = s.x0;
    out.state.h = h;

    update_v(s, dt, law, out.state.v, out.report);

    thread_local std::vector<double> e;
    e.resize(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = 0.5 * s.v[i] * s.v[i] + s.w[i];

    thread_local std::vector<double> flux_e;
    flux_e.assign(n + 1, 0.0);
    for (std::size_t f = 1; f < n; ++f) {
        const double wf = 0.5 * (s.w[f - 1] + s.w[f]);
        const double ef = law.eta(wf);
        const double kf = law.kappa(wf);
        flux_e[f] = (ef * (e[f] - e[f - 1]) + (kf - ef) * (s.w[f] - s.w[f - 1])) / h;
    }

    const double a = law.sink_a();
    const double se = law.sink_exp();
    double sink_sum = 0.0;
    out.state.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ei = e[i] + dt / h * (flux_e[i + 1] - flux_e[i]);
        if (a > 0.0 && s.w[i] > 0.0) {
            const double snk = a * power_law(s.w[i], se);
            sink_sum += snk;
            ei -= dt * snk;
        }
        out.state.w[i] = ei - 0.5 * out.state.v[i] * out.state.v[i];
    }
    out.report.sink_increment = dt * h * sink_sum;
    clamp_w(out.state.w, h, cfg.w_clamp_tol, out.report);
    return out;
}

std::vector<double> regularize(const std::vector<double>& w0, double eps) {
    if (eps < 0.0) throw ConfigError("regularize: eps must be >= 0");
    std::vector<double> out(w0);
    for (double& wi : out) wi = std::max(wi, eps);
    return out;
}

namespace {

void record_stats(const State& s, const StepReport& rep, std::vector<StepStats>& out) {
    StepStats st;
    st.t = s.t;
    st.dt = rep.dt_used;
    st.momentum = momentum(s);
    st.energy = energy(s);
    st.heat = heat_content(s);
    st.entropy_sqrt = entropy(s, EntropySpec::sqrt_kind());
    st.v_l1 = lp_norm(s.v, s.h, 1.0);
    st.v_l2 = lp_norm(s.v, s.h, 2.0);
    st.v_linf = lp_norm(s.v, s.h, kInf);
    thread_local std::vector<double> e;
    e.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) e[i] = 0.5 * s.v[i] * s.v[i] + s.w[i];
    st.e_l1 = lp_norm(e, s.h, 1.0);
    st.e_l2 = lp_norm(e, s.h, 2.0);
    st.e_linf = lp_norm(e, s.h, kInf);
    st.diss2_increment = rep.diss2_increment;
    st.source_increment = rep.source_increment;
    st.sink_increment = rep.sink_increment;
    st.clamped_mass = rep.clamped_mass;
    out.push_back(st);
}

} // namespace

SnapshotSeries run(const State& initial, const SolverConfig& cfg) {
    cfg.validate();
    initial.validate();

    SnapshotSeries series;
    series.config = cfg;

    State cur = initial;
    record_stats(cur, StepReport{}, series.steps);

    std::size_t snap_idx = 0;
    auto take_due_snapshots = [&](double t) {
        const double tiny = 1e-12 * std::max(1.0, std::abs(t));
        while (snap_idx < cfg.snapshot_times.size() &&
               cfg.snapshot_times[snap_idx] <= t + tiny) {
            series.snapshots.push_back(cur);
            series.snapshots.back().t = cfg.snapshot_times[snap_idx];
            ++snap_idx;
        }
    };
    take_due_snapshots(cur.t);

    const double end_tiny = 1e-12 * std::max(1.0, cfg.t_end);
    while (cur.t < cfg.t_end - end_tiny) {
        const double t_event = next_event_after(cur.t, cfg);
        double dt = std::min(stability_dt(cur, cfg), t_event - cur.t);
        bool lands = false;
        if (cur.t + dt >= t_event - 1e-13 * std::max(1.0, std::abs(t_event))) {
            dt = t_event - cur.t;
            lands = true;
        }
        if (!(dt > 0.0)) throw NumericError("run: nonpositive time step");

        StepResult res = cfg.form == SolverForm::primitive ? step_primitive(cur, dt, cfg)
                                                           : step_energy(cur, dt, cfg);
        cur = std::move(res.state);
        if (lands) cur.t = t_event;
        series.total_steps += 1;
        series.total_clamped_mass += res.report.clamped_mass;
        record_stats(cur, res.report, series.steps);
        take_due_snapshots(cur.t);
    }
    take_due_snapshots(cfg.t_end);
    return series;
}

} // namespace degenflow
