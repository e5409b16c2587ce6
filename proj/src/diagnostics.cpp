#include "degenflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "degenflow/functionals.hpp"

namespace degenflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double DecayParams::lambda_N() const {
    const double f = std::numbers::pi / domain_length;
    return f * f;
}

double DecayParams::Lambda() const {
    return std::sqrt(w_hat()) * std::min(c_eta, c_kappa) * lambda_N();
}

PhiFunctional PhiFunctional::momentum_phi() {
    PhiFunctional p;
    p.name = "momentum";
    p.phi = [](double v, double) { return v; };
    p.phi_v = [](double, double) { return 1.0; };
    p.phi_w = [](double, double) { return 0.0; };
    p.phi_vv = p.phi_vw = p.phi_ww = [](double, double) { return 0.0; };
    return p;
}

PhiFunctional PhiFunctional::energy_phi() {
    PhiFunctional p;
    p.name = "energy";
    p.phi = [](double v, double w) { return 0.5 * v * v + w; };
    p.phi_v = [](double v, double) { return v; };
    p.phi_w = [](double, double) { return 1.0; };
    p.phi_vv = [](double, double) { return 1.0; };
    p.phi_vw = p.phi_ww = [](double, double) { return 0.0; };
    return p;
}

PhiFunctional PhiFunctional::kinetic_phi() {
    PhiFunctional p;
    p.name = "kinetic";
    p.phi = [](double v, double) { return 0.5 * v * v; };
    p.phi_v = [](double v, double) { return v; };
    p.phi_w = [](double, double) { return 0.0; };
    p.phi_vv = [](double, double) { return 1.0; };
    p.phi_vw = p.phi_ww = [](double, double) { return 0.0; };
    return p;
}

PhiFunctional PhiFunctional::heat_phi() {
    PhiFunctional p;
    p.name = "heat";
    p.phi = [](double, double w) { return w; };
    p.phi_v = [](double, double) { return 0.0; };
    p.phi_w = [](double, double) { return 1.0; };
    p.phi_vv = p.phi_vw = p.phi_ww = [](double, double) { return 0.0; };
    return p;
}

PhiFunctional PhiFunctional::entropy_phi(EntropySpec spec) {
    PhiFunctional p;
    p.name = "entropy";
    p.phi = [spec](double, double w) { return spec.sigma(w); };
    p.phi_v = [](double, double) { return 0.0; };
    p.phi_w = [spec](double, double w) { return spec.sigma_prime(w); };
    p.phi_vv = p.phi_vw = [](double, double) { return 0.0; };
    p.phi_ww = [spec](double, double w) { return spec.sigma_prime2(w); };
    return p;
}

namespace {

double quad_phi(const State& s, const PhiFunctional& phi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += phi.phi(s.v[i], s.w[i]);
    return s.h * acc;
}

double quad_remainder(const State& s, const PhiFunctional& phi, const CoefficientLaw& law) {
    double acc = 0.0;
    const double h = s.h;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double wf = 0.5 * (s.w[i] + s.w[i + 1]);
        const double vf = 0.5 * (s.v[i] + s.v[i + 1]);
        const double dv = (s.v[i + 1] - s.v[i]) / h;
        const double dw = (s.w[i + 1] - s.w[i]) / h;
        const double et = law.eta(wf);
        const double ka = law.kappa(wf);
        acc += et * (phi.phi_w(vf, wf) - phi.phi_vv(vf, wf)) * dv * dv -
               (et + ka) * phi.phi_vw(vf, wf) * dv * dw - ka * phi.phi_ww(vf, wf) * dw * dw;
    }
    return h * acc;
}

} // namespace

RateCheckResult functional_rate_check(const SnapshotSeries& series, const PhiFunctional& phi,
                                      const CoefficientLaw& law) {
    RateCheckResult out;
    const auto& snaps = series.snapshots;
    if (snaps.size() < 2) return out;
    std::vector<double> q(snaps.size()), r(snaps.size());
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        q[k] = quad_phi(snaps[k], phi);
        r[k] = quad_remainder(snaps[k], phi, law);
    }
    for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
        const double dt = snaps[k + 1].t - snaps[k].t;
        if (!(dt > 0.0)) continue;
        const double rate = (q[k + 1] - q[k]) / dt;
        const double rmid = 0.5 * (r[k] + r[k + 1]);
        out.max_mismatch = std::max(out.max_mismatch, std::abs(rate - rmid));
        out.scale = std::max({out.scale, std::abs(rate), std::abs(rmid)});
    }
    out.normalized = out.scale > 1e-300 ? out.max_mismatch / out.scale : out.max_mismatch;
    return out;
}

MonitorVerdict lp_monitor(const SnapshotSeries& series, double p, bool check_e) {
    MonitorVerdict v;
    const double rel = 1e-10;
    auto scan = [&](auto&& value_at, std::size_t count) {
        double prev = -kInf;
        for (std::size_t k = 0; k < count; ++k) {
            const auto [t, val] = value_at(k);
            if (prev > -kInf) {
                const double excess = val - prev * (1.0 + rel) - 1e-300;
                if (excess > v.worst) {
                    v.worst = excess;
                    v.worst_t = t;
                    v.pass = false;
                }
            }
            prev = val;
        }
    };
    const bool per_step = p == 1.0 || p == 2.0 || std::isinf(p);
    if (per_step) {
        scan(
            [&](std::size_t k) {
                const StepStats& st = series.steps[k];
                double val;
                if (check_e)
                    val = p == 1.0 ? st.e_l1 : (p == 2.0 ? st.e_l2 : st.e_linf);
                else
                    val = p == 1.0 ? st.v_l1 : (p == 2.0 ? st.v_l2 : st.v_linf);
                return std::pair<double, double>(st.t, val);
            },
            series.steps.size());
    } else {
        scan(
            [&](std::size_t k) {
                const State& s = series.snapshots[k];
                std::vector<double> f = s.v;
                if (check_e)
                    for (std::size_t i = 0; i < s.size(); ++i)
                        f[i] = 0.5 * s.v[i] * s.v[i] + s.w[i];
                return std::pair<double, double>(s.t, lp_norm(f, s.h, p));
            },
            series.snapshots.size());
    }
    return v;
}

DissipationBudget dissipation_budget(const SnapshotSeries& series, const CoefficientLaw& law,
                                     double p) {
    if (p < 1.0) throw ConfigError("dissipation_budget: p must be >= 1");
    DissipationBudget out;
    if (series.steps.size() > 1 && p == 2.0) {
        // Exact per-step face quadrature recorded by the time loop.
        for (const StepStats& st : series.steps) out.accumulated += st.diss2_increment;
        out.bound = 0.5 * series.steps.front().v_l2 * series.steps.front().v_l2;
    } else {
        // Snapshot trapezoid (used for p != 2 and for externally built series).
        if (series.snapshots.size() < 2)
            throw ConfigError("dissipation_budget: need at least two snapshots");
        auto density = [&](const State& s) {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                const double wf = 0.5 * (s.w[i] + s.w[i + 1]);
                const double vf = 0.5 * (s.v[i] + s.v[i + 1]);
                const double dv = (s.v[i + 1] - s.v[i]) / s.h;
                const double grow = p == 2.0 ? 1.0 : (p - 1.0) * std::pow(std::abs(vf), p - 2.0);
                acc += law.eta(wf) * grow * dv * dv;
            }
            return s.h * acc;
        };
        std::vector<double> d(series.snapshots.size());
        for (std::size_t k = 0; k < series.snapshots.size(); ++k)
            d[k] = density(series.snapshots[k]);
        for (std::size_t k = 0; k + 1 < series.snapshots.size(); ++k)
            out.accumulated += 0.5 * (d[k] + d[k + 1]) *
                               (series.snapshots[k + 1].t - series.snapshots[k].t);
        const State& first = series.snapshots.front();
        double b = 0.0;
        for (double vi : first.v) b += std::pow(std::abs(vi), p) / p;
        out.bound = first.h * b;
    }
    out.pass = out.accumulated <= out.bound * (1.0 + 1e-6);
    return out;
}

double comparison_check(const SnapshotSeries& series, double M_star) {
    if (!series.config.law.eta_equals_kappa())
        throw ConfigError("comparison_check: requires an eta == kappa law");
    if (series.snapshots.empty()) throw ConfigError("comparison_check: empty series");
    const State& s0 = series.snapshots.front();
    for (std::size_t i = 0; i < s0.size(); ++i)
        if (std::abs(s0.v[i]) > M_star * s0.w[i])
            throw ConfigError("comparison_check: initial data violates |v0| <= M* w0");
    double worst = 0.0;
    for (const State& s : series.snapshots)
        for (std::size_t i = 0; i < s.size(); ++i)
            worst = std::max(worst, std::abs(s.v[i]) - M_star * s.w[i]);
    return std::max(worst, 0.0);
}

std::vector<SupportSample> support_tracker(const SnapshotSeries& series, double w_tol) {
    if (!(w_tol > 0.0)) throw ConfigError("support_tracker: w_tol must be positive");
    std::vector<SupportSample> out;
    out.reserve(series.snapshots.size());
    for (const State& s : series.snapshots) {
        SupportSample ss;
        ss.t = s.t;
        std::size_t lo = s.size(), hi = s.size();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.w[i] > w_tol) {
                if (lo == s.size()) lo = i;
                hi = i;
            }
        }
        if (lo < s.size()) {
            ss.empty = false;
            ss.left = s.x0 + static_cast<double>(lo) * s.h;       // outer face of first wet cell
            ss.right = s.x0 + static_cast<double>(hi + 1) * s.h;  // outer face of last wet cell
        }
        out.push_back(ss);
    }
    return out;
}

namespace {

FitResult ols(const std::vector<double>& x, const std::vector<double>& y) {
    FitResult f;
    const std::size_t n = x.size();
    if (n < 2) return f;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.ok = true;
    return f;
}

/// Last-half time window of the non-empty samples.
std::vector<SupportSample> last_half(const std::vector<SupportSample>& in) {
    std::vector<SupportSample> wet;
    for (const auto& s : in)
        if (!s.empty) wet.push_back(s);
    if (wet.size() < 2) return wet;
    const double t0 = wet.front().t, t1 = wet.back().t;
    const double cut = 0.5 * (t0 + t1);
    std::vector<SupportSample> out;
    for (const auto& s : wet)
        if (s.t >= cut) out.push_back(s);
    return out.size() >= 2 ? out : wet;
}

} // namespace

FitResult fit_front_speed(const std::vector<SupportSample>& samples, bool right_edge) {
    const auto wet = last_half(samples);
    std::vector<double> ts, es;
    for (const auto& s : wet) {
        ts.push_back(s.t);
        es.push_back(right_edge ? s.right : s.left);
    }
    return ols(ts, es);
}

FitResult fit_similarity_exponent(const std::vector<SupportSample>& samples, double t_star,
                                  bool right_edge) {
    const auto wet = last_half(samples);
    std::vector<double> ts, es;
    for (const auto& s : wet) {
        const double edge = right_edge ? s.right : -s.left;
        if (edge <= 0.0 || s.t + t_star <= 0.0) continue;
        ts.push_back(std::log(s.t + t_star));
        es.push_back(std::log(edge));
    }
    FitResult f = ols(ts, es);
    if (f.ok) f.intercept = std::exp(f.intercept);
    return f;
}

DecayCheckResult decay_check(const SnapshotSeries& series, const DecayParams& dp,
                             bool require_positive_w0) {
    dp.validate();
    if (series.snapshots.empty()) throw ConfigError("decay_check: empty series");
    const State& s0 = series.snapshots.front();
    if (require_positive_w0)
        for (double wi : s0.w)
            if (!(wi > 0.0))
                throw ConfigError("decay_check: w0 must be uniformly positive");

    const double vh = dp.v_hat();
    const double sq_wh = std::sqrt(dp.w_hat());
    auto H_of = [&](const State& s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double dv = s.v[i] - vh;
            const double dz = std::sqrt(std::max(s.w[i], 0.0)) - sq_wh;
            acc += 0.5 * dv * dv + dz * dz;
        }
        return s.h * acc;
    };

    DecayCheckResult out;
    const double H0 = H_of(s0);
    const double lam = dp.Lambda();
    const double atol = 1e-12 * std::max(1.0, dp.E0); // round-off slack at equilibrium
    std::vector<double> ts, logs;
    for (const State& s : series.snapshots) {
        const double H = H_of(s);
        out.H.push_back({s.t, H});
        const double bound = H0 * std::exp(-lam * (s.t - s0.t)) * (1.0 + 1e-3) + atol;
        if (H0 > 0.0) {
            const double ratio = H / (H0 * std::exp(-lam * (s.t - s0.t)));
            out.worst_ratio = std::max(out.worst_ratio, ratio);
        }
        if (H > bound) out.bound_holds = false;
        if (H > 1e-14 * std::max(1.0, H0)) {
            ts.push_back(s.t);
            logs.push_back(std::log(H));
        }
    }
    const FitResult f = ols(ts, logs);
    out.fitted_rate = f.ok ? -f.slope : 0.0;
    return out;
}

MonitorVerdict heat_content_monitor(const SnapshotSeries& series) {
    MonitorVerdict v;
    const auto& st = series.steps;
    if (st.size() < 2) return v;
    const bool sink_on = series.config.law.sink_a() > 0.0;
    const double rel = 1e-10;
    for (std::size_t k = 0; k + 1 < st.size(); ++k) {
        double excess;
        if (sink_on) { // total energy nonincreasing instead
            excess = st[k + 1].energy - st[k].energy - rel * std::abs(st[k].energy);
        } else {
            excess = st[k].heat - st[k + 1].heat - rel * std::max(std::abs(st[k].heat), 1.0e-300);
        }
        if (excess > v.worst) {
            v.worst = excess;
            v.worst_t = st[k + 1].t;
            v.pass = false;
        }
    }
    if (!sink_on) {
        // Heat stays below the (conserved) energy; discretely heat <= energy holds
        // cell by cell, so compare against the running energy record.
        for (std::size_t k = 0; k < st.size(); ++k) {
            const double excess = st[k].heat - st[k].energy - 1e-12 * std::max(1.0, st[k].energy);
            if (excess > v.worst) {
                v.worst = excess;
                v.worst_t = st[k].t;
                v.pass = false;
            }
        }
    }
    return v;
}

nlohmann::ordered_json diagnostics_report(const SnapshotSeries& series) {
    nlohmann::ordered_json j;
    const auto& st = series.steps;
    const double V0 = st.front().momentum;
    const double E0 = st.front().energy;
    double vdrift = 0.0, edrift = 0.0;
    for (const auto& s : st) {
        vdrift = std::max(vdrift, std::abs(s.momentum - V0));
        edrift = std::max(edrift, std::abs(s.energy - E0));
    }
    j["momentum_initial"] = V0;
    j["momentum_drift"] = vdrift;
    j["energy_initial"] = E0;
    j["energy_drift"] = edrift;
    j["total_steps"] = series.total_steps;
    j["total_clamped_mass"] = series.total_clamped_mass;

    nlohmann::ordered_json heat = nlohmann::ordered_json::array();
    nlohmann::ordered_json entropy_series = nlohmann::ordered_json::array();
    // Per-snapshot scalar series (per-step records stay in memory only).
    for (const State& s : series.snapshots) {
        heat.push_back({{"t", s.t}, {"value", heat_content(s)}});
        entropy_series.push_back({{"t", s.t}, {"value", entropy(s, EntropySpec::sqrt_kind())}});
    }
    j["heat_content_series"] = heat;
    j["entropy_sqrt_series"] = entropy_series;

    const MonitorVerdict hm = heat_content_monitor(series);
    j["heat_monotone"] = {{"pass", hm.pass}, {"worst", hm.worst}, {"worst_t", hm.worst_t}};
    const std::pair<const char*, double> norms[] = {{"1", 1.0}, {"2", 2.0}, {"inf", kInf}};
    for (const auto& [pname, p] : norms) {
        const MonitorVerdict lv = lp_monitor(series, p, false);
        j[std::string("v_l") + pname + "_monotone"] = {
            {"pass", lv.pass}, {"worst", lv.worst}, {"worst_t", lv.worst_t}};
    }
    const DissipationBudget db = dissipation_budget(series, series.config.law, 2.0);
    j["dissipation_budget_p2"] = {
        {"accumulated", db.accumulated}, {"bound", db.bound}, {"pass", db.pass}};

    nlohmann::ordered_json lp = nlohmann::ordered_json::array();
    for (const State& s : series.snapshots)
        lp.push_back({{"t", s.t},
                      {"v_l1", lp_norm(s.v, s.h, 1.0)},
                      {"v_l2", lp_norm(s.v, s.h, 2.0)},
                      {"v_linf", lp_norm(s.v, s.h, kInf)}});
    j["lp_series"] = lp;

    bool positive = !series.snapshots.empty();
    for (const State& s : series.snapshots)
        for (double wi : s.w) positive = positive && wi > 0.0;
    if (positive) {
        nlohmann::ordered_json le = nlohmann::ordered_json::array();
        for (const State& s : series.snapshots)
            le.push_back({{"t", s.t}, {"value", entropy(s, EntropySpec::log_kind())}});
        j["entropy_log_series"] = le;
    }

    nlohmann::ordered_json sup = nlohmann::ordered_json::array();
    nlohmann::ordered_json fits;
    if (!series.snapshots.empty()) {
        const auto& w0 = series.snapshots.front().w;
        const double w_ref = *std::max_element(w0.begin(), w0.end());
        if (w_ref > 0.0) {
            const auto supports = support_tracker(series, 1e-10 * w_ref);
            for (const auto& s : supports)
                sup.push_back(
                    {{"t", s.t}, {"left", s.left}, {"right", s.right}, {"empty", s.empty}});
            const FitResult lin = fit_front_speed(supports);
            const FitResult sim = fit_similarity_exponent(supports, 1.0);
            fits["front_speed"] = {{"ok", lin.ok}, {"a", lin.intercept}, {"s", lin.slope}};
            fits["similarity"] = {{"ok", sim.ok}, {"a", sim.intercept}, {"delta", sim.slope},
                                  {"t_star", 1.0}};
        }
    }
    j["support_series"] = sup;
    j["exponent_fits"] = fits;
    return j;
}

} // namespace degenflow
