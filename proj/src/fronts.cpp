#include "degenflow/fronts.hpp"

#include <algorithm>
#include <cmath>

#include "degenflow/ode.hpp"

namespace degenflow {

FrontRhs front_rhs(double V, double W, const FrontParams& p) {
    if (!(W > 0.0)) throw DomainError("front_rhs: W must be positive");
    const double dv = V - p.v_star;
    FrontRhs r;
    r.dV = p.c_F * dv / p.eta(W);
    r.dW = p.c_F * (W - p.w_star - 0.5 * dv * dv) / p.kappa(W);
    return r;
}

FrontTrajectory integrate_front(double z0, double V0, double W0, const FrontParams& p,
                                double z_max, double W_floor, double rel_tol) {
    p.validate();
    if (!(W0 > W_floor) || !(W_floor > 0.0))
        throw ConfigError("integrate_front: need W0 > W_floor > 0");

    Dopri5<2> ode;
    ode.rel_tol = rel_tol;
    ode.abs_tol = 1e-14 * std::max(1.0, W0);
    ode.h_init = 1e-6 * std::max(1.0, z_max - z0);
    ode.h_max = 0.05 * std::max(1.0, z_max - z0);

    auto rhs = [&](double, const Dopri5<2>::StateVec& y) -> Dopri5<2>::StateVec {
        const FrontRhs r = front_rhs(y[0], y[1], p);
        return {r.dV, r.dW};
    };
    auto stop = [&](double, const Dopri5<2>::StateVec& y) { return y[1] <= W_floor; };

    const auto res = ode.integrate(rhs, z0, {V0, W0}, z_max, stop);

    FrontTrajectory traj;
    traj.samples.reserve(res.xs.size());
    for (std::size_t i = 0; i < res.xs.size(); ++i)
        traj.samples.push_back({res.xs[i], res.ys[i][0], res.ys[i][1]});

    // Square-root extinction (W ~ sqrt(z* - z)) cannot cross a deep floor in
    // double precision: the step size underflows first. A stall with small and
    // shrinking W is the floor termination; a stall elsewhere is a blow-up.
    double w_peak = 0.0;
    for (const auto& s : traj.samples) w_peak = std::max(w_peak, s.W);
    const bool stalled_at_floor =
        res.step_underflow &&
        traj.samples.back().W <= std::max(10.0 * W_floor, 1e-4 * w_peak);

    if (res.step_underflow && !stalled_at_floor) {
        traj.termination = FrontTermination::blow_up;
    } else if (res.stopped || stalled_at_floor) {
        traj.termination = FrontTermination::hit_W_floor;
        const FrontSample& last = traj.samples.back();
        traj.z_floor = last.z;
        traj.V_floor = last.V;
        // W V' = cF (V - v*) W^{1 - alpha} / eta0 stays finite as W -> 0 for alpha <= 1.
        traj.trailing_WVprime =
            p.c_F * (last.V - p.v_star) * std::pow(last.W, 1.0 - p.alpha) / p.eta0;
    } else {
        traj.termination = FrontTermination::reached_z_max;
    }
    return traj;
}

namespace {

struct Ols {
    double slope = 0.0, intercept = 0.0;
    bool ok = false;
};

Ols ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    Ols f;
    const std::size_t n = x.size();
    if (n < 2) return f;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
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

} // namespace

FrontClassification classify_front(const FrontTrajectory& traj, const FrontParams& p) {
    FrontClassification out;
    if (traj.samples.empty()) return out;

    double v_dev = 0.0, w_dev = 0.0, w_max = 0.0;
    for (const auto& s : traj.samples) {
        v_dev = std::max(v_dev, std::abs(s.V - p.v_star));
        w_dev = std::max(w_dev, std::abs(s.W - p.w_star));
        w_max = std::max(w_max, s.W);
    }
    if (p.alpha == p.beta && p.kappa0 < 0.5) {
        for (const auto& s : traj.samples) {
            const double dev = std::abs(s.W - p.parabola(s.V)) / std::max(s.W, 1e-300);
            out.max_parabola_deviation = std::max(out.max_parabola_deviation, dev);
        }
    }

    // Slope of W near the wetting point: least squares over the samples with
    // the smallest W (the leading quarter of the W range).
    {
        std::vector<double> zs, ws;
        const double cut = traj.samples.front().W + 0.25 * (w_max - traj.samples.front().W);
        for (const auto& s : traj.samples) {
            if (s.W <= cut || zs.size() < 2) {
                zs.push_back(s.z);
                ws.push_back(s.W);
            }
        }
        const Ols f = ols_fit(zs, ws);
        if (f.ok) {
            out.W_prime_origin = f.slope;
            out.c_F_estimate = std::max(p.kappa0, 0.5) * f.slope;
        }
    }

    const double scale_v = std::max(1.0, std::abs(p.v_star));
    const double scale_w = std::max(1.0, w_max);
    if (v_dev <= 1e-12 * scale_v && w_dev <= 1e-12 * scale_w) {
        out.label = FrontClass::extinct; // constant at (v*, w*)
        return out;
    }
    if (v_dev <= 1e-9 * scale_v) {
        out.label = FrontClass::pme_front;
        return out;
    }
    if (p.alpha == p.beta && p.kappa0 < 0.5 && out.max_parabola_deviation <= 1e-6) {
        out.label = FrontClass::coupled_front;
        return out;
    }
    if (traj.termination == FrontTermination::hit_W_floor) {
        const double wvp_scale = std::max(1e-12, p.c_F * v_dev);
        out.label = std::abs(traj.trailing_WVprime) > 1e-8 * wvp_scale
                        ? FrontClass::non_extendable
                        : FrontClass::extinct;
        return out;
    }
    out.label = FrontClass::above_parabola;
    return out;
}

SimilarityTrajectory integrate_similarity(double V0, double W0, double Vp0, double Wp0,
                                          const Coefficients& c, double y_max, double W_floor,
                                          double rel_tol) {
    c.validate();
    if (!(W0 > W_floor) || !(W_floor > 0.0))
        throw ConfigError("integrate_similarity: need W0 > W_floor > 0");

    Dopri5<4> ode; // state (V, P, W, Q)
    ode.rel_tol = rel_tol;
    ode.abs_tol = 1e-14 * std::max(1.0, W0);
    ode.h_init = 1e-6 * std::max(1.0, y_max);
    ode.h_max = 0.05 * std::max(1.0, y_max);

    auto rhs = [&](double y, const Dopri5<4>::StateVec& s) -> Dopri5<4>::StateVec {
        const double W = s[2];
        if (!(W > 0.0)) throw DomainError("similarity_rhs: W must be positive");
        const double et = eta(W, c);
        const double ka = kappa(W, c);
        const double Vp = s[1] / et;
        const double Wp = s[3] / ka;
        return {Vp, -0.5 * y * Vp, Wp, -0.5 * y * Wp - s[1] * s[1] / et};
    };
    auto stop = [&](double, const Dopri5<4>::StateVec& s) { return s[2] <= W_floor; };

    const Dopri5<4>::StateVec y0 = {V0, eta(W0, c) * Vp0, W0, kappa(W0, c) * Wp0};
    const auto res = ode.integrate(rhs, 0.0, y0, y_max, stop);

    SimilarityTrajectory traj;
    traj.samples.reserve(res.xs.size());
    for (std::size_t i = 0; i < res.xs.size(); ++i)
        traj.samples.push_back(
            {res.xs[i], res.ys[i][0], res.ys[i][2], res.ys[i][1], res.ys[i][3]});

    // Same stall-at-the-singularity convention as integrate_front.
    double w_peak = 0.0;
    for (const auto& s : traj.samples) w_peak = std::max(w_peak, s.W);
    const bool stalled_at_floor =
        res.step_underflow &&
        traj.samples.back().W <= std::max(10.0 * W_floor, 1e-4 * w_peak);

    if (res.step_underflow && !stalled_at_floor) {
        traj.termination = FrontTermination::blow_up;
    } else if (res.stopped || stalled_at_floor) {
        traj.termination = FrontTermination::hit_W_floor;
        const auto& last = traj.samples.back();
        traj.y_floor = last.y;
        // W V' = W P / eta(W) = P W^{1 - alpha} / eta0
        traj.trailing_WVprime = last.P * std::pow(last.W, 1.0 - c.alpha) / c.eta0;
    } else {
        traj.termination = FrontTermination::reached_z_max;
    }
    return traj;
}

SimilarityProfile similarity_shoot(double V_minus, double V_plus, double E0,
                                   const Coefficients& c, double y_max) {
    c.validate();
    if (!c.eta_equals_kappa())
        throw ConfigError("similarity_shoot: requires eta == kappa");
    const double w_inf = E0 - 0.5 * std::max(V_minus * V_minus, V_plus * V_plus);
    if (!(w_inf > 0.0))
        throw ConfigError("similarity_shoot: need E0 > max(V-, V+)^2 / 2");

    SimilarityProfile prof;
    prof.shift = 0.5 * (V_minus + V_plus);
    const double target = V_plus - prof.shift; // symmetric limit after the shift
    prof.E_eff = w_inf + 0.5 * target * target;

    if (target == 0.0) {
        // V_minus == V_plus: the constant profile (V_plus, w_inf).
        for (double y = 0.0; y <= y_max; y += y_max / 64.0)
            prof.samples.push_back({y, V_plus, w_inf, 0.0, 0.0});
        prof.shoot_slope = 0.0;
        return prof;
    }

    const double floor = 1e-12 * prof.E_eff;
    auto terminal_value = [&](double slope) -> double {
        const auto traj =
            integrate_similarity(0.0, prof.E_eff, slope, 0.0, c, y_max, floor, 1e-12);
        if (traj.termination == FrontTermination::hit_W_floor) return 2.0 * std::abs(target);
        if (traj.termination == FrontTermination::blow_up)
            throw NumericError("similarity_shoot: integrator blow-up");
        return traj.samples.back().V;
    };

    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (terminal_value(hi) < std::abs(target)) {
        hi *= 2.0;
        if (++guard > 60)
            throw NumericError("similarity_shoot: target outside attainable range, bracket [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (terminal_value(mid) < std::abs(target) ? lo : hi) = mid;
    }
    const double slope = 0.5 * (lo + hi);
    const double signum = target > 0.0 ? 1.0 : -1.0;

    const auto traj =
        integrate_similarity(0.0, prof.E_eff, slope, 0.0, c, y_max, floor, 1e-12);
    const double err = std::abs(traj.samples.back().V - std::abs(target));
    if (err > 1e-6 * std::max(1.0, std::abs(target)))
        throw NumericError("similarity_shoot: shoot did not reach target, residual " +
                           std::to_string(err) + ", bracket [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");

    prof.shoot_slope = signum * slope;
    prof.samples.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const double V = signum * s.V;
        const double W = prof.E_eff - 0.5 * s.V * s.V; // recovered, not integrated
        prof.samples.push_back({s.y, V + prof.shift, W, signum * s.P, s.Q});
    }
    return prof;
}

ExponentFit boundary_exponent_fit(const std::vector<double>& z, const std::vector<double>& W,
                                  std::size_t min_points) {
    ExponentFit out;
    if (z.size() != W.size() || z.empty()) return out;

    // Wetted samples, assumed sorted in z.
    std::vector<std::size_t> wet;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] > 0.0 && W[i] > 0.0) wet.push_back(i);
    if (wet.size() < min_points) return out;

    const double z_first = z[wet.front()];
    const double z_win = z_first + 0.05 * (z[wet.back()] - z_first);
    std::vector<double> lx, ly;
    for (std::size_t i : wet) {
        if (z[i] > z_win && lx.size() >= min_points) break;
        lx.push_back(std::log(z[i]));
        ly.push_back(std::log(W[i]));
    }
    out.points = lx.size();
    if (lx.size() < min_points) return out;
    // Reject flat data (constant W carries no exponent).
    double wmin = ly.front(), wmax = ly.front();
    for (double v : ly) {
        wmin = std::min(wmin, v);
        wmax = std::max(wmax, v);
    }
    if (wmax - wmin < 1e-9) return out;
    const Ols f = ols_fit(lx, ly);
    if (!f.ok) return out;
    out.gamma = f.slope;
    out.ok = true;
    return out;
}

} // namespace degenflow
