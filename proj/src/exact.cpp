#include "degenflow/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace degenflow {

double theta_mass(double sigma, int d) {
    if (sigma < 0.0 || d < 1) throw ConfigError("theta_mass: need sigma >= 0, d >= 1");
    return std::pow(std::numbers::pi, 0.5 * d) * std::tgamma(1.0 + sigma) /
           std::tgamma(1.0 + sigma + 0.5 * d);
}

double shape_w(double radius, const ShapeParams& p) {
    const double u = 1.0 - (p.b * radius) * (p.b * radius);
    if (u <= 0.0) return 0.0;
    return p.c * std::pow(u, p.sigma);
}

void BarenblattParams::validate() const {
    if (!(E0 > 0.0) || !(beta > 0.0) || !(kappa0 > 0.0) || d < 1 || !(t_star > 0.0))
        throw ConfigError("BarenblattParams: need E0, beta, kappa0, t* > 0 and d >= 1");
    const double dd = 1.0 / (2.0 + d * beta);
    if (std::abs(delta - dd) > 1e-12 * dd)
        throw ConfigError("BarenblattParams: inconsistent delta");
    const double mass = c * std::pow(b, -static_cast<double>(d)) * theta_mass(1.0 / beta, d);
    if (std::abs(mass - E0) > 1e-10 * E0)
        throw ConfigError("BarenblattParams: mass constraint violated");
    const double lhs = 2.0 * kappa0 * b * b * std::pow(c, beta);
    if (std::abs(lhs - delta * beta) > 1e-10 * delta * beta)
        throw ConfigError("BarenblattParams: profile constraint violated");
}

BarenblattParams BarenblattParams::from_energy(double E0, double beta, double kappa0, int d,
                                               double t_star) {
    BarenblattParams p;
    p.E0 = E0;
    p.beta = beta;
    p.kappa0 = kappa0;
    p.d = d;
    p.t_star = t_star;
    p.delta = 1.0 / (2.0 + d * beta);
    p.sigma = 1.0 / beta;
    // E0 = Theta (2 kappa0 / (delta beta))^{d/2} c^{1 + d beta / 2}
    const double th = theta_mass(p.sigma, d);
    const double base = std::pow(2.0 * kappa0 / (p.delta * beta), 0.5 * d);
    p.c = std::pow(E0 / (th * base), 1.0 / (1.0 + 0.5 * d * beta));
    p.b = std::sqrt(p.delta * beta / (2.0 * kappa0 * std::pow(p.c, beta)));
    p.validate();
    return p;
}

BarenblattParams BarenblattParams::from_amplitude(double c, double beta, double kappa0, int d,
                                                  double t_star) {
    BarenblattParams p;
    p.beta = beta;
    p.kappa0 = kappa0;
    p.d = d;
    p.t_star = t_star;
    p.delta = 1.0 / (2.0 + d * beta);
    p.sigma = 1.0 / beta;
    p.c = c;
    p.b = std::sqrt(p.delta * beta / (2.0 * kappa0 * std::pow(c, beta)));
    p.E0 = c * std::pow(p.b, -static_cast<double>(d)) * theta_mass(p.sigma, d);
    p.validate();
    return p;
}

double barenblatt(double t, double radius, const BarenblattParams& p) {
    const double s = t + p.t_star;
    if (!(s > 0.0)) throw DomainError("barenblatt: t + t* must be positive");
    const double scale = std::pow(s, -p.delta);
    ShapeParams sp{p.sigma, p.b, p.c, p.d};
    return std::pow(s, -p.d * p.delta) * shape_w(radius * scale, sp);
}

double barenblatt_support_radius(double t, const BarenblattParams& p) {
    return std::pow(t + p.t_star, p.delta) / p.b;
}

VW compact_solution(double t, double x, const CompactSolutionParams& p) {
    p.validate();
    if (t < 0.0 || t > p.lifespan())
        throw DomainError("compact_solution: t outside lifespan [0, T]");
    const double s = t + p.t_star;
    const double rs = std::sqrt(s);
    const double half_width = 2.0 * p.B * rs;
    VW out;
    if (std::abs(x + p.x_star) <= half_width) {
        out.v = (x + p.x_star + half_width) / (std::sqrt(2.0) * rs);
        out.w = p.B * p.B - (x + p.x_star) * (x + p.x_star) / (4.0 * s);
    } else if (std::abs(x - p.x_star) <= half_width) {
        out.v = (p.x_star + half_width - x) / (std::sqrt(2.0) * rs);
        out.w = p.B * p.B - (x - p.x_star) * (x - p.x_star) / (4.0 * s);
    } else if (std::abs(x) <= p.x_star - half_width) {
        out.v = 2.0 * std::sqrt(2.0) * p.B;
        out.w = 0.0;
    }
    if (out.w < 0.0) out.w = 0.0;
    return out;
}

double compact_support_edge(double t, const CompactSolutionParams& p) {
    return p.x_star + 2.0 * p.B * std::sqrt(t + p.t_star);
}

VW similarity_ex22(double y, double B) {
    if (y >= 2.0 * B) return {std::sqrt(2.0) * B, 0.0};
    if (y <= -2.0 * B) return {-std::sqrt(2.0) * B, 0.0};
    return {y / std::sqrt(2.0), B * B - 0.25 * y * y};
}

namespace {

/// t* -> 0 limit of the compact solution (the building block of the delayed
/// family). Continuous for s > 0; at s = 0 returns the limit initial data.
VW compact_limit(double s, double x, double B, double x_star) {
    const double plateau = 2.0 * std::sqrt(2.0) * B;
    if (s <= 0.0) return {std::abs(x) <= x_star ? plateau : 0.0, 0.0};
    const double rs = std::sqrt(s);
    const double half_width = 2.0 * B * rs;
    VW out;
    if (std::abs(x + x_star) <= half_width) {
        out.v = (x + x_star + half_width) / (std::sqrt(2.0) * rs);
        out.w = B * B - (x + x_star) * (x + x_star) / (4.0 * s);
    } else if (std::abs(x - x_star) <= half_width) {
        out.v = (x_star + half_width - x) / (std::sqrt(2.0) * rs);
        out.w = B * B - (x - x_star) * (x - x_star) / (4.0 * s);
    } else if (std::abs(x) <= x_star - half_width) {
        out.v = plateau;
        out.w = 0.0;
    }
    if (out.w < 0.0) out.w = 0.0;
    return out;
}

} // namespace

VW delayed_family(double t, double x, double B, double x_star, double t_plus, double t_minus) {
    if (!(B > 0.0) || !(x_star > 0.0)) throw ConfigError("delayed_family: B, x* must be positive");
    const double T = x_star * x_star / (4.0 * B * B);
    if (t_plus < 0.0 || t_plus > T || t_minus < 0.0 || t_minus > T)
        throw DomainError("delayed_family: delays must lie in [0, T]");
    if (t < 0.0 || t > T) throw DomainError("delayed_family: t outside [0, T]");
    const double delay = x >= 0.0 ? t_plus : t_minus;
    return compact_limit(t - delay, x, B, x_star);
}

double SteadyProfile::v_hat(double radius) const {
    if (a == 0.0) return 0.0;
    const double u = 1.0 - (b * radius) * (b * radius);
    if (u <= 0.0) return 0.0;
    return a * std::pow(u, sigma);
}

double SteadyProfile::w_tilde(double radius) const {
    ShapeParams sp{sigma_w, b, c, d};
    return shape_w(radius, sp);
}

SteadyProfile steady_profile(double V0, double E0, const Coefficients& coeffs, int d) {
    coeffs.validate();
    if (!(E0 > 0.0)) throw ConfigError("steady_profile: E0 must be positive");
    if (d < 1) throw ConfigError("steady_profile: d must be >= 1");
    const double beta = coeffs.beta;
    const double delta = 1.0 / (2.0 + d * beta);
    const double theta_w = theta_mass(1.0 / beta, d);

    // E0(c) = c b(c)^{-d} Theta(1/beta, d) with b(c)^2 = beta delta / (2 c^beta kappa0);
    // strictly increasing in c, so bracket geometrically then bisect.
    auto mass_of = [&](double c_amp) {
        const double b = std::sqrt(beta * delta / (2.0 * std::pow(c_amp, beta) * coeffs.kappa0));
        return c_amp * std::pow(b, -static_cast<double>(d)) * theta_w;
    };
    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while (mass_of(lo) > E0) {
        lo *= 0.5;
        if (++guard > 2000) throw NumericError("steady_profile: bracket (lo) failed");
    }
    guard = 0;
    while (mass_of(hi) < E0) {
        hi *= 2.0;
        if (++guard > 2000) throw NumericError("steady_profile: bracket (hi) failed");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass_of(mid) < E0 ? lo : hi) = mid;
    }
    if ((hi - lo) > 1e-11 * hi)
        throw NumericError("steady_profile: bisection did not converge, bracket [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");

    SteadyProfile sp;
    sp.d = d;
    sp.delta = delta;
    sp.sigma = coeffs.kappa0 / (coeffs.eta0 * beta);
    sp.c = 0.5 * (lo + hi);
    sp.b = std::sqrt(beta * delta / (2.0 * std::pow(sp.c, beta) * coeffs.kappa0));
    sp.a = V0 * std::pow(sp.b, static_cast<double>(d)) / theta_mass(sp.sigma, d);
    sp.sigma_w = 1.0 / beta;
    return sp;
}

FrontPoint front_exact(double z, FrontCase fc, double alpha, double kappa0, double c_F,
                       int sign) {
    if (!(alpha > 0.0) || !(kappa0 > 0.0) || !(c_F > 0.0))
        throw ConfigError("front_exact: alpha, kappa0, c_F must be positive");
    FrontPoint out;
    if (z <= 0.0) return out;
    const double zz = c_F * z;
    if (fc == FrontCase::pme) {
        const double a = alpha / kappa0;
        out.W = std::pow(a * zz, 1.0 / alpha);
        out.dW = (c_F / alpha) * a * std::pow(a * zz, 1.0 / alpha - 1.0);
        return out;
    }
    if (!(kappa0 < 0.5))
        throw DomainError("front_exact: coupled_parabola requires kappa0 < 1/2");
    const double amp = std::sqrt(2.0 - 4.0 * kappa0) * (sign < 0 ? -1.0 : 1.0);
    const double a = 2.0 * alpha;
    out.W = std::pow(a * zz, 1.0 / alpha);
    out.dW = (c_F / alpha) * a * std::pow(a * zz, 1.0 / alpha - 1.0);
    out.V = amp * std::pow(a * zz, 0.5 / alpha);
    out.dV = amp * (0.5 * c_F / alpha) * a * std::pow(a * zz, 0.5 / alpha - 1.0);
    return out;
}

namespace {

bool near_any_seam(double x, const std::vector<double>& seams, double width) {
    for (double s : seams)
        if (std::abs(x - s) < width) return true;
    return false;
}

} // namespace

ResidualReport residual_check(const SpaceTimeField& f, const Coefficients& c,
                              const std::vector<std::pair<double, double>>& points,
                              double dt_stencil, double dx_stencil) {
    ResidualReport rep;
    const double dt = dt_stencil, h = dx_stencil;
    rep.samples.reserve(points.size());
    for (const auto& [t, x] : points) {
        ResidualSample s;
        s.t = t;
        s.x = x;

        // Seam exclusion: any stencil abscissa within 2 stencil widths of a seam
        // at any of the three stencil times.
        const double guard = 2.0 * h;
        for (double tt : {t - dt, t, t + dt}) {
            const auto seams = f.seams(tt);
            for (double xx : {x - h, x - 0.5 * h, x, x + 0.5 * h, x + h})
                if (near_any_seam(xx, seams, guard)) s.flagged = true;
        }

        if (!s.flagged) {
            const VW cm = f.eval(t, x);
            const VW cp = f.eval(t + dt, x);
            const VW cq = f.eval(t - dt, x);
            const VW xr = f.eval(t, x + h);
            const VW xl = f.eval(t, x - h);
            const VW fr = f.eval(t, x + 0.5 * h); // face values
            const VW fl = f.eval(t, x - 0.5 * h);

            const double vdot = (cp.v - cq.v) / (2.0 * dt);
            const double wdot = (cp.w - cq.w) / (2.0 * dt);
            const double flux_v =
                (eta(fr.w, c) * (xr.v - cm.v) - eta(fl.w, c) * (cm.v - xl.v)) / (h * h);
            const double flux_w =
                (kappa(fr.w, c) * (xr.w - cm.w) - kappa(fl.w, c) * (cm.w - xl.w)) / (h * h);
            const double vx = (xr.v - xl.v) / (2.0 * h);
            const double source = eta(cm.w, c) * vx * vx;

            s.r_v = vdot - flux_v;
            s.r_w = wdot - flux_w - source;
            rep.max_r_v = std::max(rep.max_r_v, std::abs(s.r_v));
            rep.max_r_w = std::max(rep.max_r_w, std::abs(s.r_w));
            ++rep.used;
        } else {
            ++rep.flagged;
        }
        rep.samples.push_back(s);
    }
    return rep;
}

std::vector<double> CompactSolutionField::seams(double t) const {
    const double hw = 2.0 * p_.B * std::sqrt(t + p_.t_star);
    return {-p_.x_star - hw, -p_.x_star + hw, -(p_.x_star - hw),
            p_.x_star - hw,  p_.x_star + hw, -p_.x_star,
            p_.x_star};
}

std::vector<double> BarenblattField::seams(double t) const {
    const double r = barenblatt_support_radius(t, p_);
    return {-r, 0.0, r};
}

std::vector<double> DelayedFamilyField::seams(double t) const {
    std::vector<double> out{0.0, -x_star_, x_star_};
    const double sp = t - t_plus_;
    if (sp > 0.0) {
        const double hw = 2.0 * B_ * std::sqrt(sp);
        out.push_back(x_star_ - hw);
        out.push_back(x_star_ + hw);
    }
    const double sm = t - t_minus_;
    if (sm > 0.0) {
        const double hw = 2.0 * B_ * std::sqrt(sm);
        out.push_back(-x_star_ + hw);
        out.push_back(-x_star_ - hw);
    }
    return out;
}

} // namespace degenflow
