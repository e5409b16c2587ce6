#include "degenflow/selfsim.hpp"

#include <algorithm>
#include <cmath>

namespace degenflow {

namespace {

/// Piecewise-linear interpolation of a cell-centered field: constant within
/// the boundary half-cells, 0 outside the domain [x0, x0 + n h].
double interp(const std::vector<double>& f, double x0, double h, double x) {
    const std::size_t n = f.size();
    const double s = (x - x0) / h - 0.5; // fractional cell-center index
    if (s < -0.5 || s > static_cast<double>(n) - 0.5) return 0.0;
    if (s <= 0.0) return f.front();
    if (s >= static_cast<double>(n - 1)) return f.back();
    const std::size_t i = static_cast<std::size_t>(s);
    const double frac = s - static_cast<double>(i);
    return f[i] * (1.0 - frac) + f[i + 1] * frac;
}

} // namespace

RescaledProfile rescale_snapshot(const State& s, const ScalingSpec& spec) {
    spec.validate();
    if (s.t < 0.0) throw ConfigError("rescale_snapshot: state time must be >= 0");
    const double growth = s.t + 1.0;
    const double delta = spec.delta();
    const double stretch = std::pow(growth, delta);
    const double amp_w = std::pow(growth, spec.d * delta);
    const double amp_v = std::pow(growth, spec.d * spec.theta * delta);

    RescaledProfile out;
    out.t = s.t;
    out.tau = std::log(growth);
    out.hy = (spec.y_max - spec.y_min) / static_cast<double>(spec.y_cells);
    out.y0 = spec.y_min;
    out.v.resize(spec.y_cells);
    out.w.resize(spec.y_cells);
    for (std::size_t i = 0; i < spec.y_cells; ++i) {
        const double x = stretch * out.cell_center(i);
        out.v[i] = amp_v * interp(s.v, s.x0, s.h, x);
        out.w[i] = amp_w * interp(s.w, s.x0, s.h, x);
    }
    return out;
}

State unrescale(const RescaledProfile& p, const ScalingSpec& spec, double x0, double h,
                std::size_t n) {
    spec.validate();
    const double growth = p.t + 1.0;
    const double delta = spec.delta();
    const double shrink = std::pow(growth, -delta);
    const double amp_w = std::pow(growth, -spec.d * delta);
    const double amp_v = std::pow(growth, -spec.d * spec.theta * delta);

    State s;
    s.t = p.t;
    s.x0 = x0;
    s.h = h;
    s.v.resize(n);
    s.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = shrink * s.cell_center(i);
        s.v[i] = amp_v * interp(p.v, p.y0, p.hy, y);
        s.w[i] = std::max(0.0, amp_w * interp(p.w, p.y0, p.hy, y));
    }
    return s;
}

ProfileDistance profile_distance(const std::vector<double>& field, double y0, double hy,
                                 const std::function<double(double)>& target) {
    ProfileDistance d;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double y = y0 + (static_cast<double>(i) + 0.5) * hy;
        const double diff = field[i] - target(y);
        d.l1 += std::abs(diff);
        d.l2 += diff * diff;
    }
    d.l1 *= hy;
    d.l2 = std::sqrt(d.l2 * hy);
    return d;
}

ExponentFit rescaled_exponent_fit(const std::vector<double>& field, double y0, double hy,
                                  double rel_threshold, std::size_t min_points,
                                  double edge_skip) {
    ExponentFit out;
    const std::size_t n = field.size();
    if (n == 0) return out;
    double fmax = 0.0;
    for (double f : field) fmax = std::max(fmax, std::abs(f));
    if (!(fmax > 0.0)) return out;
    const double thr = rel_threshold * fmax;

    // Right support edge: outer face of the last wet cell.
    std::size_t hi = n;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(field[i]) > thr) hi = i;
    if (hi == n) return out;
    const double edge = y0 + (static_cast<double>(hi) + 1.0) * hy;

    // Left support extent, for the trailing-window width.
    std::size_t lo = hi;
    for (std::size_t i = 0; i <= hi; ++i) {
        if (std::abs(field[i]) > thr) {
            lo = i;
            break;
        }
    }
    const double width = edge - (y0 + static_cast<double>(lo) * hy);
    const double y_from = edge - 0.05 * width;

    std::vector<double> lx, ly;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double y = y0 + (static_cast<double>(i) + 0.5) * hy;
        if (y < y_from || !(std::abs(field[i]) > thr)) continue;
        if (!(edge - y > edge_skip)) continue;
        lx.push_back(std::log(edge - y));
        ly.push_back(std::log(std::abs(field[i])));
    }
    // Grow the window leftward when the tail is under-resolved.
    for (std::size_t i = hi + 1; lx.size() < min_points && i-- > lo;) {
        const double y = y0 + (static_cast<double>(i) + 0.5) * hy;
        if (y >= y_from) continue;
        if (!(std::abs(field[i]) > thr) || !(edge - y > edge_skip)) continue;
        lx.push_back(std::log(edge - y));
        ly.push_back(std::log(std::abs(field[i])));
    }
    out.points = lx.size();
    if (lx.size() < min_points) return out;

    double vmin = ly.front(), vmax = ly.front();
    for (double v : ly) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (vmax - vmin < 1e-9) return out; // flat field, no exponent

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx <= 0.0) return out;
    out.gamma = sxy / sxx;
    out.ok = true;
    return out;
}

} // namespace degenflow
