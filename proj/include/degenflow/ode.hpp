#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "degenflow/errors.hpp"

namespace degenflow {

/// Adaptive Dormand-Prince 5(4) step control for small fixed-size systems.
/// The right-hand side may throw; a stop predicate terminates integration
/// between accepted steps.
template <std::size_t N>
class Dopri5 {
public:
    using StateVec = std::array<double, N>;
    using Rhs = std::function<StateVec(double, const StateVec&)>;

    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double h_init = 1e-4;
    double h_min = 1e-14;
    double h_max = 0.5;

    struct Result {
        std::vector<double> xs;
        std::vector<StateVec> ys;
        bool step_underflow = false;
        bool stopped = false; // stop predicate fired
    };

    /// Integrates from x0 to x1 (x1 > x0). `stop(x, y)` is checked on every
    /// accepted point; when it fires, the offending step is bisected down to
    /// the crossing before the final point is recorded.
    Result integrate(const Rhs& f, double x0, const StateVec& y0, double x1,
                     const std::function<bool(double, const StateVec&)>& stop = {}) const {
        Result res;
        double x = x0;
        StateVec y = y0;
        res.xs.push_back(x);
        res.ys.push_back(y);
        if (stop && stop(x, y)) {
            res.stopped = true;
            return res;
        }
        double h = std::min(h_init, x1 - x0);
        StateVec k1 = f(x, y);
        while (x < x1) {
            h = std::min(h, x1 - x);
            StateVec y_new, k_new;
            double err;
            if (!try_step(f, x, y, k1, h, y_new, k_new, err)) {
                h *= 0.5;
                if (h < h_min) {
                    res.step_underflow = true;
                    return res;
                }
                continue;
            }
            if (err <= 1.0) {
                if (stop && stop(x + h, y_new)) {
                    // Bisect to the event within the accepted step.
                    double lo = 0.0, hi = h;
                    for (int it = 0; it < 80 && (hi - lo) > 1e-14 * std::max(1.0, h); ++it) {
                        const double mid = 0.5 * (lo + hi);
                        StateVec ym, km;
                        double em;
                        if (try_step(f, x, y, k1, mid, ym, km, em) && !stop(x + mid, ym))
                            lo = mid;
                        else
                            hi = mid;
                    }
                    StateVec ym, km;
                    double em;
                    if (hi > 0.0 && try_step(f, x, y, k1, hi, ym, km, em)) {
                        res.xs.push_back(x + hi);
                        res.ys.push_back(ym);
                    }
                    res.stopped = true;
                    return res;
                }
                x += h;
                y = y_new;
                k1 = k_new; // FSAL
                res.xs.push_back(x);
                res.ys.push_back(y);
            }
            const double fac =
                std::clamp(0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.2), 0.2, 5.0);
            h = std::min(h * fac, h_max);
            if (h < h_min) {
                res.step_underflow = true;
                return res;
            }
        }
        return res;
    }

private:
    /// One trial step; false if the RHS threw (e.g. singular point probed).
    bool try_step(const Rhs& f, double x, const StateVec& y, const StateVec& k1, double h,
                  StateVec& y_out, StateVec& k_out, double& err_out) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
        try {
            StateVec t;
            StateVec k2, k3, k4, k5, k6, k7;
            for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * a21 * k1[i];
            k2 = f(x + c2 * h, t);
            for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            k3 = f(x + c3 * h, t);
            for (std::size_t i = 0; i < N; ++i)
                t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            k4 = f(x + c4 * h, t);
            for (std::size_t i = 0; i < N; ++i)
                t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            k5 = f(x + c5 * h, t);
            for (std::size_t i = 0; i < N; ++i)
                t[i] = y[i] +
                       h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            k6 = f(x + h, t);
            for (std::size_t i = 0; i < N; ++i)
                y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                       b6 * k6[i]);
            k7 = f(x + h, y_out);
            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                      e6 * k6[i] + e7 * k7[i]);
                const double sc =
                    abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y_out[i]));
                err = std::max(err, std::abs(e) / sc);
            }
            err_out = err;
            k_out = k7;
            return true;
        } catch (const DomainError&) {
            return false;
        } catch (const NumericError&) {
            return false;
        }
    }
};

} // namespace degenflow
