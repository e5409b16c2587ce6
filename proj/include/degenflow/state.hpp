#pragma once

#include <cstddef>
#include <vector>

#include "degenflow/errors.hpp"

namespace degenflow {

/// Cell-averaged fields (v, w) on a uniform 1-D grid. Cell i is centered at
/// x0 + (i + 1/2) h. States are immutable values once constructed.
struct State {
    double t = 0.0;
    double x0 = 0.0;
    double h = 1.0;
    std::vector<double> v;
    std::vector<double> w;

    std::size_t size() const { return v.size(); }
    double cell_center(std::size_t i) const { return x0 + (static_cast<double>(i) + 0.5) * h; }
    double x_right() const { return x0 + h * static_cast<double>(size()); }

    void validate() const {
        if (v.size() != w.size()) throw ConfigError("State: v and w must have equal length");
        if (v.size() < 2) throw ConfigError("State: need at least 2 cells");
        if (!(h > 0.0)) throw ConfigError("State: cell width must be positive");
        for (double wi : w)
            if (wi < 0.0) throw ConfigError("State: negative w cell");
    }
};

/// Per-step scalar diagnostics accumulated by the time loop. Increment fields
/// hold the contribution of the step ending at time t; the first record is the
/// initial state with dt = 0 and zero increments.
struct StepStats {
    double t = 0.0;
    double dt = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
    double heat = 0.0;         // integral of w
    double entropy_sqrt = 0.0; // integral of sqrt(w)
    double v_l1 = 0.0, v_l2 = 0.0, v_linf = 0.0;
    double e_l1 = 0.0, e_l2 = 0.0, e_linf = 0.0;
    double diss2_increment = 0.0;   // dt * face quadrature of eta(w)|dv/dx|^2
    double source_increment = 0.0;  // dt * cell quadrature of eta(w)(Dv)^2
    double sink_increment = 0.0;    // dt * sink_a * cell quadrature of w^sink_exp
    double clamped_mass = 0.0;      // w mass removed by clamping in this step
};

} // namespace degenflow
