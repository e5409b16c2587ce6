#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "degenflow/errors.hpp"
#include "degenflow/fronts.hpp"
#include "degenflow/state.hpp"

namespace degenflow {

/// Self-similar coordinate transform tau = log(t+1), y = (t+1)^{-delta} x,
/// (v, w) = ((t+1)^{-d theta delta} v~, (t+1)^{-d delta} w~), with
/// delta = 1/(2 + d beta). theta = 1/2 conserves energy, theta = 1 momentum.
struct ScalingSpec {
    double theta = 1.0; // 1/2 or 1
    int d = 1;
    double beta = 1.0;
    double y_min = -10.0;
    double y_max = 10.0;
    std::size_t y_cells = 512;

    double delta() const { return 1.0 / (2.0 + d * beta); }
    void validate() const {
        if (theta != 0.5 && theta != 1.0)
            throw ConfigError("ScalingSpec: theta must be 1/2 or 1");
        if (d < 1 || !(beta > 0.0)) throw ConfigError("ScalingSpec: need d >= 1, beta > 0");
        if (!(y_max > y_min) || y_cells < 4)
            throw ConfigError("ScalingSpec: degenerate y window");
    }
};

/// Rescaled fields on the uniform y grid of the scaling window.
struct RescaledProfile {
    double t = 0.0;
    double tau = 0.0;
    double y0 = 0.0; // left edge; cell centers at y0 + (i + 1/2) hy
    double hy = 0.0;
    std::vector<double> v;
    std::vector<double> w;

    double cell_center(std::size_t i) const { return y0 + (static_cast<double>(i) + 0.5) * hy; }
};

/// Linear interpolation from the x grid; y points mapping outside the x
/// domain read as 0 (the acceptance runs have compact support).
RescaledProfile rescale_snapshot(const State& s, const ScalingSpec& spec);

/// Inverse map back onto a physical grid (for round-trip verification).
State unrescale(const RescaledProfile& p, const ScalingSpec& spec, double x0, double h,
                std::size_t n);

struct ProfileDistance {
    double l1 = 0.0;
    double l2 = 0.0;
};

/// Grid quadrature of |field - target| and its square over the y window.
ProfileDistance profile_distance(const std::vector<double>& field, double y0, double hy,
                                 const std::function<double(double)>& target);

/// Log-log slope of the field against (edge - y) over the trailing 5% of the
/// support (right edge). Rejects constant fields and too-few wet points.
/// edge_skip excludes the strip of that width adjacent to the detected edge
/// (the numerically smeared front cells, which otherwise dominate the
/// log-log leverage).
ExponentFit rescaled_exponent_fit(const std::vector<double>& field, double y0, double hy,
                                  double rel_threshold = 1e-8, std::size_t min_points = 8,
                                  double edge_skip = 0.0);

} // namespace degenflow
