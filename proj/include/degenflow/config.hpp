#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degenflow/exact.hpp"
#include "degenflow/fronts.hpp"
#include "degenflow/selfsim.hpp"
#include "degenflow/solver.hpp"

namespace degenflow {

/// Named initial-data formulas.
struct InitialSpec {
    enum class Preset { compact_45, barenblatt, sec723, example24, custom_polynomial };
    Preset preset = Preset::sec723;
    // compact_45
    double B = 1.0, x_star = 2.0, t_star = 0.25;
    // barenblatt
    double E0 = 1.0;
    // example24
    double ell = 8.0;
    // custom_polynomial
    std::vector<double> v_coeffs, w_coeffs;
    bool clip = false;
};

struct FrontRunConfig {
    FrontParams params;
    double z0 = 0.0, V0 = 0.0, W0 = 1.0;
    double z_max = 5.0;
    double W_floor = 1e-12;
};

struct SteadyRunConfig {
    double V0 = 0.0, E0 = 1.0;
    int d = 1;
    Coefficients coeffs;
};

struct RescaleRunConfig {
    ScalingSpec spec;
    std::string snapshot_dir;
    // Optional convergence target derived from conserved quantities.
    std::optional<double> target_V0, target_E0;
    Coefficients coeffs;
};

struct ExactRunConfig {
    enum class Solution {
        compact_45,
        barenblatt,
        similarity_ex22,
        front_pme,
        front_coupled,
        delayed
    };
    Solution solution = Solution::compact_45;
    double B = 1.0, x_star = 2.0, t_star = 0.25;
    double E0 = 1.0, beta = 1.0, kappa0 = 1.0;
    double alpha = 1.0, c_F = 1.0;
    double t_plus = 0.0, t_minus = 0.0;
    std::vector<double> times{0.0};
    double x_left = -5.0, x_right = 5.0;
    std::size_t samples = 512;
};

/// Parsed command payload. Sections are present when the config document
/// provides them; each CLI command validates that its section exists.
struct RunConfig {
    double x_left = 0.0, x_right = 0.0;
    std::size_t cells = 0;
    bool has_grid = false;

    std::optional<InitialSpec> initial;
    std::optional<SolverConfig> solver;
    std::optional<FrontRunConfig> front;
    std::optional<SteadyRunConfig> steady;
    std::optional<RescaleRunConfig> rescale;
    std::optional<ExactRunConfig> exact;
};

/// Strict parse: unknown keys anywhere are rejected with their JSON path.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const nlohmann::json& doc);

/// Builds the initial State on the configured grid (midpoint sampling of the
/// preset formula, then the eps_floor regularization of the coefficient law).
State build_initial_state(const RunConfig& cfg);

} // namespace degenflow
