#pragma once

#include <cstddef>
#include <vector>

#include "degenflow/coefficients.hpp"
#include "degenflow/state.hpp"

namespace degenflow {

enum class SolverForm { primitive, energy };

/// Explicit conservative finite-volume integrator configuration.
struct SolverConfig {
    SolverForm form = SolverForm::primitive;
    double cfl = 0.45;            // in (0, 0.5]
    double w_clamp_tol = 0.0;     // cells with w below this are zeroed (mass logged)
    std::vector<double> snapshot_times;
    double t_end = 0.0;
    CoefficientLaw law;

    void validate() const;
};

struct StepReport {
    double dt_used = 0.0;
    double max_coeff = 0.0;
    std::size_t clamped_cells = 0;
    double clamped_mass = 0.0;
    // step quadratures (dt times spatial quadrature), for dissipation budgets
    double diss2_increment = 0.0;
    double source_increment = 0.0;
    double sink_increment = 0.0;
};

/// Stability step: cfl h^2 / (2 D_max), with D per cell max(eta, kappa) in
/// primitive form and max(eta, |kappa-eta|) + eta in energy form, additionally
/// capped so that dt sink_a max sqrt(w) <= cfl. A fully degenerate state
/// (w == 0) is stationary; the gap to the next snapshot (or t_end) is returned.
double cfl_dt(const State& s, const SolverConfig& cfg);

/// One forward-Euler step of the primitive (v, w) form:
/// face fluxes eta(w_face) dv/dx for v, pressure differences for w, cell
/// centered source eta(w_i) (Dv_i)^2 with centered Dv (one sided at the
/// boundary cells), optional sink, zero boundary fluxes. Negative w cells are
/// clamped to 0 with the removed mass logged.
struct StepResult {
    State state;
    StepReport report;
};
StepResult step_primitive(const State& s, double dt, const SolverConfig& cfg);

/// One forward-Euler step of the total-energy (v, e) form: identical v update;
/// e updated by flux differences only (no source), then w = e - v^2/2 is
/// recovered and clamped at 0. Discrete total e is conserved to round-off by
/// flux telescoping (before clamping corrections).
StepResult step_energy(const State& s, double dt, const SolverConfig& cfg);

/// Pointwise max(w0, eps) (initial-data regularization).
std::vector<double> regularize(const std::vector<double>& w0, double eps);

/// Time-loop product: snapshots exactly at the requested times plus the
/// per-step scalar diagnostics.
struct SnapshotSeries {
    std::vector<State> snapshots;
    std::vector<StepStats> steps; // steps[0] is the initial record
    SolverConfig config;
    std::size_t total_steps = 0;
    double total_clamped_mass = 0.0;
};

SnapshotSeries run(const State& initial, const SolverConfig& cfg);

} // namespace degenflow
