#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degenflow/coefficients.hpp"
#include "degenflow/solver.hpp"

namespace degenflow {

/// Equilibrium data of the bounded-domain decay estimate:
/// w_hat = (E0 - V0^2/(2L))/L, v_hat = V0/L, lambda_N = (pi/L)^2,
/// Lambda = sqrt(w_hat) min(c_eta, c_kappa) lambda_N.
struct DecayParams {
    double V0 = 0.0;
    double E0 = 1.0;
    double domain_length = 1.0;
    double c_eta = 1.0;
    double c_kappa = 1.0;

    double w_hat() const {
        return (E0 - V0 * V0 / (2.0 * domain_length)) / domain_length;
    }
    double v_hat() const { return V0 / domain_length; }
    double lambda_N() const;
    double Lambda() const;
    void validate() const {
        if (!(domain_length > 0.0)) throw ConfigError("DecayParams: domain_length must be > 0");
        if (w_hat() < 0.0) throw ConfigError("DecayParams: w_hat must be >= 0");
    }
};

struct MonitorVerdict {
    bool pass = true;
    double worst = 0.0;   // largest violation found (0 when pass)
    double worst_t = 0.0; // time of the largest violation
};

/// phi(v, w) with the second derivatives needed by the rate identity.
struct PhiFunctional {
    std::string name;
    std::function<double(double, double)> phi;
    std::function<double(double, double)> phi_v, phi_w;
    std::function<double(double, double)> phi_vv, phi_vw, phi_ww;

    static PhiFunctional momentum_phi();
    static PhiFunctional energy_phi();
    static PhiFunctional kinetic_phi();           // v^2/2
    static PhiFunctional heat_phi();              // w
    static PhiFunctional entropy_phi(EntropySpec std_spec);
};

struct RateCheckResult {
    double max_mismatch = 0.0; // max |d/dt quadrature(phi) - quadrature(R_phi)|
    double scale = 0.0;        // max |R| / |rate| magnitude seen
    double normalized = 0.0;   // max_mismatch / max(scale, tiny)
};

/// Compares the finite-difference rate of the phi functional between
/// consecutive snapshots against the face quadrature of
///   R_phi = eta (phi_w - phi_vv) |dv|^2 - (eta + kappa) phi_vw dv dw - kappa phi_ww |dw|^2.
/// Snapshots are expected to be closely spaced.
RateCheckResult functional_rate_check(const SnapshotSeries& series, const PhiFunctional& phi,
                                      const CoefficientLaw& law);

/// ||v(t)||_p nonincreasing (1e-10 relative per step). p in {1, 2, inf} uses
/// the per-step records; other p are evaluated on snapshots. For eta == kappa
/// runs the same check is applied to e.
MonitorVerdict lp_monitor(const SnapshotSeries& series, double p, bool check_e = false);

struct DissipationBudget {
    double accumulated = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Time quadrature of eta(w)(p-1)|v|^{p-2}|dv|^2 against the bound
/// integral |v0|^p / p. For p = 2 the per-step face sums are used when
/// available; otherwise the snapshot trapezoid rule.
DissipationBudget dissipation_budget(const SnapshotSeries& series, const CoefficientLaw& law,
                                     double p);

/// max over the run of (|v| - M* w)_+ ; requires an eta == kappa law and
/// initial data with |v0| <= M* w0.
double comparison_check(const SnapshotSeries& series, double M_star);

struct SupportSample {
    double t = 0.0;
    double left = 0.0;
    double right = 0.0;
    bool empty = true;
};

/// Outermost cells with w > w_tol per snapshot, reported at the outer cell faces.
std::vector<SupportSample> support_tracker(const SnapshotSeries& series, double w_tol);

struct FitResult {
    double intercept = 0.0;
    double slope = 0.0;
    bool ok = false;
};

/// Least squares edge = a + s t over the last half of the time window.
FitResult fit_front_speed(const std::vector<SupportSample>& samples, bool right_edge = true);
/// Least squares log|edge| = log a + delta log(t + t*) over the last half.
FitResult fit_similarity_exponent(const std::vector<SupportSample>& samples, double t_star,
                                  bool right_edge = true);

struct DecayCheckResult {
    bool bound_holds = true;
    double worst_ratio = 0.0; // max over snapshots of H(t) / (H(0) e^{-Lambda t})
    double fitted_rate = 0.0; // least-squares exponential rate of H
    std::vector<std::pair<double, double>> H; // (t, H(t))
};

/// H(t) = integral of |v - v_hat|^2/2 + |sqrt(w) - sqrt(w_hat)|^2 per snapshot;
/// the bound H(t) <= H(0) e^{-Lambda t} (1 + 1e-3) is checked at every snapshot.
/// The estimate requires w0 uniformly positive; pass require_positive_w0 = false
/// only when deliberately measuring data that violates the hypothesis.
DecayCheckResult decay_check(const SnapshotSeries& series, const DecayParams& dp,
                             bool require_positive_w0 = true);

/// Sink disabled: integral of w nondecreasing per step and bounded by the
/// energy. Sink enabled: total energy nonincreasing per step instead.
MonitorVerdict heat_content_monitor(const SnapshotSeries& series);

/// Aggregated per-run identity report with a stable field order.
nlohmann::ordered_json diagnostics_report(const SnapshotSeries& series);

} // namespace degenflow
