#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "degenflow/coefficients.hpp"
#include "degenflow/errors.hpp"

namespace degenflow {

/// Parameters of the integrated traveling-front system
///   cF (V - v*) = eta(W) V',   cF (W - w* - (V - v*)^2 / 2) = kappa(W) W'.
struct FrontParams {
    double alpha = 1.0;
    double beta = 1.0;
    double eta0 = 1.0;
    double kappa0 = 1.0;
    double v_star = 0.0;
    double w_star = 0.0;
    double c_F = 1.0;

    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0) || !(eta0 > 0.0) || !(kappa0 > 0.0))
            throw ConfigError("FrontParams: exponents and scales must be positive");
        if (!(c_F > 0.0)) throw ConfigError("FrontParams: c_F must be positive");
        if (w_star < 0.0) throw ConfigError("FrontParams: w_star must be >= 0");
    }
    double eta(double W) const { return eta0 * std::pow(W, alpha); }
    double kappa(double W) const { return kappa0 * std::pow(W, beta); }
    /// Invariant parabola w* + (V - v*)^2 / (2 (1 - 2 kappa0)); alpha = beta only.
    double parabola(double V) const {
        return w_star + (V - v_star) * (V - v_star) / (2.0 * (1.0 - 2.0 * kappa0));
    }
};

/// (V', W') of the front system; W must be positive.
struct FrontRhs {
    double dV = 0.0;
    double dW = 0.0;
};
FrontRhs front_rhs(double V, double W, const FrontParams& p);

enum class FrontTermination { reached_z_max, hit_W_floor, blow_up };

struct FrontSample {
    double z = 0.0, V = 0.0, W = 0.0;
};

struct FrontTrajectory {
    std::vector<FrontSample> samples;
    FrontTermination termination = FrontTermination::reached_z_max;
    // populated on hit_W_floor
    double z_floor = 0.0;
    double V_floor = 0.0;
    double trailing_WVprime = 0.0; // W V' at the last accepted sample
};

/// Adaptive RK45 integration (rel tol 1e-10) from (z0, V0, W0) until z_max or
/// W <= W_floor; step underflow classifies as blow_up.
FrontTrajectory integrate_front(double z0, double V0, double W0, const FrontParams& p,
                                double z_max, double W_floor, double rel_tol = 1e-10);

enum class FrontClass { pme_front, coupled_front, above_parabola, extinct, non_extendable };

struct FrontClassification {
    FrontClass label = FrontClass::extinct;
    double W_prime_origin = 0.0; // least-squares W slope near the wetting point
    double c_F_estimate = 0.0;   // max(kappa0, 1/2) * W'(0)
    double max_parabola_deviation = 0.0;
};

/// Labels a trajectory by parabola side (alpha = beta), endpoint behavior and
/// the sign of the trailing W V'. Also fits W'(0+) from the early samples and
/// converts it to a front-speed estimate via cF = max(kappa0, 1/2) W'(0).
FrontClassification classify_front(const FrontTrajectory& traj, const FrontParams& p);

/// ----------------------------------------------------------------------
/// Similarity-profile ODE -(y/2) V' = (eta(W) V')', coupled analogue for W.
/// First-order reduction with fluxes P = eta(W) V', Q = kappa(W) W'.
/// ----------------------------------------------------------------------

struct SimilaritySample {
    double y = 0.0, V = 0.0, W = 0.0, P = 0.0, Q = 0.0;
    double Vprime(const Coefficients& c) const { return P / eta(W, c); }
};

struct SimilarityTrajectory {
    std::vector<SimilaritySample> samples;
    FrontTermination termination = FrontTermination::reached_z_max;
    double y_floor = 0.0;
    double trailing_WVprime = 0.0;
};

/// Integrates from y = 0 with V(0) = V0, W(0) = W0, V'(0), W'(0) given.
SimilarityTrajectory integrate_similarity(double V0, double W0, double Vp0, double Wp0,
                                          const Coefficients& c, double y_max, double W_floor,
                                          double rel_tol = 1e-10);

/// Shooting solution of the similarity problem for eta == kappa:
/// V odd with limits +-(V_plus - V_minus)/2 after the Galilean shift,
/// W recovered from the conserved profile energy. Requires
/// E0 > max(V_minus^2, V_plus^2)/2.
struct SimilarityProfile {
    std::vector<SimilaritySample> samples; // y >= 0 half; V includes the shift
    double shoot_slope = 0.0;              // V'(0) found by bisection
    double shift = 0.0;                    // Galilean shift (V_minus + V_plus)/2
    double E_eff = 0.0;
};
SimilarityProfile similarity_shoot(double V_minus, double V_plus, double E0,
                                   const Coefficients& c, double y_max = 12.0);

/// Least-squares slope of log W against log z over the window z in (0, z_win]
/// (z_win = leading 5% of the wetted range; at least min_points samples).
struct ExponentFit {
    double gamma = 0.0;
    bool ok = false;
    std::size_t points = 0;
};
ExponentFit boundary_exponent_fit(const std::vector<double>& z, const std::vector<double>& W,
                                  std::size_t min_points = 8);

} // namespace degenflow
