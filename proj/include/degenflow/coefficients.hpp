#pragma once

#include <cmath>
#include <string>

#include "degenflow/errors.hpp"

namespace degenflow {

/// Power-law transport coefficients eta(w) = eta0 w^alpha, kappa(w) = kappa0 w^beta,
/// with an optional Prandtl-type sink -sink_a * w^sink_exp and a regularization
/// floor eps_floor used when preparing initial data.
struct Coefficients {
    double eta0 = 1.0;
    double alpha = 1.0;
    double kappa0 = 1.0;
    double beta = 1.0;
    double sink_a = 0.0;
    double sink_exp = 1.5;
    double eps_floor = 0.0;

    void validate() const {
        if (!(eta0 > 0.0) || !(alpha > 0.0))
            throw ConfigError("Coefficients: eta0 and alpha must be positive");
        if (!(kappa0 > 0.0) || !(beta > 0.0))
            throw ConfigError("Coefficients: kappa0 and beta must be positive");
        if (sink_a < 0.0) throw ConfigError("Coefficients: sink_a must be >= 0");
        if (eps_floor < 0.0) throw ConfigError("Coefficients: eps_floor must be >= 0");
    }

    bool eta_equals_kappa() const { return eta0 == kappa0 && alpha == beta; }
};

/// w^p with fast paths for the common exponents (p = 1/2, 1, 3/2, 2).
inline double power_law(double w, double p) {
    if (p == 1.0) return w;
    if (p == 0.5) return std::sqrt(w);
    if (p == 2.0) return w * w;
    if (p == 1.5) return w * std::sqrt(w);
    return std::pow(w, p);
}

/// eta(w) = eta0 w^alpha; exactly 0 at w = 0.
inline double eta(double w, const Coefficients& c) {
    if (w < 0.0) throw DomainError("eta: negative w");
    if (w == 0.0) return 0.0;
    return c.eta0 * power_law(w, c.alpha);
}

/// kappa(w) = kappa0 w^beta; exactly 0 at w = 0.
inline double kappa(double w, const Coefficients& c) {
    if (w < 0.0) throw DomainError("kappa: negative w");
    if (w == 0.0) return 0.0;
    return c.kappa0 * power_law(w, c.beta);
}

/// Pressure potential Pi(w) = integral of kappa over [0,w] = kappa0 w^{beta+1}/(beta+1).
inline double pressure(double w, const Coefficients& c) {
    if (w < 0.0) throw DomainError("pressure: negative w");
    if (w == 0.0) return 0.0;
    return c.kappa0 * power_law(w, c.beta + 1.0) / (c.beta + 1.0);
}

/// Two-branch coefficient law of the eta == kappa family that reduces the
/// coupled system to the classical PME along e = B v:
///   w <= 3B^2/8 : B - sqrt(B^2 - 2w),   w >= 3B^2/8 : 2w/B - B/4.
/// Continuous and C^1 at the seam.
inline double coefficient_piecewise_44(double w, double B) {
    if (w < 0.0) throw DomainError("coefficient_piecewise_44: negative w");
    if (!(B > 0.0)) throw ConfigError("coefficient_piecewise_44: B must be positive");
    const double seam = 3.0 * B * B / 8.0;
    if (w <= seam) return B - std::sqrt(B * B - 2.0 * w);
    return 2.0 * w / B - B / 4.0;
}

/// Antiderivative of coefficient_piecewise_44 from 0 to w.
inline double pressure_piecewise_44(double w, double B) {
    if (w < 0.0) throw DomainError("pressure_piecewise_44: negative w");
    const double seam = 3.0 * B * B / 8.0;
    const double B3 = B * B * B;
    if (w <= seam) {
        const double r = B * B - 2.0 * w;
        return B * w + (std::pow(r, 1.5) - B3) / 3.0;
    }
    const double at_seam = B3 / 12.0;
    return at_seam + (w * w - seam * seam) / B - (B / 4.0) * (w - seam);
}

/// Coefficient law used by the solver: either the power laws of Coefficients
/// or the piecewise eta == kappa law above. Sink and regularization parameters
/// are taken from `coeffs` in both cases.
struct CoefficientLaw {
    enum class Kind { power, piecewise_44 };
    Kind kind = Kind::power;
    Coefficients coeffs;
    double piecewise_B = 1.0;

    static CoefficientLaw power(const Coefficients& c) {
        CoefficientLaw law;
        law.kind = Kind::power;
        law.coeffs = c;
        return law;
    }
    static CoefficientLaw piecewise44(double B, double sink_a = 0.0) {
        CoefficientLaw law;
        law.kind = Kind::piecewise_44;
        law.piecewise_B = B;
        law.coeffs.sink_a = sink_a;
        return law;
    }

    double eta(double w) const {
        return kind == Kind::power ? degenflow::eta(w, coeffs)
                                   : coefficient_piecewise_44(w, piecewise_B);
    }
    double kappa(double w) const {
        return kind == Kind::power ? degenflow::kappa(w, coeffs)
                                   : coefficient_piecewise_44(w, piecewise_B);
    }
    double pressure(double w) const {
        return kind == Kind::power ? degenflow::pressure(w, coeffs)
                                   : pressure_piecewise_44(w, piecewise_B);
    }
    bool eta_equals_kappa() const {
        return kind == Kind::piecewise_44 || coeffs.eta_equals_kappa();
    }
    double sink_a() const { return coeffs.sink_a; }
    double sink_exp() const { return coeffs.sink_exp; }
};

/// Entropy density selector: sigma(w) = sqrt(w), w^gamma, or log(w).
/// All choices are nondecreasing and concave on (0, inf).
struct EntropySpec {
    enum class Kind { sqrt, power, log };
    Kind kind = Kind::sqrt;
    double gamma = 0.5; // power kind only, gamma in (0,1)

    static EntropySpec sqrt_kind() { return {Kind::sqrt, 0.5}; }
    static EntropySpec power_kind(double g) {
        if (!(g > 0.0 && g < 1.0)) throw ConfigError("EntropySpec: power exponent must be in (0,1)");
        return {Kind::power, g};
    }
    static EntropySpec log_kind() { return {Kind::log, 0.5}; }

    double sigma(double w) const {
        switch (kind) {
            case Kind::sqrt: return std::sqrt(w);
            case Kind::power: return std::pow(w, gamma);
            case Kind::log:
                if (w <= 0.0) throw DomainError("entropy: log kind needs w > 0");
                return std::log(w);
        }
        return 0.0;
    }
    double sigma_prime(double w) const {
        switch (kind) {
            case Kind::sqrt: return 0.5 / std::sqrt(w);
            case Kind::power: return gamma * std::pow(w, gamma - 1.0);
            case Kind::log: return 1.0 / w;
        }
        return 0.0;
    }
    double sigma_prime2(double w) const {
        switch (kind) {
            case Kind::sqrt: return -0.25 / std::pow(w, 1.5);
            case Kind::power: return gamma * (gamma - 1.0) * std::pow(w, gamma - 2.0);
            case Kind::log: return -1.0 / (w * w);
        }
        return 0.0;
    }
};

} // namespace degenflow
