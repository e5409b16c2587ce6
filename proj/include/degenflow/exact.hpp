#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "degenflow/coefficients.hpp"
#include "degenflow/errors.hpp"

namespace degenflow {

struct VW {
    double v = 0.0;
    double w = 0.0;
};

/// Mass of the shape function W_sigma(y) = (1-|y|^2)_+^sigma over R^d:
/// Theta(sigma, d) = pi^{d/2} Gamma(1+sigma) / Gamma(1+sigma+d/2).
double theta_mass(double sigma, int d);

/// Profile c (1 - |b y|^2)_+^sigma; the argument is the radius |y|.
struct ShapeParams {
    double sigma = 1.0;
    double b = 1.0;
    double c = 1.0;
    int d = 1;

    void validate() const {
        if (!(sigma >= 0.0) || !(b > 0.0) || !(c > 0.0) || d < 1)
            throw ConfigError("ShapeParams: need sigma >= 0, b,c > 0, d >= 1");
    }
};
double shape_w(double radius, const ShapeParams& p);

/// Self-similar PME solution w(t,x) = c (t+t*)^{-d delta} W_sigma(b (t+t*)^{-delta} x)
/// with sigma = 1/beta, delta = 1/(2+d beta) and (b, c) tied together by
///   E0 = c b^{-d} Theta(1/beta, d),   2 kappa0 b^2 c^beta = delta beta.
struct BarenblattParams {
    double E0 = 1.0;
    double beta = 1.0;
    double kappa0 = 1.0;
    int d = 1;
    double t_star = 1.0;
    // derived
    double delta = 0.0;
    double sigma = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// Derive (b, c) from the mass E0 (closed form; the constraint map is monotone).
    static BarenblattParams from_energy(double E0, double beta, double kappa0, int d,
                                        double t_star);
    /// Derive (b, E0) from the amplitude c.
    static BarenblattParams from_amplitude(double c, double beta, double kappa0, int d,
                                           double t_star);
    void validate() const;
};

/// Value at time t and radius |x|; zero outside the support.
double barenblatt(double t, double radius, const BarenblattParams& p);
/// Support radius (1/b) (t+t*)^delta.
double barenblatt_support_radius(double t, const BarenblattParams& p);

/// Parameters of the explicit compactly supported coupled solution
/// (eta(w) = kappa(w) = w). Lifespan T = x*^2/(4B^2) - t* must be positive.
struct CompactSolutionParams {
    double B = 1.0;
    double x_star = 2.0;
    double t_star = 0.25;

    double lifespan() const { return x_star * x_star / (4.0 * B * B) - t_star; }
    void validate() const {
        if (!(B > 0.0) || !(x_star > 0.0) || !(t_star > 0.0))
            throw ConfigError("CompactSolutionParams: B, x*, t* must be positive");
        if (!(lifespan() > 0.0))
            throw ConfigError("CompactSolutionParams: need t* < x*^2/(4B^2)");
    }
};

/// Four-branch explicit solution; valid for t in [0, lifespan].
VW compact_solution(double t, double x, const CompactSolutionParams& p);
/// Rightmost support point x* + 2B sqrt(t+t*).
double compact_support_edge(double t, const CompactSolutionParams& p);

/// Explicit similarity profile for eta = kappa = w:
/// (y/sqrt(2), B^2 - y^2/4) on |y| <= 2B, (+-sqrt(2) B, 0) outside.
VW similarity_ex22(double y, double B);

/// Two-parameter family of very weak solutions obtained from the t* -> 0 limit
/// of the compact solution, frozen until delay t_plus on x >= 0 and t_minus on
/// x <= 0. Initial data (2 sqrt(2) B 1_{[-x*,x*]}, 0). Delays must lie in
/// [0, T] with T = x*^2/(4B^2).
VW delayed_family(double t, double x, double B, double x_star, double t_plus, double t_minus);

/// Steady profiles of the momentum-conserving rescaled system:
/// v_hat(y) = a W_sigma(b y), w_tilde(y) = c W_{1/beta}(b y) with
/// sigma = kappa0/(eta0 beta), b^2 = beta delta / (2 c^beta kappa0),
/// V0 = a b^{-d} Theta(sigma, d), E0 = c b^{-d} Theta(1/beta, d).
struct SteadyProfile {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double sigma = 0.0;   // v-profile exponent kappa0/(eta0 beta)
    double sigma_w = 0.0; // w-profile exponent 1/beta
    double delta = 0.0;
    int d = 1;

    double v_hat(double radius) const;
    double w_tilde(double radius) const;
};

/// Solves the 2x2 constraint system for (b, c) by bisection on c (the map
/// c -> E0(c) is strictly monotone), then sets the v amplitude from V0.
SteadyProfile steady_profile(double V0, double E0, const Coefficients& c, int d);

/// Explicit traveling fronts (alpha = beta family, eta0 = 1 normalization).
enum class FrontCase { pme, coupled_parabola };

struct FrontPoint {
    double V = 0.0;
    double W = 0.0;
    double dV = 0.0; // analytic z-derivatives, for residual tests
    double dW = 0.0;
};

/// pme:              (0, (alpha/kappa0 cF z_+)^{1/alpha})
/// coupled_parabola: (sign sqrt(2-4 kappa0) (2 alpha cF z_+)^{1/(2 alpha)}, (2 alpha cF z_+)^{1/alpha}),
///                   requires kappa0 < 1/2. Both vanish for z <= 0. General
/// front speed enters through the rescaling z -> cF z.
FrontPoint front_exact(double z, FrontCase fc, double alpha, double kappa0, double c_F,
                       int sign = +1);

/// ----------------------------------------------------------------------
/// Pointwise PDE residual checks on analytic space-time fields.
/// ----------------------------------------------------------------------

/// An analytic field (v, w)(t, x) with known seam locations (branch
/// boundaries / support edges) at each time.
class SpaceTimeField {
public:
    virtual ~SpaceTimeField() = default;
    virtual VW eval(double t, double x) const = 0;
    virtual std::vector<double> seams(double /*t*/) const { return {}; }
};

struct ResidualSample {
    double t = 0.0, x = 0.0;
    double r_v = 0.0, r_w = 0.0;
    bool flagged = false;
};

struct ResidualReport {
    std::vector<ResidualSample> samples;
    double max_r_v = 0.0; // over unflagged samples
    double max_r_w = 0.0;
    std::size_t used = 0;
    std::size_t flagged = 0;
};

/// Centered finite-difference residuals of the coupled system at the given
/// (t, x) points, with stencil spacings dt_stencil (time) and dx_stencil
/// (space). A sample is flagged and excluded from the norms when any stencil
/// point lies within two stencil widths of a seam at any of the three stencil
/// times.
ResidualReport residual_check(const SpaceTimeField& f, const Coefficients& c,
                              const std::vector<std::pair<double, double>>& points,
                              double dt_stencil, double dx_stencil);

/// Ready-made fields for the closed forms above.
class CompactSolutionField : public SpaceTimeField {
public:
    explicit CompactSolutionField(const CompactSolutionParams& p) : p_(p) { p_.validate(); }
    VW eval(double t, double x) const override { return compact_solution(t, x, p_); }
    std::vector<double> seams(double t) const override;

private:
    CompactSolutionParams p_;
};

class BarenblattField : public SpaceTimeField {
public:
    explicit BarenblattField(const BarenblattParams& p) : p_(p) {}
    VW eval(double t, double x) const override { return {0.0, barenblatt(t, std::abs(x), p_)}; }
    std::vector<double> seams(double t) const override;

private:
    BarenblattParams p_;
};

class DelayedFamilyField : public SpaceTimeField {
public:
    DelayedFamilyField(double B, double x_star, double t_plus, double t_minus)
        : B_(B), x_star_(x_star), t_plus_(t_plus), t_minus_(t_minus) {}
    VW eval(double t, double x) const override {
        return delayed_family(t, x, B_, x_star_, t_plus_, t_minus_);
    }
    std::vector<double> seams(double t) const override;

private:
    double B_, x_star_, t_plus_, t_minus_;
};

/// Traveling front in laboratory coordinates, v(t,x) = V(x + cF t).
class TravelingFrontField : public SpaceTimeField {
public:
    TravelingFrontField(FrontCase fc, double alpha, double kappa0, double c_F, int sign = +1)
        : fc_(fc), alpha_(alpha), kappa0_(kappa0), c_F_(c_F), sign_(sign) {}
    VW eval(double t, double x) const override {
        const FrontPoint fp = front_exact(x + c_F_ * t, fc_, alpha_, kappa0_, c_F_, sign_);
        return {fp.V, fp.W};
    }
    std::vector<double> seams(double t) const override { return {-c_F_ * t}; }

private:
    FrontCase fc_;
    double alpha_, kappa0_, c_F_;
    int sign_;
};

} // namespace degenflow
