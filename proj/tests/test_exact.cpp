#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "degenflow/exact.hpp"

using namespace degenflow;

namespace {

/// Independent quadrature of Theta(sigma, d): surface of S^{d-1} times the
/// radial integral with r = sin(t) (smooth integrand for every sigma >= 0).
double theta_quad(double sigma, int d) {
    const double surf =
        d == 1 ? 2.0 : (d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
    const std::size_t n = 300000;
    const double h = 0.5 * std::numbers::pi / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) * h;
        acc += std::pow(std::cos(t), 2.0 * sigma + 1.0) * std::pow(std::sin(t), d - 1);
    }
    return surf * acc * h;
}

} // namespace

TEST_CASE("theta mass: exact values and quadrature oracle") {
    CHECK(theta_mass(0.0, 1) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(theta_mass(1.0, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(theta_mass(0.5, 2) ==
          doctest::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-13));
    for (const double sg : {0.25, 0.5, 1.0, 2.0, 4.0})
        for (const int d : {1, 2, 3})
            CHECK(std::abs(theta_mass(sg, d) - theta_quad(sg, d)) <= 1e-8);
}

TEST_CASE("shape function") {
    ShapeParams p{2.0, 1.0, 1.0, 1};
    CHECK(shape_w(0.0, p) == 1.0);
    CHECK(shape_w(1.0, p) == 0.0);
    CHECK(shape_w(7.0, p) == 0.0);
    p.sigma = 1.0;
    CHECK(shape_w(0.5, p) == doctest::Approx(0.75).epsilon(1e-15));
    p.b = 2.0;
    CHECK(shape_w(0.5, p) == 0.0); // support |y| <= 1/b

    // Shape algebra W_sigma^g = W_{sigma g}, W_a W_b = W_{a+b}.
    for (double y = -0.95; y <= 0.95; y += 0.1) {
        const ShapeParams unit{1.0, 1.0, 1.0, 1};
        const double w1 = shape_w(std::abs(y), unit);
        const ShapeParams s07{0.7, 1.0, 1.0, 1};
        const ShapeParams s17{1.7, 1.0, 1.0, 1};
        CHECK(std::pow(w1, 0.7) == doctest::Approx(shape_w(std::abs(y), s07)).epsilon(1e-12));
        CHECK(w1 * shape_w(std::abs(y), s07) ==
              doctest::Approx(shape_w(std::abs(y), s17)).epsilon(1e-12));
    }
}

TEST_CASE("barenblatt parameters and values") {
    // beta = 1, d = 1, kappa0 = 1, amplitude 1: b^2 = 1/6, E0 = sqrt(6) 4/3.
    const BarenblattParams p = BarenblattParams::from_amplitude(1.0, 1.0, 1.0, 1, 1.0);
    CHECK(p.delta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(p.b * p.b == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(p.E0 == doctest::Approx(std::sqrt(6.0) * 4.0 / 3.0).epsilon(1e-13));

    CHECK(barenblatt(0.0, 0.0, p) == doctest::Approx(1.0).epsilon(1e-13)); // t + t* = 1
    CHECK(barenblatt_support_radius(0.0, p) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
    CHECK(barenblatt_support_radius(7.0, p) ==
          doctest::Approx(std::sqrt(6.0) * std::pow(8.0, 1.0 / 3.0)).epsilon(1e-13));
    CHECK(barenblatt(0.0, 100.0, p) == 0.0);

    // Round trip through the energy constructor.
    const BarenblattParams q = BarenblattParams::from_energy(p.E0, 1.0, 1.0, 1, 1.0);
    CHECK(q.c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.b == doctest::Approx(p.b).epsilon(1e-12));

    CHECK_THROWS_AS(BarenblattParams::from_energy(-1.0, 1.0, 1.0, 1, 1.0), ConfigError);
}

TEST_CASE("barenblatt mass is conserved in time") {
    const BarenblattParams p = BarenblattParams::from_amplitude(1.0, 1.0, 1.0, 1, 1.0);
    auto mass_at = [&](double t) {
        const double r = barenblatt_support_radius(t, p);
        const std::size_t n = 2000000;
        const double h = 2.0 * r / static_cast<double>(n);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            acc += barenblatt(t, std::abs(-r + (static_cast<double>(i) + 0.5) * h), p);
        return acc * h;
    };
    const double m0 = mass_at(0.0);
    const double m3 = mass_at(3.0);
    CHECK(std::abs(m0 - p.E0) <= 1e-8 * p.E0);
    CHECK(std::abs(m3 - m0) <= 1e-8 * m0);
}

TEST_CASE("compact solution: branch values and identities") {
    const CompactSolutionParams p{1.0, 2.0, 0.25};
    CHECK(p.lifespan() == doctest::Approx(0.75).epsilon(1e-15));

    const VW a = compact_solution(0.0, -2.0, p);
    CHECK(a.v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(a.w == doctest::Approx(1.0).epsilon(1e-14));

    const VW b = compact_solution(0.0, 0.0, p);
    CHECK(b.v == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b.w == 0.0);

    CHECK(compact_solution(0.0, 4.0, p).v == 0.0); // outside the support
    CHECK_THROWS_AS(compact_solution(0.76, 0.0, p), DomainError);
    CHECK_THROWS_AS(compact_solution(-0.1, 0.0, p), DomainError);
    CompactSolutionParams bad{1.0, 2.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    // e* = v*^2/2 + w* = sqrt(2) B v* everywhere.
    for (double t : {0.0, 0.3, 0.7}) {
        for (double x = -4.0; x <= 4.0; x += 0.01) {
            const VW vw = compact_solution(t, x, p);
            const double e = 0.5 * vw.v * vw.v + vw.w;
            CHECK(std::abs(e - std::sqrt(2.0) * p.B * vw.v) <= 1e-12);
        }
    }

    // Heat content (16/3) B^3 sqrt(t + t*).
    for (double t : {0.0, 0.5}) {
        const std::size_t n = 400000;
        const double h = 12.0 / static_cast<double>(n);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            acc += compact_solution(t, -6.0 + (static_cast<double>(i) + 0.5) * h, p).w;
        CHECK(acc * h ==
              doctest::Approx(16.0 / 3.0 * std::sqrt(t + p.t_star)).epsilon(1e-7));
    }
}

TEST_CASE("explicit similarity profile") {
    CHECK(similarity_ex22(0.0, 1.0).v == 0.0);
    CHECK(similarity_ex22(0.0, 1.0).w == 1.0);
    CHECK(similarity_ex22(2.0, 1.0).v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(similarity_ex22(2.0, 1.0).w == 0.0);
    CHECK(similarity_ex22(5.0, 1.0).v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(similarity_ex22(-5.0, 1.0).v == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    for (double y = -2.0; y <= 2.0; y += 0.05) {
        const VW vw = similarity_ex22(y, 1.0);
        CHECK(vw.w + 0.5 * vw.v * vw.v == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("delayed family") {
    const double B = 1.0, xs = 2.0; // T = 1
    // Zero delays evaluate the t* -> 0 limit of the compact solution: spot
    // check against hand-evaluated branches at t = 0.25 (sqrt(s) = 1/2).
    {
        const VW bump = delayed_family(0.25, -xs, B, xs, 0.0, 0.0);
        CHECK(bump.v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(bump.w == doctest::Approx(1.0).epsilon(1e-14));
        const VW plateau = delayed_family(0.25, 0.5, B, xs, 0.0, 0.0);
        CHECK(plateau.v == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(plateau.w == 0.0);
        const VW outside = delayed_family(0.25, 3.5, B, xs, 0.0, 0.0);
        CHECK(outside.v == 0.0);
        CHECK(outside.w == 0.0);
    }
    // Initial data is the indicator limit (2 sqrt(2) B on [-x*, x*], 0).
    CHECK(delayed_family(0.0, 1.0, B, xs, 0.0, 0.0).v ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(delayed_family(0.0, 2.5, B, xs, 0.0, 0.0).v == 0.0);
    // Frozen branch before the delay.
    const VW frozen = delayed_family(0.1, 1.0, B, xs, 0.2, 0.4);
    CHECK(frozen.v == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(frozen.w == 0.0);
    // Continuity anchor at x = 0.
    for (double t : {0.0, 0.3, 0.8}) {
        const VW mid = delayed_family(t, 0.0, B, xs, 0.2, 0.4);
        CHECK(mid.v == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
        CHECK(mid.w == 0.0);
    }
    CHECK_THROWS_AS(delayed_family(0.5, 0.0, B, xs, 1.5, 0.0), DomainError);
    CHECK_THROWS_AS(delayed_family(0.5, 0.0, B, xs, 0.0, -0.1), DomainError);
}

TEST_CASE("steady profile solver") {
    Coefficients c;
    c.eta0 = 2.0;
    c.kappa0 = 0.5;
    const SteadyProfile sp = steady_profile(1.0, 3.0, c, 1);
    CHECK(sp.sigma == doctest::Approx(0.25).epsilon(1e-15));

    // Forward-evaluated constraints from c = 1 invert through the solver.
    Coefficients ch;
    ch.kappa0 = 0.5;
    const double E0 = std::sqrt(3.0) * 4.0 / 3.0; // c=1 -> b^2 = 1/3
    const SteadyProfile rt = steady_profile(0.7, E0, ch, 1);
    CHECK(rt.c == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rt.b * rt.b == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    const SteadyProfile zero = steady_profile(0.0, 1.0, c, 1);
    CHECK(zero.a == 0.0);
    CHECK(zero.v_hat(0.3) == 0.0);
    CHECK_THROWS_AS(steady_profile(1.0, 0.0, c, 1), ConfigError);
}

TEST_CASE("exact traveling fronts") {
    const FrontPoint pme = front_exact(1.0, FrontCase::pme, 1.0, 0.5, 1.0);
    CHECK(pme.V == 0.0);
    CHECK(pme.W == doctest::Approx(2.0).epsilon(1e-14));

    const FrontPoint cpl = front_exact(1.0, FrontCase::coupled_parabola, 1.0, 0.25, 1.0);
    CHECK(cpl.V == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(cpl.W == doctest::Approx(2.0).epsilon(1e-14));

    CHECK(front_exact(-3.0, FrontCase::pme, 1.0, 0.5, 1.0).W == 0.0);
    CHECK(front_exact(-3.0, FrontCase::coupled_parabola, 1.0, 0.25, 1.0).V == 0.0);
    CHECK_THROWS_AS(front_exact(1.0, FrontCase::coupled_parabola, 1.0, 0.6, 1.0), DomainError);
}

TEST_CASE("residual check: compact solution converges at second order") {
    const CompactSolutionParams p{1.0, 2.0, 0.25};
    const CompactSolutionField field(p);
    Coefficients c; // eta = kappa = w
    std::vector<std::pair<double, double>> pts;
    for (double t : {0.3, 0.5})
        for (double x = -4.0; x <= 4.0; x += 0.21) pts.push_back({t, x});

    const ResidualReport r1 = residual_check(field, c, pts, 2e-2, 2e-2);
    const ResidualReport r2 = residual_check(field, c, pts, 1e-2, 1e-2);
    CHECK(r1.used >= 20);
    const double m1 = std::max(r1.max_r_v, r1.max_r_w);
    const double m2 = std::max(r2.max_r_v, r2.max_r_w);
    CHECK(m1 / m2 >= 3.5);
    CHECK(m2 <= 1e-3);
}

TEST_CASE("residual check: trivial steady state is exact") {
    struct TrivialField : SpaceTimeField {
        VW eval(double, double) const override { return {3.0, 0.0}; }
    } field;
    Coefficients c;
    const ResidualReport r = residual_check(field, c, {{0.5, 0.0}, {1.0, 1.0}}, 1e-2, 1e-2);
    CHECK(r.max_r_v == 0.0);
    CHECK(r.max_r_w == 0.0);
}

TEST_CASE("residual check: barenblatt solves the PME") {
    const BarenblattParams p = BarenblattParams::from_amplitude(1.0, 1.0, 1.0, 1, 1.0);
    const BarenblattField field(p);
    Coefficients c;
    std::vector<std::pair<double, double>> pts;
    for (double x = -3.0; x <= 3.0; x += 0.11) pts.push_back({1.0, x});
    const ResidualReport r1 = residual_check(field, c, pts, 2e-2, 2e-2);
    const ResidualReport r2 = residual_check(field, c, pts, 1e-2, 1e-2);
    CHECK(r1.used >= 20);
    CHECK(r1.max_r_w / r2.max_r_w >= 3.5);
}

TEST_CASE("residual check: traveling fronts in laboratory coordinates") {
    // v(t,x) = V(x + cF t), w(t,x) = W(x + cF t) solves the system; centered
    // residuals fall at second order away from the wetting seam.
    Coefficients c;
    c.kappa0 = 0.25;
    const TravelingFrontField field(FrontCase::coupled_parabola, 1.0, 0.25, 0.8);
    std::vector<std::pair<double, double>> pts;
    for (double x = 0.3; x <= 3.0; x += 0.09) pts.push_back({1.0, x}); // z = x + 0.8 > 0
    const ResidualReport r1 = residual_check(field, c, pts, 2e-2, 2e-2);
    const ResidualReport r2 = residual_check(field, c, pts, 1e-2, 1e-2);
    CHECK(r1.used >= 20);
    const double m1 = std::max(r1.max_r_v, r1.max_r_w);
    const double m2 = std::max(r2.max_r_v, r2.max_r_w);
    CHECK(m1 / m2 >= 3.5);

    Coefficients cp;
    cp.kappa0 = 2.0;
    const TravelingFrontField pme(FrontCase::pme, 1.0, 2.0, 1.0);
    const ResidualReport p1 = residual_check(pme, cp, pts, 2e-2, 2e-2);
    const ResidualReport p2 = residual_check(pme, cp, pts, 1e-2, 1e-2);
    // The pme front with alpha = 1 is piecewise linear: residuals sit at
    // round-off on both levels.
    CHECK(p1.max_r_w <= 1e-10);
    CHECK(p2.max_r_w <= 1e-10);
}
