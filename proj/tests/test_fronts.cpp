#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "degenflow/exact.hpp"
#include "degenflow/fronts.hpp"

using namespace degenflow;

TEST_CASE("front_rhs") {
    FrontParams p;
    p.kappa0 = 0.5;
    const FrontRhs a = front_rhs(0.0, 1.0, p); // V = v*, W = w* + 1
    CHECK(a.dV == 0.0);
    CHECK(a.dW == doctest::Approx(2.0).epsilon(1e-14));

    FrontParams q;
    q.kappa0 = 0.25;
    const FrontRhs b = front_rhs(1.0, 1.0, q); // on the parabola W = V^2
    CHECK(b.dV == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.dW == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.dW / b.dV == doctest::Approx(2.0).epsilon(1e-13)); // tangent to W = V^2

    FrontParams r;
    r.v_star = 0.3;
    r.w_star = 0.5;
    const FrontRhs fixed = front_rhs(0.3, 0.5, r); // the unique constant solution
    CHECK(fixed.dV == 0.0);
    CHECK(fixed.dW == 0.0);

    CHECK_THROWS_AS(front_rhs(1.0, 0.0, p), DomainError);
    CHECK_THROWS_AS(front_rhs(1.0, -1.0, p), DomainError);
}

TEST_CASE("closed-form fronts satisfy the ODE") {
    for (const double cf : {1.0, 1.7}) {
        for (const double z : {0.25, 1.0, 2.5}) {
            {
                const FrontPoint fp = front_exact(z, FrontCase::pme, 1.0, 2.0, cf);
                FrontParams p;
                p.kappa0 = 2.0;
                p.c_F = cf;
                const FrontRhs r = front_rhs(fp.V, fp.W, p);
                CHECK(std::abs(fp.dV - r.dV) <= 1e-10);
                CHECK(std::abs(fp.dW - r.dW) <= 1e-10);
            }
            {
                const FrontPoint fp = front_exact(z, FrontCase::coupled_parabola, 1.0, 0.25, cf);
                FrontParams p;
                p.kappa0 = 0.25;
                p.c_F = cf;
                const FrontRhs r = front_rhs(fp.V, fp.W, p);
                CHECK(std::abs(fp.dV - r.dV) <= 1e-10);
                CHECK(std::abs(fp.dW - r.dW) <= 1e-10);
            }
        }
    }
}

TEST_CASE("parabola invariance and the barrier property") {
    FrontParams p;
    p.kappa0 = 0.25;
    const double W0 = 1.0;
    const double V0 = std::sqrt(2.0 * (1.0 - 2.0 * p.kappa0) * W0);
    const FrontTrajectory on = integrate_front(0.0, V0, W0, p, 2.0, 1e-12, 1e-12);
    CHECK(on.termination == FrontTermination::reached_z_max);
    double worst = 0.0;
    for (const auto& s : on.samples)
        worst = std::max(worst, std::abs(s.W - p.parabola(s.V)) / s.W);
    CHECK(worst <= 1e-8);

    // Starting strictly above the parabola never crosses below it.
    const FrontTrajectory above = integrate_front(0.0, V0, 1.5 * W0, p, 3.0, 1e-12);
    for (const auto& s : above.samples) CHECK(s.W >= p.parabola(s.V) - 1e-9 * s.W);
    CHECK(above.termination == FrontTermination::reached_z_max);
}

TEST_CASE("kappa0 >= 1/2: off-axis trajectories die at the W floor") {
    FrontParams p;
    p.kappa0 = 1.0;
    const FrontTrajectory t = integrate_front(0.0, 0.5, 1.0, p, 100.0, 1e-10);
    CHECK(t.termination == FrontTermination::hit_W_floor);
    CHECK(t.z_floor < 100.0);
}

TEST_CASE("alpha < beta: fronts return to the parabola and terminate") {
    FrontParams p;
    p.alpha = 1.0;
    p.beta = 2.0;
    const FrontTrajectory t = integrate_front(0.0, 0.5, 0.5, p, 100.0, 1e-10);
    CHECK(t.termination == FrontTermination::hit_W_floor);
}

TEST_CASE("classifier") {
    FrontParams p;
    p.kappa0 = 0.25;
    // Constant trajectory at the stationary point.
    FrontTrajectory constant;
    for (int i = 0; i < 10; ++i)
        constant.samples.push_back({0.1 * i, p.v_star, p.w_star});
    CHECK(classify_front(constant, p).label == FrontClass::extinct);

    // Exact fronts with cF = 0.8 are recovered within 2%.
    const double cf = 0.8;
    FrontTrajectory cpl, pme;
    for (int i = 0; i <= 150; ++i) {
        const double z = 1.5 * i / 150.0;
        const FrontPoint a = front_exact(z, FrontCase::coupled_parabola, 1.0, 0.25, cf);
        cpl.samples.push_back({z, a.V, a.W});
        const FrontPoint b = front_exact(z, FrontCase::pme, 1.0, 2.0, cf);
        pme.samples.push_back({z, b.V, b.W});
    }
    const FrontClassification cc = classify_front(cpl, p);
    CHECK(cc.label == FrontClass::coupled_front);
    CHECK(cc.c_F_estimate == doctest::Approx(cf).epsilon(0.02));

    FrontParams pp;
    pp.kappa0 = 2.0;
    const FrontClassification cp = classify_front(pme, pp);
    CHECK(cp.label == FrontClass::pme_front);
    CHECK(cp.c_F_estimate == doctest::Approx(cf).epsilon(0.02));
}

TEST_CASE("similarity system: constants and conserved profile energy") {
    Coefficients c; // eta = kappa = w
    const SimilarityTrajectory flat = integrate_similarity(0.7, 2.0, 0.0, 0.0, c, 5.0, 1e-12);
    CHECK(flat.termination == FrontTermination::reached_z_max);
    for (const auto& s : flat.samples) {
        CHECK(s.V == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(s.W == doctest::Approx(2.0).epsilon(1e-12));
    }

    const SimilarityTrajectory t = integrate_similarity(0.0, 1.0, 0.5, 0.0, c, 8.0, 1e-10);
    CHECK(t.termination == FrontTermination::reached_z_max);
    int sign_changes = 0;
    double prev_p = t.samples.front().P;
    for (const auto& s : t.samples) {
        CHECK(std::abs(s.W + 0.5 * s.V * s.V - 1.0) <= 1e-9); // E = E(0)
        if (s.P * prev_p < 0.0) ++sign_changes;
        prev_p = s.P;
    }
    CHECK(sign_changes == 0); // V monotone
}

TEST_CASE("regime boundary: V'(0) above 1/sqrt(2) is non-extendable") {
    Coefficients c;
    const SimilarityTrajectory t = integrate_similarity(0.0, 1.0, 1.0, 0.0, c, 10.0, 1e-10);
    CHECK(t.termination == FrontTermination::hit_W_floor);
    CHECK(t.y_floor > 0.0);
    CHECK(t.y_floor < 2.0);
    CHECK(t.trailing_WVprime > 0.1); // bounded below by a positive constant
}

TEST_CASE("similarity shooting") {
    Coefficients c; // eta = kappa = w
    const SimilarityProfile trivial = similarity_shoot(0.0, 0.0, 2.0, c);
    for (const auto& s : trivial.samples) {
        CHECK(s.V == 0.0);
        CHECK(s.W == doctest::Approx(2.0).epsilon(1e-14));
    }

    const double target = std::sqrt(2.0);
    const SimilarityProfile prof = similarity_shoot(-target, target, 1.05, c);
    CHECK(prof.samples.back().V == doctest::Approx(target).epsilon(1e-6));
    double prev = -1.0;
    for (const auto& s : prof.samples) {
        CHECK(s.V >= prev - 1e-12); // monotone
        prev = s.V;
        CHECK(s.W >= 0.049);        // floor controlled by the 0.05 margin
    }

    CHECK_THROWS_AS(similarity_shoot(-1.0, 1.0, 0.5, c), ConfigError);
    Coefficients uneq;
    uneq.kappa0 = 2.0;
    CHECK_THROWS_AS(similarity_shoot(-1.0, 1.0, 2.0, uneq), ConfigError);
}

TEST_CASE("boundary exponent fit") {
    std::vector<double> z, wp, wc, vc, flat;
    for (int i = 1; i <= 400; ++i) {
        const double zz = 2.0 * i / 400.0;
        z.push_back(zz);
        wp.push_back(front_exact(zz, FrontCase::pme, 1.0, 0.5, 1.0).W);
        const FrontPoint fp = front_exact(zz, FrontCase::coupled_parabola, 1.0, 0.25, 1.0);
        wc.push_back(fp.W);
        vc.push_back(fp.V);
        flat.push_back(3.0);
    }
    const ExponentFit fw = boundary_exponent_fit(z, wp);
    CHECK(fw.ok);
    CHECK(fw.gamma == doctest::Approx(1.0).epsilon(0.02));
    const ExponentFit fc = boundary_exponent_fit(z, wc);
    CHECK(fc.ok);
    CHECK(fc.gamma == doctest::Approx(1.0).epsilon(0.02));
    const ExponentFit fv = boundary_exponent_fit(z, vc);
    CHECK(fv.ok);
    CHECK(fv.gamma == doctest::Approx(0.5).epsilon(0.04));
    CHECK_FALSE(boundary_exponent_fit(z, flat).ok);
    CHECK_FALSE(boundary_exponent_fit({0.1, 0.2}, {1.0, 2.0}).ok); // too few samples
}
