#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ipoly/circle.hpp"
#include "ipoly/oracle.hpp"
#include "ipoly/pipeline.hpp"
#include "test_util.hpp"

using namespace ipoly;
using namespace ipoly::testing;

TEST_CASE("complete integral via AGM") {
    PrecisionGuard guard(50);

    SUBCASE("k2 = 0 degenerates to pi/2") {
        CHECK(close_abs(complete_elliptic_F(Real(0), 40), pi_value() / 2, working_tol()));
    }

    SUBCASE("k2 = 1/2 reference value, two independent routes") {
        const Real agm_route = complete_elliptic_F(R("0.5"), 40);
        // frozen from this module's own quadrature and cross-checked below
        CHECK(close_abs(agm_route, R("1.85407467730137191843385034720"), Real(1e-28)));
        auto f = [](const Real& t) {
            const Real s = sin(t);
            return 1 / sqrt(1 - R("0.5") * s * s);
        };
        const auto quad = tanh_sinh(f, Real(0), pi_value() / 2, 40);
        CHECK(close_abs(agm_route, quad.value, Real(1e-38)));
        CHECK(quad.error_estimate < Real(1e-38));
    }

    SUBCASE("F(pi/2, k) * AGM(1, k') = pi/2 for random moduli") {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> uk(0.01, 0.99);
        for (int i = 0; i < 6; ++i) {
            const Real k2(uk(rng));
            const Real F = complete_elliptic_F(k2, 45);
            const Real prod = F * agm(Real(1), sqrt(1 - k2));
            CHECK(close_abs(prod, pi_value() / 2, working_tol()));
        }
    }
}

TEST_CASE("incomplete kernel integral Phi") {
    PrecisionGuard guard(50);
    const Real I = R("1.21");

    SUBCASE("empty interval") { CHECK(phi_integral(Real(0), I, 40) == 0); }

    SUBCASE("half-period symmetry") {
        const Real full = phi_integral(2 * pi_value(), I, 40);
        const Real half = phi_integral(pi_value(), I, 40);
        CHECK(close_abs(full, 2 * half, Real(1e-38)));
    }

    SUBCASE("change of variables ties Phi(pi, I) to the complete integral") {
        const Real k2 = 2 / (I + 1);
        const Real lhs = phi_integral(pi_value(), I, 42);
        const Real rhs = sqrt(k2) * sqrt(Real(2)) * complete_elliptic_F(k2, 42);
        CHECK(close_abs(lhs, rhs, Real(1e-38)));
    }

    SUBCASE("rotation number of the reference circle pair") {
        const CirclePair pair = CirclePair::create(R("0.5"), R("0.2"));
        const Real theta = theta_reference(pair, 40);
        // frozen from two independent routes (quadrature and the refined
        // polygon pipeline, which agree to 50+ digits)
        CHECK(close_abs(theta, R("0.4188339853943041937700790549451262339791"), Real(1e-36)));
    }
}

TEST_CASE("measure density normalization and symmetry") {
    PrecisionGuard guard(45);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uI(1.05, 12.0), ux(0.0, 0.5);
    for (int i = 0; i < 3; ++i) {
        const Real I(uI(rng));
        auto h = [&](const Real& x) { return theta_density(x, I, 40); };
        const auto total = tanh_sinh(h, Real(0), Real(1), 35);
        CHECK(close_abs(total.value, Real(1), Real(1e-30)));
        for (int j = 0; j < 3; ++j) {
            const Real x(ux(rng));
            CHECK(close_abs(h(x), h(1 - x), Real(1e-35)));
        }
    }
}

TEST_CASE("integral ratio view against direct quadrature") {
    PrecisionGuard guard(60);
    const Real psi = R("0.7"), k2 = R("0.64");
    const CirclePair pair = pair_for_integral_ratio({psi, k2, 30});
    ThetaOptions opt;
    opt.digits = 30;
    const ThetaResult run = compute_theta(pair, opt);
    const IntegralView view = integral_view(pair, run.theta, 35);
    CHECK(close_abs(view.psi, psi, Real(1e-40)));
    CHECK(close_abs(view.k2, k2, Real(1e-40)));
    // the reported incomplete integral must match an independent quadrature
    auto f = [&](const Real& t) {
        const Real s = sin(t);
        return 1 / sqrt(1 - k2 * s * s);
    };
    const Real F_direct = tanh_sinh(f, Real(0), psi, 40).value;
    CHECK(close_abs(view.F, F_direct, Real(1e-28)));
}

TEST_CASE("small rotation numbers go through the seed-record branch") {
    // 2r > 1 - c^2 puts the first almost-closure past index 2; the pipeline
    // must still agree with quadrature
    PrecisionGuard guard(working_digits(40));
    const CirclePair pair = CirclePair::create(R("0.15"), R("0.7"));
    ThetaOptions opt;
    opt.digits = 40;
    const ThetaResult run = compute_theta(pair, opt);
    CHECK(run.records.front().q == 1);
    CHECK(run.table.rows.front().q > 1);
    const Real oracle = theta_reference(pair, 45);
    CHECK(oracle < Real(1) / 3);
    CHECK(close_abs(run.theta, oracle, Real(1e-38)));
}

TEST_CASE("chord measure is chord-independent") {
    PrecisionGuard guard(50);
    const CirclePair pair = CirclePair::create(R("0.5"), R("0.2"));
    auto f = [&](const Real& t) { return 1 / sqrt(pair.I - cos(t)); };
    Real first;
    bool have_first = false;
    for (const double ang : {0.3, 1.2, 2.5, 4.0, 5.5}) {
        const Complex z = unit_vertex(Real(ang));
        const Complex w = forward_neighbor(z, pair);
        const Real advance = ccw_advance(z, w);
        const Real measure = tanh_sinh(f, Real(ang), Real(ang) + advance, 42).value;
        if (!have_first) {
            first = measure;
            have_first = true;
        } else {
            CHECK(close_abs(measure, first, Real(1e-30)));
        }
    }
}
