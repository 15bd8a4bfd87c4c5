#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ipoly/circle.hpp"
#include "ipoly/errors.hpp"
#include "test_util.hpp"

using namespace ipoly;
using namespace ipoly::testing;

TEST_CASE("pencil invariant") {
    PrecisionGuard guard(40);
    CHECK(close_abs(pencil_invariant(R("0.5"), R("0.2")), R("1.21"), working_tol()));
    CHECK(close_abs(pencil_invariant(R("0.2"), R("0.48")), R("2.024"), working_tol()));
    CHECK_THROWS_AS(pencil_invariant(R("0.5"), R("0.5")), DomainError);  // tangent circles
    CHECK_THROWS_AS(pencil_invariant(Real(0), R("0.3")), DomainError);
    CHECK_THROWS_AS(pencil_invariant(R("-0.1"), R("0.3")), DomainError);
}

TEST_CASE("parameters from integral spec") {
    PrecisionGuard guard(64);

    SUBCASE("psi = pi/3, k2 = 1/2") {
        const CirclePair p = params_from_integral({pi_value() / 3, R("0.5"), 24});
        CHECK(close_abs(p.c, R("0.138998"), Real(1e-6)));
        CHECK(close_abs(p.r, R("0.430501"), Real(1e-6)));
        CHECK(close_abs(p.I, Real(3), working_tol(10)));
    }

    SUBCASE("degenerate amplitude") {
        const Real near_half_pi = pi_value() / 2 - pow(Real(10), -40);
        CHECK_THROWS_AS(params_from_integral({near_half_pi, R("0.5"), 24}), DomainError);
    }

    SUBCASE("pencil invariant equals 2/k2 - 1 across random inputs") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> up(0.05, 1.5), uk(0.02, 0.98);
        for (int i = 0; i < 8; ++i) {
            const Real psi(up(rng)), k2(uk(rng));
            const CirclePair p = params_from_integral({psi, k2, 24});
            CHECK(close_abs(p.I, 2 / k2 - 1, working_tol(12)));
        }
    }

    SUBCASE("round trip against the reference pair") {
        // c = 0.5, r = 0.2 corresponds to psi = acos(r/(1-c)), k2 = 2/(I+1)
        const CirclePair ref = CirclePair::create(R("0.5"), R("0.2"));
        const Real psi = acos(ref.r / (1 - ref.c));
        const Real k2 = 2 / (ref.I + 1);
        CHECK(close_abs(k2, 2 / R("2.21"), working_tol(10)));
        const CirclePair p = params_from_integral({psi, k2, 24});
        CHECK(close_abs(p.c, ref.c, Real(1e-55)));
        CHECK(close_abs(p.r, ref.r, Real(1e-55)));
    }
}

TEST_CASE("chord residual") {
    PrecisionGuard guard(50);
    const CirclePair pair = CirclePair::create(R("0.5"), R("0.2"));

    SUBCASE("initial chord is tangent") {
        const Complex z0(Real(1));
        const Complex z1 = initial_vertex(pair);
        CHECK(chord_residual(z0, z1, pair).abs() < working_tol());
        CHECK(close_abs(z1.re, R("-0.68"), working_tol(10)));
    }

    SUBCASE("vertical chord through the tangency abscissa") {
        // the chord x = c + r touches the inner circle at its rightmost point
        const Real t = pair.c + pair.r;
        const Complex zp(t, sqrt(1 - t * t));
        CHECK(chord_residual(zp, zp.conj(), pair).abs() < working_tol());
    }

    SUBCASE("symmetry and tangency along the vertex chain") {
        Complex zp = initial_vertex(pair).conj();
        Complex zc(Real(1));
        for (int k = 0; k < 20; ++k) {
            const Complex zn = next_vertex(zp, zc, pair);
            const Complex res = chord_residual(zc, zn, pair);
            const Complex res_swapped = chord_residual(zn, zc, pair);
            CHECK(res.abs() < working_tol());
            CHECK((res - res_swapped).abs() < working_tol());
            zp = zc;
            zc = zn;
        }
    }
}

TEST_CASE("next vertex") {
    PrecisionGuard guard(45);

    SUBCASE("concentric circles rotate rigidly") {
        const CirclePair p = CirclePair::create(Real(0), R("0.3"));
        const Complex z0 = unit_vertex(R("0.7"));
        const Complex z1 = unit_vertex(R("1.9"));
        const Complex zn = next_vertex(z0, z1, p);
        const Complex expected = (z1 * z1) / z0;
        CHECK((zn - expected).abs() < working_tol());
    }

    SUBCASE("reference first step") {
        const CirclePair p = CirclePair::create(R("0.5"), R("0.2"));
        const Complex z1 = next_vertex(initial_vertex(p).conj(), Complex(Real(1)), p);
        CHECK(close_abs(z1.re, 2 * p.r * p.r / ((1 - p.c) * (1 - p.c)) - 1, working_tol(8)));
        CHECK(z1.im > 0);
    }

    SUBCASE("triangle closure for c^2 = 1 - 2r") {
        PrecisionGuard inner(48);  // 40-digit target with slack
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> ua(0.0, 6.28);
        const CirclePair p = CirclePair::create(R("0.2"), R("0.48"));
        for (int i = 0; i < 10; ++i) {
            const Complex z0 = unit_vertex(Real(ua(rng)));
            const Complex z1 = forward_neighbor(z0, p);
            const Complex z2 = next_vertex(z0, z1, p);
            const Complex z3 = next_vertex(z1, z2, p);
            CHECK((z3 - z0).abs() < Real(1e-30));
        }
    }
}

TEST_CASE("cos phi from w") {
    PrecisionGuard guard(60);
    const CirclePair pair = CirclePair::create(R("0.5"), R("0.2"));

    CHECK(close_abs(cos_phi_from_w(pow(Real(10), -30), pair), Real(1), Real(1e-28)));
    CHECK(close_abs(cos_phi_from_w(R("0.5"), pair), R("-0.68"), working_tol(10)));

    // w_2 = 4 c r^2 / (1 - c^2)^2, cos phi_2 sits at |z_2 - 1| = 0.570
    const Real w2 = 4 * pair.c * pair.r * pair.r /
                    ((1 - pair.c * pair.c) * (1 - pair.c * pair.c));
    const Real cphi2 = cos_phi_from_w(w2, pair);
    CHECK(close_abs(cphi2, R("0.83763"), Real(1e-5)));
    CHECK(sig_figs(sqrt(2 - 2 * cphi2), R("0.570"), 3));

    CHECK_THROWS_AS(cos_phi_from_w(R("0.6"), pair), DomainError);  // above the bound
    CHECK_THROWS_AS(cos_phi_from_w(Real(0), pair), DomainError);
}

TEST_CASE("baby-step scan on the reference pair") {
    PrecisionGuard guard(working_digits(40));
    const CirclePair pair = CirclePair::create(R("0.5"), R("0.2"));
    const ScanResult scan = baby_step_scan(pair, 5 * pow(Real(10), -6), 400000);
    REQUIRE(!scan.closure);

    const long expected_q[] = {2,   5,   7,    12,   31,    43,    74,
                               117, 191, 308,  1115, 9228,  56483, 291643};
    REQUIRE(scan.records.size() >= 14);
    for (int i = 0; i < 14; ++i) CHECK(scan.records[i].q == BigInt(expected_q[i]));

    SUBCASE("gamma branch choice at index 2") {
        CHECK(close_abs(scan.records[0].gamma, 2 * pair.r / (1 - pair.c * pair.c),
                        working_tol()));
        CHECK(scan.records[0].gamma < 1);
    }

    SUBCASE("records strictly decrease, indices strictly increase") {
        for (std::size_t i = 1; i < scan.records.size(); ++i) {
            CHECK(scan.records[i].gamma < scan.records[i - 1].gamma);
            CHECK(scan.records[i].q > scan.records[i - 1].q);
        }
    }

    SUBCASE("vertex distances of the early records") {
        const char* expected_d[] = {"0.570",  "0.312",  "0.222",   "0.0837",
                                    "0.0519", "0.0317", "0.0202",  "0.0115",
                                    "0.00869", "0.00278", "0.000341", "0.0000552"};
        for (int i = 0; i < 12; ++i)
            CHECK(sig_figs(record_vertex_distance(scan.records[i], pair), R(expected_d[i]), 3));
    }

    SUBCASE("detector equivalence and vertex consistency through q = 1115") {
        const VertexScanResult direct = direct_vertex_scan(pair, 1200);
        // drop the k = 1 entry (the seed index); the rest are the records
        REQUIRE(direct.records.size() >= 12);
        CHECK(direct.records[0].k == 1);
        for (int i = 0; i < 11; ++i) {
            CHECK(BigInt(direct.records[i + 1].k) == scan.records[i].q);
            CHECK(close_abs(direct.records[i + 1].distance,
                            record_vertex_distance(scan.records[i], pair), Real(1e-30)));
            const Real w = pair.c * scan.records[i].gamma * scan.records[i].gamma;
            CHECK(close_abs(direct.records[i + 1].z.re, cos_phi_from_w(w, pair), Real(1e-30)));
        }
    }
}

TEST_CASE("baby-step scan closures and budgets") {
    PrecisionGuard guard(50);

    SUBCASE("triangle configuration closes at 3") {
        const CirclePair p = CirclePair::create(R("0.2"), R("0.48"));
        const ScanResult scan = baby_step_scan(p, R("0.01"), 1000);
        REQUIRE(scan.closure);
        CHECK(*scan.closure == 3);
    }

    SUBCASE("regular heptagon for concentric circles") {
        const CirclePair p = CirclePair::create(Real(0), cos(pi_value() / 7));
        const ScanResult scan = baby_step_scan(p, R("0.01"), 1000);
        REQUIRE(scan.closure);
        CHECK(*scan.closure == 7);
    }

    SUBCASE("budget exhaustion") {
        const CirclePair p = CirclePair::create(R("0.5"), R("0.2"));
        CHECK_THROWS_AS(baby_step_scan(p, pow(Real(10), -6), 20), BudgetError);
    }
}

TEST_CASE("scan properties on random pairs") {
    PrecisionGuard guard(64);
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uc(0.05, 0.8), ur(0.05, 0.95);
    for (int i = 0; i < 5; ++i) {
        const double c = uc(rng);
        const double r = ur(rng) * (1 - c) * 0.9 + 0.01;
        const CirclePair pair = CirclePair::create(Real(c), Real(r));
        ScanResult scan;
        try {
            scan = baby_step_scan(pair, pow(Real(10), -4), 2000000);
        } catch (const BudgetError&) {
            continue;  // extremely small rotation numbers need more budget
        }
        if (scan.closure) continue;
        const Real bound = w_upper_bound(pair);
        for (std::size_t k = 1; k < scan.records.size(); ++k) {
            CHECK(scan.records[k].gamma < scan.records[k - 1].gamma);
            CHECK(scan.records[k].q > scan.records[k - 1].q);
            const Real w = pair.c * scan.records[k].gamma * scan.records[k].gamma;
            CHECK(w > 0);
            CHECK(w < bound * (1 + working_tol()));
        }
    }
}
