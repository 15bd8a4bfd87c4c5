#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "ipoly/cf.hpp"
#include "ipoly/errors.hpp"
#include "ipoly/oracle.hpp"
#include "test_util.hpp"

using namespace ipoly;
using namespace ipoly::testing;

namespace {

std::vector<BigInt> q_list(std::initializer_list<long long> v) {
    std::vector<BigInt> out;
    for (long long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("numerator recovery") {
    SUBCASE("reference circle table prefix") {
        const auto table = recover_numerators(
            q_list({2, 5, 7, 12, 31, 43, 74, 117, 191, 308, 1115, 9228}));
        const long long expected_p[] = {1, 2, 3, 5, 13, 18, 31, 49, 80, 129, 467, 3865};
        REQUIRE(table.rows.size() == 12);
        for (int i = 0; i < 12; ++i) CHECK(table.rows[i].p == BigInt(expected_p[i]));
    }

    SUBCASE("reference ellipse table") {
        const auto table = recover_numerators(
            q_list({3, 13, 16, 45, 151, 196, 1327, 12139, 25605, 37744, 214325, 252069}));
        const long long expected_a[] = {3, 4, 1, 2, 3, 1, 6, 9, 2, 1, 5, 1};
        const long long expected_p[] = {1, 4, 5, 14, 47, 61, 413, 3778, 7969, 11747, 66704, 78451};
        REQUIRE(table.rows.size() == 12);
        for (int i = 0; i < 12; ++i) {
            CHECK(table.rows[i].a == BigInt(expected_a[i]));
            CHECK(table.rows[i].p == BigInt(expected_p[i]));
        }
    }

    SUBCASE("single denominator 1 is the seed-row degenerate case") {
        const auto table = recover_numerators(q_list({1}));
        REQUIRE(table.rows.size() == 1);
        CHECK(table.rows[0].a == 1);
        CHECK(table.rows[0].p == 1);
    }

    SUBCASE("strict mode rejects invalid sequences") {
        CHECK_THROWS_AS(recover_numerators(q_list({2, 5, 8})), DomainError);
        CHECK_THROWS_AS(recover_numerators(q_list({5, 3})), DomainError);
        CHECK_THROWS_AS(recover_numerators(q_list({0, 3})), DomainError);
    }

    SUBCASE("lenient mode marks an unsuitable head provisional") {
        // true best-approximation denominators of 3/10 are (3, 10, 33); a
        // spurious leading 2 must be dropped, not fatal
        const auto table = recover_numerators(q_list({2, 3, 10, 33}), DivisibilityMode::LenientHead);
        REQUIRE(table.rows.size() == 4);
        CHECK(table.rows[0].provisional);
        CHECK(table.rows[0].q == 2);
        CHECK_FALSE(table.rows[1].provisional);
        CHECK(table.rows[1].p == 1);
        CHECK(table.rows[2].p == 3);
        CHECK(table.rows[3].p == 10);
    }
}

TEST_CASE("convergent interleaving and the distance identity") {
    PrecisionGuard guard(70);

    SUBCASE("reference table with a high-precision theta") {
        const auto table = recover_numerators(
            q_list({2, 5, 7, 12, 31, 43, 74, 117, 191, 308, 1115, 9228}));
        const Real theta = R("0.41883398539430419377007905494512623397907");
        const auto verdict = convergent_bounds(table, theta, pow(Real(10), -20));
        CHECK(verdict.pass);
        CHECK(verdict.max_identity_residual < pow(Real(10), -20));
    }

    SUBCASE("rational endpoint degenerates cleanly") {
        const auto table = recover_numerators(q_list({3}));
        const Real theta = Real(1) / 3;
        const auto verdict = convergent_bounds(table, theta, pow(Real(10), -30));
        CHECK(verdict.pass);
    }

    SUBCASE("random rationals with the integer continued-fraction oracle") {
        std::mt19937_64 rng(23);
        std::uniform_int_distribution<long long> uv(100000000LL, 999999999LL);
        for (int trial = 0; trial < 5; ++trial) {
            BigInt v(uv(rng));
            BigInt u(uv(rng) % v.convert_to<long long>());
            if (u == 0) u = 1;
            // Euclid on v/u gives the partial quotients of u/v in (0, 1);
            // the convergent denominators follow the standard recurrence.
            std::vector<BigInt> qs;
            BigInt num = v, den = u, qm2 = 0, qm1 = 1;
            while (den != 0) {
                const BigInt a = num / den;
                const BigInt rem = num % den;
                num = den;
                den = rem;
                const BigInt q = a * qm1 + qm2;
                if (qs.empty() || q > qs.back()) qs.push_back(q);
                qm2 = qm1;
                qm1 = q;
            }
            const auto table = recover_numerators(qs);
            const Real theta = real_from_bigint(u) / real_from_bigint(v);
            const auto verdict = convergent_bounds(table, theta, pow(Real(10), -25));
            CHECK(verdict.pass);
            // the final convergent is exactly u/v in lowest terms
            const auto& last = table.rows.back();
            CHECK(last.p * v == last.q * u);
        }
    }
}

TEST_CASE("rational closure detection") {
    PrecisionGuard guard(50);

    SUBCASE("triangle configuration") {
        const CirclePair p = CirclePair::create(R("0.2"), R("0.48"));
        const ScanResult scan = baby_step_scan(p, R("0.01"), 1000);
        const auto rep = detect_rational_closure(scan);
        REQUIRE(rep);
        CHECK(rep->n == 3);
        CHECK(rep->p == 1);
    }

    SUBCASE("concentric heptagon") {
        const CirclePair p = CirclePair::create(Real(0), cos(pi_value() / 7));
        const ScanResult scan = baby_step_scan(p, R("0.01"), 1000);
        const auto rep = detect_rational_closure(scan);
        REQUIRE(rep);
        CHECK(rep->n == 7);
        CHECK(rep->p == 1);
    }

    SUBCASE("irrational reference pair never closes in budget") {
        const CirclePair p = CirclePair::create(R("0.5"), R("0.2"));
        const ScanResult scan = baby_step_scan(p, 5 * pow(Real(10), -6), 400000);
        CHECK(!detect_rational_closure(scan));
    }
}
