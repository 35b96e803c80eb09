#include <random>

#include "doctest.h"
#include "twf/frey.hpp"
#include "twf/kraus.hpp"

using namespace twf;

namespace {

const Triple kTriples[] = {{25, 16, 279841},
                           {390625, 16, 37},
                           {78125, 16, 2488651484819LL},
                           {7, 16, 506623120463LL},
                           {11, 16, 7225}};

// Random specs with n = 1: a + b + c = 0 after normalization.
std::vector<FreySpec> random_specs(std::mt19937_64& rng, int count) {
    std::vector<FreySpec> out;
    while (static_cast<int>(out.size()) < count) {
        int64_t a = static_cast<int64_t>(rng() % 2000) * 2 + 1;
        int64_t b = 16 * (static_cast<int64_t>(rng() % 500) + 1);
        int64_t c = -(a + b);
        try {
            out.push_back(normalize(Triple(a, b, c), 1, {1, 1, 1}));
        } catch (const PreconditionError&) {
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("frey") {

TEST_CASE("triples validate coefficients") {
    CHECK_THROWS_AS(Triple(0, 16, 5), PreconditionError);
    CHECK_THROWS_AS(Triple(25, 15, 7), PreconditionError);
    Triple t(11, 16, 7225);
    CHECK(t.odd_primes() == std::vector<uint64_t>{5, 11, 17});
    CHECK(t.divides_abc(2));
    CHECK(t.divides_abc(17));
    CHECK_FALSE(t.divides_abc(3));
}

TEST_CASE("levels of the five triples") {
    std::vector<uint64_t> levels;
    for (const auto& t : kTriples) levels.push_back(level_N0(t));
    CHECK(levels == std::vector<uint64_t>{115, 185, 295, 329, 935});
}

TEST_CASE("normalization of 1 + 16 - 17 = 0") {
    FreySpec s = normalize(Triple(1, 16, -17), 1, {1, 1, 1});
    CHECK(s.triple == Triple(-1, -16, 17));
    FreyModel m = frey_minimal_model(s);
    CHECK(m.curve.a2 == -4);
    CHECK(m.curve.a4 == -1);
    CHECK(m.delta_min == 289);
    CHECK(m.conductor_radical == 17);
    CHECK_THROWS_AS(validate_frey_spec({Triple(1, 16, -17), 1, 1, 1, 1}), PreconditionError);
}

TEST_CASE("minimal discriminant equals (ABC)^2 / 2^8") {
    std::mt19937_64 rng(41);
    for (const auto& s : random_specs(rng, 200)) {
        FreyModel m = frey_minimal_model(s);
        BigInt ABC = big_from_i64(s.triple.a()) * s.x * big_from_i64(s.triple.b()) * s.y *
                     big_from_i64(s.triple.c()) * s.z;
        BigInt expected = ABC * ABC / 256;
        CHECK(m.delta_min == expected);
        CHECK(m.curve.discriminant() == expected);
    }
}

TEST_CASE("fiber curve trace equals the Frey curve trace and lies in A_p") {
    std::mt19937_64 rng(43);
    for (const auto& s : random_specs(rng, 60)) {
        FreyModel m = frey_minimal_model(s);
        for (uint64_t p : primes_up_to(200)) {
            if (p == 2 || s.triple.divides_abc(p)) continue;
            int64_t ap = reduce_and_ap(m.curve, p);
            CurveFp fiber = frey_fiber_curve(s.triple, 1, p, reduce(s.x, p), reduce(s.y, p));
            CHECK(trace_frobenius(fiber) == ap);
            CHECK(set_Ap(p).contains(ap));
        }
    }
}

TEST_CASE("fiber coefficients match the fiber curve") {
    Triple t(11, 16, 7225);
    for (uint64_t p : {7ULL, 31ULL, 97ULL})
        for (uint64_t alpha = 1; alpha < 6; ++alpha) {
            uint64_t u = mod_pow(alpha, 9, p);
            auto [a2, a4] = fiber_coefficients(p, reduce(t.a(), p), reduce(t.b(), p), u);
            try {
                CurveFp e = frey_fiber_curve(t, 9, p, alpha, 1);
                CHECK(e.a2() == a2);
                CHECK(e.a4() == a4);
            } catch (const SingularCurveError&) {
            }
        }
}

TEST_CASE("fiber curve rejects bad primes") {
    CHECK_THROWS_AS(frey_fiber_curve(kTriples[0], 9, 5, 1, 1), PreconditionError);
    CHECK_THROWS_AS(frey_fiber_curve(kTriples[0], 9, 2, 1, 1), PreconditionError);
}

}
