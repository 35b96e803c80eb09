#include <random>
#include <vector>

#include "doctest.h"
#include "twf/localsolve.hpp"

using namespace twf;

namespace {

const Triple kTriples[] = {{25, 16, 279841},
                           {390625, 16, 37},
                           {78125, 16, 2488651484819LL},
                           {7, 16, 506623120463LL},
                           {11, 16, 7225}};

// Whether a x^n + b y^n + c z^n = 0 has a primitive solution modulo p^k,
// by exhausting x and y and looking z^n up in a table.
bool primitive_solution_exists(const Triple& t, int n, uint64_t p, int k) {
    uint64_t m = 1;
    for (int i = 0; i < k; ++i) m *= p;
    const uint64_t a = reduce(t.a(), m), b = reduce(t.b(), m), c = reduce(t.c(), m);
    std::vector<char> any_z(m, 0), unit_z(m, 0);
    std::vector<uint64_t> pw(m);
    for (uint64_t x = 0; x < m; ++x) pw[x] = mod_pow(x, n, m);
    for (uint64_t z = 0; z < m; ++z) {
        uint64_t v = mul_mod(c, pw[z], m);
        any_z[v] = 1;
        if (z % p != 0) unit_z[v] = 1;
    }
    for (uint64_t x = 0; x < m; ++x)
        for (uint64_t y = 0; y < m; ++y) {
            uint64_t need = sub_mod(0, add_mod(mul_mod(a, pw[x], m), mul_mod(b, pw[y], m), m), m);
            bool unit_xy = x % p != 0 || y % p != 0;
            if (unit_xy ? any_z[need] : unit_z[need]) return true;
        }
    return false;
}

uint64_t power(uint64_t p, int k) {
    uint64_t m = 1;
    while (k-- > 0) m *= p;
    return m;
}

}  // namespace

TEST_SUITE("localsolve") {

TEST_CASE("empty local verdicts of the first table") {
    const std::pair<int, uint64_t> expected[] = {{5, 11}, {19, 19}, {5, 5}, {0, 0}, {5, 5}};
    for (int i = 0; i < 5; ++i) {
        auto [l, p] = expected[i];
        if (l == 0) continue;
        LocalVerdict v = local_solvable(kTriples[i], l, p);
        CAPTURE(i);
        CHECK(v.outcome == LocalOutcome::Empty);
    }
    CHECK(local_solvable(kTriples[0], 5, 11).k == 1);
    CHECK_FALSE(primitive_solution_exists(kTriples[0], 5, 11, 1));
}

TEST_CASE("verdicts agree with exhaustive search modulo p^k") {
    std::mt19937_64 rng(23);
    int empties = 0, solvables = 0;
    for (int i = 0; i < 400; ++i) {
        int64_t a = static_cast<int64_t>(rng() % 60) * 2 + 1;
        int64_t b = 16 * static_cast<int64_t>(rng() % 8 + 1);
        int64_t c = static_cast<int64_t>(rng() % 200) + 1;
        Triple t = [&] {
            try {
                return Triple(a, b, c);
            } catch (const PreconditionError&) {
                return Triple(1, 16, 1);
            }
        }();
        const int n = std::vector<int>{3, 5, 7, 9}[rng() % 4];
        const uint64_t p = std::vector<uint64_t>{2, 3, 5, 7, 11, 13}[rng() % 6];
        LocalVerdict v = local_solvable(t, n, p, 6);
        CAPTURE(t.str());
        CAPTURE(n);
        CAPTURE(p);
        if (v.outcome == LocalOutcome::Empty) {
            ++empties;
            if (power(p, v.k) <= 3000) CHECK_FALSE(primitive_solution_exists(t, n, p, v.k));
            if (v.k > 1 && power(p, v.k - 1) <= 3000) CHECK(primitive_solution_exists(t, n, p, v.k - 1));
        } else if (v.outcome == LocalOutcome::Solvable) {
            ++solvables;
            CHECK(verify_local_witness(t, v));
            CHECK(v.modulus == power(p, v.k));
            // Hensel: the witness lifts one step further
            if (power(p, v.k + 1) <= 3000) CHECK(primitive_solution_exists(t, n, p, v.k + 1));
        }
    }
    CHECK(empties >= 3);
    CHECK(solvables > 5);
}

TEST_CASE("tampered witnesses are rejected") {
    LocalVerdict v = local_solvable(kTriples[4], 9, 7);
    REQUIRE(v.outcome == LocalOutcome::Solvable);
    CHECK(verify_local_witness(kTriples[4], v));
    LocalVerdict bad = v;
    bad.point = {0, 0, 0};
    CHECK_FALSE(verify_local_witness(kTriples[4], bad));
    bad = v;
    bad.derivative_valuation += 1;
    CHECK_FALSE(verify_local_witness(kTriples[4], bad));
    bad = v;
    bad.outcome = LocalOutcome::Empty;
    CHECK_FALSE(verify_local_witness(kTriples[4], bad));
}

TEST_CASE("the degree-9 curves have points at every prime up to 100") {
    for (const auto& t : kTriples) {
        EverywhereReport r = local_points_everywhere_n9(t, 100);
        CAPTURE(t.str());
        CHECK(r.all_solvable);
        CHECK(r.none_empty);
        for (const auto& v : r.verdicts) CHECK(verify_local_witness(t, v));
        CHECK(r.weil_threshold == 4 * 28 * 28);
        CHECK_FALSE(r.everywhere);  // 100 is below the Weil threshold
    }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(local_solvable(kTriples[0], 5, 12), PreconditionError);
    CHECK_THROWS_AS(local_solvable(kTriples[0], 0, 5), PreconditionError);
}

}
