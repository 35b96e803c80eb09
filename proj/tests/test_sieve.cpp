#include "doctest.h"
#include "twf/config.hpp"
#include "twf/reference.hpp"
#include "twf/sieve.hpp"

using namespace twf;

namespace {

const Triple kTriples[] = {{25, 16, 279841},
                           {390625, 16, 37},
                           {78125, 16, 2488651484819LL},
                           {7, 16, 506623120463LL},
                           {11, 16, 7225}};

bool on_cubic(const Triple& t, const std::array<int64_t, 3>& P) {
    BigInt s = 0;
    const int64_t coef[3] = {t.a(), t.b(), t.c()};
    for (int i = 0; i < 3; ++i) {
        BigInt x = big_from_i64(P[i]);
        s += big_from_i64(coef[i]) * x * x * x;
    }
    return s == 0;
}

NewformClass rational_class(uint64_t level, const char* label) {
    NewformClass f;
    f.level = level;
    f.degree = 1;
    f.label = label;
    f.min_poly = IntPoly{0, 1};
    return f;
}

NewformClass quintic_class(uint64_t level, const char* label, long shift) {
    NewformClass f;
    f.level = level;
    f.degree = 5;
    f.label = label;
    f.min_poly = IntPoly{shift, -1, 0, 0, 0, 1};
    return f;
}

}  // namespace

TEST_SUITE("sieve") {

TEST_CASE("rational points on the cubics") {
    const std::optional<std::array<int64_t, 3>> expected[] = {
        std::array<int64_t, 3>{46, -23, -2}, std::array<int64_t, 3>{-1, 100, -75}, std::nullopt, std::nullopt,
        std::array<int64_t, 3>{226, 9, -26}};
    for (int i = 0; i < 5; ++i) {
        auto P = c3_point_search(kTriples[i], 200);
        CAPTURE(i);
        CHECK(P.has_value() == expected[i].has_value());
        if (P) {
            CHECK(on_cubic(kTriples[i], *P));
            CHECK(std::gcd(std::gcd(std::abs((*P)[0]), std::abs((*P)[1])), std::abs((*P)[2])) == 1);
        }
        if (expected[i]) CHECK(on_cubic(kTriples[i], *expected[i]));
    }
}

TEST_CASE("strong irreducibility witnesses") {
    const uint64_t expected[] = {73, 73, 37, 109, 37};
    for (int i = 0; i < 5; ++i) {
        const Triple& t = kTriples[i];
        auto w = strong_irreducibility_witness(t, 200);
        REQUIRE(w.has_value());
        CHECK(*w == expected[i]);
        // the certificate, restated from its definition
        CHECK(*w % 9 == 1);
        CHECK_FALSE(second_case(t, 9, *w));
        for (int64_t a : set_Tnp(t, 9, *w).entries) CHECK(a % 3 == 0);
        for (uint64_t q = 19; q < *w; q += 18)
            if (is_prime(q) && !t.divides_abc(q)) CHECK_FALSE(irreducibility_certificate(t, q));
    }
    CHECK_FALSE(strong_irreducibility_witness(Triple(1, 16, -1), 200).has_value());
}

TEST_CASE("class descriptions mark ambiguous degrees") {
    std::vector<NewformClass> level{rational_class(329, "329.1"), quintic_class(329, "329.2", 1),
                                    quintic_class(329, "329.3", 3)};
    CHECK(class_description(level, level[0]) == "d=1");
    CHECK(class_description(level, level[1]) == "d=5*");
    level.pop_back();
    CHECK(class_description(level, level[1]) == "d=5");
}

TEST_CASE("reports for unusual triples record their gaps") {
    SieveConfig cfg;
    cfg.local_prime_limit = 30;
    cfg.n9_local_bound = 30;
    cfg.c3_height = 20;
    SieveReport r = full_report(Triple(1, 16, -1), cfg, {});
    CHECK_FALSE(r.complete());
    bool mixed = false, irr = false;
    for (const auto& g : r.gaps) {
        mixed = mixed || g.find("mixed sign") != std::string::npos;
        irr = irr || g.find("irreducibility") != std::string::npos;
    }
    CHECK(mixed);
    CHECK(irr);
    auto j = report_json(r);
    CHECK(j["schema"] == "1");
    CHECK(j["verdict"] != "complete");
}

TEST_CASE("witness serialization round-trips") {
    Witness w{"mod9", 3, 13, "295.2", 1, 0, 0};
    Witness back = witness_from_json(witness_json(w));
    CHECK(back.kind == w.kind);
    CHECK(back.l == w.l);
    CHECK(back.p == w.p);
    CHECK(back.label == w.label);
    CHECK(back.lambda == w.lambda);
}

TEST_CASE("data-free witnesses replay") {
    CHECK(replay_witness(kTriples[0], {"local", 5, 11, "", -1, 0, 0}, {}));
    CHECK_FALSE(replay_witness(kTriples[0], {"local", 5, 13, "", -1, 0, 0}, {}));
    CHECK(replay_witness(kTriples[3], {"irreducibility", 3, 109, "", -1, 0, 0}, {}));
    CHECK_FALSE(replay_witness(kTriples[3], {"irreducibility", 3, 73, "", -1, 0, 0}, {}));
}

TEST_CASE("reference rows cover the five triples") {
    for (const auto& t : kTriples) {
        const auto* row = reference::find_row(t);
        REQUIRE(row != nullptr);
        CHECK(row->level == level_N0(t));
    }
    CHECK(reference::find_row(Triple(1, 16, -1)) == nullptr);
}

}

TEST_SUITE("config") {

TEST_CASE("triples in factored notation") {
    CHECK(parse_triple("25,16,279841") == kTriples[0]);
    CHECK(parse_triple("5^2,2^4,23^4") == kTriples[0]);
    CHECK(parse_triple("11, 2^4, 5^2*17^2") == kTriples[4]);
    CHECK(parse_triple("7,16,47^7") == kTriples[3]);
    CHECK(parse_triple("1,16,-1") == Triple(1, 16, -1));
    CHECK(parse_factored("-3^2*5") == -45);
}

TEST_CASE("malformed triples are configuration errors") {
    for (const char* bad : {"", "1,2", "1,2,3,4", "a,16,5", "2^64,16,5", "5^,16,3", "0,16,5", "3,16,9", "5^2**2,16,3"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_triple(bad), ConfigError);
    }
}

TEST_CASE("defaults follow the reference rows") {
    SieveConfig c = default_sieve_config(kTriples[3]);
    CHECK(c.p_max == 23);
    CHECK(c.p0 == 13);
    CHECK(default_sieve_config(kTriples[0]).p0 == 0);
    CHECK(default_sieve_config(Triple(1, 16, -1)).p_max == 3);
}

TEST_CASE("validation") {
    RunConfig rc;
    rc.triple = kTriples[0];
    CHECK_NOTHROW(validate_config(rc));
    rc.triple = Triple(25, 8, 279841);
    CHECK_THROWS_AS(validate_config(rc), ConfigError);
    rc.triple = kTriples[0];
    rc.sieve.kraus_limit = 0;
    CHECK_THROWS_AS(validate_config(rc), ConfigError);
}

TEST_CASE("data directory resolution") {
    CHECK(resolve_data_dir("/x") == "/x");
    unsetenv("TWF_DATA_DIR");
    CHECK(resolve_data_dir("") == "data");
    setenv("TWF_DATA_DIR", "/env", 1);
    CHECK(resolve_data_dir("") == "/env");
    unsetenv("TWF_DATA_DIR");
}

}
