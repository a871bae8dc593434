#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nbldpc/gf.hpp"
#include "oracles.hpp"

using namespace nbldpc;

TEST_CASE("build_field basics") {
    const auto f = build_field(2);
    CHECK(f.q == 4);
    CHECK(f.poly == 0b111);

    const auto f5 = build_field(5);
    CHECK(f5.q == 32);

    CHECK_THROWS_AS(build_field(1), std::invalid_argument);
    CHECK_THROWS_AS(build_field(9), std::invalid_argument);
    // x^2 + 1 is not primitive over GF(2)
    CHECK_THROWS_AS(build_field(2, 0b101), std::invalid_argument);
}

TEST_CASE("table consistency") {
    for (unsigned p = 2; p <= 8; ++p) {
        const auto f = build_field(p);
        for (unsigned a = 1; a < f.q; ++a) CHECK(f.antilog_table[f.log_table[a]] == a);
    }
}

TEST_CASE("add is xor, self-inverse, identity") {
    CHECK(FieldSpec::add(5, 3) == 6);
    for (uint16_t a = 0; a < 8; ++a) {
        CHECK(FieldSpec::add(a, a) == 0);
        CHECK(FieldSpec::add(a, 0) == a);
    }
}

TEST_CASE("mul/div worked examples in GF(4)") {
    const auto f = build_field(2);
    for (uint16_t a = 0; a < 4; ++a) CHECK(f.mul(a, 1) == a);
    CHECK(f.mul(2, 2) == 3); // x * x = x + 1
    CHECK(f.mul(2, 3) == 1); // x(x+1) = 1
    CHECK(f.div(3, 2) == 2);
    CHECK(f.div(1, 2) == 3);
    for (uint16_t a = 1; a < 4; ++a) CHECK(f.div(a, a) == 1);
    CHECK_THROWS_AS(f.div(1, 0), std::invalid_argument);
}

TEST_CASE("mul matches the polynomial oracle on every pair, all supported q") {
    for (unsigned p = 2; p <= 8; ++p) {
        const auto f = build_field(p);
        for (unsigned a = 0; a < f.q; ++a)
            for (unsigned b = 0; b < f.q; ++b)
                CHECK(f.mul(static_cast<uint16_t>(a), static_cast<uint16_t>(b)) ==
                      oracle::gf_mul_poly(a, b, f.poly, p));
    }
}

TEST_CASE("field axioms, exhaustive for small q") {
    for (unsigned p : {2u, 3u, 4u}) {
        const auto f = build_field(p);
        for (uint16_t a = 0; a < f.q; ++a) {
            for (uint16_t b = 0; b < f.q; ++b) {
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (uint16_t c = 0; c < f.q; ++c) {
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, FieldSpec::add(b, c)) ==
                          FieldSpec::add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("div inverts mul, exhaustive up to q = 64") {
    for (unsigned p : {2u, 3u, 4u, 5u, 6u}) {
        const auto f = build_field(p);
        for (uint16_t a = 0; a < f.q; ++a)
            for (uint16_t b = 1; b < f.q; ++b) CHECK(f.div(f.mul(a, b), b) == a);
    }
}
