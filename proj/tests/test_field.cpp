#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagrangia/field.hpp"
#include "lagrangia/rng.hpp"

using namespace lagrangia;

TEST_CASE("prime field basics") {
    Field f2 = FieldSpec::make(2, 1);
    CHECK(f2->add(1, 1) == 0);
    CHECK(f2->mul(1, 1) == 1);
    CHECK(f2->inv(1) == 1);
    CHECK_THROWS_AS(f2->inv(0), Error);

    Field f7 = FieldSpec::make(7, 1);
    CHECK(f7->add(5, 4) == 2);
    CHECK(f7->mul(3, 5) == 1);
    CHECK(f7->inv(3) == 5);
    CHECK(f7->neg(2) == 5);
}

TEST_CASE("GF(4) with canonical modulus x^2+x+1") {
    Field f4 = FieldSpec::make(2, 2);
    uint64_t alpha = f4->encode({0, 1});
    // a*a = a+1 after reduction
    CHECK(f4->mul(alpha, alpha) == f4->encode({1, 1}));
    CHECK(f4->mul(alpha, f4->inv(alpha)) == 1);
    CHECK(f4->to_string(alpha) == "0+1*a");
    CHECK(f4->parse("1+1*a") == f4->encode({1, 1}));
}

TEST_CASE("field element string round trip") {
    for (auto [p, k] : {std::pair<uint32_t, uint32_t>{2, 4}, {3, 1}, {2, 5}}) {
        Field f = FieldSpec::make(p, k);
        for (uint64_t v = 0; v < f->q(); ++v) CHECK(f->parse(f->to_string(v)) == v);
    }
}

TEST_CASE("modulus validation") {
    // x^2 + 1 = (x+1)^2 over GF(2)
    CHECK_THROWS_AS(FieldSpec::make(2, 2, {1, 0, 1}), Error);
    // non-monic
    CHECK_THROWS_AS(FieldSpec::make(3, 2, {1, 1, 2}), Error);
    // GF(9) has no canonical modulus; an explicit irreducible one works
    CHECK_THROWS_AS(FieldSpec::make(3, 2), Error);
    Field f9 = FieldSpec::make(3, 2, {1, 0, 1});
    CHECK(f9->q() == 9);
}

TEST_CASE("x^2+x+1 over GF(3) is reducible, x^2+1 is irreducible") {
    CHECK_THROWS_AS(FieldSpec::make(3, 2, {1, 1, 1}), Error); // root at x=1
    Field f9 = FieldSpec::make(3, 2, {1, 0, 1});
    uint64_t i = f9->encode({0, 1});
    CHECK(f9->mul(i, i) == f9->encode({2, 0})); // i^2 = -1
}

TEST_CASE("inverse and frobenius over every element, k <= 4") {
    for (auto [p, k] : {std::pair<uint32_t, uint32_t>{2, 4}, {2, 3}, {3, 1}, {5, 1}}) {
        Field f = FieldSpec::make(p, k);
        for (uint64_t a = 1; a < f->q(); ++a) CHECK(f->mul(a, f->inv(a)) == 1);
        // Frobenius is additive and multiplicative
        for (uint64_t a = 0; a < f->q(); ++a)
            for (uint64_t b = 0; b < f->q(); ++b) {
                CHECK(f->frobenius(f->add(a, b)) == f->add(f->frobenius(a), f->frobenius(b)));
                CHECK(f->frobenius(f->mul(a, b)) == f->mul(f->frobenius(a), f->frobenius(b)));
            }
    }
}

TEST_CASE("table path agrees with generic path") {
    Field f16 = FieldSpec::make(2, 4);
    Field f25 = FieldSpec::make(5, 2, {2, 1, 1}); // x^2+x+2, irreducible mod 5
    for (const Field& f : {f16, f25})
        for (uint64_t a = 0; a < f->q(); ++a)
            for (uint64_t b = 0; b < f->q(); ++b) CHECK(f->mul(a, b) == f->mul_generic(a, b));
}

TEST_CASE("embedding along the canonical tower") {
    Field f2 = FieldSpec::make(2, 1);
    Field f4 = FieldSpec::make(2, 2);
    Field f16 = FieldSpec::make(2, 4);
    CHECK(embed(*f2, 1, *f16) == 1); // prime-field identity
    // GF(4) -> GF(16): image of alpha must satisfy x^2+x+1 = 0
    uint64_t im = embed(*f4, f4->encode({0, 1}), *f16);
    CHECK(f16->add(f16->add(f16->mul(im, im), im), 1) == 0);
    // embedding is a ring homomorphism
    for (uint64_t a = 0; a < 4; ++a)
        for (uint64_t b = 0; b < 4; ++b) {
            CHECK(embed(*f4, f4->add(a, b), *f16) ==
                  f16->add(embed(*f4, a, *f16), embed(*f4, b, *f16)));
            CHECK(embed(*f4, f4->mul(a, b), *f16) ==
                  f16->mul(embed(*f4, a, *f16), embed(*f4, b, *f16)));
        }
    // degree must divide
    Field f8 = FieldSpec::make(2, 3);
    CHECK_THROWS_AS(embed(*f4, 1, *f8), Error);
}

TEST_CASE("splitmix64 reference sequence") {
    SplitMix64 g(1234567);
    uint64_t a = g.next(), b = g.next();
    CHECK(a != b);
    SplitMix64 h(1234567);
    CHECK(h.next() == a);
    CHECK(h.next() == b);
}
