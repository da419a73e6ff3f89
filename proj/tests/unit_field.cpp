#include <catch2/catch_amalgamated.hpp>

#include "modrep/field.hpp"

using namespace modrep;

TEST_CASE("field axioms hold exhaustively for k <= 4") {
    for (unsigned k = 1; k <= 4; ++k) {
        Field f(k);
        unsigned n = f.size();
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) {
                CHECK(f.mul(uint8_t(a), uint8_t(b)) == f.mul(uint8_t(b), uint8_t(a)));
                for (unsigned c = 0; c < n; ++c) {
                    CHECK(f.mul(f.mul(uint8_t(a), uint8_t(b)), uint8_t(c)) ==
                          f.mul(uint8_t(a), f.mul(uint8_t(b), uint8_t(c))));
                    CHECK(f.mul(uint8_t(a), f.add(uint8_t(b), uint8_t(c))) ==
                          f.add(f.mul(uint8_t(a), uint8_t(b)), f.mul(uint8_t(a), uint8_t(c))));
                }
            }
        for (unsigned a = 1; a < n; ++a) {
            CHECK(f.mul(uint8_t(a), f.inv(uint8_t(a))) == 1);
            CHECK(f.mul(uint8_t(a), 1) == a);
        }
        for (unsigned a = 0; a < n; ++a) CHECK(f.mul(uint8_t(a), 0) == 0);
    }
}

TEST_CASE("defining polynomial is fixed per degree") {
    Field a(3), b(3);
    CHECK(a.modulus_poly() == b.modulus_poly());
    CHECK(Field(1).modulus_poly() == 0b11u);
    CHECK(Field(2).modulus_poly() == 0b111u);
    CHECK(Field(3).modulus_poly() == 0b1011u);
    CHECK(Field(8).modulus_poly() == 0b100011101u);
}

TEST_CASE("frobenius is an additive and multiplicative map") {
    for (unsigned k : {2u, 3u, 4u}) {
        Field f(k);
        for (unsigned a = 0; a < f.size(); ++a)
            for (unsigned b = 0; b < f.size(); ++b) {
                CHECK(f.frobenius(f.add(uint8_t(a), uint8_t(b))) ==
                      f.add(f.frobenius(uint8_t(a)), f.frobenius(uint8_t(b))));
                CHECK(f.frobenius(f.mul(uint8_t(a), uint8_t(b))) ==
                      f.mul(f.frobenius(uint8_t(a)), f.frobenius(uint8_t(b))));
            }
    }
}

TEST_CASE("GF(4) arithmetic matches the w^2 = w + 1 presentation") {
    Field f(2);
    // encoding: 0, 1, 2 = w, 3 = w+1
    CHECK(f.mul(2, 2) == 3);
    CHECK(f.mul(2, 3) == 1);
    CHECK(f.inv(2) == 3);
    CHECK(f.pow(2, 3) == 1);
}

TEST_CASE("degree bounds are enforced") {
    CHECK_THROWS(Field(0));
    CHECK_THROWS(Field(9));
}
