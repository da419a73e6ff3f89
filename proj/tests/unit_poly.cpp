#include <catch2/catch_amalgamated.hpp>

#include "modrep/poly.hpp"

using namespace modrep;

namespace {
Poly random_poly(const Field& f, int deg, Rng& rng) {
    std::vector<uint8_t> c(size_t(deg) + 1);
    for (auto& v : c) v = rng.field_element(f);
    c[size_t(deg)] = rng.nonzero_field_element(f);
    return Poly(f, std::move(c));
}
}  // namespace

TEST_CASE("divmod invariant a = q*b + r") {
    Rng rng(1);
    for (unsigned k : {1u, 2u, 3u}) {
        Field f(k);
        for (int t = 0; t < 20; ++t) {
            Poly a = random_poly(f, 3 + int(rng.below(8)), rng);
            Poly b = random_poly(f, 1 + int(rng.below(4)), rng);
            auto [q, r] = poly_divmod(a, b);
            CHECK(poly_add(poly_mul(q, b), r) == a);
            CHECK(r.degree() < b.degree());
        }
    }
}

TEST_CASE("gcd and xgcd") {
    Field f(1);
    Poly x = Poly::x(f);
    Poly xp1(f, {1, 1});
    Poly quad(f, {1, 1, 1});
    Poly a = poly_mul(xp1, quad);
    Poly b = poly_mul(xp1, x);
    CHECK(poly_gcd(a, b) == xp1);
    auto [g, u, v] = poly_xgcd(a, b);
    CHECK(g == xp1);
    CHECK(poly_add(poly_mul(u, a), poly_mul(v, b)) == g);
}

TEST_CASE("factorization over GF(2) and GF(4)") {
    Rng rng(2);
    SECTION("x^2+x+1 irreducible over GF(2)") {
        Field f(1);
        CHECK(poly_irreducible(Poly(f, {1, 1, 1}), rng));
    }
    SECTION("x^2+x+1 splits over GF(4)") {
        Field f(2);
        auto fac = poly_factor(Poly(f, {1, 1, 1}), rng);
        CHECK(fac.size() == 2);
        for (auto& [p, m] : fac) {
            CHECK(p.degree() == 1);
            CHECK(m == 1);
        }
    }
    SECTION("x^4 + x over GF(2) = x (x+1) (x^2+x+1)") {
        Field f(1);
        auto fac = poly_factor(Poly(f, {0, 1, 0, 0, 1}), rng);
        REQUIRE(fac.size() == 3);
        unsigned deg_sum = 0;
        for (auto& [p, m] : fac) {
            CHECK(m == 1);
            deg_sum += unsigned(p.degree());
        }
        CHECK(deg_sum == 4);
    }
    SECTION("random products refactor correctly, with multiplicities") {
        for (unsigned k : {1u, 2u}) {
            Field f(k);
            for (int t = 0; t < 10; ++t) {
                Poly prod = Poly::one(f);
                Poly p1 = random_poly(f, 2, rng), p2 = random_poly(f, 3, rng);
                prod = poly_mul(prod, poly_mul(p1, p1));
                prod = poly_mul(prod, p2);
                auto fac = poly_factor(prod, rng);
                Poly recon = Poly::one(f);
                for (auto& [p, m] : fac)
                    for (unsigned i = 0; i < m; ++i) recon = poly_mul(recon, p);
                Poly lhs = prod;
                lhs.make_monic();
                CHECK(recon == lhs);
                for (auto& [p, m] : fac) CHECK(poly_irreducible(p, rng));
            }
        }
    }
}

TEST_CASE("minimal polynomial by Krylov spinning") {
    SECTION("identity") {
        Field f(1);
        Poly mp = minimal_polynomial(Matrix::identity(f, 5));
        CHECK(mp == Poly(f, {1, 1}));  // x + 1
    }
    SECTION("nilpotent Jordan block of size 3: x^3") {
        Field f(2);
        Matrix n(f, 3, 3);
        n.set(0, 1, 1);
        n.set(1, 2, 1);
        CHECK(minimal_polynomial(n) == Poly(f, {0, 0, 0, 1}));
    }
    SECTION("diagonal over GF(4) with entries 1 and w") {
        Field f(2);
        Matrix d(f, 2, 2);
        d.set(0, 0, 1);
        d.set(1, 1, 2);
        Poly mp = minimal_polynomial(d);
        // (x+1)(x+w)
        CHECK(mp == poly_mul(Poly(f, {1, 1}), Poly(f, {2, 1})));
    }
    SECTION("companion matrix has its polynomial as minimal polynomial") {
        Field f(2);
        Rng rng(3);
        Poly p = random_poly(f, 4, rng);
        p.make_monic();
        while (p.coeff(0) == 0) p.c[0] = rng.nonzero_field_element(f);
        Matrix c(f, 4, 4);
        for (uint32_t i = 0; i + 1 < 4; ++i) c.set(i, i + 1, 1);
        for (uint32_t j = 0; j < 4; ++j) c.set(3, j, p.coeff(j));  // char 2: -a = a
        CHECK(minimal_polynomial(c) == p);
    }
    SECTION("evaluation of the minimal polynomial vanishes") {
        Rng rng(4);
        Field f(2);
        Matrix m(f, 8, 8);
        m.randomize(rng);
        Poly mp = minimal_polynomial(m);
        CHECK(poly_eval_matrix(mp, m).is_zero());
    }
}
