#include <catch2/catch_amalgamated.hpp>

#include "modrep/bootstrap.hpp"

using namespace modrep;

namespace {
struct Fixture {
    GroupPtr g = make_g168();
    GroupPtr p = make_p8();
    Field f2{1};
    SimpleCatalog simples = bootstrap_simples(g, f2);
    const Module& K() { return simples.list[0].rep; }
    const Module& W1() { return simples.list[1].rep; }
    const Module& W2() { return simples.list[2].rep; }
    const Module& W2d() { return simples.list[3].rep; }
};
}  // namespace

TEST_CASE_METHOD(Fixture, "bootstrap simples") {
    CHECK(simples.list.size() == 4);
    CHECK(K().dim() == 1);
    CHECK(W1().dim() == 2);
    CHECK(W2().dim() == 3);
    CHECK(W2d().dim() == 3);
    for (auto& s : simples.list) validate_module(s.rep, Rng(7));
    SECTION("over GF(4) there are five simples") {
        auto s4 = bootstrap_simples(g, Field(2));
        CHECK(s4.list.size() == 5);
    }
    SECTION("duality pairing of the 3-dimensionals") {
        CHECK(hom_dense(dual(W2()), W2d()).dim() > 0);
        CHECK(hom_dense(W2(), W2d()).dim() == 0);
    }
}

TEST_CASE_METHOD(Fixture, "tensor and direct sum") {
    SECTION("trivial module is a tensor identity") {
        Module t = tensor(K(), W2());
        auto iso = is_isomorphic(t, W2(), 1);
        CHECK(iso.verdict == IsoResult::Yes);
    }
    SECTION("dimensions multiply and add") {
        CHECK(tensor(W2(), W2d()).dim() == 9);
        CHECK(direct_sum(W2(), W1()).dim() == 5);
        Module z = Module::zero(g, f2);
        CHECK(direct_sum(W2(), z).dim() == 3);
    }
    SECTION("tensor commutes up to the swap isomorphism") {
        Module a = tensor(W1(), W2()), b = tensor(W2(), W1());
        // explicit swap: (i*d2+j) -> (j*d1+i)
        Matrix swap(f2, 6, 6);
        for (uint32_t i = 0; i < 2; ++i)
            for (uint32_t j = 0; j < 3; ++j) swap.set(i * 3 + j, j * 2 + i, 1);
        CHECK(is_hom(a, b, swap));
        CHECK(is_invertible(swap));
    }
    SECTION("dual is a contravariant involution") {
        Module d = dual(W1());
        CHECK(is_isomorphic(dual(d), W1(), 1).verdict == IsoResult::Yes);
        CHECK(is_isomorphic(dual(K()), K(), 1).verdict == IsoResult::Yes);
    }
    SECTION("dual of tensor = tensor of duals") {
        Module lhs = dual(tensor(W1(), W2()));
        Module rhs = tensor(dual(W1()), dual(W2()));
        CHECK(is_isomorphic(lhs, rhs, 1).verdict == IsoResult::Yes);
    }
}

TEST_CASE_METHOD(Fixture, "restriction") {
    SECTION("restricting the regular module to P is free of rank 21") {
        Module reg = regular_module(g, f2);
        Module rp = restrict_module(reg, "P");
        CHECK(rp.dim() == 168);
        auto strip = strip_free_pgroup(rp, 5);
        CHECK(strip.free_rank == 21);
        CHECK(strip.remainder.dim() == 0);
    }
    SECTION("restriction preserves dimension") { CHECK(restrict_module(W2(), "P").dim() == 3); }
    SECTION("restrict commutes with tensor") {
        Module lhs = restrict_module(tensor(W2(), W2d()), "P");
        Module rhs = tensor(restrict_module(W2(), "P"), restrict_module(W2d(), "P"));
        CHECK(is_isomorphic(lhs, rhs, 1).verdict == IsoResult::Yes);
    }
}

TEST_CASE_METHOD(Fixture, "spin and quotient") {
    Module perm8 = permutation_module(g, f2, PermAction::Natural);
    SECTION("all-ones vector spans the fixed line") {
        Matrix ones(f2, 1, 8);
        for (uint32_t j = 0; j < 8; ++j) ones.set(0, j, 1);
        CHECK(spin(perm8, ones).dim() == 1);
    }
    SECTION("regular module of P is cyclic") {
        Module kp = regular_module(p, f2);
        Matrix e0(f2, 1, 8);
        e0.set(0, 0, 1);
        CHECK(spin(kp, e0).dim() == 8);
    }
    SECTION("random vectors of kP are free generators with fair probability") {
        Module kp = regular_module(p, Field(2));
        Rng rng(11);
        unsigned full = 0;
        for (int t = 0; t < 20; ++t) {
            Matrix v(Field(2), 1, 8);
            v.randomize(rng);
            if (spin(kp, v).dim() == 8) ++full;
        }
        CHECK(full >= 10);
    }
    SECTION("spinning is idempotent (spin output is action-closed)") {
        Rng rng(3);
        Matrix v(f2, 2, 8);
        v.randomize(rng);
        RowBasis s = spin(perm8, v);
        RowBasis s2 = spin(perm8, s.to_matrix());
        CHECK(s2.dim() == s.dim());
        Module sub = submodule(perm8, s);  // throws if not closed
        CHECK(sub.dim() == s.dim());
    }
    SECTION("quotient by zero is the identity") {
        RowBasis empty(f2, 8);
        Module q = quotient(perm8, empty);
        CHECK(is_isomorphic(q, perm8, 1).verdict == IsoResult::Yes);
    }
    SECTION("quotient of the 8-point module by the fixed line has dim 7") {
        Matrix ones(f2, 1, 8);
        for (uint32_t j = 0; j < 8; ++j) ones.set(0, j, 1);
        CHECK(quotient(perm8, spin(perm8, ones)).dim() == 7);
    }
    SECTION("composition factors of the 8-point module are K, K, W2, W2d") {
        // radical-series oracle: chop layers and identify each semisimple layer
        std::vector<Module> layers;
        Module cur = perm8;
        while (cur.dim() > 0) {
            RowBasis rad = radical_rows(cur);
            layers.push_back(quotient(cur, rad));
            cur = submodule(cur, rad);
        }
        unsigned kc = 0, w2c = 0, w2dc = 0, other = 0;
        for (auto& layer : layers) {
            // split semisimple layer by hom counting
            unsigned found = 0;
            for (auto& s : simples.list) {
                unsigned mult = hom_dense(layer, s.rep).dim() / s.endo_dim;
                found += mult * s.rep.dim();
                if (s.label == "K") kc += mult;
                if (s.label == "W2") w2c += mult;
                if (s.label == "W2d") w2dc += mult;
            }
            if (found != layer.dim()) ++other;
        }
        CHECK(kc == 2);
        CHECK(w2c == 1);
        CHECK(w2dc == 1);
        CHECK(other == 0);
    }
}

TEST_CASE_METHOD(Fixture, "permutation module actions") {
    CHECK(permutation_module(g, f2, PermAction::Natural).dim() == 8);
    CHECK(regular_module(p, f2).dim() == 8);
    SECTION("cosets of an order-2 subgroup of P give a 4-dimensional module") {
        Module m = permutation_module(p, f2, PermAction::Cosets, "Q1");
        CHECK(m.dim() == 4);
    }
    SECTION("unknown coset subgroup throws") {
        CHECK_THROWS(permutation_module(p, f2, PermAction::Cosets, "nope"));
    }
}

TEST_CASE_METHOD(Fixture, "validation catches broken actions") {
    // break a relation: t and f commute in G, so swapping f's matrix for
    // something that fails this is caught by relation sampling
    std::vector<Matrix> gens = {W2().gen(0), W2().gen(1), W2().gen(2)};
    Module ok(g, f2, gens);
    validate_module(ok, Rng(1));
    Matrix bad(f2, 3, 3);
    bad.set(0, 1, 1);
    bad.set(1, 0, 1);
    bad.set(2, 2, 1);
    std::vector<Matrix> badgens = {W2().gen(0), W2().gen(1), bad};
    Module broken(g, f2, badgens);
    CHECK_THROWS(validate_module(broken, Rng(1)));
}
