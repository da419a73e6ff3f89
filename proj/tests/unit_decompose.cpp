#include <catch2/catch_amalgamated.hpp>

#include "modrep/bootstrap.hpp"

using namespace modrep;

namespace {
struct Fixture {
    GroupPtr g = make_g168();
    GroupPtr p = make_p8();
    Field f2{1};
    PimCatalog catG = build_g168_catalog(g, f2);
    PimCatalog catP = build_p8_catalog(p, f2);
    const Module& S(size_t i) { return catG.simples.list[i].rep; }
};
}  // namespace

TEST_CASE_METHOD(Fixture, "fitting splits") {
    Module m = direct_sum(S(2), S(3));
    SECTION("nilpotent endomorphism gives no split") {
        Matrix n(f2, 6, 6);  // strictly upper triangular square-zero inside blocks
        CHECK_FALSE(fitting_split(m, n).has_value());
    }
    SECTION("invertible endomorphism gives no split") {
        CHECK_FALSE(fitting_split(m, Matrix::identity(f2, 6)).has_value());
    }
    SECTION("idempotent projection recovers the summands") {
        Matrix e(f2, 6, 6);
        for (uint32_t i = 0; i < 3; ++i) e.set(i, i, 1);
        auto s = fitting_split(m, e);
        REQUIRE(s);
        CHECK(s->im_part.dim() == 3);
        CHECK(s->ker_part.dim() == 3);
    }
}

TEST_CASE_METHOD(Fixture, "indecomposability certification") {
    SECTION("simples are certified") {
        for (auto& s : catG.simples.list) {
            auto r = certify_indecomposable(s.rep, 3, &catG);
            CHECK(r.kind == IndecomposabilityResult::Certified);
        }
    }
    SECTION("K + K splits") {
        Module m = direct_sum(S(0), S(0));
        auto r = certify_indecomposable(m, 3, &catG);
        REQUIRE(r.kind == IndecomposabilityResult::Split);
        auto fs = fitting_split(m, *r.split_endo);
        REQUIRE(fs);
        CHECK(fs->im_part.dim() == 1);
    }
    SECTION("PIMs are certified indecomposable") {
        for (auto& pe : catG.pims) {
            auto r = certify_indecomposable(pe.rep, 5, &catG);
            CHECK(r.kind == IndecomposabilityResult::Certified);
        }
    }
    SECTION("W2 + W2d splits despite no multiplicity") {
        Module m = direct_sum(S(2), S(3));
        auto r = certify_indecomposable(m, 3, &catG);
        CHECK(r.kind == IndecomposabilityResult::Split);
    }
}

TEST_CASE_METHOD(Fixture, "isomorphism testing") {
    CHECK(is_isomorphic(S(2), S(2), 1).verdict == IsoResult::Yes);
    CHECK(is_isomorphic(S(2), S(3), 1).verdict == IsoResult::No);
    CHECK(is_isomorphic(S(0), S(1), 1).verdict == IsoResult::No);
    Module a = direct_sum(S(2), S(0)), b = direct_sum(S(0), S(2));
    CHECK(is_isomorphic(a, b, 1).verdict == IsoResult::Yes);
}

TEST_CASE_METHOD(Fixture, "free stripping over the 2-group") {
    Module kp = regular_module(p, f2);
    SECTION("the regular module is free of rank 1") {
        auto s = strip_free_pgroup(kp, 7);
        CHECK(s.free_rank == 1);
        CHECK(s.remainder.dim() == 0);
    }
    SECTION("the trivial module has no free part") {
        auto s = strip_free_pgroup(Module::trivial(p, f2), 7);
        CHECK(s.free_rank == 0);
        CHECK(s.remainder.dim() == 1);
    }
    SECTION("free plus trivial strips to trivial") {
        Module m = direct_sum(kp, Module::trivial(p, f2));
        auto s = strip_free_pgroup(m, 7);
        CHECK(s.free_rank == 1);
        CHECK(s.remainder.dim() == 1);
    }
}

TEST_CASE_METHOD(Fixture, "general projective stripping") {
    SECTION("regular module strips to the catalog with regular multiplicities") {
        Module reg = regular_module(g, f2);
        StripResult s = strip_projective_general(reg, catG, 11);
        CHECK(s.remainder.dim() == 0);
        CHECK(s.pim_mults["projK"] == 1);
        CHECK(s.pim_mults["projW1"] == 1);
        CHECK(s.pim_mults["projW2"] == 3);
        CHECK(s.pim_mults["projW2d"] == 3);
    }
    SECTION("construct-then-strip round trip") {
        Module m = direct_sum(catG.pims[0].rep, S(2));
        StripResult s = strip_projective_general(m, catG, 13);
        CHECK(s.pim_mults["projK"] == 1);
        CHECK(s.remainder.dim() == 3);
        CHECK(is_isomorphic(s.remainder, S(2), 1, &catG).verdict == IsoResult::Yes);
    }
}

TEST_CASE_METHOD(Fixture, "decompose") {
    SECTION("decompose(K) = {K}") {
        Decomposition d = decompose(S(0), catG, {1});
        REQUIRE(d.parts.size() == 1);
        CHECK(d.parts[0].multiplicity == 1);
        CHECK(d.parts[0].rep.dim() == 1);
        CHECK(d.pim_mults.empty());
    }
    SECTION("direct sum round trip: W2 + W2 has multiplicity 2") {
        Decomposition d = decompose(direct_sum(S(2), S(2)), catG, {1});
        REQUIRE(d.parts.size() == 1);
        CHECK(d.parts[0].multiplicity == 2);
        CHECK(d.parts[0].cert == CertLevel::Certified);
    }
    SECTION("mixed module") {
        Module m = direct_sum(direct_sum(catG.pims[0].rep, S(2)), S(1));
        Decomposition d = decompose(m, catG, {1});
        CHECK(d.pim_mults["projK"] == 1);
        REQUIRE(d.parts.size() == 2);
        CHECK(d.parts[0].rep.dim() == 2);
        CHECK(d.parts[1].rep.dim() == 3);
    }
    SECTION("W2 tensor W2d is semisimple: P acts trivially, so it is a module for the odd quotient") {
        Module m = tensor(S(2), S(3));
        Decomposition d = decompose(m, catG, {1});
        REQUIRE(d.parts.size() == 4);
        std::multiset<uint32_t> dims;
        for (auto& part : d.parts) dims.insert(part.rep.dim());
        CHECK(dims == std::multiset<uint32_t>{1, 2, 3, 3});
        CHECK(d.pim_mults.empty());
    }
    SECTION("seed stability (Krull-Schmidt)") {
        Module m = tensor(S(2), S(2));
        Decomposition d1 = decompose(m, catG, {101});
        Decomposition d2 = decompose(m, catG, {202});
        REQUIRE(d1.parts.size() == d2.parts.size());
        for (size_t i = 0; i < d1.parts.size(); ++i) {
            CHECK(d1.parts[i].multiplicity == d2.parts[i].multiplicity);
            CHECK(is_isomorphic(d1.parts[i].rep, d2.parts[i].rep, 5, &catG).verdict == IsoResult::Yes);
        }
        CHECK(d1.pim_mults == d2.pim_mults);
    }
}

TEST_CASE_METHOD(Fixture, "chop finds the composition factors of the 8-point module") {
    Module perm8 = permutation_module(g, f2, PermAction::Natural);
    std::vector<Matrix> mats;
    for (size_t i = 0; i < perm8.gen_count(); ++i) mats.push_back(perm8.gen(i));
    auto factors = chop_composition_factors(mats, Rng(3));
    std::multiset<uint32_t> dims;
    for (auto& f : factors) dims.insert(f.dim);
    CHECK(dims == std::multiset<uint32_t>{1, 1, 3, 3});
}
