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
};
}  // namespace

TEST_CASE_METHOD(Fixture, "PIM catalog for the order-168 group over GF(2)") {
    REQUIRE(catG.pims.size() == 4);
    std::multiset<uint32_t> dims;
    for (auto& pe : catG.pims) dims.insert(pe.dim);
    CHECK(dims == std::multiset<uint32_t>{8, 16, 24, 24});
    SECTION("regular multiplicities 1,1,3,3 sum to 168") {
        std::map<std::string, uint32_t> mult;
        for (size_t i = 0; i < catG.pims.size(); ++i) mult[catG.pims[i].label] = catG.regular_mults[i];
        CHECK(mult["projK"] == 1);
        CHECK(mult["projW1"] == 1);
        CHECK(mult["projW2"] == 3);
        CHECK(mult["projW2d"] == 3);
        CHECK(catG.total_regular_dim() == 168);
    }
    SECTION("heads match the labels") {
        for (size_t i = 0; i < catG.pims.size(); ++i) {
            HeadData hd = head_data(catG.pims[i].rep, catG.simples);
            for (size_t t = 0; t < catG.simples.size(); ++t)
                CHECK(hd.mults[t] == (catG.simples.list[t].label == catG.pims[i].simple_label ? 1u : 0u));
        }
    }
    SECTION("the 8-point permutation module is the projective cover of K") {
        Module perm8 = permutation_module(g, f2, PermAction::Natural);
        CHECK(is_isomorphic(perm8, catG.pims[size_t(catG.pim_index("projK"))].rep, 1, &catG).verdict ==
              IsoResult::Yes);
    }
}

TEST_CASE_METHOD(Fixture, "the 2-group has one PIM: the regular module") {
    REQUIRE(catP.pims.size() == 1);
    CHECK(catP.pims[0].dim == 8);
    CHECK(catP.regular_mults[0] == 1);
    // also over GF(4)
    PimCatalog catP4 = build_p8_catalog(p, Field(2));
    CHECK(catP4.pims.size() == 1);
    CHECK(catP4.pims[0].dim == 8);
}

TEST_CASE_METHOD(Fixture, "covers and omega over P") {
    Module K = Module::trivial(p, f2);
    SECTION("cover of the trivial module is the regular module") {
        CoverData cd = cover_data(K, catP);
        CHECK(cd.cover.dim() == 8);
        CHECK(rank(cd.pi) == 1);
    }
    SECTION("omega(K) is the 7-dimensional augmentation ideal") {
        Module om = omega_of(K, catP);
        CHECK(om.dim() == 7);
    }
    SECTION("omega inverse round-trips on projective-free modules") {
        Module om = omega_of(K, catP);
        Module back = omega_inverse_of(om, catP);
        CHECK(back.dim() == 1);
        CHECK(is_isomorphic(back, K, 1, &catP).verdict == IsoResult::Yes);
        CHECK(omega_inverse_of(K, catP).dim() == 7);
    }
    SECTION("omega dims grow for the trivial module (rank-3 elementary abelian)") {
        PeriodicityResult pr = periodicity(K, catP, 8);
        CHECK_FALSE(pr.periodic);
        REQUIRE(pr.orbit_dims.size() == 8);
        for (size_t i = 0; i + 1 < pr.orbit_dims.size(); ++i) CHECK(pr.orbit_dims[i] < pr.orbit_dims[i + 1]);
        CHECK(pr.orbit_dims[0] == 7);
        CHECK(pr.orbit_dims[1] == 17);
    }
}

TEST_CASE_METHOD(Fixture, "omega over G") {
    Module K = Module::trivial(g, f2);
    Module om = omega_of(K, catG);
    CHECK(om.dim() == 7);  // projK has dimension 8
    Module tw = omega_of(catG.simples.list[2].rep, catG);  // W2: cover 24
    CHECK(tw.dim() == 21);
    CHECK(is_isomorphic(omega_inverse_of(om, catG), K, 1, &catG).verdict == IsoResult::Yes);
}

TEST_CASE_METHOD(Fixture, "heller stripping") {
    SECTION("a PIM strips to zero") {
        StripResult s = strip_projective_heller(catG.pims[2].rep, catG);
        CHECK(s.remainder.dim() == 0);
        CHECK(s.pim_mults[catG.pims[2].label] == 1);
    }
    SECTION("projective plus simple strips to the simple") {
        Module m = direct_sum(catG.pims[0].rep, catG.simples.list[2].rep);
        StripResult s = strip_projective_heller(m, catG);
        CHECK(s.remainder.dim() == 3);
        CHECK(s.pim_mults["projK"] == 1);
        CHECK(is_isomorphic(s.remainder, catG.simples.list[2].rep, 1, &catG).verdict == IsoResult::Yes);
    }
    SECTION("regular module strips to zero with the regular multiplicities") {
        Module reg = regular_module(g, f2);
        StripResult s = strip_projective_heller(reg, catG);
        CHECK(s.remainder.dim() == 0);
        CHECK(s.pim_mults["projK"] == 1);
        CHECK(s.pim_mults["projW1"] == 1);
        CHECK(s.pim_mults["projW2"] == 3);
        CHECK(s.pim_mults["projW2d"] == 3);
    }
}

TEST_CASE_METHOD(Fixture, "hom machinery agrees across methods") {
    // mid-size module where the cover presentation is exercised against the
    // dense solver
    Module m = tensor(catG.simples.list[2].rep, catG.pims[0].rep);  // 24-dim
    Module n = tensor(catG.simples.list[1].rep, catG.simples.list[3].rep);  // 6-dim
    HomSpace dense = hom_dense(m, n);
    HomSpace cover = hom_via_cover(m, n, catG);
    CHECK(dense.dim() == cover.dim());
    for (auto& F : cover.basis) CHECK(is_hom(m, n, F));
    HomSpace dense2 = hom_dense(m, m);
    HomSpace cover2 = hom_via_cover(m, m, catG);
    CHECK(dense2.dim() == cover2.dim());
    for (auto& F : cover2.basis) CHECK(is_hom(m, m, F));
}

TEST_CASE_METHOD(Fixture, "hom dimension examples") {
    Module K = Module::trivial(g, f2);
    Module perm8 = permutation_module(g, f2, PermAction::Natural);
    CHECK(hom_dense(K, K).dim() == 1);
    CHECK(hom_dense(K, perm8).dim() == 1);  // single orbit
    CHECK(hom_dense(catG.simples.list[2].rep, catG.simples.list[3].rep).dim() == 0);
    CHECK(hom_dense(catG.simples.list[2].rep, catG.simples.list[2].rep).dim() == 1);
    CHECK(hom_dense(catG.simples.list[1].rep, catG.simples.list[1].rep).dim() == 2);  // endo field GF(4)
    Module w2w2 = direct_sum(catG.simples.list[2].rep, catG.simples.list[2].rep);
    CHECK(hom_dense(w2w2, w2w2).dim() == 4);
}
