#include <catch2/catch_amalgamated.hpp>

#include "modrep/bootstrap.hpp"
#include "modrep/closure.hpp"

using namespace modrep;

namespace {
struct Fixture {
    GroupPtr p = make_p8();
    Field f2{1};
    PimCatalog catP = build_p8_catalog(p, f2);
    SubgroupLattice lat = build_subgroup_lattice(p);
};
}  // namespace

TEST_CASE_METHOD(Fixture, "the lattice has 1 + 7 + 7 + 1 members") {
    unsigned counts[4] = {0, 0, 0, 0};
    for (auto& s : lat.subs) {
        if (s.order == 1) ++counts[0];
        if (s.order == 2) ++counts[1];
        if (s.order == 4) ++counts[2];
        if (s.order == 8) ++counts[3];
    }
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 7);
    CHECK(counts[2] == 7);
    CHECK(counts[3] == 1);
    SECTION("inclusion is as expected") {
        // every line is inside exactly 3 planes
        for (size_t i = 0; i < lat.subs.size(); ++i) {
            if (lat.subs[i].order != 2) continue;
            unsigned planes = 0;
            for (size_t j = 0; j < lat.subs.size(); ++j)
                if (lat.subs[j].order == 4 && lat.contains(j, i)) ++planes;
            CHECK(planes == 3);
        }
    }
}

TEST_CASE_METHOD(Fixture, "relative projectivity basics") {
    Module kp = regular_module(p, f2);
    Module K = Module::trivial(p, f2);
    SECTION("free modules are projective relative to the trivial subgroup") {
        CHECK(is_relatively_projective(kp, lat, 0));
    }
    SECTION("the trivial module is relatively projective only at P") {
        for (size_t i = 0; i < lat.subs.size(); ++i)
            CHECK(is_relatively_projective(K, lat, i) == (lat.subs[i].order == 8));
    }
    SECTION("a transitive permutation module on P/Q is Q-projective") {
        for (size_t i = 0; i < lat.subs.size(); ++i) {
            if (lat.subs[i].order != 2) continue;
            Module m = permutation_module(p, f2, PermAction::Cosets, lat.subs[i].name);
            CHECK(m.dim() == 4);
            CHECK(is_relatively_projective(m, lat, i));
        }
    }
}

TEST_CASE_METHOD(Fixture, "vertices") {
    CHECK(lat.subs[vertex(regular_module(p, f2), lat)].order == 1);
    CHECK(lat.subs[vertex(Module::trivial(p, f2), lat)].order == 8);
    SECTION("vertex of k[P/Q] is exactly Q") {
        for (size_t i = 0; i < lat.subs.size(); ++i) {
            if (lat.subs[i].order != 2) continue;
            Module m = permutation_module(p, f2, PermAction::Cosets, lat.subs[i].name);
            size_t v = vertex(m, lat);
            CHECK(v == i);
        }
    }
}

TEST_CASE_METHOD(Fixture, "higman monotonicity on random modules") {
    Rng rng(21);
    Module kp = regular_module(p, f2);
    for (int t = 0; t < 4; ++t) {
        // random submodule of kP + kP, dimension <= 12
        Module m2 = direct_sum(kp, kp);
        Matrix seed(f2, 1, 16);
        seed.randomize(rng);
        RowBasis rb = spin(m2, seed);
        Module m = submodule(m2, rb);
        if (m.dim() == 0 || m.dim() > 12) continue;
        std::vector<bool> rel(lat.subs.size());
        for (size_t i = 0; i < lat.subs.size(); ++i) rel[i] = is_relatively_projective(m, lat, i);
        for (size_t i = 0; i < lat.subs.size(); ++i)
            for (size_t j = 0; j < lat.subs.size(); ++j)
                if (lat.contains(j, i) && rel[i]) CHECK(rel[j]);
        CHECK(rel[lat.subs.size() - 1]);  // everything is P-projective
    }
}

TEST_CASE_METHOD(Fixture, "ideal membership") {
    Module kp = regular_module(p, f2);
    CHECK(in_ideal(kp, IdealKind::ProjectiveOnly, catP));
    CHECK(in_ideal(kp, IdealKind::CyclicOrTrivialVertex, catP, &lat));
    Module m4 = permutation_module(p, f2, PermAction::Cosets, "Q3");
    CHECK_FALSE(in_ideal(m4, IdealKind::ProjectiveOnly, catP));
    CHECK(in_ideal(m4, IdealKind::CyclicOrTrivialVertex, catP, &lat));
    CHECK_FALSE(in_ideal(Module::trivial(p, f2), IdealKind::CyclicOrTrivialVertex, catP, &lat));
    SECTION("cyclic ideal over a non-2-group is refused") {
        auto g = make_g168();
        PimCatalog catG = build_g168_catalog(g, f2);
        CHECK_THROWS(in_ideal(Module::trivial(g, f2), IdealKind::CyclicOrTrivialVertex, catG, &lat));
    }
    SECTION("projective-only membership over G via stripping") {
        auto g = make_g168();
        PimCatalog catG = build_g168_catalog(g, f2);
        Module perm8 = permutation_module(g, f2, PermAction::Natural);
        CHECK(in_ideal(perm8, IdealKind::ProjectiveOnly, catG));  // it is projK
        CHECK_FALSE(in_ideal(Module::trivial(g, f2), IdealKind::ProjectiveOnly, catG));
    }
}
