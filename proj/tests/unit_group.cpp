#include <catch2/catch_amalgamated.hpp>

#include "modrep/bootstrap.hpp"

using namespace modrep;

TEST_CASE("the shipped order-168 group checks out") {
    auto g = make_g168();
    validate_group(*g);
    CHECK(g->order() == 168);
    SECTION("P is elementary abelian of order 8") {
        auto spec = subgroup_spec(g, "P");
        auto p = spec.realize();
        CHECK(p->order() == 8);
        for (auto& perm : p->gens) CHECK((perm * perm).is_identity());
        // index 21
        CHECK(g->order() / p->order() == 21);
    }
    SECTION("H is a complement of order 21") {
        auto spec = subgroup_spec(g, "H");
        auto h = spec.realize();
        CHECK(h->order() == 21);
    }
    SECTION("P is normal") {
        auto pidx = subgroup_element_indices(*g, g->subgroups.at("P"));
        std::set<Perm> pset;
        const auto& tab = g->elements();
        for (auto i : pidx) pset.insert(tab.elements[i]);
        for (auto& ge : tab.elements)
            for (auto& pe : pset) CHECK(pset.count(ge * pe * ge.inverse()) == 1);
    }
}

TEST_CASE("the standalone 2-group") {
    auto p = make_p8();
    validate_group(*p);
    CHECK(p->order() == 8);
    CHECK(p->is_2group());
    SECTION("subgroup lattice counts: 1 + 7 + 7 + 1") {
        unsigned order2 = 0, order4 = 0;
        for (auto& [name, words] : p->subgroups) {
            auto idx = subgroup_element_indices(*p, words);
            if (idx.size() == 2) ++order2;
            if (idx.size() == 4) ++order4;
        }
        CHECK(order2 == 7);
        CHECK(order4 == 7);
    }
}

TEST_CASE("coset tables") {
    auto g = make_g168();
    CosetTable ct = coset_table(*g, g->subgroups.at("H"));
    CHECK(ct.reps.size() == 8);
    CosetTable cp = coset_table(*g, g->subgroups.at("P"));
    CHECK(cp.reps.size() == 21);
}

TEST_CASE("declared order mismatch is caught") {
    auto g = std::make_shared<GroupData>();
    g->name = "bad";
    g->npoints = 3;
    g->gens = {Perm({1, 2, 0})};
    g->declared_order = 5;
    CHECK_THROWS(validate_group(*g));
}
