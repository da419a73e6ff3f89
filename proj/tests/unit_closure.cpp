#include <catch2/catch_amalgamated.hpp>

#include "modrep/bootstrap.hpp"
#include "modrep/closure.hpp"

using namespace modrep;

namespace {
struct Fixture {
    GroupPtr g = make_g168();
    Field f2{1};
    PimCatalog catG = build_g168_catalog(g, f2);
};
}  // namespace

TEST_CASE_METHOD(Fixture, "closure of the trivial module is a single class") {
    Module K = Module::trivial(g, f2);
    ClosureOptions opts;
    opts.seed = 5;
    ClosureResult cr = tensor_closure(K, "K", catG, opts);
    CHECK(cr.status == ClosureResult::Closed);
    REQUIRE(cr.catalog.size() == 1);
    REQUIRE(cr.rows.size() == 1);
    CHECK(cr.rows[0].parts.at("K") == 1);
    SECTION("witness: charpoly x - 1 vanishes at 1") {
        Witness w = polynomial_witness(cr);
        CHECK(w.degree() == 1);
        CHECK(w.evaluation_vanishes);
        // p(x) = x - 1, so p(1) = 0
        __int128 val = 0, x = 1;
        for (size_t i = w.coeffs.size(); i-- > 0;) val = val * x + w.coeffs[i];
        CHECK(int128_str(val) == "0");
    }
}

TEST_CASE_METHOD(Fixture, "closure of W1 through the odd quotient") {
    // W1 is a module for the C3 quotient; its closure stays semisimple
    Module W1 = catG.simples.list[1].rep;
    ClosureOptions opts;
    opts.seed = 6;
    ClosureResult cr = tensor_closure(W1, "W1", catG, opts);
    CHECK(cr.status == ClosureResult::Closed);
    // W1 (x) W1 = K + K' pieces: catalog must stay small and closed
    CHECK(cr.catalog.size() <= 3);
    Witness w = polynomial_witness(cr);
    CHECK(w.evaluation_vanishes);
    SECTION("determinism: same seed, same result") {
        ClosureResult cr2 = tensor_closure(W1, "W1", catG, opts);
        REQUIRE(cr2.catalog.size() == cr.catalog.size());
        for (size_t i = 0; i < cr.catalog.size(); ++i) CHECK(cr2.catalog[i].label == cr.catalog[i].label);
        REQUIRE(cr2.rows.size() == cr.rows.size());
        for (size_t i = 0; i < cr.rows.size(); ++i) {
            CHECK(cr2.rows[i].parts == cr.rows[i].parts);
            CHECK(cr2.rows[i].ideal == cr.rows[i].ideal);
        }
    }
    SECTION("soundness verification pass") {
        std::string complaint;
        CHECK(verify_closure(cr, W1, catG, 999, &complaint));
        CHECK(complaint.empty());
    }
}

TEST_CASE("charpoly (Berkowitz) on known matrices") {
    SECTION("diagonal") {
        std::vector<std::vector<int64_t>> t{{1, 0}, {0, 2}};
        auto p = charpoly_int(t);  // (x-1)(x-2) = x^2 - 3x + 2
        REQUIRE(p.size() == 3);
        CHECK(int128_str(p[0]) == "2");
        CHECK(int128_str(p[1]) == "-3");
        CHECK(int128_str(p[2]) == "1");
    }
    SECTION("companion matrix of x^3 - 2x - 5") {
        std::vector<std::vector<int64_t>> t{{0, 1, 0}, {0, 0, 1}, {5, 2, 0}};
        auto p = charpoly_int(t);
        REQUIRE(p.size() == 4);
        CHECK(int128_str(p[0]) == "-5");
        CHECK(int128_str(p[1]) == "-2");
        CHECK(int128_str(p[2]) == "0");
        CHECK(int128_str(p[3]) == "1");
    }
}

TEST_CASE_METHOD(Fixture, "compare_expected verdict logic") {
    Module K = Module::trivial(g, f2);
    ClosureOptions opts;
    opts.seed = 5;
    ClosureResult cr = tensor_closure(K, "K", catG, opts);
    SECTION("empty table gives an empty report") {
        ExpectedTable t{"K", {}};
        CompareReport rep = compare_expected(cr, t, catG);
        CHECK(rep.rows.empty());
        CHECK(rep.all_structural_or_better());
    }
    SECTION("exact row is STRICT") {
        ExpectedTable t{"K", {ExpectedRow{"K", {{"K", 1}}, false, "K*K = K"}}};
        CompareReport rep = compare_expected(cr, t, catG);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].verdict == RowVerdict::Strict);
    }
    SECTION("wrong labels on a dimension-consistent line are a mismatch") {
        // W1-closure: the 1-dimensional class in W1*W1 gets the catalog
        // label C1, and W1*C1 = W1 (dimension 2); the wrong-but-consistent
        // line 2*C1 must be rejected outright
        Module W1 = catG.simples.list[1].rep;
        ClosureResult cw = tensor_closure(W1, "W1", catG, opts);
        REQUIRE(cw.status == ClosureResult::Closed);
        REQUIRE(cw.catalog_index("C1") >= 0);
        ExpectedTable t{"W1", {ExpectedRow{"C1", {{"C1", 2}}, false, "W1*C1 = 2*C1"}}};
        CompareReport rep = compare_expected(cw, t, catG);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].verdict == RowVerdict::Mismatch);
        CHECK_FALSE(rep.rows[0].expected_inconsistent);
    }
    SECTION("dimension-inconsistent line degrades to support comparison, never strict") {
        // K*K = K + projK sums to 9 != 1: flagged, supports match -> structural
        ExpectedTable t{"K", {ExpectedRow{"K", {{"K", 1}, {"projK", 1}}, false, "K*K = K + projK"}}};
        CompareReport rep = compare_expected(cr, t, catG);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].verdict == RowVerdict::Structural);
        CHECK(rep.rows[0].expected_inconsistent);
    }
    SECTION("wildcard ideal rows cap at structural") {
        ExpectedTable t{"K", {ExpectedRow{"K", {{"K", 1}}, true, "K*K = K + IDEAL"}}};
        CompareReport rep = compare_expected(cr, t, catG);
        CHECK(rep.rows[0].verdict == RowVerdict::Structural);
    }
    SECTION("unknown generator label throws") {
        ExpectedTable t{"Z", {}};
        CHECK_THROWS(compare_expected(cr, t, catG));
    }
}
