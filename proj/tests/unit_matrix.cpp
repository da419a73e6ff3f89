#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "modrep/matrix.hpp"

using namespace modrep;

namespace {

Matrix random_matrix(const Field& f, uint32_t r, uint32_t c, Rng& rng) {
    Matrix m(f, r, c);
    m.randomize(rng);
    return m;
}

}  // namespace

TEST_CASE("identity is neutral for mat_mul over GF(4)") {
    Field f(2);
    Rng rng(1);
    Matrix m = random_matrix(f, 3, 3, rng);
    CHECK(mat_mul(Matrix::identity(f, 3), m) == m);
    CHECK(mat_mul(m, Matrix::identity(f, 3)) == m);
}

TEST_CASE("char-2 involution: [[1,1],[0,1]] squares to identity") {
    Field f(1);
    Matrix m(f, 2, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    m.set(1, 1, 1);
    CHECK(mat_mul(m, m) == Matrix::identity(f, 2));
}

TEST_CASE("fast product equals schoolbook oracle") {
    Rng rng(2);
    SECTION("GF(4) random 20x20") {
        Field f(2);
        Matrix a = random_matrix(f, 20, 20, rng), b = random_matrix(f, 20, 20, rng);
        CHECK(mat_mul(a, b) == mat_mul_schoolbook(a, b));
    }
    SECTION("GF(2) word path vs schoolbook, odd shapes") {
        Field f(1);
        Matrix a = random_matrix(f, 17, 65, rng), b = random_matrix(f, 65, 9, rng);
        CHECK(mat_mul(a, b) == mat_mul_schoolbook(a, b));
    }
    SECTION("GF(8) generic path") {
        Field f(3);
        Matrix a = random_matrix(f, 11, 13, rng), b = random_matrix(f, 13, 7, rng);
        CHECK(mat_mul(a, b) == mat_mul_schoolbook(a, b));
    }
}

TEST_CASE("rank and nullspace basics") {
    Field f2(1);
    SECTION("zero 4x4") {
        Matrix z(f2, 4, 4);
        CHECK(rank(z) == 0);
        Matrix ns = right_nullspace(z);
        CHECK(ns.rows() == 4);
    }
    SECTION("identity 5x5") {
        Matrix i = Matrix::identity(f2, 5);
        CHECK(rank(i) == 5);
        CHECK(right_nullspace(i).rows() == 0);
    }
    SECTION("random 12x12 GF(2): span size equals 2^rank (enumeration oracle)") {
        Rng rng(3);
        Matrix m = random_matrix(f2, 12, 12, rng);
        uint32_t r = rank(m);
        // enumerate the full row span
        std::set<std::vector<uint64_t>> span;
        for (uint32_t mask = 0; mask < (1u << 12); ++mask) {
            std::vector<uint64_t> v(m.words_per_row(), 0);
            for (uint32_t i = 0; i < 12; ++i)
                if (mask & (1u << i))
                    for (uint32_t w = 0; w < m.words_per_row(); ++w) v[w] ^= m.row(i)[w];
            span.insert(v);
        }
        CHECK(span.size() == (size_t(1) << r));
    }
    SECTION("nullspace rows satisfy m*v^T = 0") {
        Rng rng(4);
        Field f4(2);
        Matrix m = random_matrix(f4, 9, 14, rng);
        Matrix ns = right_nullspace(m);
        CHECK(ns.rows() + rank(m) == m.cols());
        Matrix prod = mat_mul(m, ns.transpose());
        CHECK(prod.is_zero());
        CHECK(rank(ns) == ns.rows());
    }
}

TEST_CASE("solve_right") {
    Field f(2);
    Rng rng(5);
    SECTION("a = I returns rhs") {
        Matrix rhs = random_matrix(f, 6, 2, rng);
        auto x = solve_right(Matrix::identity(f, 6), rhs);
        REQUIRE(x);
        CHECK(*x == rhs);
    }
    SECTION("a = 0 with rhs != 0 has no solution") {
        Matrix a(f, 3, 3);
        Matrix rhs(f, 3, 1);
        rhs.set(0, 0, 1);
        CHECK_FALSE(solve_right(a, rhs));
    }
    SECTION("construct-then-solve on a random consistent system") {
        Matrix a = random_matrix(f, 10, 7, rng);
        Matrix x0 = random_matrix(f, 7, 3, rng);
        Matrix rhs = mat_mul(a, x0);
        auto x = solve_right(a, rhs);
        REQUIRE(x);
        CHECK(mat_mul(a, *x) == rhs);
    }
}

TEST_CASE("kronecker") {
    Field f(1);
    SECTION("I2 (x) I3 = I6") {
        CHECK(kronecker(Matrix::identity(f, 2), Matrix::identity(f, 3)) == Matrix::identity(f, 6));
    }
    SECTION("mixed product identity on random 3x3") {
        Field f4(2);
        Rng rng(6);
        Matrix a = random_matrix(f4, 3, 3, rng), b = random_matrix(f4, 3, 3, rng);
        Matrix c = random_matrix(f4, 3, 3, rng), d = random_matrix(f4, 3, 3, rng);
        CHECK(mat_mul(kronecker(a, b), kronecker(c, d)) == kronecker(mat_mul(a, c), mat_mul(b, d)));
    }
    SECTION("12x12 (x) 28x28 entry formula at 100 random positions") {
        Rng rng(7);
        Matrix a = random_matrix(f, 12, 12, rng), b = random_matrix(f, 28, 28, rng);
        Matrix k = kronecker(a, b);
        REQUIRE(k.rows() == 336);
        REQUIRE(k.cols() == 336);
        for (int t = 0; t < 100; ++t) {
            uint32_t i = uint32_t(rng.below(12)), j = uint32_t(rng.below(12));
            uint32_t p = uint32_t(rng.below(28)), q = uint32_t(rng.below(28));
            CHECK(k.get(i * 28 + p, j * 28 + q) == f.mul(a.get(i, j), b.get(p, q)));
        }
    }
}

TEST_CASE("invert") {
    Field f(2);
    SECTION("identity") { CHECK(*invert(Matrix::identity(f, 4)) == Matrix::identity(f, 4)); }
    SECTION("nilpotent Jordan block is singular") {
        Matrix n(f, 3, 3);
        n.set(0, 1, 1);
        n.set(1, 2, 1);
        CHECK_FALSE(invert(n));
    }
    SECTION("random invertible 10x10 GF(4): product check") {
        Rng rng(8);
        for (;;) {
            Matrix m(f, 10, 10);
            m.randomize(rng);
            if (rank(m) < 10) continue;
            auto inv = invert(m);
            REQUIRE(inv);
            CHECK(mat_mul(m, *inv) == Matrix::identity(f, 10));
            CHECK(mat_mul(*inv, m) == Matrix::identity(f, 10));
            break;
        }
    }
}

TEST_CASE("rank(ab) <= min(rank a, rank b) on random samples") {
    Rng rng(9);
    Field f(2);
    for (int t = 0; t < 10; ++t) {
        Matrix a = random_matrix(f, 8, 6, rng), b = random_matrix(f, 6, 9, rng);
        uint32_t r = rank(mat_mul(a, b));
        CHECK(r <= rank(a));
        CHECK(r <= rank(b));
    }
}

TEST_CASE("GF(2) word path and generic entry path agree bit-for-bit") {
    Rng rng(10);
    Field f(1);
    Matrix a = random_matrix(f, 33, 70, rng), b = random_matrix(f, 70, 33, rng);
    Matrix fast = mat_mul(a, b);
    // generic path: emulate entry-by-entry accumulation
    Matrix slow(f, a.rows(), b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i)
        for (uint32_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) slow.row_axpy(slow.row(i), b.row(j), a.get(i, j));
    CHECK(fast == slow);
}

TEST_CASE("RowBasis keeps a reduced echelon form") {
    Field f(2);
    Rng rng(11);
    Matrix m = random_matrix(f, 10, 10, rng);
    RowBasis rb = row_space(m);
    Matrix e = rb.to_matrix();
    // every pivot column has a single nonzero entry (the 1 of its row)
    for (uint32_t r = 0; r < e.rows(); ++r) {
        uint32_t p = uint32_t(rb.pivots()[r]);
        for (uint32_t i = 0; i < e.rows(); ++i) CHECK(e.get(i, p) == (i == r ? 1 : 0));
    }
    // coordinates() reconstructs vectors of the span
    std::vector<uint64_t> v(m.words_per_row(), 0);
    for (uint32_t w = 0; w < m.words_per_row(); ++w) v[w] = m.row(3)[w] ^ m.row(7)[w];
    auto c = rb.coordinates(v.data());
    Matrix recon(f, 1, 10);
    for (uint32_t r = 0; r < e.rows(); ++r)
        if (c[r]) recon.row_axpy(recon.row(0), e.row(r), c[r]);
    for (uint32_t w = 0; w < m.words_per_row(); ++w) CHECK(recon.row(0)[w] == v[w]);
}

TEST_CASE("thread count does not change products") {
    Rng rng(12);
    Field f(1);
    Matrix a = random_matrix(f, 300, 300, rng), b = random_matrix(f, 300, 300, rng);
    set_thread_count(1);
    Matrix c1 = mat_mul(a, b);
    set_thread_count(2);
    Matrix c2 = mat_mul(a, b);
    set_thread_count(1);
    CHECK(c1 == c2);
}
