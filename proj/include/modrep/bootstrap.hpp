#pragma once

#include "decompose.hpp"

namespace modrep {

/// The group of order 168 acting on the 8 points of GF(8), realized as the
/// affine semilinear group: generators t: x -> x+1, s: x -> wx, f: x -> x^2
/// (w a generator of GF(8), w^3 = w + 1; points encoded as bit vectors).
/// P = <translations> is the elementary abelian Sylow 2-subgroup, H the
/// point stabilizer of 0 (a Frobenius group of order 21), and G = P x| H.
inline GroupPtr make_g168() {
    auto g = std::make_shared<GroupData>();
    g->name = "G168";
    g->npoints = 8;
    g->gens = {
        Perm({1, 0, 3, 2, 5, 4, 7, 6}),  // t: x -> x + 1
        Perm({0, 2, 4, 6, 3, 1, 7, 5}),  // s: x -> w*x
        Perm({0, 1, 4, 5, 6, 7, 2, 3}),  // f: x -> x^2
    };
    g->declared_order = 168;
    g->subgroups["P"] = {parse_word("1"), parse_word("2 1 -2"), parse_word("2 2 1 -2 -2")};
    g->subgroups["H"] = {parse_word("2"), parse_word("3")};
    // assorted subgroups used for permutation modules (orders 2, 3, 4, 6, 7, 12, 24, 56)
    g->subgroups["C2"] = {parse_word("1")};
    g->subgroups["C3"] = {parse_word("3")};
    g->subgroups["C4x"] = {parse_word("1"), parse_word("-2 1 2")};          // a four-subgroup of P
    g->subgroups["C6"] = {parse_word("1"), parse_word("3")};                // t and f commute
    g->subgroups["C7"] = {parse_word("2")};
    g->subgroups["A4"] = {parse_word("-2 1 2"), parse_word("-2 -2 1 2 2"), parse_word("3")};
    g->subgroups["PC3"] = {parse_word("1"), parse_word("2 1 -2"), parse_word("2 2 1 -2 -2"), parse_word("3")};
    g->subgroups["AGL"] = {parse_word("1"), parse_word("2")};               // P with the 7-cycle
    g->radical_subgroup = "P";
    return g;
}

/// The Sylow 2-subgroup as a standalone group: translations of GF(8).
inline GroupPtr make_p8() {
    auto g = std::make_shared<GroupData>();
    g->name = "P8";
    g->npoints = 8;
    g->gens = {
        Perm({1, 0, 3, 2, 5, 4, 7, 6}),  // x -> x + 1
        Perm({2, 3, 0, 1, 6, 7, 4, 5}),  // x -> x + w
        Perm({4, 5, 6, 7, 0, 1, 2, 3}),  // x -> x + w^2
    };
    g->declared_order = 8;
    // order-2 subgroups: translations by each nonzero field element
    for (unsigned v = 1; v < 8; ++v) {
        Word w;
        for (unsigned b = 0; b < 3; ++b)
            if (v & (1u << b)) w.push_back(int32_t(b + 1));
        g->subgroups["Q" + std::to_string(v)] = {w};
    }
    // order-4 subgroups: kernels of the nonzero functionals
    auto dot = [](unsigned a, unsigned b) {
        unsigned x = a & b;
        return ((x >> 2) ^ (x >> 1) ^ x) & 1u;
    };
    for (unsigned phi = 1; phi < 8; ++phi) {
        std::vector<Word> words;  // any two distinct nonzero kernel vectors generate
        for (unsigned v = 1; v < 8 && words.size() < 2; ++v) {
            if (dot(v, phi)) continue;
            Word w;
            for (unsigned b = 0; b < 3; ++b)
                if (v & (1u << b)) w.push_back(int32_t(b + 1));
            words.push_back(w);
        }
        g->subgroups["R" + std::to_string(phi)] = words;
    }
    g->subgroups["1"] = {Word{}};
    return g;
}

inline SimpleCatalog bootstrap_simples_p(const GroupPtr& p, const Field& f) {
    SimpleCatalog sc;
    sc.list.push_back({"K", Module::trivial(p, f), 1});
    return sc;
}

namespace detail {

/// Certify simplicity by spinning every nonzero vector (feasible for the
/// bootstrap dimensions).
inline void certify_simple_exhaustive(const Module& m, const std::string& label) {
    const Field& f = m.field();
    uint64_t count = 1;
    for (uint32_t i = 0; i < m.dim(); ++i) count *= f.size();
    if (count > (1u << 14)) throw std::logic_error("certify_simple_exhaustive: too large");
    for (uint64_t code = 1; code < count; ++code) {
        Matrix v(f, 1, m.dim());
        uint64_t c = code;
        for (uint32_t i = 0; i < m.dim(); ++i) {
            v.set(0, i, uint8_t(c % f.size()));
            c /= f.size();
        }
        if (spin(m, v).dim() != m.dim())
            throw std::logic_error(label + ": not simple (proper spin found)");
    }
}

}  // namespace detail

/// Simple modules of kG for G the order-168 group. Over GF(2): the trivial
/// module, the 2-dimensional module through the C3 quotient, and the two
/// dual 3-dimensional modules chopped from the radical layers of the 8-point
/// permutation module. Over GF(4) the 2-dimensional one splits into two
/// characters, giving five simples.
inline SimpleCatalog bootstrap_simples(const GroupPtr& g, const Field& f) {
    SimpleCatalog sc;
    sc.list.push_back({"K", Module::trivial(g, f), 1});
    if (f.degree() == 1) {
        // W1: companion matrix of x^2 + x + 1 through G -> C3 (t, s -> 1, f -> c)
        Matrix c(f, 2, 2);
        c.set(0, 1, 1);
        c.set(1, 0, 1);
        c.set(1, 1, 1);
        std::vector<Matrix> gens = {Matrix::identity(f, 2), Matrix::identity(f, 2), c};
        Module w1(g, f, gens);
        sc.list.push_back({"W1", w1, 2});
    } else if (f.degree() == 2) {
        for (unsigned which = 0; which < 2; ++which) {
            Matrix c(f, 1, 1);
            c.set(0, 0, which == 0 ? 2 : 3);  // w and w^2 in GF(4)
            std::vector<Matrix> gens = {Matrix::identity(f, 1), Matrix::identity(f, 1), c};
            sc.list.push_back({which == 0 ? "L1" : "L2", Module(g, f, gens), 1});
        }
    } else {
        throw std::invalid_argument("bootstrap_simples: field must be GF(2) or GF(4)");
    }
    // W2: first radical layer of the 8-point permutation module
    Field f2(1);
    Module perm8 = permutation_module(g, f2, PermAction::Natural);
    RowBasis r1 = radical_rows(perm8);
    Module rad1 = submodule(perm8, r1);
    RowBasis r2 = radical_rows(rad1);
    Module w2 = quotient(rad1, r2);
    if (w2.dim() != 3) throw std::logic_error("bootstrap_simples: W2 layer has wrong dimension");
    Module w2d = dual(w2);
    if (f.degree() == 2) {
        w2 = extend_scalars(w2, f);
        w2d = extend_scalars(w2d, f);
    }
    detail::certify_simple_exhaustive(w2, "W2");
    detail::certify_simple_exhaustive(w2d, "W2d");
    if (hom_dense(w2, w2d).dim() != 0) throw std::logic_error("bootstrap_simples: W2 isomorphic to its dual");
    sc.list.push_back({"W2", w2, 1});
    sc.list.push_back({"W2d", w2d, 1});
    return sc;
}

inline PimCatalog build_g168_catalog(const GroupPtr& g, const Field& f, uint64_t seed = 1) {
    return build_pim_catalog(g, f, "H", bootstrap_simples(g, f), seed);
}

inline PimCatalog build_p8_catalog(const GroupPtr& p, const Field& f, uint64_t seed = 1) {
    return build_pim_catalog(p, f, "", bootstrap_simples_p(p, f), seed);
}

}  // namespace modrep
