#pragma once

#include "decompose.hpp"

namespace modrep {

/// The 16 subgroups of an elementary abelian group of order 8, as generator
/// words in the group's own generators, with the inclusion relation.
struct LatticeSubgroup {
    std::string name;
    std::vector<Word> words;
    uint32_t order = 1;
    std::vector<uint32_t> element_indices;  // indices into the group's element table
};

struct SubgroupLattice {
    GroupPtr p;
    std::vector<LatticeSubgroup> subs;  // sorted by order: 1, lines, planes, full

    bool contains(size_t big, size_t small) const {
        const auto& b = subs[big].element_indices;
        for (uint32_t e : subs[small].element_indices)
            if (std::find(b.begin(), b.end(), e) == b.end()) return false;
        return true;
    }
};

inline SubgroupLattice build_subgroup_lattice(const GroupPtr& p) {
    if (p->order() != 8 || !p->is_2group()) throw std::invalid_argument("subgroup lattice: need C2 x C2 x C2");
    for (auto& g : p->gens)
        if (!(g * g).is_identity()) throw std::invalid_argument("subgroup lattice: group not elementary abelian");
    const auto& tab = p->elements();
    // identify each element with its F2^3 coordinate vector over the
    // generators (the BFS words give exponent parities)
    std::vector<unsigned> vec_of(8, 0);
    std::vector<uint32_t> elem_of_vec(8, 0);
    for (uint32_t i = 0; i < 8; ++i) {
        unsigned v = 0;
        for (int32_t t : tab.words[i]) v ^= 1u << (std::abs(t) - 1);
        vec_of[i] = v;
        elem_of_vec[v] = i;
    }
    auto word_of_vec = [&](unsigned v) { return tab.words[elem_of_vec[v]]; };
    SubgroupLattice lat;
    lat.p = p;
    {
        LatticeSubgroup t;
        t.name = "1";
        t.words = {Word{}};
        t.order = 1;
        t.element_indices = {elem_of_vec[0]};
        lat.subs.push_back(t);
    }
    for (unsigned v = 1; v < 8; ++v) {
        LatticeSubgroup s;
        s.name = "Q" + std::to_string(v);
        s.words = {word_of_vec(v)};
        s.order = 2;
        s.element_indices = {elem_of_vec[0], elem_of_vec[v]};
        lat.subs.push_back(s);
    }
    auto dot = [](unsigned a, unsigned b) {
        unsigned x = a & b;
        return ((x >> 2) ^ (x >> 1) ^ x) & 1u;
    };
    for (unsigned phi = 1; phi < 8; ++phi) {
        LatticeSubgroup s;
        s.name = "R" + std::to_string(phi);
        s.order = 4;
        for (unsigned v = 0; v < 8; ++v)
            if (!dot(v, phi)) {
                s.element_indices.push_back(elem_of_vec[v]);
                if (v && s.words.size() < 2) s.words.push_back(word_of_vec(v));
            }
        lat.subs.push_back(s);
    }
    {
        LatticeSubgroup s;
        s.name = "P";
        s.order = 8;
        for (unsigned v = 0; v < 8; ++v) s.element_indices.push_back(elem_of_vec[v]);
        s.words = {word_of_vec(1), word_of_vec(2), word_of_vec(4)};
        lat.subs.push_back(s);
    }
    return lat;
}

/// Free rank of a module over a 2-group: the rank of the action of the sum
/// of all group elements.
inline uint32_t free_rank_by_norm(const Module& m) {
    const auto& tab = m.group()->elements();
    Matrix norm(m.field(), m.dim(), m.dim());
    std::vector<Matrix> elems(tab.elements.size());
    elems[0] = Matrix::identity(m.field(), m.dim());
    for (uint32_t i = 1; i < tab.elements.size(); ++i) {
        auto [par, gi] = tab.built_from[i];
        elems[i] = mat_mul(elems[par], m.gen(gi));
    }
    for (auto& el : elems)
        for (uint32_t r = 0; r < m.dim(); ++r) norm.row_xor(norm.row(r), el.row(r));
    return rank(norm);
}

/// Higman's criterion: M is relatively Q-projective iff the identity of
/// End_kP(M) lies in the image of the relative trace from End_kQ(M).
inline bool is_relatively_projective(const Module& m, const SubgroupLattice& lat, size_t qi) {
    const LatticeSubgroup& q = lat.subs[qi];
    if (q.order == uint32_t(m.group()->order())) return true;  // every module is P-projective
    if (m.dim() == 0) return true;
    if (q.order == 1) {
        // relative projectivity to the trivial subgroup = projectivity = freeness
        return free_rank_by_norm(m) * m.group()->order() == m.dim();
    }
    const Field& f = m.field();
    // End over kQ: intertwiners with the Q-generator matrices
    std::vector<Matrix> qgens;
    for (auto& w : q.words) qgens.push_back(m.evaluate_word(w));
    Module mq(SubgroupSpec{q.name, q.words, m.group()}.realize(), f, qgens);
    HomSpace endq = hom_dense(mq, mq);
    // transversal of Q in P
    CosetTable ct = coset_table(*m.group(), q.words);
    const auto& tab = m.group()->elements();
    std::vector<Matrix> reps, rep_invs;
    for (uint32_t r : ct.reps) {
        Matrix rm = m.evaluate_word(tab.words[r]);
        reps.push_back(rm);
        auto inv = invert(rm);
        rep_invs.push_back(*inv);
    }
    // image of the relative trace, flattened
    uint32_t d = m.dim();
    Matrix image(f, endq.dim(), d * d);
    for (uint32_t b = 0; b < endq.dim(); ++b) {
        Matrix tr(f, d, d);
        for (size_t c = 0; c < reps.size(); ++c) {
            Matrix term = mat_mul(reps[c], mat_mul(endq.basis[b], rep_invs[c]));
            for (uint32_t i = 0; i < d; ++i) tr.row_xor(tr.row(i), term.row(i));
        }
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t j = 0; j < d; ++j)
                if (uint8_t v = tr.get(i, j)) image.set(b, i * d + j, v);
    }
    Matrix idflat(f, 1, d * d);
    for (uint32_t i = 0; i < d; ++i) idflat.set(0, i * d + i, 1);
    // identity in the row space of the trace image?
    RowBasis rb = row_space(image);
    return rb.contains_row(idflat, 0);
}

/// Minimal subgroups (ascending by order) over which an indecomposable
/// module is relatively projective. For the abelian P there is no conjugacy
/// ambiguity; several hits at the same level only arise for decomposable
/// inputs.
inline std::vector<size_t> vertex_candidates(const Module& m, const SubgroupLattice& lat) {
    std::vector<size_t> hits;
    uint32_t level = 0;
    for (size_t i = 0; i < lat.subs.size(); ++i) {
        if (!hits.empty() && lat.subs[i].order > level) break;
        if (is_relatively_projective(m, lat, i)) {
            hits.push_back(i);
            level = lat.subs[i].order;
        }
    }
    return hits;
}

inline size_t vertex(const Module& m, const SubgroupLattice& lat) {
    auto hits = vertex_candidates(m, lat);
    if (hits.empty()) throw std::logic_error("vertex: no relatively projective subgroup found");
    return hits[0];
}

enum class IdealKind { ProjectiveOnly, CyclicOrTrivialVertex };

/// Membership of an indecomposable module in the ideal used to quotient the
/// Green ring. Over the elementary abelian P, the indecomposables with
/// vertex of order <= 2 are exactly the regular module and the seven
/// 4-dimensional transitive permutation modules, so anything of other
/// dimension is outside the ideal without further work.
inline bool in_ideal(const Module& m, IdealKind ideal, const PimCatalog& cat,
                     const SubgroupLattice* lat = nullptr) {
    if (m.dim() == 0) return true;
    if (ideal == IdealKind::ProjectiveOnly) {
        if (cat.G->is_2group()) return free_rank_by_norm(m) * cat.G->order() == m.dim();
        return strip_projective_heller(m, cat).remainder.dim() == 0;
    }
    if (!cat.G->is_2group())
        throw std::invalid_argument("in_ideal: cyclic-or-trivial-vertex ideal is only supported over P");
    if (!lat) throw std::invalid_argument("in_ideal: lattice required for the cyclic ideal");
    if (m.dim() != 4 && m.dim() != 8) return false;
    size_t v = vertex(m, *lat);
    return lat->subs[v].order <= 2;
}

}  // namespace modrep
