#pragma once

#include <functional>

#include "hom_core.hpp"

namespace modrep {

struct SimpleInfo {
    std::string label;
    Module rep;
    uint32_t endo_dim = 1;  // dim_k End(S)
};

struct SimpleCatalog {
    std::vector<SimpleInfo> list;

    size_t size() const { return list.size(); }
    int index_of(const std::string& label) const {
        for (size_t i = 0; i < list.size(); ++i)
            if (list[i].label == label) return int(i);
        return -1;
    }
};

/// Projective indecomposables for a group algebra kG where G = P x| H with
/// P the normal Sylow 2-subgroup and H of odd order (H trivial when G is a
/// 2-group). Each PIM is realized computationally as the induced module
/// S^G_H, which is its projective cover model; `rep` stores the
/// representative extracted from the regular module.
struct PimEntry {
    std::string label;         // "projK", ...
    std::string simple_label;  // head
    Module rep;                // representative (regular-module summand)
    Module induced;            // S induced from H; used by the hom machinery
    Matrix head_quotient;      // induced -> S (in S coordinates), kills rad
    uint32_t dim = 0;
};

struct PimCatalog {
    GroupPtr G;
    Field f;
    SimpleCatalog simples;
    std::vector<PimEntry> pims;  // same order as simples

    // split structure
    std::vector<Word> h_gen_words;  // generators of H as words in G ({{}} when H trivial)
    GroupPtr H;                     // realized complement (one identity generator if trivial)
    std::vector<Module> simples_over_H;
    std::vector<CyclicPresentation> simple_pres_H;       // presentation of S over H
    std::vector<CyclicPresentation> simple_dual_pres_H;  // presentation of dual(S) over H
    std::vector<std::vector<Matrix>> endo_H;             // basis of End_H(S)
    std::vector<std::vector<uint8_t>> isotypic_coeffs;   // e_S over H element-table order
    std::vector<Word> coset_rep_words;                   // transversal of H in G

    std::vector<uint32_t> regular_mults;  // multiplicity of each PIM in kG
    bool verified = false;

    int pim_index(const std::string& label) const {
        for (size_t i = 0; i < pims.size(); ++i)
            if (pims[i].label == label) return int(i);
        return -1;
    }
    uint32_t total_regular_dim() const {
        uint32_t d = 0;
        for (size_t i = 0; i < pims.size(); ++i) d += regular_mults[i] * pims[i].dim;
        return d;
    }
};

namespace detail {

inline Matrix matrix_sum_scaled(const Field& f, uint32_t n, const std::vector<Matrix>& mats,
                                const std::vector<uint8_t>& coeffs) {
    Matrix acc(f, n, n);
    for (size_t t = 0; t < mats.size(); ++t)
        if (coeffs[t])
            for (uint32_t r = 0; r < n; ++r) acc.row_axpy(acc.row(r), mats[t].row(r), coeffs[t]);
    return acc;
}

}  // namespace detail

/// Per-module data for the induction machinery: H-element action matrices
/// and the transversal action matrices. Built once per module; all the
/// Frobenius-reciprocity homs below reuse it.
struct InductionContext {
    const PimCatalog* cat = nullptr;
    Module m;
    Module m_H;                    // restriction to H
    std::vector<Matrix> h_elems;   // H element-table order
    std::vector<Matrix> rep_mats;  // transversal (coset order)
    std::vector<Matrix> rep_invs;
};

inline InductionContext make_induction_context(const Module& m, const PimCatalog& cat) {
    InductionContext ctx;
    ctx.cat = &cat;
    ctx.m = m;
    std::vector<Matrix> hgens;
    for (auto& w : cat.h_gen_words) hgens.push_back(m.evaluate_word(w));
    ctx.m_H = Module(cat.H, m.field(), hgens);
    // H elements along the BFS tree
    const auto& htab = cat.H->elements();
    ctx.h_elems.resize(htab.elements.size());
    ctx.h_elems[0] = Matrix::identity(m.field(), m.dim());
    for (uint32_t i = 1; i < htab.elements.size(); ++i) {
        auto [par, gi] = htab.built_from[i];
        ctx.h_elems[i] = mat_mul(ctx.h_elems[par], ctx.m_H.gen(gi));
    }
    for (auto& w : cat.coset_rep_words) {
        ctx.rep_mats.push_back(m.evaluate_word(w));
        Word winv;
        for (auto it = w.rbegin(); it != w.rend(); ++it) winv.push_back(-*it);
        ctx.rep_invs.push_back(m.evaluate_word(winv));
    }
    return ctx;
}

/// The S-isotypic component of M restricted to H: RREF basis rows, the
/// component as an H-module, and the coordinates of the projector.
struct IsotypicPart {
    Matrix basis;    // rows in M coordinates
    Module part;     // H-module on those rows
    Matrix proj_coords;  // d_M x dim(part): rho(e_S) expressed in the basis
};

inline IsotypicPart isotypic_part(const InductionContext& ctx, size_t si) {
    const PimCatalog& cat = *ctx.cat;
    const Field& f = ctx.m.field();
    Matrix P = detail::matrix_sum_scaled(f, ctx.m.dim(), ctx.h_elems, cat.isotypic_coeffs[si]);
    RowBasis rb(f, ctx.m.dim());
    rb.add_all_rows(P);
    IsotypicPart ip;
    ip.basis = rb.to_matrix();
    ip.part = submodule(ctx.m_H, rb);
    ip.proj_coords = Matrix(f, ctx.m.dim(), rb.dim());
    for (uint32_t i = 0; i < ctx.m.dim(); ++i) {
        auto coords = rb.coordinates(P.row(i));
        for (uint32_t j = 0; j < rb.dim(); ++j)
            if (coords[j]) ip.proj_coords.set(i, j, coords[j]);
    }
    return ip;
}

/// hom_G(Ind S, M) in "small" form: each element given as an s x d_M matrix
/// Phi (the underlying H-map S -> M). The full matrix against the induced
/// model has block rows Phi * rep_c.
struct PimHoms {
    size_t simple_index;
    std::vector<Matrix> small;  // s x d_M
};

inline PimHoms hom_from_pim_small(const InductionContext& ctx, size_t si) {
    const PimCatalog& cat = *ctx.cat;
    IsotypicPart ip = isotypic_part(ctx, si);
    HomSpace hs = hom_from_cyclic(cat.simple_pres_H[si], ip.part);
    PimHoms out{si, {}};
    for (auto& F : hs.basis) out.small.push_back(mat_mul(F, ip.basis));
    return out;
}

inline Matrix assemble_from_pim(const InductionContext& ctx, const Matrix& phi_small) {
    // full map Ind S -> M: block row c = phi_small * rep_c
    const Field& f = ctx.m.field();
    uint32_t s = phi_small.rows(), nc = uint32_t(ctx.rep_mats.size());
    Matrix full(f, s * nc, ctx.m.dim());
    for (uint32_t c = 0; c < nc; ++c) {
        Matrix blk = mat_mul(phi_small, ctx.rep_mats[c]);
        for (uint32_t i = 0; i < s; ++i) full.copy_row_from(c * s + i, blk, i);
    }
    return full;
}

/// hom_G(M, Ind S) in small form: each element an d_M x s matrix Psi (the
/// underlying H-map M -> S); the full matrix has column blocks rep_c^-1 * Psi.
inline PimHoms hom_to_pim_small(const InductionContext& ctx, size_t si) {
    const PimCatalog& cat = *ctx.cat;
    IsotypicPart ip = isotypic_part(ctx, si);
    // hom_H(M_S, S) = transposes of hom_H(S^*, M_S^*)
    Module msdual = dual(ip.part);
    HomSpace hs = hom_from_cyclic(cat.simple_dual_pres_H[si], msdual);
    PimHoms out{si, {}};
    for (auto& G : hs.basis) out.small.push_back(mat_mul(ip.proj_coords, G.transpose()));
    return out;
}

inline Matrix assemble_to_pim(const InductionContext& ctx, const Matrix& psi_small) {
    const Field& f = ctx.m.field();
    uint32_t s = psi_small.cols(), nc = uint32_t(ctx.rep_mats.size());
    Matrix full(f, ctx.m.dim(), s * nc);
    for (uint32_t c = 0; c < nc; ++c) {
        Matrix blk = mat_mul(ctx.rep_invs[c], psi_small);
        for (uint32_t i = 0; i < ctx.m.dim(); ++i)
            for (uint32_t j = 0; j < s; ++j)
                if (uint8_t v = blk.get(i, j)) full.set(i, c * s + j, v);
    }
    return full;
}

/// Quotient map M -> M/rad(M) as an explicit matrix (columns = non-pivot
/// coordinates of the radical).
struct HeadData {
    RowBasis rad;
    Matrix quotient;  // d_M x d_head
    Module head;
    std::vector<uint32_t> mults;  // multiplicity per simple (over its endo field)
};

inline HeadData head_data(const Module& m, const SimpleCatalog& simples) {
    HeadData h{radical_rows(m), Matrix(), Module(), {}};
    uint32_t dh = m.dim() - h.rad.dim();
    std::vector<uint32_t> freecols;
    {
        std::vector<bool> is_pivot(m.dim(), false);
        for (int p : h.rad.pivots()) is_pivot[uint32_t(p)] = true;
        for (uint32_t j = 0; j < m.dim(); ++j)
            if (!is_pivot[j]) freecols.push_back(j);
    }
    h.quotient = Matrix(m.field(), m.dim(), dh);
    for (uint32_t i = 0; i < m.dim(); ++i) {
        Matrix probe(m.field(), 1, m.dim());
        probe.set(0, i, 1);
        std::vector<uint64_t> v(probe.row(0), probe.row(0) + probe.words_per_row());
        h.rad.reduce(v.data());
        for (uint32_t j = 0; j < dh; ++j) {
            uint8_t e = Matrix::get_packed(v.data(), freecols[j], m.field().degree());
            if (e) h.quotient.set(i, j, e);
        }
    }
    h.head = quotient(m, h.rad);
    for (auto& s : simples.list) {
        HomSpace hs = hom_dense(h.head, s.rep);
        if (hs.dim() % s.endo_dim) throw std::logic_error("head multiplicity not divisible by endo dim");
        h.mults.push_back(hs.dim() / s.endo_dim);
    }
    return h;
}

/// Projective cover: a minimal projective surjecting onto M, assembled from
/// induced models by picking hom elements with independent head images.
struct CoverData {
    Module cover;
    Matrix pi;                                      // d_cover x d_M, surjective
    std::vector<std::pair<size_t, uint32_t>> blocks;  // (simple idx, count)
    Matrix omega_rows;                              // RREF basis of ker(pi) in cover coords
    HeadData head;
};

inline CoverData cover_data(const Module& m, const PimCatalog& cat, const InductionContext& ctx) {
    const Field& f = m.field();
    CoverData cd;
    cd.head = head_data(m, cat.simples);
    std::vector<Matrix> selected_full;
    Module cover;
    bool first = true;
    for (size_t si = 0; si < cat.simples.size(); ++si) {
        uint32_t want = cd.head.mults[si];
        if (!want) continue;
        PimHoms ph = hom_from_pim_small(ctx, si);
        if (ph.small.empty()) throw std::logic_error("cover_data: no homs from PIM despite head multiplicity");
        // select candidates whose head images are End(S)-independent:
        // close the accumulated row space under End_H(S) precomposition
        RowBasis seen(f, cat.simples.list[si].rep.dim() * cd.head.quotient.cols());
        uint32_t got = 0;
        for (auto& phi : ph.small) {
            if (got == want) break;
            Matrix himg = mat_mul(phi, cd.head.quotient);  // s x d_head
            // flatten
            auto flatten = [&](const Matrix& x) {
                Matrix row(f, 1, x.rows() * x.cols());
                for (uint32_t i = 0; i < x.rows(); ++i)
                    for (uint32_t j = 0; j < x.cols(); ++j)
                        if (uint8_t v = x.get(i, j)) row.set(0, i * x.cols() + j, v);
                return row;
            };
            Matrix flat = flatten(himg);
            if (seen.contains_row(flat, 0)) continue;
            // accept and close under endomorphisms of S
            for (auto& e : cat.endo_H[si]) {
                Matrix closed = mat_mul(e, himg);
                seen.add_row(flatten(closed), 0);
            }
            ++got;
            selected_full.push_back(assemble_from_pim(ctx, phi));
            cover = first ? cat.pims[si].induced : direct_sum(cover, cat.pims[si].induced);
            first = false;
            if (!cd.blocks.empty() && cd.blocks.back().first == si)
                ++cd.blocks.back().second;
            else
                cd.blocks.push_back({si, 1});
        }
        if (got != want) throw std::logic_error("cover_data: could not realize head multiplicity");
    }
    if (first) {
        cd.cover = Module::zero(m.group(), f);
        cd.pi = Matrix(f, 0, m.dim());
        cd.omega_rows = Matrix(f, 0, 0);
        return cd;
    }
    cd.cover = cover;
    cd.pi = Matrix(f, cover.dim(), m.dim());
    uint32_t at = 0;
    for (auto& blk : selected_full) {
        for (uint32_t i = 0; i < blk.rows(); ++i) cd.pi.copy_row_from(at + i, blk, i);
        at += blk.rows();
    }
    if (rank(cd.pi) != m.dim()) throw std::logic_error("cover_data: surjection rank check failed");
    // kernel rows (left kernel of pi)
    cd.omega_rows = right_nullspace(cd.pi.transpose());
    return cd;
}

inline CoverData cover_data(const Module& m, const PimCatalog& cat) {
    InductionContext ctx = make_induction_context(m, cat);
    return cover_data(m, cat, ctx);
}

/// Omega: kernel of the projective cover surjection (the Heller translate of
/// the projective-free part of M).
inline Module omega_of(const Module& m, const PimCatalog& cat) {
    if (m.dim() == 0) return m;
    CoverData cd = cover_data(m, cat);
    RowBasis rb(m.field(), cd.cover.dim());
    rb.add_all_rows(cd.omega_rows);
    return submodule(cd.cover, rb);
}

inline Module omega_inverse_of(const Module& m, const PimCatalog& cat) {
    if (m.dim() == 0) return m;
    return dual(omega_of(dual(m), cat));
}

struct StripResult {
    std::map<std::string, uint32_t> pim_mults;
    Module remainder;
    uint32_t stripped_dim = 0;
};

/// Deterministic projective stripping: remainder = Omega^-1(Omega(M));
/// multiplicities recovered from head bookkeeping and audited by dimension.
inline StripResult strip_projective_heller(const Module& m, const PimCatalog& cat) {
    StripResult out;
    if (m.dim() == 0) {
        out.remainder = m;
        return out;
    }
    InductionContext ctx = make_induction_context(m, cat);
    CoverData cd = cover_data(m, cat, ctx);
    RowBasis rb(m.field(), cd.cover.dim());
    rb.add_all_rows(cd.omega_rows);
    Module om = submodule(cd.cover, rb);
    Module rem = omega_inverse_of(om, cat);
    out.remainder = rem;
    HeadData mh = cd.head;
    HeadData rh = head_data(rem, cat.simples);
    uint32_t stripped = 0;
    for (size_t si = 0; si < cat.simples.size(); ++si) {
        if (mh.mults[si] < rh.mults[si]) throw std::logic_error("strip_heller: head bookkeeping underflow");
        uint32_t k = mh.mults[si] - rh.mults[si];
        if (k) out.pim_mults[cat.pims[si].label] = k;
        stripped += k * cat.pims[si].dim;
    }
    out.stripped_dim = stripped;
    if (stripped + rem.dim() != m.dim())
        throw std::logic_error("strip_heller: dimension audit failed (" + std::to_string(stripped) + " + " +
                               std::to_string(rem.dim()) + " != " + std::to_string(m.dim()) + ")");
    return out;
}

/// General hom space via the projective-cover presentation of the source:
/// hom(M, N) = maps cover(M) -> N vanishing on Omega(M).
inline HomSpace hom_via_cover(const Module& m, const Module& n, const PimCatalog& cat) {
    check_compatible(m, n);
    const Field& f = m.field();
    InductionContext mctx = make_induction_context(m, cat);
    CoverData cd = cover_data(m, cat, mctx);
    if (cd.cover.dim() == 0) return {m, n, {}};
    InductionContext nctx = make_induction_context(n, cat);
    // candidate maps cover -> N: per block copy, the hom basis of its PIM
    struct Candidate {
        uint32_t row_offset;
        uint32_t rows;
        Matrix full;  // rows x d_N
    };
    std::vector<Candidate> cands;
    std::map<size_t, std::vector<Matrix>> fulls;  // simple idx -> assembled basis
    {
        uint32_t off = 0;
        for (auto& [si, count] : cd.blocks) {
            if (!fulls.count(si)) {
                PimHoms ph = hom_from_pim_small(nctx, si);
                std::vector<Matrix> fs;
                for (auto& phi : ph.small) fs.push_back(assemble_from_pim(nctx, phi));
                fulls[si] = std::move(fs);
            }
            uint32_t dInd = cat.pims[si].induced.dim();
            for (uint32_t c = 0; c < count; ++c) {
                for (auto& F : fulls[si]) cands.push_back({off, dInd, F});
                off += dInd;
            }
        }
    }
    if (cands.empty()) return {m, n, {}};
    // constraints: for every omega row w, sum_i c_i * (w-block_i * F_i) = 0
    RowBasis constraint_space(f, uint32_t(cands.size()));
    for (uint32_t r = 0; r < cd.omega_rows.rows(); ++r) {
        // V: cands x d_N matrix of images
        Matrix V(f, uint32_t(cands.size()), n.dim());
        for (uint32_t i = 0; i < cands.size(); ++i) {
            const Candidate& c = cands[i];
            // slice of the omega row hitting this block copy
            Matrix wslice(f, 1, c.rows);
            bool nonzero = false;
            for (uint32_t j = 0; j < c.rows; ++j) {
                uint8_t v = cd.omega_rows.get(r, c.row_offset + j);
                if (v) {
                    wslice.set(0, j, v);
                    nonzero = true;
                }
            }
            if (!nonzero) continue;
            Matrix img = mat_mul(wslice, c.full);
            V.copy_row_from(i, img, 0);
        }
        Matrix Vt = V.transpose();
        constraint_space.add_all_rows(Vt);
        if (constraint_space.dim() == cands.size()) break;
    }
    Matrix U = constraint_space.dim() ? right_nullspace(constraint_space.to_matrix())
                                      : Matrix::identity(f, uint32_t(cands.size()));
    HomSpace out{m, n, {}};
    if (U.rows() == 0) return out;
    // descend: F_M = R * F_C with R a right inverse of pi (R * pi = I_M)
    auto Rt = solve_right(cd.pi.transpose(), Matrix::identity(f, m.dim()));
    if (!Rt) throw std::logic_error("hom_via_cover: no right inverse for surjection");
    Matrix R = Rt->transpose();
    for (uint32_t u = 0; u < U.rows(); ++u) {
        Matrix FC(f, cd.cover.dim(), n.dim());
        for (uint32_t i = 0; i < cands.size(); ++i) {
            uint8_t cc = U.get(u, i);
            if (!cc) continue;
            const Candidate& c = cands[i];
            for (uint32_t j = 0; j < c.rows; ++j) FC.row_axpy(FC.row(c.row_offset + j), c.full.row(j), cc);
        }
        out.basis.push_back(mat_mul(R, FC));
    }
    return out;
}

/// Hom space dispatcher. Small problems go dense; cyclic sources use the
/// standard-basis method; larger ones use the cover presentation (requires a
/// PIM catalog).
inline HomSpace hom_basis(const Module& m, const Module& n, const PimCatalog* cat = nullptr,
                          uint64_t seed = 0) {
    check_compatible(m, n);
    if (m.dim() == 0 || n.dim() == 0) return {m, n, {}};
    uint64_t unknowns = uint64_t(m.dim()) * n.dim();
    if (unknowns <= 3600) return hom_dense(m, n);
    if (cat && has_radical_recipe(m)) return hom_via_cover(m, n, *cat);
    auto gen = cyclic_generator(m, Rng(seed));
    if (gen) return hom_from_cyclic(cyclic_presentation(m, *gen), n);
    return hom_dense(m, n);  // last resort; only adequate for moderate sizes
}

}  // namespace modrep
