#pragma once

#include "module.hpp"

namespace modrep {

/// Basis of the space of module homomorphisms src -> tgt. A hom is a
/// d_src x d_tgt matrix F with rho_src(g) * F = F * rho_tgt(g) for every
/// generator (vectors are rows, so v -> v*F).
struct HomSpace {
    Module src, tgt;
    std::vector<Matrix> basis;

    uint32_t dim() const { return uint32_t(basis.size()); }

    Matrix combine(const std::vector<uint8_t>& coeffs) const {
        Matrix f(src.field(), src.dim(), tgt.dim());
        for (size_t i = 0; i < basis.size(); ++i)
            if (coeffs[i])
                for (uint32_t r = 0; r < f.rows(); ++r) f.row_axpy(f.row(r), basis[i].row(r), coeffs[i]);
        return f;
    }

    Matrix random_element(Rng& rng) const {
        std::vector<uint8_t> c(basis.size());
        for (auto& v : c) v = rng.field_element(src.field());
        return combine(c);
    }
};

inline bool is_hom(const Module& a, const Module& b, const Matrix& f) {
    for (size_t i = 0; i < a.gen_count(); ++i)
        if (mat_mul(a.gen(i), f) != mat_mul(f, b.gen(i))) return false;
    return true;
}

/// Dense intertwiner solve; fine up to a few thousand unknowns.
inline HomSpace hom_dense(const Module& a, const Module& b) {
    check_compatible(a, b);
    const Field& f = a.field();
    uint32_t dm = a.dim(), dn = b.dim();
    uint32_t unknowns = dm * dn;
    if (dm == 0 || dn == 0) return {a, b, {}};
    Matrix sys(f, uint32_t(a.gen_count()) * unknowns, unknowns);
    uint32_t row = 0;
    for (size_t gi = 0; gi < a.gen_count(); ++gi) {
        const Matrix& R = a.gen(gi);
        const Matrix& S = b.gen(gi);
        // constraint (R F - F S)[x, y] = 0
        for (uint32_t x = 0; x < dm; ++x)
            for (uint32_t y = 0; y < dn; ++y) {
                for (uint32_t r = 0; r < dm; ++r)
                    if (uint8_t v = R.get(x, r)) sys.set(row, r * dn + y, v);
                for (uint32_t c = 0; c < dn; ++c)
                    if (uint8_t v = S.get(c, y)) {
                        uint32_t col = x * dn + c;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                ++row;
            }
    }
    Matrix ns = right_nullspace(sys);
    HomSpace h{a, b, {}};
    for (uint32_t i = 0; i < ns.rows(); ++i) {
        Matrix F(f, dm, dn);
        for (uint32_t r = 0; r < dm; ++r)
            for (uint32_t c = 0; c < dn; ++c)
                if (uint8_t v = ns.get(i, r * dn + c)) F.set(r, c, v);
        h.basis.push_back(std::move(F));
    }
    return h;
}

/// Spin record of a cyclic module from one generating row: a basis in spin
/// order with provenance, plus every dependency met along the way. The
/// dependencies present the module; homs out of it are solutions of the
/// replayed relations.
struct CyclicPresentation {
    Module q;
    Matrix basis;  // rows: spin basis b_0 = v0, b_t = b_parent * rho(gen)
    std::vector<std::pair<int, int>> provenance;  // (parent row, generator); root (-1,-1)
    struct Dep {
        int parent;
        int gen;
        std::vector<uint8_t> coeffs;  // b_parent*rho(gen) = sum coeffs[t]*b_t
    };
    std::vector<Dep> deps;
};

inline CyclicPresentation cyclic_presentation(const Module& q, const Matrix& gen_row) {
    const Field& f = q.field();
    CyclicPresentation p;
    p.q = q;
    TrackedBasis tb(f, q.dim());
    std::vector<int> inserted_to_row;  // tracked insert index -> accepted row index
    std::vector<Matrix> rows;

    auto translate = [&](const std::vector<uint8_t>& coeffs) {
        std::vector<uint8_t> out(rows.size(), 0);
        for (size_t t = 0; t < coeffs.size(); ++t)
            if (coeffs[t]) {
                int r = inserted_to_row[t];
                if (r < 0) throw std::logic_error("cyclic_presentation: dependency hits rejected row");
                out[size_t(r)] = coeffs[t];
            }
        return out;
    };

    auto [ok0, c0] = tb.insert(gen_row.row(0));
    if (!ok0) throw std::invalid_argument("cyclic_presentation: zero generator");
    inserted_to_row.push_back(0);
    rows.push_back(gen_row);
    p.provenance.push_back({-1, -1});

    for (size_t head = 0; head < rows.size(); ++head) {
        for (size_t gi = 0; gi < q.gen_count(); ++gi) {
            Matrix cand = mat_mul(rows[head], q.gen(gi));
            auto [added, coeffs] = tb.insert(cand.row(0));
            if (added) {
                inserted_to_row.push_back(int(rows.size()));
                rows.push_back(std::move(cand));
                p.provenance.push_back({int(head), int(gi)});
            } else {
                inserted_to_row.push_back(-1);
                p.deps.push_back({int(head), int(gi), translate(coeffs)});
            }
        }
    }
    if (rows.size() != q.dim()) throw std::invalid_argument("cyclic_presentation: row is not a module generator");
    p.basis = Matrix(f, uint32_t(rows.size()), q.dim());
    for (uint32_t i = 0; i < rows.size(); ++i) p.basis.copy_row_from(i, rows[i], 0);
    return p;
}

/// Hom(Q, N) for cyclic Q with presentation p: the image u of the generator
/// determines everything; u ranges over the joint kernel of the replayed
/// dependency relations.
inline HomSpace hom_from_cyclic(const CyclicPresentation& p, const Module& n) {
    check_compatible(p.q, n);
    const Field& f = n.field();
    uint32_t dq = p.q.dim(), dn = n.dim();
    // T_t: image of basis row t is u * T_t
    std::vector<Matrix> T(dq);
    T[0] = Matrix::identity(f, dn);
    for (uint32_t t = 1; t < dq; ++t) {
        auto [par, gi] = p.provenance[t];
        T[t] = mat_mul(T[uint32_t(par)], n.gen(size_t(gi)));
    }
    // constraints: u * E = 0 for E = T_par * sigma(g) - sum c_t T_t;
    // accumulate the column space of all E's and take its perp
    RowBasis colspace(f, dn);
    for (const auto& dep : p.deps) {
        Matrix E = mat_mul(T[uint32_t(dep.parent)], n.gen(size_t(dep.gen)));
        for (uint32_t t = 0; t < dq; ++t)
            if (t < dep.coeffs.size() && dep.coeffs[t])
                for (uint32_t r = 0; r < dn; ++r) E.row_axpy(E.row(r), T[t].row(r), dep.coeffs[t]);
        Matrix Et = E.transpose();
        colspace.add_all_rows(Et);
        if (colspace.dim() == dn) break;  // only the zero hom remains
    }
    Matrix U = right_nullspace(colspace.to_matrix().rows() ? colspace.to_matrix() : Matrix(f, 0, dn));
    if (colspace.dim() == 0) U = Matrix::identity(f, dn);
    HomSpace h{p.q, n, {}};
    if (U.rows() == 0) return h;
    auto binv = invert(p.basis);
    if (!binv) throw std::logic_error("hom_from_cyclic: spin basis singular");
    for (uint32_t i = 0; i < U.rows(); ++i) {
        // F's rows in Q's spin basis: row t = u * T_t; convert to Q's own
        // coordinates: F_std = basis^-1 * F_spin
        Matrix Fspin(f, dq, dn);
        Matrix u = U.take_rows(i, i + 1);
        for (uint32_t t = 0; t < dq; ++t) {
            Matrix img = mat_mul(u, T[t]);
            Fspin.copy_row_from(t, img, 0);
        }
        h.basis.push_back(mat_mul(*binv, Fspin));
    }
    return h;
}

/// Q must be generated by a single row; found by trying unit vectors and a
/// few seeded random rows.
inline std::optional<Matrix> cyclic_generator(const Module& q, Rng rng, unsigned tries = 16) {
    if (q.dim() == 0) return std::nullopt;
    if (has_radical_recipe(q)) {
        Matrix gens = module_generators(q);
        if (gens.rows() == 1) return gens;
        // multiplicity-free head: the sum of the head lifts generates
        Matrix v(q.field(), 1, q.dim());
        for (uint32_t i = 0; i < gens.rows(); ++i) v.row_xor(v.row(0), gens.row(i));
        if (spin(q, v).dim() == q.dim()) return v;
    }
    for (uint32_t i = 0; i < std::min(q.dim(), 8u); ++i) {
        Matrix v(q.field(), 1, q.dim());
        v.set(0, i, 1);
        if (spin(q, v).dim() == q.dim()) return v;
    }
    for (unsigned t = 0; t < tries; ++t) {
        Matrix v(q.field(), 1, q.dim());
        v.randomize(rng);
        if (spin(q, v).dim() == q.dim()) return v;
    }
    return std::nullopt;
}

}  // namespace modrep
