#pragma once

#include "projective.hpp"

namespace modrep {

// ---------------------------------------------------------------------------
// generic chop (MeatAxe) on a list of action matrices

struct ChopFactor {
    std::vector<Matrix> action;  // one matrix per input generator
    uint32_t dim = 0;
};

namespace detail {

inline std::vector<Matrix> sub_action(const std::vector<Matrix>& mats, const RowBasis& rb) {
    std::vector<Matrix> out;
    Matrix B = rb.to_matrix();
    for (auto& g : mats) {
        Matrix img = mat_mul(B, g);
        Matrix a(B.field(), rb.dim(), rb.dim());
        for (uint32_t i = 0; i < rb.dim(); ++i) {
            std::vector<uint64_t> v(img.row(i), img.row(i) + img.words_per_row());
            if (rb.reduce(v.data()) >= 0) throw std::logic_error("sub_action: not invariant");
            auto c = rb.coordinates(img.row(i));
            for (uint32_t j = 0; j < rb.dim(); ++j)
                if (c[j]) a.set(i, j, c[j]);
        }
        out.push_back(std::move(a));
    }
    return out;
}

inline std::vector<Matrix> quot_action(const std::vector<Matrix>& mats, const RowBasis& rb) {
    const Field& f = mats[0].field();
    uint32_t d = mats[0].rows(), q = d - rb.dim();
    std::vector<uint32_t> freecols;
    {
        std::vector<bool> piv(d, false);
        for (int p : rb.pivots()) piv[uint32_t(p)] = true;
        for (uint32_t j = 0; j < d; ++j)
            if (!piv[j]) freecols.push_back(j);
    }
    std::vector<Matrix> out;
    for (auto& g : mats) {
        Matrix a(f, q, q);
        for (uint32_t i = 0; i < q; ++i) {
            Matrix probe(f, 1, d);
            probe.set(0, freecols[i], 1);
            Matrix img = mat_mul(probe, g);
            std::vector<uint64_t> v(img.row(0), img.row(0) + img.words_per_row());
            rb.reduce(v.data());
            for (uint32_t j = 0; j < q; ++j) {
                uint8_t e = Matrix::get_packed(v.data(), freecols[j], f.degree());
                if (e) a.set(i, j, e);
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

inline RowBasis spin_rows(const std::vector<Matrix>& mats, const Matrix& seed) {
    const Field& f = mats[0].field();
    uint32_t d = mats[0].rows();
    RowBasis basis(f, d);
    std::vector<uint32_t> queue;
    for (uint32_t i = 0; i < seed.rows(); ++i)
        if (basis.add_row(seed, i)) queue.push_back(basis.dim() - 1);
    for (size_t head = 0; head < queue.size(); ++head) {
        Matrix v(f, 1, d);
        std::memcpy(v.row(0), basis.row(queue[head]), v.words_per_row() * 8);
        for (auto& g : mats) {
            Matrix w = mat_mul(v, g);
            if (basis.add_row(w, 0)) queue.push_back(basis.dim() - 1);
        }
    }
    return basis;
}

inline Matrix random_algebra_element(const std::vector<Matrix>& mats, Rng& rng) {
    const Field& f = mats[0].field();
    uint32_t d = mats[0].rows();
    // random combination of all generators, optionally multiplied by a second
    // combination: covers the algebra broadly even with many generators
    auto combo = [&]() {
        Matrix acc(f, d, d);
        bool nonzero = false;
        for (auto& g : mats)
            if (uint8_t c = rng.field_element(f)) {
                for (uint32_t i = 0; i < d; ++i) acc.row_axpy(acc.row(i), g.row(i), c);
                nonzero = true;
            }
        if (!nonzero)
            for (uint32_t i = 0; i < d; ++i) acc.row_xor(acc.row(i), mats[rng.below(mats.size())].row(i));
        return acc;
    };
    Matrix a = combo();
    if (rng.coin()) a = mat_mul(a, combo());
    return a;
}

/// Proper invariant row space of the module given by `mats`, or nullopt with
/// a proof of irreducibility (Norton's criterion).
inline std::optional<RowBasis> find_invariant_subspace(const std::vector<Matrix>& mats, Rng& rng,
                                                       unsigned budget = 40) {
    const Field& f = mats[0].field();
    uint32_t d = mats[0].rows();
    if (d <= 1) return std::nullopt;
    for (unsigned attempt = 0; attempt < budget; ++attempt) {
        Matrix w = random_algebra_element(mats, rng);
        Poly mp = minimal_polynomial(w);
        Rng frng = rng.split(attempt);
        auto factors = poly_factor(mp, frng);
        // try factors by ascending degree
        std::vector<Poly> fs;
        for (auto& [p, mult] : factors) fs.push_back(p);
        std::sort(fs.begin(), fs.end(), [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
        for (auto& p : fs) {
            Matrix pw = poly_eval_matrix(p, w);
            Matrix ker = right_nullspace(pw.transpose());  // rows v with v*p(w) = 0
            if (ker.rows() == 0) continue;
            for (uint32_t i = 0; i < ker.rows(); ++i) {
                RowBasis s = spin_rows(mats, ker.take_rows(i, i + 1));
                if (s.dim() < d) return s;
            }
            // all primal spins full: try the transposed module; a proper
            // transposed submodule gives a proper submodule as its perp
            std::vector<Matrix> tmats;
            for (auto& g : mats) tmats.push_back(g.transpose());
            Matrix kert = right_nullspace(pw);  // rows v with v*p(w)^T = 0
            bool transpose_full = true;
            for (uint32_t i = 0; i < kert.rows(); ++i) {
                RowBasis st = spin_rows(tmats, kert.take_rows(i, i + 1));
                if (st.dim() < d) {
                    Matrix perp = right_nullspace(st.to_matrix());
                    RowBasis rb(f, d);
                    rb.add_all_rows(perp);
                    if (rb.dim() == 0 || rb.dim() == d) throw std::logic_error("chop: bad perp");
                    return rb;
                }
                if (st.dim() != d) transpose_full = false;
            }
            if (transpose_full && kert.rows() && ker.rows() == uint32_t(p.degree()))
                return std::nullopt;  // Norton's criterion: certified irreducible
        }
    }
    throw std::runtime_error("find_invariant_subspace: budget exhausted");
}

inline void chop_rec(const std::vector<Matrix>& mats, Rng& rng, std::vector<ChopFactor>& out) {
    uint32_t d = mats[0].rows();
    if (d == 0) return;
    auto sub = find_invariant_subspace(mats, rng);
    if (!sub) {
        out.push_back({mats, d});
        return;
    }
    chop_rec(sub_action(mats, *sub), rng, out);
    chop_rec(quot_action(mats, *sub), rng, out);
}

}  // namespace detail

/// Composition factors (as raw action-matrix tuples) of the module defined
/// by `mats`.
inline std::vector<ChopFactor> chop_composition_factors(const std::vector<Matrix>& mats, Rng rng) {
    std::vector<ChopFactor> out;
    if (mats.empty() || mats[0].rows() == 0) return out;
    detail::chop_rec(mats, rng, out);
    return out;
}

// ---------------------------------------------------------------------------
// endomorphism rings and their radicals

struct EndoRing {
    Module m;
    std::vector<Matrix> basis;
    // expression machinery: RREF data over vec-coordinates
    std::vector<uint32_t> pivot_entries;           // flattened (i*d+j) pivot positions
    std::vector<std::vector<uint8_t>> rref_expr;   // rref row r = sum expr[r][t] * basis_t
    std::vector<Matrix> right_mult;                // A_i: row j = coords(basis_j * basis_i)

    uint32_t dim() const { return uint32_t(basis.size()); }

    std::vector<uint8_t> express(const Matrix& x) const {
        const Field& f = m.field();
        uint32_t d = m.dim();
        std::vector<uint8_t> c(basis.size(), 0);
        // residual reduction against rref rows (implicit): coordinates w.r.t.
        // rref rows are just the pivot entries of x after full reduction; but
        // the rref rows are linear combos of basis, so recombine
        // we stored enough: pivot entries of x give coords over rref rows
        // only valid when x lies in the span (always, for products)
        std::vector<uint8_t> rcoords(pivot_entries.size());
        // reduce x against rref rows represented via pivots: since rref rows
        // have unit pivots and zeros at other pivots, coords = entries at
        // pivot positions of x
        for (size_t r = 0; r < pivot_entries.size(); ++r) {
            uint32_t pe = pivot_entries[r];
            rcoords[r] = x.get(pe / d, pe % d);
        }
        for (size_t r = 0; r < rcoords.size(); ++r)
            if (rcoords[r])
                for (size_t t = 0; t < basis.size(); ++t)
                    c[t] = f.add(c[t], f.mul(rcoords[r], rref_expr[r][t]));
        return c;
    }

    Matrix from_coords(const std::vector<uint8_t>& c) const {
        Matrix x(m.field(), m.dim(), m.dim());
        for (size_t t = 0; t < basis.size(); ++t)
            if (c[t])
                for (uint32_t i = 0; i < m.dim(); ++i) x.row_axpy(x.row(i), basis[t].row(i), c[t]);
        return x;
    }

    std::vector<uint8_t> mult_coords(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y) const {
        // x*y = sum_i y_i * (x * f_i) = sum_i y_i * (x dot A_i)
        const Field& f = m.field();
        std::vector<uint8_t> out(basis.size(), 0);
        for (size_t i = 0; i < basis.size(); ++i) {
            if (!y[i]) continue;
            // row vector x times A_i
            for (size_t j = 0; j < basis.size(); ++j) {
                if (!x[j]) continue;
                for (size_t t = 0; t < basis.size(); ++t) {
                    uint8_t a = right_mult[i].get(uint32_t(j), uint32_t(t));
                    if (a) out[t] = f.add(out[t], f.mul(f.mul(x[j], y[i]), a));
                }
            }
        }
        return out;
    }
};

inline EndoRing endo_ring(const Module& m, const PimCatalog* cat = nullptr, uint64_t seed = 0) {
    EndoRing e;
    e.m = m;
    HomSpace hs = hom_basis(m, m, cat, seed);
    e.basis = hs.basis;
    const Field& f = m.field();
    uint32_t d = m.dim();
    // RREF over vec coordinates, tracking each reduced row as a combination
    // of the original basis, so products can be re-expressed by reading
    // pivot entries
    std::vector<std::vector<uint64_t>> rows;
    std::vector<std::vector<uint8_t>> expr;
    std::vector<int> pivot;
    uint32_t wpr = Matrix::words_per_row(f, d * d);
    auto entry = [&](const std::vector<uint64_t>& v, uint32_t j) { return Matrix::get_packed(v.data(), j, f.degree()); };
    auto axpy = [&](std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, uint8_t c) {
        for (uint32_t jj = 0; jj < d * d; ++jj) {
            uint8_t s = Matrix::get_packed(src.data(), jj, f.degree());
            if (s)
                Matrix::set_packed(dst.data(), jj, f.degree(),
                                   uint8_t(Matrix::get_packed(dst.data(), jj, f.degree()) ^ f.mul(c, s)));
        }
    };
    for (size_t t = 0; t < e.basis.size(); ++t) {
        std::vector<uint64_t> v(wpr, 0);
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t j = 0; j < d; ++j)
                if (uint8_t val = e.basis[t].get(i, j)) Matrix::set_packed(v.data(), i * d + j, f.degree(), val);
        std::vector<uint8_t> ex(e.basis.size(), 0);
        ex[t] = 1;
        for (size_t r = 0; r < rows.size(); ++r) {
            uint8_t c = entry(v, uint32_t(pivot[r]));
            if (!c) continue;
            axpy(v, rows[r], c);
            for (size_t tt = 0; tt < e.basis.size(); ++tt) ex[tt] = f.add(ex[tt], f.mul(c, expr[r][tt]));
        }
        int lead = -1;
        for (uint32_t jj = 0; jj < d * d; ++jj)
            if (entry(v, jj)) {
                lead = int(jj);
                break;
            }
        if (lead < 0) throw std::logic_error("endo_ring: dependent hom basis");
        uint8_t lv = entry(v, uint32_t(lead));
        if (lv != 1) {
            uint8_t inv = f.inv(lv);
            for (uint32_t jj = 0; jj < d * d; ++jj)
                if (uint8_t s = entry(v, jj)) Matrix::set_packed(v.data(), jj, f.degree(), f.mul(inv, s));
            for (auto& qq : ex) qq = f.mul(inv, qq);
        }
        for (size_t r = 0; r < rows.size(); ++r) {
            uint8_t c = entry(rows[r], uint32_t(lead));
            if (!c) continue;
            axpy(rows[r], v, c);
            for (size_t tt = 0; tt < e.basis.size(); ++tt)
                expr[r][tt] = f.add(expr[r][tt], f.mul(c, ex[tt]));
        }
        rows.push_back(std::move(v));
        expr.push_back(std::move(ex));
        pivot.push_back(lead);
    }
    for (int p : pivot) e.pivot_entries.push_back(uint32_t(p));
    e.rref_expr = std::move(expr);
    // right multiplication tables
    for (size_t i = 0; i < e.basis.size(); ++i) {
        Matrix A(f, uint32_t(e.basis.size()), uint32_t(e.basis.size()));
        for (size_t j = 0; j < e.basis.size(); ++j) {
            Matrix prod = mat_mul(e.basis[j], e.basis[i]);
            auto c = e.express(prod);
            for (size_t t = 0; t < c.size(); ++t)
                if (c[t]) A.set(uint32_t(j), uint32_t(t), c[t]);
        }
        e.right_mult.push_back(std::move(A));
    }
    return e;
}

/// Jacobson radical of the endomorphism ring, as coordinate rows over the
/// endo basis: common annihilator of the composition factors of the regular
/// module.
inline RowBasis endo_radical(const EndoRing& e, Rng rng) {
    const Field& f = e.m.field();
    uint32_t mdim = e.dim();
    auto factors = chop_composition_factors(e.right_mult, rng);
    // x = sum c_i f_i lies in J iff sum c_i lambda(f_i) = 0 in every factor
    uint32_t eqcols = 0;
    for (auto& fac : factors) eqcols += fac.dim * fac.dim;
    Matrix sys(f, mdim, eqcols);
    for (uint32_t i = 0; i < mdim; ++i) {
        uint32_t at = 0;
        for (auto& fac : factors) {
            // lambda(f_i) on this factor = action matrix i
            const Matrix& L = fac.action[i];
            for (uint32_t a = 0; a < fac.dim; ++a)
                for (uint32_t b = 0; b < fac.dim; ++b) {
                    if (uint8_t v = L.get(a, b)) sys.set(i, at + a * fac.dim + b, v);
                }
            at += fac.dim * fac.dim;
        }
    }
    // left kernel rows of sys
    Matrix ker = right_nullspace(sys.transpose());
    RowBasis rb(f, mdim);
    rb.add_all_rows(ker);
    return rb;
}

struct QuotientAlgebra {
    const EndoRing* e;
    RowBasis jbasis;                 // RREF rows over endo coords
    std::vector<uint32_t> freecols;  // complement coordinates
    uint32_t dim = 0;

    std::vector<uint8_t> project(const std::vector<uint8_t>& x) const {
        const Field& f = e->m.field();
        Matrix v(f, 1, e->dim());
        for (size_t t = 0; t < x.size(); ++t)
            if (x[t]) v.set(0, uint32_t(t), x[t]);
        std::vector<uint64_t> w(v.row(0), v.row(0) + v.words_per_row());
        jbasis.reduce(w.data());
        std::vector<uint8_t> out(dim, 0);
        for (uint32_t j = 0; j < dim; ++j) out[j] = Matrix::get_packed(w.data(), freecols[j], f.degree());
        return out;
    }

    std::vector<uint8_t> lift(const std::vector<uint8_t>& xbar) const {
        std::vector<uint8_t> out(e->dim(), 0);
        for (uint32_t j = 0; j < dim; ++j) out[freecols[j]] = xbar[j];
        return out;
    }

    std::vector<uint8_t> mult(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) const {
        return project(e->mult_coords(lift(a), lift(b)));
    }

    /// Matrix of right multiplication by xbar on the quotient algebra.
    Matrix mult_matrix(const std::vector<uint8_t>& xbar) const {
        const Field& f = e->m.field();
        Matrix A(f, dim, dim);
        for (uint32_t r = 0; r < dim; ++r) {
            std::vector<uint8_t> unit(dim, 0);
            unit[r] = 1;
            auto prod = mult(unit, xbar);
            for (uint32_t t = 0; t < dim; ++t)
                if (prod[t]) A.set(r, t, prod[t]);
        }
        return A;
    }
};

inline QuotientAlgebra make_quotient_algebra(const EndoRing& e, RowBasis j) {
    QuotientAlgebra q{&e, std::move(j), {}, 0};
    std::vector<bool> piv(e.dim(), false);
    for (int p : q.jbasis.pivots()) piv[uint32_t(p)] = true;
    for (uint32_t t = 0; t < e.dim(); ++t)
        if (!piv[t]) q.freecols.push_back(t);
    q.dim = uint32_t(q.freecols.size());
    return q;
}

// ---------------------------------------------------------------------------
// splitting and certification

struct FittingSplit {
    Module ker_part, im_part;
    Matrix ker_basis, im_basis;  // rows in M coordinates
};

/// Stabilize f under squaring; if the stable rank is proper, M splits as
/// ker(f^inf) (+) im(f^inf).
inline std::optional<FittingSplit> fitting_split(const Module& m, const Matrix& f) {
    Matrix g = f;
    uint32_t r = rank(g);
    for (;;) {
        Matrix g2 = mat_mul(g, g);
        uint32_t r2 = rank(g2);
        if (r2 == r) break;
        g = std::move(g2);
        r = r2;
    }
    if (r == 0 || r == m.dim()) return std::nullopt;
    Matrix ker = right_nullspace(g.transpose());  // rows v with v g = 0
    RowBasis kb(m.field(), m.dim());
    kb.add_all_rows(ker);
    RowBasis ib(m.field(), m.dim());  // row space of g
    ib.add_all_rows(g);
    if (kb.dim() + ib.dim() != m.dim()) throw std::logic_error("fitting_split: not a direct decomposition");
    FittingSplit out{submodule(m, kb), submodule(m, ib), kb.to_matrix(), ib.to_matrix()};
    return out;
}

enum class CertLevel { Certified, Probabilistic };

struct IndecomposabilityResult {
    enum Kind { Certified, Probabilistic, Split } kind;
    std::optional<Matrix> split_endo;  // when kind == Split
};

/// Local-endomorphism-ring test. Certified iff End/J is generated by one
/// element whose minimal polynomial is irreducible of full degree (i.e.
/// End/J is a finite field). If a nontrivial idempotent turns up instead, a
/// splitting endomorphism is returned.
inline IndecomposabilityResult certify_indecomposable(const Module& m, uint64_t seed,
                                                      const PimCatalog* cat = nullptr, unsigned budget = 32) {
    if (m.dim() == 0) return {IndecomposabilityResult::Probabilistic, std::nullopt};
    const Field& f = m.field();
    EndoRing e = endo_ring(m, cat, seed);
    if (e.dim() == 1) return {IndecomposabilityResult::Certified, std::nullopt};
    Rng rng = Rng(seed).split(0x9d5f);
    RowBasis j = endo_radical(e, rng.split(1));
    QuotientAlgebra q = make_quotient_algebra(e, std::move(j));
    if (q.dim == 1) return {IndecomposabilityResult::Certified, std::nullopt};

    auto try_element = [&](const std::vector<uint8_t>& xbar)
        -> std::optional<IndecomposabilityResult> {
        Matrix rm = q.mult_matrix(xbar);
        Poly mp = minimal_polynomial(rm);
        Rng frng = rng.split(matrix_hash(rm));
        auto factors = poly_factor(mp, frng);
        if (factors.size() == 1 && factors.begin()->second == 1 && factors.begin()->first.degree() == int(q.dim))
            return IndecomposabilityResult{IndecomposabilityResult::Certified, std::nullopt};
        if (factors.size() >= 2) {
            // coprime split: e = (v*B)(x) with A = p1^e1, B = mp/A
            auto it = factors.begin();
            Poly A = Poly::one(f);
            for (unsigned t = 0; t < it->second; ++t) A = poly_mul(A, it->first);
            Poly B = poly_divmod(mp, A).first;
            auto [g, u, v] = poly_xgcd(A, B);
            if (g.degree() != 0) return std::nullopt;  // not coprime (can't happen)
            Poly idem = poly_mod(poly_mul(v, B), mp);
            // evaluate idem at xbar inside the quotient algebra
            std::vector<uint8_t> acc(q.dim, 0);
            std::vector<uint8_t> power(q.dim, 0);
            // power = 1 (unit of the algebra): express identity endo
            auto unit_coords = [&]() {
                auto c = e.express(Matrix::identity(f, m.dim()));
                return q.project(c);
            };
            power = unit_coords();
            for (size_t t = 0; t < idem.c.size(); ++t) {
                if (idem.c[t]) {
                    for (uint32_t r = 0; r < q.dim; ++r) acc[r] = f.add(acc[r], f.mul(idem.c[t], power[r]));
                }
                if (t + 1 < idem.c.size()) power = q.mult(power, xbar);
            }
            // acc is a nontrivial idempotent of End/J; lift by squaring
            std::vector<uint8_t> y = q.lift(acc);
            for (unsigned it2 = 0; it2 < 40; ++it2) {
                auto y2 = e.mult_coords(y, y);
                if (y2 == y) break;
                y = std::move(y2);
            }
            if (e.mult_coords(y, y) != y) return std::nullopt;  // lift failed; try other element
            Matrix em = e.from_coords(y);
            if (em.is_zero() || em == Matrix::identity(f, m.dim())) return std::nullopt;
            return IndecomposabilityResult{IndecomposabilityResult::Split, em};
        }
        return std::nullopt;
    };

    // deterministic candidates first: quotient unit vectors and sums
    for (uint32_t i = 0; i < q.dim; ++i) {
        std::vector<uint8_t> xbar(q.dim, 0);
        xbar[i] = 1;
        if (auto r = try_element(xbar)) return *r;
    }
    for (uint32_t i = 0; i + 1 < q.dim && i < 8; ++i)
        for (uint32_t jj = i + 1; jj < q.dim && jj < 8; ++jj) {
            std::vector<uint8_t> xbar(q.dim, 0);
            xbar[i] = 1;
            xbar[jj] = 1;
            if (auto r = try_element(xbar)) return *r;
        }
    for (unsigned t = 0; t < budget; ++t) {
        std::vector<uint8_t> xbar(q.dim);
        for (auto& v : xbar) v = rng.field_element(f);
        if (auto r = try_element(xbar)) return *r;
    }
    return {IndecomposabilityResult::Probabilistic, std::nullopt};
}

struct IsoResult {
    enum Verdict { Yes, No, Undecided } verdict;
    std::optional<Matrix> iso;
};

inline IsoResult is_isomorphic(const Module& a, const Module& b, uint64_t seed = 0,
                               const PimCatalog* cat = nullptr, unsigned budget = 32) {
    if (!same_group(a, b) || a.field() != b.field()) return {IsoResult::No, std::nullopt};
    if (a.dim() != b.dim()) return {IsoResult::No, std::nullopt};
    if (a.dim() == 0) return {IsoResult::Yes, Matrix(a.field(), 0, 0)};
    if (a.same_matrices(b)) return {IsoResult::Yes, Matrix::identity(a.field(), a.dim())};
    HomSpace hs = hom_basis(a, b, cat, seed);
    if (hs.dim() == 0) return {IsoResult::No, std::nullopt};
    for (auto& f : hs.basis)
        if (is_invertible(f)) return {IsoResult::Yes, f};
    Rng rng = Rng(seed).split(0x150);
    for (unsigned i = 0; i + 1 < hs.dim() && i < 6; ++i)
        for (unsigned j = i + 1; j < hs.dim() && j < 6; ++j) {
            Matrix f = hs.basis[i];
            for (uint32_t r = 0; r < f.rows(); ++r) f.row_xor(f.row(r), hs.basis[j].row(r));
            if (is_invertible(f)) return {IsoResult::Yes, f};
        }
    for (unsigned t = 0; t < budget; ++t) {
        Matrix f = hs.random_element(rng);
        if (is_invertible(f)) return {IsoResult::Yes, f};
    }
    return {IsoResult::Undecided, std::nullopt};
}

// ---------------------------------------------------------------------------
// projective stripping, probabilistic methods

struct FreeStripResult {
    uint32_t free_rank = 0;
    Module remainder;
};

/// Strip free direct summands of a module over a 2-group: spin seeded random
/// vectors; a spin of dimension |P| is a free rank-1 summand, split off by a
/// relative-trace retraction. Stops after `budget` consecutive failures.
inline FreeStripResult strip_free_pgroup(const Module& m, uint64_t seed, unsigned budget = 32) {
    const GroupData& g = *m.group();
    if (!g.is_2group()) throw std::invalid_argument("strip_free_pgroup: group is not a 2-group");
    const Field& f = m.field();
    uint32_t order = uint32_t(g.order());
    if (m.dim() == 0) return {0, m};
    // all element matrices (tree evaluation)
    const auto& tab = g.elements();
    std::vector<Matrix> elems(order);
    elems[0] = Matrix::identity(f, m.dim());
    for (uint32_t i = 1; i < order; ++i) {
        auto [par, gi] = tab.built_from[i];
        elems[i] = mat_mul(elems[par], m.gen(gi));
    }
    Matrix norm(f, m.dim(), m.dim());
    for (auto& el : elems)
        for (uint32_t i = 0; i < m.dim(); ++i) norm.row_xor(norm.row(i), el.row(i));
    Rng rng = Rng(seed).split(0xf8ee);
    RowBasis norm_span(f, m.dim());
    std::vector<Matrix> seeds;
    unsigned failures = 0;
    while (failures < budget) {
        Matrix v(f, 1, m.dim());
        v.randomize(rng);
        Matrix nv = mat_mul(v, norm);
        if (nv.row_is_zero(0) || norm_span.contains_row(nv, 0)) {
            ++failures;
            continue;
        }
        if (spin(m, v).dim() != order) {
            ++failures;  // cannot happen for nonzero norm image; keep honest
            continue;
        }
        norm_span.add_row(nv, 0);
        seeds.push_back(v);
        failures = 0;
    }
    uint32_t r = uint32_t(seeds.size());
    if (r == 0) return {0, m};
    // free part F: rows v_i * elem_x
    Matrix frows(f, r * order, m.dim());
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t x = 0; x < order; ++x) {
            Matrix row = mat_mul(seeds[i], elems[x]);
            frows.copy_row_from(i * order + x, row, 0);
        }
    if (rank(frows) != r * order) throw std::logic_error("strip_free_pgroup: free part degenerate");
    // retraction functionals: phi_i(v_j * elem_z) = delta_ij [z == identity]
    Matrix pairing(f, m.dim(), m.dim());
    for (uint32_t i = 0; i < r; ++i) {
        Matrix target(f, r * order, 1);
        target.set(i * order + 0, 0, 1);  // element index 0 is the identity
        auto phi = solve_right(frows, target);
        if (!phi) throw std::logic_error("strip_free_pgroup: retraction solve failed");
        // pairing += phi^T * v_i   (rank-one update)
        for (uint32_t a = 0; a < m.dim(); ++a) {
            uint8_t pa = phi->get(a, 0);
            if (pa) pairing.row_axpy(pairing.row(a), seeds[i].row(0), pa);
        }
    }
    // e = Tr_1^P(pairing) = sum_x elem_x * pairing * elem_x^-1; projection onto F
    Matrix e(f, m.dim(), m.dim());
    for (uint32_t x = 0; x < order; ++x) {
        auto inv = invert(elems[x]);
        Matrix term = mat_mul(elems[x], mat_mul(pairing, *inv));
        for (uint32_t i = 0; i < m.dim(); ++i) e.row_xor(e.row(i), term.row(i));
    }
    Matrix ker = right_nullspace(e.transpose());
    RowBasis kb(f, m.dim());
    kb.add_all_rows(ker);
    if (kb.dim() != m.dim() - r * order) throw std::logic_error("strip_free_pgroup: projection rank mismatch");
    FreeStripResult out{r, submodule(m, kb)};
    return out;
}

/// Probabilistic projective stripping over any group with a PIM catalog.
/// For each PIM Q, the rank over End(S)/rad of the pairing
/// hom(M,Q) x hom(Q,M) -> End(Q) -> End(S) equals the multiplicity of Q in
/// M (composites through other summands land in the radical). Seeded random
/// pairs estimate that rank; the selected maps are stacked across all PIM
/// types and split off with one idempotent.
inline StripResult strip_projective_general(const Module& m, const PimCatalog& cat, uint64_t seed) {
    StripResult out;
    out.remainder = m;
    if (m.dim() == 0) return out;
    const Field& f = m.field();
    Rng rng = Rng(seed).split(0x57a1);
    InductionContext ctx = make_induction_context(m, cat);
    std::vector<Matrix> sel_alpha, sel_beta;  // per selected copy: Q->M (dQ x dM), M->Q
    std::vector<size_t> sel_pim;
    for (size_t si = 0; si < cat.pims.size(); ++si) {
        const PimEntry& pim = cat.pims[si];
        const Module& q = pim.induced;
        uint32_t s = cat.simples.list[si].rep.dim();
        if (m.dim() < q.dim()) continue;
        PimHoms from = hom_from_pim_small(ctx, si);
        PimHoms to = hom_to_pim_small(ctx, si);
        if (from.small.empty() || to.small.empty()) continue;
        auto head_of = [&](const Matrix& ab) {
            auto x = solve_right(pim.head_quotient, mat_mul(ab, pim.head_quotient));
            if (!x) throw std::logic_error("strip_general: head projection failed");
            return *x;
        };
        unsigned sample = 8;
        for (;;) {
            std::vector<Matrix> As, Bs;
            Rng srng = rng.split(sample * 1009 + si);
            for (unsigned t = 0; t < sample; ++t) {
                Matrix phi(f, s, m.dim());
                for (size_t i = 0; i < from.small.size(); ++i)
                    if (uint8_t c = srng.field_element(f))
                        for (uint32_t rr = 0; rr < s; ++rr) phi.row_axpy(phi.row(rr), from.small[i].row(rr), c);
                Matrix psi(f, m.dim(), s);
                for (size_t i = 0; i < to.small.size(); ++i)
                    if (uint8_t c = srng.field_element(f))
                        for (uint32_t rr = 0; rr < m.dim(); ++rr)
                            psi.row_axpy(psi.row(rr), to.small[i].row(rr), c);
                As.push_back(assemble_from_pim(ctx, phi));
                Bs.push_back(assemble_to_pim(ctx, psi));
            }
            Matrix block(f, sample * s, sample * s);
            for (unsigned i = 0; i < sample; ++i)
                for (unsigned j = 0; j < sample; ++j) {
                    Matrix lam = head_of(mat_mul(As[j], Bs[i]));  // alpha_j then beta_i
                    for (uint32_t a = 0; a < s; ++a)
                        for (uint32_t b = 0; b < s; ++b)
                            if (uint8_t v = lam.get(a, b)) block.set(i * s + a, j * s + b, v);
                }
            uint32_t rk = rank(block);
            if (rk % s) throw std::logic_error("strip_general: pairing rank not divisible by simple dim");
            uint32_t mult = rk / s;
            if (mult == sample && sample * q.dim() <= 2 * m.dim()) {
                sample *= 2;
                continue;  // rank may be saturated by the sample size
            }
            if (mult == 0) break;
            // greedy: mult columns, then mult rows, with End(S)-independent blocks
            std::vector<unsigned> cols, rowsel;
            RowBasis cs(f, sample * s);
            for (unsigned j = 0; j < sample && cols.size() < mult; ++j) {
                uint32_t before = cs.dim();
                Matrix cblock(f, s, sample * s);
                for (uint32_t a = 0; a < sample * s; ++a)
                    for (uint32_t b = 0; b < s; ++b)
                        if (uint8_t v = block.get(a, j * s + b)) cblock.set(b, a, v);
                cs.add_all_rows(cblock);
                if (cs.dim() == before + s) cols.push_back(j);
            }
            RowBasis rs(f, uint32_t(cols.size()) * s);
            for (unsigned i = 0; i < sample && rowsel.size() < mult; ++i) {
                uint32_t before = rs.dim();
                Matrix rblock(f, s, uint32_t(cols.size()) * s);
                for (size_t cj = 0; cj < cols.size(); ++cj)
                    for (uint32_t a = 0; a < s; ++a)
                        for (uint32_t b = 0; b < s; ++b)
                            if (uint8_t v = block.get(i * s + a, cols[cj] * s + b))
                                rblock.set(a, uint32_t(cj) * s + b, v);
                rs.add_all_rows(rblock);
                if (rs.dim() == before + s) rowsel.push_back(i);
            }
            if (cols.size() != mult || rowsel.size() != mult)
                throw std::logic_error("strip_general: submatrix selection failed");
            for (unsigned t = 0; t < mult; ++t) {
                sel_alpha.push_back(As[cols[t]]);
                sel_beta.push_back(Bs[rowsel[t]]);
                sel_pim.push_back(si);
            }
            out.pim_mults[pim.label] += mult;
            out.stripped_dim += mult * q.dim();
            break;
        }
    }
    if (sel_alpha.empty()) return out;
    // stack everything: A: Q_total -> M, B: M -> Q_total
    uint32_t qtot = 0;
    for (size_t t = 0; t < sel_alpha.size(); ++t) qtot += sel_alpha[t].rows();
    Matrix A(f, qtot, m.dim()), B(f, m.dim(), qtot);
    uint32_t at = 0;
    for (size_t t = 0; t < sel_alpha.size(); ++t) {
        uint32_t dq = sel_alpha[t].rows();
        for (uint32_t i = 0; i < dq; ++i) A.copy_row_from(at + i, sel_alpha[t], i);
        for (uint32_t i = 0; i < m.dim(); ++i)
            for (uint32_t j = 0; j < dq; ++j)
                if (uint8_t v = sel_beta[t].get(i, j)) B.set(i, at + j, v);
        at += dq;
    }
    Matrix BA = mat_mul(A, B);  // Q_total -> Q_total
    auto BAinv = invert(BA);
    if (!BAinv) throw std::logic_error("strip_general: stacked pairing not invertible");
    Matrix e = mat_mul(B, mat_mul(*BAinv, A));  // projection of M onto the projective part
    auto split = fitting_split(m, e);
    if (!split) {
        if (out.stripped_dim == m.dim()) {
            out.remainder = Module::zero(m.group(), f);
            return out;
        }
        throw std::logic_error("strip_general: projection does not split");
    }
    out.remainder = split->ker_part;
    if (out.stripped_dim + out.remainder.dim() != m.dim())
        throw std::logic_error("strip_general: dimension audit failed");
    return out;
}

// ---------------------------------------------------------------------------
// full decomposition

struct DecompPart {
    Module rep;
    uint32_t multiplicity = 1;
    CertLevel cert = CertLevel::Certified;
};

struct Decomposition {
    std::vector<DecompPart> parts;                // non-projective indecomposables
    std::map<std::string, uint32_t> pim_mults;    // stripped projectives
    bool budget_exceeded = false;

    uint32_t total_dim(const PimCatalog& cat) const {
        uint32_t d = 0;
        for (auto& p : parts) d += p.rep.dim() * p.multiplicity;
        for (auto& [l, k] : pim_mults) {
            int i = cat.pim_index(l);
            d += cat.pims[size_t(i)].dim * k;
        }
        return d;
    }
};

enum class StripMode { Heller, FreePGroup, General, None };

struct DecomposeOptions {
    uint64_t seed = 0;
    StripMode strip = StripMode::Heller;
    unsigned budget = 32;
};

/// Krull-Schmidt decomposition: strip projectives (deterministic by
/// default), then split by idempotents of the endomorphism ring until every
/// leaf certifies indecomposable.
inline Decomposition decompose(const Module& m, const PimCatalog& cat, DecomposeOptions opts = {}) {
    Decomposition out;
    Module work = m;
    if (m.dim() == 0) return out;
    switch (opts.strip) {
        case StripMode::Heller: {
            StripResult s = strip_projective_heller(m, cat);
            out.pim_mults = s.pim_mults;
            work = s.remainder;
            break;
        }
        case StripMode::FreePGroup: {
            FreeStripResult s = strip_free_pgroup(m, opts.seed, opts.budget);
            if (s.free_rank) out.pim_mults[cat.pims[0].label] = s.free_rank;
            work = s.remainder;
            break;
        }
        case StripMode::General: {
            StripResult s = strip_projective_general(m, cat, opts.seed);
            out.pim_mults = s.pim_mults;
            work = s.remainder;
            break;
        }
        case StripMode::None:
            break;
    }
    std::vector<Module> stack{work};
    std::vector<std::pair<Module, CertLevel>> leaves;
    uint64_t branch = 1;
    while (!stack.empty()) {
        Module x = stack.back();
        stack.pop_back();
        if (x.dim() == 0) continue;
        auto cert = certify_indecomposable(x, opts.seed + 0x9e37 * branch++, &cat, opts.budget);
        if (cert.kind == IndecomposabilityResult::Split) {
            auto fs = fitting_split(x, *cert.split_endo);
            if (!fs) throw std::logic_error("decompose: split endo did not split");
            stack.push_back(fs->ker_part);
            stack.push_back(fs->im_part);
            continue;
        }
        leaves.push_back({x, cert.kind == IndecomposabilityResult::Certified ? CertLevel::Certified
                                                                             : CertLevel::Probabilistic});
    }
    // group leaves by isomorphism
    for (auto& [leaf, cert] : leaves) {
        bool placed = false;
        for (auto& part : out.parts) {
            if (part.rep.dim() != leaf.dim()) continue;
            auto iso = is_isomorphic(part.rep, leaf, opts.seed, &cat, opts.budget);
            if (iso.verdict == IsoResult::Yes) {
                ++part.multiplicity;
                if (cert == CertLevel::Probabilistic) part.cert = CertLevel::Probabilistic;
                placed = true;
                break;
            }
            if (iso.verdict == IsoResult::Undecided) out.budget_exceeded = true;
        }
        if (!placed) out.parts.push_back({leaf, 1, cert});
    }
    std::stable_sort(out.parts.begin(), out.parts.end(),
                     [](const DecompPart& a, const DecompPart& b) { return a.rep.dim() < b.rep.dim(); });
    return out;
}

// ---------------------------------------------------------------------------
// PIM catalog construction

inline GroupPtr make_trivial_complement(const GroupPtr& g) {
    auto h = std::make_shared<GroupData>();
    h->name = g->name + ".1";
    h->npoints = g->npoints;
    h->gens = {Perm(g->npoints)};
    h->declared_order = 1;
    return h;
}

/// Build the induced module S^G_H given the catalog's split structure.
inline Module build_induced_module(const PimCatalog& cat, size_t si) {
    const Module& s = cat.simples_over_H[si];
    const GroupPtr& G = cat.G;
    const auto& tab = G->elements();
    const auto& htab = cat.H->elements();
    uint32_t sd = s.dim(), nc = uint32_t(cat.coset_rep_words.size());
    CosetTable ct = coset_table(*G, cat.h_gen_words);
    std::vector<Matrix> gens;
    for (size_t gi = 0; gi < G->gens.size(); ++gi) {
        Matrix mat(cat.f, nc * sd, nc * sd);
        for (uint32_t c = 0; c < nc; ++c) {
            Perm repc = G->evaluate(cat.coset_rep_words[c]);
            Perm prod = repc * G->gens[gi];
            uint32_t c2 = ct.coset_of[tab.index.at(prod)];
            Perm rep2 = G->evaluate(cat.coset_rep_words[c2]);
            Perm h = prod * rep2.inverse();
            auto it = htab.index.find(h);
            if (it == htab.index.end()) throw std::logic_error("build_induced_module: cocycle escapes H");
            // matrix of h on S via the H element tree
            Matrix hm = Matrix::identity(cat.f, sd);
            {
                std::vector<uint32_t> chain;
                uint32_t cur = it->second;
                while (cur != 0) {
                    chain.push_back(cur);
                    cur = htab.built_from[cur].first;
                }
                for (auto itc = chain.rbegin(); itc != chain.rend(); ++itc)
                    hm = mat_mul(hm, s.gen(htab.built_from[*itc].second));
            }
            for (uint32_t i = 0; i < sd; ++i)
                for (uint32_t j = 0; j < sd; ++j)
                    if (uint8_t v = hm.get(i, j)) mat.set(c * sd + i, c2 * sd + j, v);
        }
        gens.push_back(std::move(mat));
    }
    return Module(G, cat.f, gens);
}

/// Assemble the catalog: split structure, isotypic idempotents, induced
/// models, then extract representatives by decomposing the regular module
/// blockwise and label them by their heads.
inline PimCatalog build_pim_catalog(const GroupPtr& G, const Field& f, const std::string& complement_name,
                                    const SimpleCatalog& simples, uint64_t seed = 0) {
    PimCatalog cat;
    cat.G = G;
    cat.f = f;
    cat.simples = simples;
    // split structure
    if (complement_name.empty()) {
        if (!G->is_2group()) throw std::invalid_argument("build_pim_catalog: need a complement for non-2-groups");
        cat.h_gen_words = {Word{}};
        cat.H = make_trivial_complement(G);
    } else {
        cat.h_gen_words = G->subgroups.at(complement_name);
        SubgroupSpec spec{complement_name, cat.h_gen_words, G};
        cat.H = spec.realize();
        if (cat.H->order() % 2 == 0) throw std::invalid_argument("build_pim_catalog: complement has even order");
    }
    // transversal
    {
        CosetTable ct = coset_table(*G, cat.h_gen_words);
        const auto& tab = G->elements();
        for (uint32_t rep : ct.reps) cat.coset_rep_words.push_back(tab.words[rep]);
    }
    // restrictions of the simples to H and their presentations
    for (auto& s : simples.list) {
        std::vector<Matrix> hg;
        for (auto& w : cat.h_gen_words) hg.push_back(s.rep.evaluate_word(w));
        Module sh(cat.H, f, hg);
        cat.simples_over_H.push_back(sh);
        Matrix g0(f, 1, sh.dim());
        g0.set(0, 0, 1);
        cat.simple_pres_H.push_back(cyclic_presentation(sh, g0));
        cat.simple_dual_pres_H.push_back(cyclic_presentation(dual(sh), g0));
        cat.endo_H.push_back(hom_dense(sh, sh).basis);
    }
    // isotypic idempotents of kH
    {
        Module regH = regular_module(cat.H, f);
        uint32_t n = regH.dim();
        std::vector<Matrix> blocks;
        std::vector<uint32_t> offsets;
        Matrix allbases(f, 0, n);
        uint32_t total = 0;
        std::vector<Matrix> bases;
        for (size_t si = 0; si < simples.size(); ++si) {
            HomSpace hs = hom_dense(cat.simples_over_H[si], regH);
            RowBasis iso(f, n);
            for (auto& F : hs.basis) iso.add_all_rows(F);
            bases.push_back(iso.to_matrix());
            offsets.push_back(total);
            total += iso.dim();
        }
        if (total != n) throw std::logic_error("build_pim_catalog: isotypic components do not fill kH");
        Matrix concat(f, n, n);
        uint32_t at = 0;
        for (auto& b : bases)
            for (uint32_t i = 0; i < b.rows(); ++i) concat.copy_row_from(at++, b, i);
        // identity element of kH has index 0 in the element table
        Matrix unit(f, 1, n);
        unit.set(0, 0, 1);
        auto coeffs = solve_right(concat.transpose(), unit.transpose());
        if (!coeffs) throw std::logic_error("build_pim_catalog: cannot express 1 in isotypic basis");
        for (size_t si = 0; si < simples.size(); ++si) {
            Matrix comp(f, 1, n);
            uint32_t lo = offsets[si], hi = (si + 1 < simples.size()) ? offsets[si + 1] : n;
            for (uint32_t t = lo; t < hi; ++t) {
                uint8_t c = coeffs->get(t, 0);
                if (c) comp.row_axpy(comp.row(0), bases[si].row(t - lo), c);
            }
            std::vector<uint8_t> ecoef(n);
            for (uint32_t t = 0; t < n; ++t) ecoef[t] = comp.get(0, t);
            cat.isotypic_coeffs.push_back(std::move(ecoef));
        }
    }
    // induced models + preliminary entries
    for (size_t si = 0; si < simples.size(); ++si) {
        PimEntry pe;
        pe.simple_label = simples.list[si].label;
        pe.label = "proj" + pe.simple_label;
        pe.induced = build_induced_module(cat, si);
        pe.dim = pe.induced.dim();
        // head quotient onto S
        HeadData hd = head_data(pe.induced, simples);
        for (size_t t = 0; t < simples.size(); ++t)
            if (hd.mults[t] != (t == si ? 1u : 0u))
                throw std::logic_error("build_pim_catalog: induced model head is not the expected simple");
        HomSpace iso = hom_dense(hd.head, simples.list[si].rep);
        Matrix isom;
        bool found = false;
        for (auto& F : iso.basis)
            if (is_invertible(F)) {
                isom = F;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("build_pim_catalog: head not isomorphic to simple");
        pe.head_quotient = mat_mul(hd.quotient, isom);
        pe.rep = pe.induced;  // replaced below by the regular-module representative
        cat.pims.push_back(std::move(pe));
    }
    cat.regular_mults.assign(simples.size(), 0);
    // regular module, split into blocks by LEFT multiplication with the
    // isotypic idempotents (left multiplications commute with the right
    // regular action, so their images are submodules)
    Module reg = regular_module(G, f);
    {
        const auto& gtab = G->elements();
        const auto& htab = cat.H->elements();
        // left-multiplication permutation matrices for each H element
        std::vector<uint32_t> h_in_g(htab.elements.size());
        for (uint32_t t = 0; t < htab.elements.size(); ++t)
            h_in_g[t] = gtab.index.at(htab.elements[t]);
        for (size_t si = 0; si < simples.size(); ++si) {
            Matrix L(f, reg.dim(), reg.dim());
            for (uint32_t t = 0; t < htab.elements.size(); ++t) {
                uint8_t c = cat.isotypic_coeffs[si][t];
                if (!c) continue;
                const Perm& h = gtab.elements[h_in_g[t]];
                for (uint32_t x = 0; x < reg.dim(); ++x) {
                    uint32_t hx = gtab.index.at(h * gtab.elements[x]);
                    L.set(x, hx, f.add(L.get(x, hx), c));
                }
            }
            RowBasis blockspan(f, reg.dim());
            blockspan.add_all_rows(L);
            Module block = submodule(reg, blockspan);
            Decomposition dec = decompose(block, cat, {seed ^ (si * 77), StripMode::None, 32});
            if (dec.parts.size() != 1)
                throw std::logic_error("build_pim_catalog: isotypic block is not isotypic");
            cat.pims[si].rep = dec.parts[0].rep;
            cat.regular_mults[si] = dec.parts[0].multiplicity;
            if (dec.parts[0].rep.dim() != cat.pims[si].dim)
                throw std::logic_error("build_pim_catalog: representative dimension mismatch");
            auto isochk = is_isomorphic(dec.parts[0].rep, cat.pims[si].induced, seed, &cat);
            if (isochk.verdict != IsoResult::Yes)
                throw std::logic_error("build_pim_catalog: regular summand not isomorphic to induced model");
        }
    }
    // verification: dimensions and pairwise non-isomorphism
    {
        uint64_t total = 0;
        for (size_t si = 0; si < simples.size(); ++si) total += uint64_t(cat.regular_mults[si]) * cat.pims[si].dim;
        if (total != G->order()) throw std::logic_error("build_pim_catalog: regular multiplicities do not sum");
        for (size_t a = 0; a < cat.pims.size(); ++a)
            for (size_t b = a + 1; b < cat.pims.size(); ++b)
                if (is_isomorphic(cat.pims[a].rep, cat.pims[b].rep, seed, &cat).verdict == IsoResult::Yes)
                    throw std::logic_error("build_pim_catalog: PIMs not pairwise distinct");
    }
    cat.verified = true;
    return cat;
}

// ---------------------------------------------------------------------------
// periodicity

struct PeriodicityResult {
    bool periodic = false;
    unsigned period = 0;
    std::vector<uint32_t> orbit_dims;
};

/// Iterate the Heller operator up to `bound`, comparing each translate with
/// the start module. The input must be projective-free and indecomposable.
inline PeriodicityResult periodicity(const Module& m, const PimCatalog& cat, unsigned bound = 16,
                                     uint64_t seed = 0) {
    PeriodicityResult out;
    Module cur = m;
    for (unsigned n = 1; n <= bound; ++n) {
        cur = omega_of(cur, cat);
        out.orbit_dims.push_back(cur.dim());
        if (cur.dim() == m.dim()) {
            auto iso = is_isomorphic(cur, m, seed, &cat);
            if (iso.verdict == IsoResult::Yes) {
                out.periodic = true;
                out.period = n;
                return out;
            }
        }
    }
    return out;
}

}  // namespace modrep
