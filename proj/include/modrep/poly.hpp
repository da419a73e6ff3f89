#pragma once

#include <map>
#include <vector>

#include "matrix.hpp"

namespace modrep {

/// Univariate polynomial over GF(2^k), coefficients ascending, normalized
/// (no trailing zeros; the zero polynomial has empty coefficient list).
struct Poly {
    Field f;
    std::vector<uint8_t> c;

    Poly() = default;
    explicit Poly(const Field& fld) : f(fld) {}
    Poly(const Field& fld, std::vector<uint8_t> coeffs) : f(fld), c(std::move(coeffs)) { normalize(); }

    static Poly zero(const Field& f) { return Poly(f); }
    static Poly one(const Field& f) { return Poly(f, {1}); }
    static Poly x(const Field& f) { return Poly(f, {0, 1}); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }  // -1 for zero
    uint8_t lead() const { return c.back(); }
    uint8_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator<(const Poly& o) const {
        if (c.size() != o.c.size()) return c.size() < o.c.size();
        for (size_t i = c.size(); i-- > 0;)
            if (c[i] != o.c[i]) return c[i] < o.c[i];
        return false;
    }

    Poly& make_monic() {
        if (!is_zero() && lead() != 1) {
            uint8_t d = f.inv(lead());
            for (auto& a : c) a = f.mul(a, d);
        }
        return *this;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (!c[i]) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c[i] != 1) s += std::to_string(unsigned(c[i]));
            if (i > 0) {
                if (c[i] != 1) s += "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }
};

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(a.f);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.f.add(a.coeff(i), b.coeff(i));
    r.normalize();
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.f);
    Poly r(a.f);
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) r.c[i + j] = a.f.add(r.c[i + j], a.f.mul(a.c[i], b.c[j]));
    }
    r.normalize();
    return r;
}

inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("poly division by zero");
    Poly q(a.f), r = a;
    if (r.degree() < b.degree()) return {q, r};
    q.c.assign(size_t(r.degree() - b.degree() + 1), 0);
    uint8_t binv = a.f.inv(b.lead());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        size_t shift = size_t(r.degree() - b.degree());
        uint8_t coef = a.f.mul(r.lead(), binv);
        q.c[shift] = coef;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[i + shift] = a.f.add(r.c[i + shift], a.f.mul(coef, b.c[i]));
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

inline Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    a.make_monic();
    return a;
}

/// g = gcd(a,b) together with u,v such that u*a + v*b = g.
inline std::tuple<Poly, Poly, Poly> poly_xgcd(Poly a, Poly b) {
    const Field& f = a.f;
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(f), s1 = Poly::zero(f);
    Poly t0 = Poly::zero(f), t1 = Poly::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = poly_add(s0, poly_mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = poly_add(t0, poly_mul(q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && r0.lead() != 1) {
        uint8_t d = f.inv(r0.lead());
        for (auto& v : r0.c) v = f.mul(v, d);
        for (auto& v : s0.c) v = f.mul(v, d);
        for (auto& v : t0.c) v = f.mul(v, d);
    }
    return {r0, s0, t0};
}

inline Poly poly_powmod(Poly base, uint64_t e, const Poly& mod) {
    Poly r = Poly::one(base.f);
    base = poly_mod(base, mod);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base), mod);
        base = poly_mod(poly_mul(base, base), mod);
        e >>= 1;
    }
    return r;
}

inline Poly poly_derivative(const Poly& a) {
    Poly r(a.f);
    if (a.c.size() < 2) return r;
    r.c.assign(a.c.size() - 1, 0);
    for (size_t i = 1; i < a.c.size(); ++i)
        if (i & 1) r.c[i - 1] = a.c[i];  // char 2: i*a_i = a_i for odd i
    r.normalize();
    return r;
}

/// In GF(2^k), sqrt(a) = a^(2^(k-1)).
inline uint8_t field_sqrt(const Field& f, uint8_t a) {
    uint8_t r = a;
    for (unsigned i = 1; i < f.degree(); ++i) r = f.mul(r, r);
    return (f.degree() == 1) ? a : r;
}

namespace detail {

inline void factor_squarefree_monic(const Poly& g, std::map<Poly, unsigned>& out, unsigned mult, Rng& rng);

/// Full factorization of monic f (recursive on square parts, char 2).
inline void factor_monic(const Poly& f, std::map<Poly, unsigned>& out, unsigned mult, Rng& rng) {
    if (f.degree() <= 0) return;
    const Field& F = f.f;
    Poly d = poly_derivative(f);
    if (d.is_zero()) {
        // f(x) = h(x^2) = (sqrt coeffs)(x)^2
        Poly h(F);
        h.c.assign(f.c.size() / 2 + 1, 0);
        for (size_t i = 0; i < f.c.size(); i += 2) h.c[i / 2] = field_sqrt(F, f.c[i]);
        h.normalize();
        factor_monic(h, out, mult * 2, rng);
        return;
    }
    Poly g = poly_gcd(f, d);             // product of repeated parts
    Poly sf = poly_divmod(f, g).first;   // squarefree
    sf.make_monic();
    factor_squarefree_monic(sf, out, mult, rng);
    if (g.degree() > 0) {
        // remove one copy of each factor found in sf from g's multiplicities:
        // recurse on g; combine by addition of multiplicities
        std::map<Poly, unsigned> rest;
        factor_monic(g, rest, mult, rng);
        for (auto& [p, m] : rest) out[p] += m;
    }
}

/// Cantor-Zassenhaus over GF(2^k): distinct-degree, then trace-based
/// equal-degree splitting.
inline void factor_squarefree_monic(const Poly& f, std::map<Poly, unsigned>& out, unsigned mult, Rng& rng) {
    const Field& F = f.f;
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out[f] += mult;
        return;
    }
    uint64_t q = F.size();
    Poly rem = f;
    Poly h = Poly::x(F);
    for (unsigned d = 1; rem.degree() >= int(2 * d); ++d) {
        h = poly_powmod(h, q, rem);  // x^(q^d) mod rem
        Poly diff = poly_add(h, Poly::x(F));
        Poly g = poly_gcd(diff, rem);
        if (g.degree() > 0) {
            // g = product of irreducible factors of degree d; split it
            std::vector<Poly> stack = {g};
            while (!stack.empty()) {
                Poly cur = stack.back();
                stack.pop_back();
                if (cur.degree() == int(d)) {
                    out[cur] += mult;
                    continue;
                }
                // random trace splitting
                for (;;) {
                    Poly a(F);
                    a.c.assign(size_t(cur.degree()), 0);
                    for (auto& v : a.c) v = rng.field_element(F);
                    a.normalize();
                    if (a.is_zero()) continue;
                    // absolute trace: T = sum a^(2^i), i < k*d
                    Poly t = poly_mod(a, cur);
                    Poly term = t;
                    for (unsigned i = 1; i < F.degree() * d; ++i) {
                        term = poly_mod(poly_mul(term, term), cur);
                        t = poly_add(t, term);
                    }
                    Poly s = poly_gcd(t, cur);
                    if (s.degree() > 0 && s.degree() < cur.degree()) {
                        stack.push_back(s);
                        stack.push_back(poly_divmod(cur, s).first.make_monic());
                        break;
                    }
                    Poly s1 = poly_gcd(poly_add(t, Poly::one(F)), cur);
                    if (s1.degree() > 0 && s1.degree() < cur.degree()) {
                        stack.push_back(s1);
                        stack.push_back(poly_divmod(cur, s1).first.make_monic());
                        break;
                    }
                }
            }
            rem = poly_divmod(rem, g).first.make_monic();
        }
    }
    if (rem.degree() > 0) out[rem] += mult;
}

}  // namespace detail

/// Irreducible factors with multiplicities.
inline std::map<Poly, unsigned> poly_factor(Poly f, Rng& rng) {
    std::map<Poly, unsigned> out;
    if (f.degree() <= 0) return out;
    f.make_monic();
    detail::factor_monic(f, out, 1, rng);
    return out;
}

inline bool poly_irreducible(const Poly& f, Rng& rng) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    auto fac = poly_factor(f, rng);
    return fac.size() == 1 && fac.begin()->second == 1;
}

/// p(W) by Horner.
inline Matrix poly_eval_matrix(const Poly& p, const Matrix& W) {
    Matrix r(W.field(), W.rows(), W.cols());
    if (p.is_zero()) return r;
    for (uint32_t i = 0; i < W.rows(); ++i)
        for (uint32_t j = 0; j < W.cols(); ++j)
            if (i == j && p.c.back()) r.set(i, j, p.c.back());
    for (size_t t = p.c.size() - 1; t-- > 0;) {
        r = mat_mul(r, W);
        if (p.c[t])
            for (uint32_t i = 0; i < W.rows(); ++i) r.set(i, i, r.field().add(r.get(i, i), p.c[t]));
    }
    return r;
}

/// Row echelon basis that records how each stored row was formed from the
/// inserted vectors; small-scale helper for annihilator polynomials and
/// standard-basis dependencies.
class TrackedBasis {
public:
    TrackedBasis(const Field& f, uint32_t cols)
        : f_(f), cols_(cols), wpr_(Matrix::words_per_row(f, cols)), row_of_pivot_(cols, -1) {}

    uint32_t dim() const { return uint32_t(rows_.size()); }
    uint32_t inserted() const { return n_inserted_; }

    /// Insert a copy of v. Returns (added, expr): if !added, expr holds
    /// coefficients writing v as a combination of previously inserted
    /// vectors (length = inserted() before this call).
    std::pair<bool, std::vector<uint8_t>> insert(const uint64_t* vin) {
        unsigned k = f_.degree();
        std::vector<uint64_t> v(vin, vin + wpr_);
        std::vector<uint8_t> e(n_inserted_ + 1, 0);
        e[n_inserted_] = 1;
        for (uint32_t j = 0; j < cols_; ++j) {
            uint8_t a = Matrix::get_packed(v.data(), j, k);
            if (!a) continue;
            int r = row_of_pivot_[j];
            if (r < 0) {
                // new pivot: normalize and store
                uint8_t inv = f_.inv(a);
                if (inv != 1) {
                    for (uint32_t jj = 0; jj < cols_; ++jj) {
                        uint8_t s = Matrix::get_packed(v.data(), jj, k);
                        if (s) Matrix::set_packed(v.data(), jj, k, f_.mul(inv, s));
                    }
                    for (auto& q : e) q = f_.mul(inv, q);
                }
                row_of_pivot_[j] = int(rows_.size());
                rows_.push_back(std::move(v));
                expr_.push_back(std::move(e));
                ++n_inserted_;
                return {true, {}};
            }
            // v -= a * row_r ; e -= a * expr_r
            const auto& rr = rows_[size_t(r)];
            for (uint32_t jj = j; jj < cols_; ++jj) {
                uint8_t s = Matrix::get_packed(rr.data(), jj, k);
                if (s)
                    Matrix::set_packed(v.data(), jj, k,
                                       uint8_t(Matrix::get_packed(v.data(), jj, k) ^ f_.mul(a, s)));
            }
            const auto& er = expr_[size_t(r)];
            for (size_t t = 0; t < er.size(); ++t) e[t] = f_.add(e[t], f_.mul(a, er[t]));
        }
        // reduced to zero: v = sum of previous inserted with coefficients e[0..n-1]
        // (e[n_inserted_] stayed 1 and represents v itself; the relation is
        //  v + sum e[t]*orig_t = 0, i.e. v = sum e[t]*orig_t in char 2)
        std::vector<uint8_t> coeffs(e.begin(), e.begin() + n_inserted_);
        ++n_inserted_;
        return {false, coeffs};
    }

private:
    Field f_;
    uint32_t cols_, wpr_;
    uint32_t n_inserted_ = 0;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<std::vector<uint8_t>> expr_;  // stored row = sum expr[t]*inserted_t
    std::vector<int> row_of_pivot_;
};

/// Minimal polynomial of W by iterated Krylov spinning. Exact; verified by
/// evaluation.
inline Poly minimal_polynomial(const Matrix& W) {
    if (W.rows() != W.cols()) throw std::invalid_argument("minimal_polynomial: not square");
    const Field& F = W.field();
    uint32_t d = W.rows();
    if (d == 0) return Poly::one(F);
    Poly p = Poly::one(F);
    RowBasis seen(F, d);
    for (uint32_t i = 0; i < d; ++i) {
        // skip start vectors already inside an annihilated invariant subspace
        {
            Matrix probe(F, 1, d);
            probe.set(0, i, 1);
            if (seen.contains_row(probe, 0)) continue;
        }
        // Krylov chain from e_i
        TrackedBasis tb(F, d);
        Matrix v(F, 1, d);
        v.set(0, i, 1);
        std::vector<Matrix> chain;
        for (;;) {
            auto [added, expr] = tb.insert(v.row(0));
            if (!added) {
                // annihilator: x^t - sum expr_j x^j  (char 2: +)
                Poly ann(F);
                ann.c.assign(expr.size() + 1, 0);
                for (size_t t = 0; t < expr.size(); ++t) ann.c[t] = expr[t];
                ann.c[expr.size()] = 1;
                // p = lcm(p, ann)
                Poly g = poly_gcd(p, ann);
                p = poly_mul(poly_divmod(p, g).first, ann).make_monic();
                break;
            }
            chain.push_back(v);
            v = mat_mul(v, W);
        }
        for (auto& cv : chain) seen.add_row(cv, 0);
        if (seen.dim() == d) break;
    }
    return p;
}

}  // namespace modrep
