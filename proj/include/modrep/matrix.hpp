#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "field.hpp"
#include "rng.hpp"

namespace modrep {

inline unsigned& thread_count() {
    static unsigned n = 1;
    return n;
}
inline void set_thread_count(unsigned n) { thread_count() = n ? n : 1; }

/// Run f(lo, hi) over [0, n) in contiguous chunks. Results must not depend
/// on the partition; used only for disjoint row ranges.
template <class F>
inline void parallel_rows(uint32_t n, F&& f) {
    unsigned t = thread_count();
    if (t <= 1 || n < 256) {
        f(0u, n);
        return;
    }
    t = std::min<unsigned>(t, (n + 63) / 64);
    std::vector<std::thread> pool;
    uint32_t chunk = (n + t - 1) / t;
    for (unsigned i = 0; i < t; ++i) {
        uint32_t lo = i * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&f, lo, hi] { f(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

/// Dense matrix over GF(2^k), entries packed row-major at k bits each.
/// Every row starts on a 64-bit word boundary, so row operations are
/// word-wide XORs.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), wpr_(0) {}

    Matrix(const Field& f, uint32_t rows, uint32_t cols)
        : f_(f), rows_(rows), cols_(cols), wpr_(words_per_row(f, cols)), d_(size_t(rows) * wpr_, 0) {}

    static Matrix identity(const Field& f, uint32_t n) {
        Matrix m(f, n, n);
        for (uint32_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static uint32_t words_per_row(const Field& f, uint32_t cols) {
        uint64_t bits = uint64_t(cols) * f.degree();
        return uint32_t((bits + 63) / 64);
    }

    const Field& field() const { return f_; }
    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    uint32_t words_per_row() const { return wpr_; }

    uint64_t* row(uint32_t i) { return d_.data() + size_t(i) * wpr_; }
    const uint64_t* row(uint32_t i) const { return d_.data() + size_t(i) * wpr_; }

    uint8_t get(uint32_t i, uint32_t j) const { return get_packed(row(i), j, f_.degree()); }
    void set(uint32_t i, uint32_t j, uint8_t v) { set_packed(row(i), j, f_.degree(), v); }

    static uint8_t get_packed(const uint64_t* r, uint32_t j, unsigned k) {
        uint64_t bit = uint64_t(j) * k;
        uint32_t w = uint32_t(bit >> 6), off = uint32_t(bit & 63);
        uint64_t v = r[w] >> off;
        if (off + k > 64) v |= r[w + 1] << (64 - off);
        return uint8_t(v & ((1u << k) - 1));
    }

    static void set_packed(uint64_t* r, uint32_t j, unsigned k, uint8_t val) {
        uint64_t bit = uint64_t(j) * k;
        uint32_t w = uint32_t(bit >> 6), off = uint32_t(bit & 63);
        uint64_t mask = uint64_t((1u << k) - 1);
        r[w] = (r[w] & ~(mask << off)) | (uint64_t(val) << off);
        if (off + k > 64) {
            unsigned spill = off + k - 64;
            uint64_t himask = (1ull << spill) - 1;
            r[w + 1] = (r[w + 1] & ~himask) | (uint64_t(val) >> (k - spill));
        }
    }

    bool is_zero() const {
        for (uint64_t w : d_)
            if (w) return false;
        return true;
    }

    bool row_is_zero(uint32_t i) const {
        const uint64_t* r = row(i);
        for (uint32_t w = 0; w < wpr_; ++w)
            if (r[w]) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    /// dst += src (rows given as word pointers of this matrix's shape)
    void row_xor(uint64_t* dst, const uint64_t* src) const {
        for (uint32_t w = 0; w < wpr_; ++w) dst[w] ^= src[w];
    }

    /// dst += c * src
    void row_axpy(uint64_t* dst, const uint64_t* src, uint8_t c) const {
        if (c == 0) return;
        unsigned k = f_.degree();
        if (c == 1) {
            row_xor(dst, src);
        } else if (k == 2) {
            // entries at bits (2j, 2j+1): low bit = coeff of 1, high = coeff of w
            constexpr uint64_t LO = 0x5555555555555555ULL;
            for (uint32_t w = 0; w < wpr_; ++w) {
                uint64_t lo = src[w] & LO, hi = (src[w] >> 1) & LO;
                uint64_t nlo, nhi;
                if (c == 2) {  // multiply by w
                    nlo = hi;
                    nhi = lo ^ hi;
                } else {  // c == 3: multiply by w^2 = w+1
                    nlo = lo ^ hi;
                    nhi = lo;
                }
                dst[w] ^= nlo | (nhi << 1);
            }
        } else {
            for (uint32_t j = 0; j < cols_; ++j) {
                uint8_t s = get_packed(src, j, k);
                if (s) set_packed(dst, j, k, uint8_t(get_packed(dst, j, k) ^ f_.mul(c, s)));
            }
        }
    }

    void scale_row(uint32_t i, uint8_t c) {
        if (c == 1) return;
        unsigned k = f_.degree();
        uint64_t* r = row(i);
        if (c == 0) {
            std::fill(r, r + wpr_, 0);
            return;
        }
        if (k == 2) {
            constexpr uint64_t LO = 0x5555555555555555ULL;
            for (uint32_t w = 0; w < wpr_; ++w) {
                uint64_t lo = r[w] & LO, hi = (r[w] >> 1) & LO;
                uint64_t nlo, nhi;
                if (c == 2) {
                    nlo = hi;
                    nhi = lo ^ hi;
                } else {
                    nlo = lo ^ hi;
                    nhi = lo;
                }
                r[w] = nlo | (nhi << 1);
            }
            return;
        }
        for (uint32_t j = 0; j < cols_; ++j) {
            uint8_t s = get_packed(r, j, k);
            if (s) set_packed(r, j, k, f_.mul(c, s));
        }
    }

    Matrix transpose() const {
        Matrix t(f_, cols_, rows_);
        for (uint32_t i = 0; i < rows_; ++i)
            for (uint32_t j = 0; j < cols_; ++j) {
                uint8_t v = get(i, j);
                if (v) t.set(j, i, v);
            }
        return t;
    }

    Matrix submatrix_rows(const std::vector<uint32_t>& idx) const {
        Matrix s(f_, uint32_t(idx.size()), cols_);
        for (uint32_t i = 0; i < idx.size(); ++i)
            std::memcpy(s.row(i), row(idx[i]), wpr_ * 8);
        return s;
    }

    Matrix take_rows(uint32_t lo, uint32_t hi) const {
        Matrix s(f_, hi - lo, cols_);
        std::memcpy(s.row(0), row(lo), size_t(hi - lo) * wpr_ * 8);
        return s;
    }

    void copy_row_from(uint32_t dst, const Matrix& src, uint32_t srow) {
        std::memcpy(row(dst), src.row(srow), wpr_ * 8);
    }

    void randomize(Rng& rng) {
        for (uint32_t i = 0; i < rows_; ++i)
            for (uint32_t j = 0; j < cols_; ++j) set(i, j, rng.field_element(f_));
    }

private:
    Field f_;
    uint32_t rows_, cols_, wpr_;
    std::vector<uint64_t> d_;
};

inline void check_same_field(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw std::invalid_argument("field mismatch");
}

/// Exact product over the field. Word-sliced row combination; the GF(2) and
/// GF(4) paths never unpack entries of b.
inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    Matrix c(a.field(), a.rows(), b.cols());
    unsigned k = a.field().degree();
    if (k == 1) {
        parallel_rows(a.rows(), [&](uint32_t lo, uint32_t hi) {
            for (uint32_t i = lo; i < hi; ++i) {
                uint64_t* dst = c.row(i);
                const uint64_t* ar = a.row(i);
                for (uint32_t j = 0; j < a.cols(); ++j)
                    if ((ar[j >> 6] >> (j & 63)) & 1) c.row_xor(dst, b.row(j));
            }
        });
    } else if (k == 2) {
        // precompute w*b rows once; w^2*row = row ^ (w*row)
        Matrix bw = b;
        for (uint32_t j = 0; j < b.rows(); ++j) bw.scale_row(j, 2);
        parallel_rows(a.rows(), [&](uint32_t lo, uint32_t hi) {
            for (uint32_t i = lo; i < hi; ++i) {
                uint64_t* dst = c.row(i);
                const uint64_t* ar = a.row(i);
                for (uint32_t j = 0; j < a.cols(); ++j) {
                    uint8_t e = Matrix::get_packed(ar, j, 2);
                    if (!e) continue;
                    if (e != 2) c.row_xor(dst, b.row(j));   // 1 or w^2 use b
                    if (e != 1) c.row_xor(dst, bw.row(j));  // w or w^2 use w*b
                }
            }
        });
    } else {
        for (uint32_t i = 0; i < a.rows(); ++i) {
            uint64_t* dst = c.row(i);
            for (uint32_t j = 0; j < a.cols(); ++j) {
                uint8_t e = a.get(i, j);
                if (e) c.row_axpy(dst, b.row(j), e);
            }
        }
    }
    return c;
}

/// Schoolbook triple loop on unpacked entries; reference path (also the
/// generic path for k >= 3 via mat_mul's fallback).
inline Matrix mat_mul_schoolbook(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    const Field& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i)
        for (uint32_t j = 0; j < b.cols(); ++j) {
            uint8_t acc = 0;
            for (uint32_t l = 0; l < a.cols(); ++l) acc = f.add(acc, f.mul(a.get(i, l), b.get(l, j)));
            c.set(i, j, acc);
        }
    return c;
}

/// (a (x) b)[(i*b.rows+p), (j*b.cols+q)] = a[i,j] * b[p,q]
inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    const Field& f = a.field();
    Matrix c(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i)
        for (uint32_t j = 0; j < a.cols(); ++j) {
            uint8_t e = a.get(i, j);
            if (!e) continue;
            for (uint32_t p = 0; p < b.rows(); ++p) {
                uint32_t ci = i * b.rows() + p, cj0 = j * b.cols();
                for (uint32_t q = 0; q < b.cols(); ++q) {
                    uint8_t v = b.get(p, q);
                    if (v) c.set(ci, cj0 + q, f.mul(e, v));
                }
            }
        }
    return c;
}

inline Matrix direct_sum_blocks(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    Matrix c(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i)
        for (uint32_t j = 0; j < a.cols(); ++j)
            if (uint8_t v = a.get(i, j)) c.set(i, j, v);
    for (uint32_t i = 0; i < b.rows(); ++i)
        for (uint32_t j = 0; j < b.cols(); ++j)
            if (uint8_t v = b.get(i, j)) c.set(a.rows() + i, a.cols() + j, v);
    return c;
}

/// Incremental reduced-row-echelon basis of a row space. Expressing a vector
/// of the span in terms of the stored rows is just reading its pivot-column
/// entries.
class RowBasis {
public:
    RowBasis() : cols_(0), wpr_(0) {}

    explicit RowBasis(const Field& f, uint32_t cols)
        : f_(f), cols_(cols), wpr_(Matrix::words_per_row(f, cols)), row_of_pivot_(cols, -1) {}

    uint32_t dim() const { return uint32_t(rows_.size()); }
    uint32_t cols() const { return cols_; }
    const std::vector<int>& pivots() const { return pivot_of_row_; }

    const uint64_t* row(uint32_t i) const { return rows_[i].data(); }

    /// Reduce v (modifies it) against the basis; returns leading column of
    /// the residue or -1 if v reduced to zero.
    int reduce(uint64_t* v) const {
        unsigned k = f_.degree();
        int lead = -1;
        for (uint32_t j = 0; j < cols_; ++j) {
            uint8_t e = Matrix::get_packed(v, j, k);
            if (!e) continue;
            int r = row_of_pivot_[j];
            if (r < 0) {
                lead = int(j);
                break;
            }
            axpy(v, rows_[r].data(), e);
        }
        if (lead < 0) return -1;
        // continue reducing the tail (entries after lead have pivots possibly)
        for (uint32_t j = uint32_t(lead) + 1; j < cols_; ++j) {
            uint8_t e = Matrix::get_packed(v, j, k);
            if (!e) continue;
            int r = row_of_pivot_[j];
            if (r >= 0) axpy(v, rows_[r].data(), e);
        }
        return lead;
    }

    /// Insert v (destroyed) if independent. Returns true if the dimension grew.
    bool add(std::vector<uint64_t> v) {
        int lead = reduce(v.data());
        if (lead < 0) return false;
        unsigned k = f_.degree();
        uint8_t lv = Matrix::get_packed(v.data(), uint32_t(lead), k);
        if (lv != 1) {
            uint8_t c = f_.inv(lv);
            scale(v.data(), c);
        }
        // back-substitute into existing rows
        for (uint32_t r = 0; r < rows_.size(); ++r) {
            uint8_t e = Matrix::get_packed(rows_[r].data(), uint32_t(lead), k);
            if (e) axpy(rows_[r].data(), v.data(), e);
        }
        row_of_pivot_[lead] = int(rows_.size());
        pivot_of_row_.push_back(lead);
        rows_.push_back(std::move(v));
        return true;
    }

    bool add_row(const Matrix& m, uint32_t i) {
        std::vector<uint64_t> v(m.row(i), m.row(i) + wpr_);
        return add(std::move(v));
    }

    bool add_all_rows(const Matrix& m) {
        bool grew = false;
        for (uint32_t i = 0; i < m.rows(); ++i) grew |= add_row(m, i);
        return grew;
    }

    bool contains_row(const Matrix& m, uint32_t i) const {
        std::vector<uint64_t> v(m.row(i), m.row(i) + wpr_);
        return reduce(v.data()) < 0;
    }

    /// Coefficients expressing v (assumed in the span) in the stored rows:
    /// entry r = v[pivot_of_row_[r]].
    std::vector<uint8_t> coordinates(const uint64_t* v) const {
        std::vector<uint8_t> c(rows_.size());
        unsigned k = f_.degree();
        for (uint32_t r = 0; r < rows_.size(); ++r)
            c[r] = Matrix::get_packed(v, uint32_t(pivot_of_row_[r]), k);
        return c;
    }

    Matrix to_matrix() const {
        Matrix m(f_, dim(), cols_);
        for (uint32_t i = 0; i < dim(); ++i) std::memcpy(m.row(i), rows_[i].data(), wpr_ * 8);
        return m;
    }

    /// Standard unit vectors at non-pivot columns (a complement of the span).
    Matrix complement_basis() const {
        std::vector<uint32_t> freecols;
        for (uint32_t j = 0; j < cols_; ++j)
            if (row_of_pivot_[j] < 0) freecols.push_back(j);
        Matrix m(f_, uint32_t(freecols.size()), cols_);
        for (uint32_t i = 0; i < freecols.size(); ++i) m.set(i, freecols[i], 1);
        return m;
    }

private:
    void axpy(uint64_t* dst, const uint64_t* src, uint8_t c) const {
        // dst -= c*src (== + in char 2)
        unsigned k = f_.degree();
        if (c == 1 || k == 1) {
            for (uint32_t w = 0; w < wpr_; ++w) dst[w] ^= src[w];
            return;
        }
        if (k == 2) {
            constexpr uint64_t LO = 0x5555555555555555ULL;
            for (uint32_t w = 0; w < wpr_; ++w) {
                uint64_t lo = src[w] & LO, hi = (src[w] >> 1) & LO;
                uint64_t nlo = (c == 2) ? hi : (lo ^ hi);
                uint64_t nhi = (c == 2) ? (lo ^ hi) : lo;
                dst[w] ^= nlo | (nhi << 1);
            }
            return;
        }
        for (uint32_t j = 0; j < cols_; ++j) {
            uint8_t s = Matrix::get_packed(src, j, k);
            if (s) Matrix::set_packed(dst, j, k, uint8_t(Matrix::get_packed(dst, j, k) ^ f_.mul(c, s)));
        }
    }
    void scale(uint64_t* v, uint8_t c) {
        unsigned k = f_.degree();
        for (uint32_t j = 0; j < cols_; ++j) {
            uint8_t s = Matrix::get_packed(v, j, k);
            if (s) Matrix::set_packed(v, j, k, f_.mul(c, s));
        }
    }

    Field f_;
    uint32_t cols_, wpr_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<int> pivot_of_row_;
    std::vector<int> row_of_pivot_;
};

inline RowBasis row_space(const Matrix& m) {
    RowBasis b(m.field(), m.cols());
    b.add_all_rows(m);
    return b;
}

inline uint32_t rank(const Matrix& m) { return row_space(m).dim(); }

/// Rows v with m * v^T = 0 (right kernel, returned as independent rows).
inline Matrix right_nullspace(const Matrix& m) {
    const Field& f = m.field();
    // echelonize m, track pivot columns
    RowBasis rb = row_space(m);
    Matrix ech = rb.to_matrix();
    std::vector<int> pivot_of_row = rb.pivots();
    std::vector<int> row_of_col(m.cols(), -1);
    for (uint32_t r = 0; r < ech.rows(); ++r) row_of_col[pivot_of_row[r]] = int(r);
    std::vector<uint32_t> freecols;
    for (uint32_t j = 0; j < m.cols(); ++j)
        if (row_of_col[j] < 0) freecols.push_back(j);
    Matrix ns(f, uint32_t(freecols.size()), m.cols());
    for (uint32_t i = 0; i < freecols.size(); ++i) {
        uint32_t fc = freecols[i];
        ns.set(i, fc, 1);
        for (uint32_t j = 0; j < m.cols(); ++j) {
            int r = row_of_col[j];
            if (r >= 0) {
                uint8_t v = ech.get(uint32_t(r), fc);
                if (v) ns.set(i, j, v);  // char 2: -v = v
            }
        }
    }
    return ns;
}

inline uint32_t nullity(const Matrix& m) { return m.cols() - rank(m); }

/// Solve a * x = rhs exactly; returns one solution (free variables zero) or
/// nullopt. The solution is verified by re-multiplication.
inline std::optional<Matrix> solve_right(const Matrix& a, const Matrix& rhs) {
    check_same_field(a, rhs);
    if (a.rows() != rhs.rows()) throw std::invalid_argument("solve_right: row mismatch");
    const Field& f = a.field();
    // work on the transposed system: x^T * a^T = rhs^T; row-reduce [a^T] with
    // an augmented identity to express rhs^T rows in the row space of a^T.
    Matrix at = a.transpose();     // cols(a) x rows(a)
    Matrix rt = rhs.transpose();   // cols(rhs) x rows(a)
    // gaussian elimination keeping transformation (coeffs in terms of a^T rows)
    uint32_t n = at.rows(), m = at.cols();
    Matrix work = at;
    Matrix trans = Matrix::identity(f, n);  // work = trans * at
    std::vector<int> row_of_col(m, -1);
    uint32_t r = 0;
    for (uint32_t j = 0; j < m && r < n; ++j) {
        uint32_t piv = r;
        while (piv < n && work.get(piv, j) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r) {
            for (uint32_t w = 0; w < work.words_per_row(); ++w) std::swap(work.row(r)[w], work.row(piv)[w]);
            for (uint32_t w = 0; w < trans.words_per_row(); ++w) std::swap(trans.row(r)[w], trans.row(piv)[w]);
        }
        uint8_t d = work.get(r, j);
        if (d != 1) {
            uint8_t c = f.inv(d);
            work.scale_row(r, c);
            trans.scale_row(r, c);
        }
        for (uint32_t i = 0; i < n; ++i) {
            if (i == r) continue;
            uint8_t e = work.get(i, j);
            if (e) {
                work.row_axpy(work.row(i), work.row(r), e);
                trans.row_axpy(trans.row(i), trans.row(r), e);
            }
        }
        row_of_col[j] = int(r);
        ++r;
    }
    // express each rhs^T row: coefficients -> solution columns
    Matrix xt(f, rt.rows(), n);
    for (uint32_t i = 0; i < rt.rows(); ++i) {
        std::vector<uint64_t> v(rt.row(i), rt.row(i) + rt.words_per_row());
        std::vector<uint8_t> coeff(n, 0);
        for (uint32_t j = 0; j < m; ++j) {
            uint8_t e = Matrix::get_packed(v.data(), j, f.degree());
            if (!e) continue;
            int rr = row_of_col[j];
            if (rr < 0) return std::nullopt;  // inconsistent
            // v -= e * work.row(rr); coeff += e * trans.row(rr)
            for (uint32_t jj = 0; jj < m; ++jj) {
                uint8_t s = work.get(uint32_t(rr), jj);
                if (s)
                    Matrix::set_packed(v.data(), jj, f.degree(),
                                       uint8_t(Matrix::get_packed(v.data(), jj, f.degree()) ^ f.mul(e, s)));
            }
            for (uint32_t t = 0; t < n; ++t) {
                uint8_t s = trans.get(uint32_t(rr), t);
                if (s) coeff[t] = f.add(coeff[t], f.mul(e, s));
            }
        }
        for (uint32_t jj = 0; jj < m; ++jj)
            if (Matrix::get_packed(v.data(), jj, f.degree())) return std::nullopt;
        for (uint32_t t = 0; t < n; ++t) xt.set(i, t, coeff[t]);
    }
    Matrix x = xt.transpose();
    if (mat_mul(a, x) != rhs) throw std::logic_error("solve_right: verification failed");
    return x;
}

/// m^-1, or nullopt when singular.
inline std::optional<Matrix> invert(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert: not square");
    auto x = solve_right(m, Matrix::identity(m.field(), m.rows()));
    return x;
}

inline bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Horizontal concatenation [a | b].
inline Matrix hconcat(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
    Matrix c(a.field(), a.rows(), a.cols() + b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        for (uint32_t j = 0; j < a.cols(); ++j)
            if (uint8_t v = a.get(i, j)) c.set(i, j, v);
        for (uint32_t j = 0; j < b.cols(); ++j)
            if (uint8_t v = b.get(i, j)) c.set(i, a.cols() + j, v);
    }
    return c;
}

/// Vertical concatenation [a ; b].
inline Matrix vconcat(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.cols()) throw std::invalid_argument("vconcat: col mismatch");
    Matrix c(a.field(), a.rows() + b.rows(), a.cols());
    for (uint32_t i = 0; i < a.rows(); ++i) c.copy_row_from(i, a, i);
    for (uint32_t i = 0; i < b.rows(); ++i) c.copy_row_from(a.rows() + i, b, i);
    return c;
}

inline uint64_t matrix_hash(const Matrix& m) {
    uint64_t h = 0xcbf29ce484222325ULL ^ (uint64_t(m.rows()) << 32) ^ m.cols() ^ (uint64_t(m.field().degree()) << 56);
    for (uint32_t i = 0; i < m.rows(); ++i) {
        const uint64_t* r = m.row(i);
        for (uint32_t w = 0; w < m.words_per_row(); ++w) {
            h ^= r[w];
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace modrep
