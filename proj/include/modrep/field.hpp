#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace modrep {

/// GF(2^k) for 1 <= k <= 8. The defining polynomial is fixed per degree
/// (Conway polynomials), so element encodings are stable across runs and
/// file formats. Elements are integers 0..2^k-1 read as polynomial
/// bit-vectors over GF(2).
class Field {
public:
    Field() : Field(1) {}

    explicit Field(unsigned degree) {
        if (degree < 1 || degree > 8)
            throw std::invalid_argument("Field: degree must be in 1..8");
        tab_ = tables(degree);
    }

    unsigned degree() const { return tab_->k; }
    unsigned size() const { return 1u << tab_->k; }
    /// Defining polynomial as a bit vector (bit i = coefficient of x^i).
    unsigned modulus_poly() const { return tab_->poly; }

    uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }
    uint8_t sub(uint8_t a, uint8_t b) const { return a ^ b; }

    uint8_t mul(uint8_t a, uint8_t b) const { return tab_->mul[(unsigned(a) << tab_->k) | b]; }

    uint8_t inv(uint8_t a) const {
        if (a == 0) throw std::domain_error("Field::inv(0)");
        return tab_->inv[a];
    }

    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

    uint8_t pow(uint8_t a, uint64_t e) const {
        uint8_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    /// x -> x^2, the field automorphism generating Gal(GF(2^k)/GF(2)).
    uint8_t frobenius(uint8_t a) const { return mul(a, a); }

    /// A fixed multiplicative generator (smallest element generating the
    /// unit group; for the Conway polynomials this is x itself when k > 1).
    uint8_t generator() const { return tab_->gen; }

    bool operator==(const Field& o) const { return tab_->k == o.tab_->k; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string name() const { return "GF(" + std::to_string(size()) + ")"; }

private:
    struct Tables {
        unsigned k = 0;
        unsigned poly = 0;
        uint8_t gen = 1;
        std::vector<uint8_t> mul;  // (a<<k)|b -> a*b
        std::vector<uint8_t> inv;  // a -> a^-1 (index 0 unused)
    };

    static const Tables* tables(unsigned k) {
        static std::array<std::unique_ptr<Tables>, 9> cache;
        if (!cache[k]) cache[k] = build(k);
        return cache[k].get();
    }

    static std::unique_ptr<Tables> build(unsigned k) {
        // Conway polynomials C_{2,k}, bit i = coefficient of x^i.
        static const unsigned conway[9] = {0, 0b11, 0b111, 0b1011, 0b10011,
                                           0b100101, 0b1011011, 0b10000011, 0b100011101};
        auto t = std::make_unique<Tables>();
        t->k = k;
        t->poly = conway[k];
        const unsigned n = 1u << k;
        t->mul.assign(n * n, 0);
        t->inv.assign(n, 0);
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b)
                t->mul[(a << k) | b] = polymul(a, b, k, t->poly);
        for (unsigned a = 1; a < n; ++a) {
            for (unsigned b = 1; b < n; ++b)
                if (t->mul[(a << k) | b] == 1) {
                    t->inv[a] = uint8_t(b);
                    break;
                }
            if (t->inv[a] == 0) throw std::logic_error("field table: no inverse; polynomial not irreducible?");
        }
        t->gen = (k == 1) ? 1 : 2;  // x generates for the Conway polynomials
        // sanity: generator order is 2^k - 1
        unsigned ord = 1;
        uint8_t p = t->gen;
        while (p != 1) {
            p = t->mul[(unsigned(p) << k) | t->gen];
            ++ord;
            if (ord > n) throw std::logic_error("field table: generator order overflow");
        }
        if (k > 1 && ord != n - 1) throw std::logic_error("field table: x is not primitive");
        return t;
    }

    static uint8_t polymul(unsigned a, unsigned b, unsigned k, unsigned poly) {
        unsigned r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a & (1u << k)) a ^= poly;
        }
        return uint8_t(r);
    }

    const Tables* tab_;
};

}  // namespace modrep
