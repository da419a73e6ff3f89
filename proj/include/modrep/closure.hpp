#pragma once

#include <queue>
#include <sstream>

#include "vertex.hpp"

namespace modrep {

struct CatalogEntry {
    std::string label;
    Module rep;
    uint32_t dim = 0;
    uint32_t endo_dim = 0;  // fingerprint
    std::optional<PeriodicityResult> periodicity;
    std::string vertex_note;
    CertLevel cert = CertLevel::Certified;
};

struct ClosureRow {
    std::string x;                              // catalog label of the right factor
    std::map<std::string, uint32_t> parts;      // non-ideal catalog labels
    std::map<std::string, uint32_t> ideal;      // "projX" and (P-side) "cyc4"
    uint64_t product_dim = 0;
    bool dim_ok = false;
};

struct ClosureLimits {
    uint32_t max_classes = 64;
    uint32_t max_dim = 8192;
};

struct ClosureResult {
    enum Status { Closed, BudgetExceeded } status = BudgetExceeded;
    IdealKind ideal = IdealKind::ProjectiveOnly;
    uint64_t seed = 0;
    ClosureLimits limits;
    std::string gen_label;
    std::vector<CatalogEntry> catalog;
    std::vector<ClosureRow> rows;

    int catalog_index(const std::string& label) const {
        for (size_t i = 0; i < catalog.size(); ++i)
            if (catalog[i].label == label) return int(i);
        return -1;
    }
};

namespace detail {

struct LabelMaker {
    std::string prefix = "C";
    std::string gen_label = "A";
    unsigned next_major = 1;
    std::map<std::pair<unsigned, uint32_t>, unsigned> reuse;  // (parent major, dim) -> major

    static std::optional<std::pair<unsigned, unsigned>> lineage(const std::string& label,
                                                                const std::string& prefix) {
        if (label.size() <= prefix.size() || label.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
        auto dotpos = label.find('.');
        if (dotpos == std::string::npos) return std::nullopt;
        try {
            unsigned major = unsigned(std::stoul(label.substr(prefix.size(), dotpos - prefix.size())));
            unsigned idx = unsigned(std::stoul(label.substr(dotpos + 1)));
            return std::make_pair(major, idx);
        } catch (...) {
            return std::nullopt;
        }
    }

    /// Names for a group of same-dimension new classes discovered in the row
    /// gen (x) X. `whole_square` marks a square row whose product is itself
    /// the one new class (an indecomposable tensor square).
    std::vector<std::string> name_group(const std::string& x_label, bool whole_square, uint32_t dim,
                                        size_t count) {
        std::vector<std::string> out;
        if (whole_square) {
            out.push_back(gen_label + "2");
            return out;
        }
        auto lin = lineage(x_label, prefix);
        if (count == 1 && lin) {
            auto key = std::make_pair(lin->first, dim);
            auto it = reuse.find(key);
            unsigned major = (it != reuse.end()) ? it->second : next_major++;
            reuse.emplace(key, major);
            out.push_back(prefix + std::to_string(major) + "." + std::to_string(lin->second));
            return out;
        }
        unsigned major = next_major++;
        if (count == 1) {
            out.push_back(prefix + std::to_string(major));
        } else {
            for (size_t i = 0; i < count; ++i)
                out.push_back(prefix + std::to_string(major) + "." + std::to_string(i + 1));
        }
        return out;
    }
};

}  // namespace detail

struct ClosureOptions {
    ClosureLimits limits;
    uint64_t seed = 0;
    std::string label_prefix = "C";
    IdealKind ideal = IdealKind::ProjectiveOnly;
};

/// Tensor-closure worklist: catalog the generator, repeatedly decompose
/// gen (x) X for uncatalogued X (smallest dimension first), drop ideal
/// members, and stop when no new classes appear. A Closed status certifies
/// the generator algebraic modulo the ideal.
inline ClosureResult tensor_closure(const Module& gen, const std::string& gen_label, const PimCatalog& cat,
                                    const ClosureOptions& opts) {
    ClosureResult cr;
    cr.ideal = opts.ideal;
    cr.seed = opts.seed;
    cr.limits = opts.limits;
    cr.gen_label = gen_label;
    std::optional<SubgroupLattice> lat;
    if (opts.ideal == IdealKind::CyclicOrTrivialVertex) lat = build_subgroup_lattice(cat.G);

    {
        auto c = certify_indecomposable(gen, opts.seed, &cat);
        if (c.kind == IndecomposabilityResult::Split)
            throw std::invalid_argument("tensor_closure: generator decomposes; close each summand instead");
        CatalogEntry e{gen_label, gen, gen.dim(), hom_basis(gen, gen, &cat, opts.seed).dim(), std::nullopt, "",
                       c.kind == IndecomposabilityResult::Certified ? CertLevel::Certified
                                                                    : CertLevel::Probabilistic};
        cr.catalog.push_back(std::move(e));
    }
    detail::LabelMaker namer{opts.label_prefix, gen_label, 1, {}};

    // worklist: (dim, discovery index)
    auto cmp = [&](size_t a, size_t b) {
        if (cr.catalog[a].dim != cr.catalog[b].dim) return cr.catalog[a].dim > cr.catalog[b].dim;
        return a > b;
    };
    std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> work(cmp);
    work.push(0);
    uint64_t row_counter = 0;

    while (!work.empty()) {
        size_t xi = work.top();
        work.pop();
        const CatalogEntry x = cr.catalog[xi];
        Module prod = tensor(gen, x.rep);
        if (prod.dim() > cr.limits.max_dim) {
            cr.status = ClosureResult::BudgetExceeded;
            return cr;
        }
        Decomposition dec = decompose(prod, cat, {opts.seed + 7919 * (++row_counter), StripMode::Heller});
        ClosureRow row;
        row.x = x.label;
        row.product_dim = uint64_t(gen.dim()) * x.dim;
        for (auto& [l, k] : dec.pim_mults) row.ideal[l] += k;
        // sort parts: ascending dim, stable
        struct NewPart {
            Module rep;
            uint32_t mult;
            CertLevel cert;
        };
        std::vector<NewPart> fresh;
        for (auto& part : dec.parts) {
            if (opts.ideal == IdealKind::CyclicOrTrivialVertex && part.rep.dim() <= 8 &&
                in_ideal(part.rep, opts.ideal, cat, &*lat)) {
                size_t v = vertex(part.rep, *lat);
                if (lat->subs[v].order == 1)
                    row.ideal["projK"] += part.multiplicity;  // free module found past the strip
                else
                    row.ideal["cyc4"] += part.multiplicity;
                continue;
            }
            // match against the catalog
            bool matched = false;
            for (auto& entry : cr.catalog) {
                if (entry.dim != part.rep.dim()) continue;
                auto iso = is_isomorphic(entry.rep, part.rep, opts.seed ^ matrix_hash(part.rep.gen(0)), &cat);
                if (iso.verdict == IsoResult::Yes) {
                    row.parts[entry.label] += part.multiplicity;
                    matched = true;
                    break;
                }
            }
            if (!matched) fresh.push_back({part.rep, part.multiplicity, part.cert});
        }
        // group the fresh classes by dimension (parts are dim-sorted already)
        bool whole_square = (xi == 0 && fresh.size() == 1 && fresh[0].mult == 1 &&
                             uint64_t(fresh[0].rep.dim()) == row.product_dim);
        size_t i = 0;
        while (i < fresh.size()) {
            size_t j = i;
            while (j < fresh.size() && fresh[j].rep.dim() == fresh[i].rep.dim()) ++j;
            auto labels = namer.name_group(x.label, whole_square, fresh[i].rep.dim(), j - i);
            for (size_t t = i; t < j; ++t) {
                const std::string& label = labels[t - i];
                CatalogEntry e{label, fresh[t].rep, fresh[t].rep.dim(),
                               hom_basis(fresh[t].rep, fresh[t].rep, &cat, opts.seed).dim(), std::nullopt, "",
                               fresh[t].cert};
                cr.catalog.push_back(std::move(e));
                row.parts[label] += fresh[t].mult;
                work.push(cr.catalog.size() - 1);
                if (cr.catalog.size() > cr.limits.max_classes) {
                    cr.rows.push_back(row);
                    cr.status = ClosureResult::BudgetExceeded;
                    return cr;
                }
            }
            i = j;
        }
        // dimension audit
        uint64_t total = 0;
        for (auto& [l, k] : row.parts) {
            int ci = cr.catalog_index(l);
            total += uint64_t(cr.catalog[size_t(ci)].dim) * k;
        }
        for (auto& [l, k] : row.ideal) {
            if (l == "cyc4") {
                total += 4ull * k;
            } else {
                int pi = cat.pim_index(l);
                if (pi < 0) throw std::logic_error("closure: unknown ideal label " + l);
                total += uint64_t(cat.pims[size_t(pi)].dim) * k;
            }
        }
        row.dim_ok = (total == row.product_dim);
        if (!row.dim_ok) throw std::logic_error("closure: dimension audit failed for row " + row.x);
        cr.rows.push_back(std::move(row));
    }
    cr.status = ClosureResult::Closed;
    return cr;
}

/// Soundness pass: re-decompose every row with an independent seed and check
/// that only catalog labels and ideal members appear, with the same counts.
inline bool verify_closure(const ClosureResult& cr, const Module& gen, const PimCatalog& cat,
                           uint64_t alt_seed, std::string* complaint = nullptr) {
    std::optional<SubgroupLattice> lat;
    if (cr.ideal == IdealKind::CyclicOrTrivialVertex) lat = build_subgroup_lattice(cat.G);
    for (auto& row : cr.rows) {
        int xi = cr.catalog_index(row.x);
        Module prod = tensor(gen, cr.catalog[size_t(xi)].rep);
        Decomposition dec = decompose(prod, cat, {alt_seed + matrix_hash(prod.gen(0)), StripMode::Heller});
        std::map<std::string, uint32_t> parts, ideal;
        for (auto& [l, k] : dec.pim_mults) ideal[l] += k;
        for (auto& part : dec.parts) {
            if (cr.ideal == IdealKind::CyclicOrTrivialVertex && part.rep.dim() <= 8 &&
                in_ideal(part.rep, cr.ideal, cat, &*lat)) {
                size_t v = vertex(part.rep, *lat);
                ideal[lat->subs[v].order == 1 ? "projK" : "cyc4"] += part.multiplicity;
                continue;
            }
            bool matched = false;
            for (auto& entry : cr.catalog) {
                if (entry.dim != part.rep.dim()) continue;
                if (is_isomorphic(entry.rep, part.rep, alt_seed, &cat).verdict == IsoResult::Yes) {
                    parts[entry.label] += part.multiplicity;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                if (complaint) *complaint = "row " + row.x + ": uncatalogued summand of dim " +
                                            std::to_string(part.rep.dim());
                return false;
            }
        }
        if (parts != row.parts || ideal != row.ideal) {
            if (complaint) *complaint = "row " + row.x + ": decomposition differs under reseeding";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// integer characteristic polynomial (Berkowitz, division-free)

inline std::string int128_str(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
    std::string s;
    while (u) {
        s += char('0' + int(u % 10));
        u /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
}

namespace detail {

inline __int128 checked_mul(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("charpoly: 128-bit overflow");
    return r;
}

}  // namespace detail

/// Coefficients of det(x I - T), ascending (coeff[n] = 1).
inline std::vector<__int128> charpoly_int(const std::vector<std::vector<int64_t>>& T) {
    size_t n = T.size();
    std::vector<__int128> p{1};  // descending coefficients, degree 0
    for (size_t r = 1; r <= n; ++r) {
        // q[0] = 1, q[1] = -a_rr, q[k] = -(Row_r M^(k-2) Col_r) for principal (r-1)x(r-1) M
        std::vector<__int128> q(r + 1, 0);
        q[0] = 1;
        q[1] = -__int128(T[r - 1][r - 1]);
        if (r >= 2) {
            std::vector<__int128> v(r - 1);  // v = M^t Col
            for (size_t i = 0; i < r - 1; ++i) v[i] = T[i][r - 1];
            for (size_t k = 2; k <= r; ++k) {
                __int128 dot = 0;
                for (size_t i = 0; i < r - 1; ++i)
                    dot += detail::checked_mul(__int128(T[r - 1][i]), v[i]);
                q[k] = -dot;
                if (k < r) {
                    std::vector<__int128> nv(r - 1, 0);
                    for (size_t i = 0; i < r - 1; ++i)
                        for (size_t j = 0; j < r - 1; ++j)
                            nv[i] += detail::checked_mul(__int128(T[i][j]), v[j]);
                    v = std::move(nv);
                }
            }
        }
        // p_new = Toeplitz(q) * p  (convolution)
        std::vector<__int128> np(r + 1, 0);
        for (size_t i = 0; i <= r; ++i)
            for (size_t j = 0; j < p.size() && j <= i; ++j) np[i] += detail::checked_mul(q[i - j], p[j]);
        p = std::move(np);
    }
    std::reverse(p.begin(), p.end());  // ascending
    return p;
}

struct Witness {
    std::vector<__int128> coeffs;  // ascending; degree = catalog size
    bool evaluation_vanishes = false;
    std::vector<std::vector<int64_t>> action;  // multiplication-by-generator matrix

    unsigned degree() const { return unsigned(coeffs.size()) - 1; }
    std::string poly_str() const {
        std::string s;
        for (size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += int128_str(coeffs[i]);
            if (i > 0) s += "*x^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }
};

/// The integer matrix of multiplication by the generator on the span of the
/// catalog labels (mod the ideal), and its characteristic polynomial. The
/// generator satisfies p exactly on that span; p(T) = 0 is verified in
/// 128-bit integer arithmetic.
inline Witness polynomial_witness(const ClosureResult& cr) {
    if (cr.status != ClosureResult::Closed) throw std::invalid_argument("polynomial_witness: closure not Closed");
    size_t n = cr.catalog.size();
    std::vector<std::vector<int64_t>> T(n, std::vector<int64_t>(n, 0));
    for (auto& row : cr.rows) {
        int j = cr.catalog_index(row.x);
        for (auto& [l, k] : row.parts) {
            int i = cr.catalog_index(l);
            if (i < 0) throw std::logic_error("witness: row references unknown label");
            T[size_t(i)][size_t(j)] = int64_t(k);
        }
    }
    Witness w;
    w.action = T;
    w.coeffs = charpoly_int(T);
    // verify p(T) = 0 exactly
    size_t deg = w.coeffs.size() - 1;
    std::vector<std::vector<__int128>> acc(n, std::vector<__int128>(n, 0));
    for (size_t i = 0; i < n; ++i) acc[i][i] = w.coeffs[deg];
    for (size_t c = deg; c-- > 0;) {
        // acc = acc * T + coeff[c] * I
        std::vector<std::vector<__int128>> nx(n, std::vector<__int128>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) {
                if (acc[i][k] == 0) continue;
                for (size_t j = 0; j < n; ++j)
                    if (T[k][j]) nx[i][j] += detail::checked_mul(acc[i][k], __int128(T[k][j]));
            }
        for (size_t i = 0; i < n; ++i) nx[i][i] += w.coeffs[c];
        acc = std::move(nx);
    }
    w.evaluation_vanishes = true;
    for (size_t i = 0; i < n && w.evaluation_vanishes; ++i)
        for (size_t j = 0; j < n; ++j)
            if (acc[i][j] != 0) {
                w.evaluation_vanishes = false;
                break;
            }
    return w;
}

// ---------------------------------------------------------------------------
// comparison against expected tables

struct ExpectedRow {
    std::string x;                           // right factor label
    std::map<std::string, uint32_t> terms;   // all labels with multiplicities
    bool ideal_wildcard = false;             // trailing IDEAL token
    std::string source_line;
};

struct ExpectedTable {
    std::string gen_label;
    std::vector<ExpectedRow> rows;
};

enum class RowVerdict { Strict, Structural, Mismatch, Missing };

struct RowReport {
    std::string x;
    RowVerdict verdict = RowVerdict::Missing;
    bool expected_inconsistent = false;  // the printed line fails its own dimension audit
    std::string expected_str, computed_str, note;
};

struct CompareReport {
    std::vector<RowReport> rows;
    unsigned strict = 0, structural = 0, mismatch = 0, missing = 0;
    bool all_structural_or_better() const { return mismatch == 0 && missing == 0; }
};

namespace detail {

inline bool is_ideal_label(const std::string& l) {
    return l.rfind("proj", 0) == 0 || l == "cyc4";
}

inline std::string format_parts(const std::map<std::string, uint32_t>& parts,
                                const std::map<std::string, uint32_t>& ideal) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& l, uint32_t k) {
        if (!first) os << " + ";
        first = false;
        if (k != 1) os << k << "*";
        os << l;
    };
    for (auto& [l, k] : parts) emit(l, k);
    for (auto& [l, k] : ideal) emit(l, k);
    if (first) os << "0";
    return os.str();
}

}  // namespace detail

/// Per-row verdicts at two levels. STRUCTURAL: the multisets of non-ideal
/// labels (with dims) match; STRICT: ideal multiplicities match as well.
/// Expected rows failing their own dimension audit (transcribed
/// inconsistencies) are flagged, compared by support only, and can never be
/// STRICT; mismatches are reported with both sides, never corrected.
inline CompareReport compare_expected(const ClosureResult& cr, const ExpectedTable& table,
                                      const PimCatalog& cat) {
    CompareReport rep;
    if (table.gen_label != cr.gen_label)
        throw std::invalid_argument("compare_expected: table generator " + table.gen_label +
                                    " does not match closure generator " + cr.gen_label);
    auto label_dim = [&](const std::string& l) -> int64_t {
        if (l == "cyc4") return 4;
        if (l.rfind("proj", 0) == 0) {
            int pi = cat.pim_index(l);
            return pi < 0 ? -1 : int64_t(cat.pims[size_t(pi)].dim);
        }
        int ci = cr.catalog_index(l);
        return ci < 0 ? -1 : int64_t(cr.catalog[size_t(ci)].dim);
    };
    for (auto& er : table.rows) {
        RowReport rr;
        rr.x = er.x;
        rr.expected_str = er.source_line;
        const ClosureRow* crow = nullptr;
        for (auto& row : cr.rows)
            if (row.x == er.x) {
                crow = &row;
                break;
            }
        if (!crow) {
            rr.verdict = RowVerdict::Missing;
            rr.note = "no computed row for this factor";
            rep.rows.push_back(rr);
            ++rep.missing;
            continue;
        }
        rr.computed_str = detail::format_parts(crow->parts, crow->ideal);
        std::map<std::string, uint32_t> exp_parts, exp_ideal;
        bool labels_ok = true;
        int64_t exp_dim = 0;
        for (auto& [l, k] : er.terms) {
            int64_t d = label_dim(l);
            if (d < 0) labels_ok = false;
            exp_dim += d * k;
            (detail::is_ideal_label(l) ? exp_ideal : exp_parts)[l] += k;
        }
        if (!labels_ok) {
            rr.verdict = RowVerdict::Mismatch;
            rr.note = "expected row uses labels absent from the computed catalog";
            rep.rows.push_back(rr);
            ++rep.mismatch;
            continue;
        }
        if (!er.ideal_wildcard && exp_dim != int64_t(crow->product_dim)) {
            rr.expected_inconsistent = true;
            rr.note = "expected line sums to " + std::to_string(exp_dim) + ", product has dimension " +
                      std::to_string(crow->product_dim) + "; comparing non-ideal support only";
        }
        bool structural;
        if (rr.expected_inconsistent) {
            // support comparison on non-ideal labels
            structural = true;
            for (auto& [l, k] : exp_parts)
                if (!crow->parts.count(l)) structural = false;
            for (auto& [l, k] : crow->parts)
                if (!exp_parts.count(l)) structural = false;
        } else {
            structural = (exp_parts == crow->parts);
        }
        if (!structural) {
            rr.verdict = RowVerdict::Mismatch;
            rep.rows.push_back(rr);
            ++rep.mismatch;
            continue;
        }
        bool strict = !rr.expected_inconsistent && !er.ideal_wildcard && exp_ideal == crow->ideal;
        rr.verdict = strict ? RowVerdict::Strict : RowVerdict::Structural;
        if (!strict && !rr.expected_inconsistent && !er.ideal_wildcard && exp_ideal != crow->ideal)
            rr.note = "ideal-part multiplicities differ";
        rep.rows.push_back(rr);
        strict ? ++rep.strict : ++rep.structural;
    }
    return rep;
}

}  // namespace modrep
