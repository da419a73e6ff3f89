#pragma once

#include "group.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace modrep {

/// A representation of a finite group: one invertible matrix per group
/// generator over a fixed field. Vectors are rows; g acts by v -> v*rho(g).
/// Modules are immutable values; copies share storage.
class Module {
public:
    Module() = default;

    Module(GroupPtr group, const Field& field, std::vector<Matrix> gens) {
        auto r = std::make_shared<Rep>();
        r->group = std::move(group);
        r->field = field;
        r->gens = std::move(gens);
        r->dim = r->gens.empty() ? 0 : r->gens[0].rows();
        for (auto& m : r->gens)
            if (m.rows() != r->dim || m.cols() != r->dim || m.field() != field)
                throw std::invalid_argument("Module: inconsistent generator matrices");
        if (r->group && r->gens.size() != r->group->gens.size())
            throw std::invalid_argument("Module: generator count mismatch with group");
        r_ = std::move(r);
    }

    /// The zero module (first-class so decompositions are total).
    static Module zero(GroupPtr group, const Field& field) {
        std::vector<Matrix> gens(group->gens.size(), Matrix(field, 0, 0));
        return Module(std::move(group), field, std::move(gens));
    }

    static Module trivial(GroupPtr group, const Field& field) {
        std::vector<Matrix> gens(group->gens.size(), Matrix::identity(field, 1));
        return Module(std::move(group), field, std::move(gens));
    }

    bool valid() const { return r_ != nullptr; }
    const GroupPtr& group() const { return r_->group; }
    const Field& field() const { return r_->field; }
    uint32_t dim() const { return r_->dim; }
    size_t gen_count() const { return r_->gens.size(); }
    const Matrix& gen(size_t i) const { return r_->gens[i]; }
    const std::vector<Matrix>& gens() const { return r_->gens; }

    const Matrix& gen_inverse(size_t i) const {
        if (!r_->invs) {
            std::vector<Matrix> v;
            v.reserve(r_->gens.size());
            for (auto& g : r_->gens) {
                auto inv = invert(g);
                if (!inv) throw std::runtime_error("Module: generator not invertible");
                v.push_back(std::move(*inv));
            }
            r_->invs = std::move(v);
        }
        return (*r_->invs)[i];
    }

    Matrix evaluate_word(const Word& w) const {
        Matrix r = Matrix::identity(field(), dim());
        for (int32_t t : w) {
            if (t == 0 || size_t(std::abs(t)) > gen_count()) throw std::invalid_argument("bad word token");
            r = mat_mul(r, t > 0 ? gen(size_t(t) - 1) : gen_inverse(size_t(-t) - 1));
        }
        return r;
    }

    /// Matrix of an arbitrary group element, given by its index in the
    /// element table (evaluates the stored defining word).
    Matrix element_matrix(uint32_t elt_index) const {
        const auto& tab = group()->elements();
        return evaluate_word(tab.words[elt_index]);
    }

    uint64_t structural_hash() const {
        if (!r_->hash) {
            uint64_t h = 0x9e3779b97f4a7c15ULL ^ dim();
            for (auto& g : r_->gens) h = h * 0x100000001b3ULL + matrix_hash(g);
            r_->hash = h;
        }
        return *r_->hash;
    }

    /// Structural equality (same matrices); only meaningful for caching.
    bool same_matrices(const Module& o) const {
        if (dim() != o.dim() || field() != o.field() || gen_count() != o.gen_count()) return false;
        for (size_t i = 0; i < gen_count(); ++i)
            if (gen(i) != o.gen(i)) return false;
        return true;
    }

private:
    struct Rep {
        GroupPtr group;
        Field field;
        uint32_t dim = 0;
        std::vector<Matrix> gens;
        mutable std::optional<std::vector<Matrix>> invs;
        mutable std::optional<uint64_t> hash;
    };
    std::shared_ptr<Rep> r_;
};

inline bool same_group(const Module& a, const Module& b) {
    if (a.group() == b.group()) return true;
    const GroupData &x = *a.group(), &y = *b.group();
    return x.name == y.name && x.npoints == y.npoints && x.gens == y.gens;
}

inline void check_compatible(const Module& a, const Module& b) {
    if (!same_group(a, b)) throw std::invalid_argument("group mismatch");
    if (a.field() != b.field()) throw std::invalid_argument("field mismatch");
}

/// g acts as kron(rho1(g), rho2(g)); dim d1*d2.
inline Module tensor(const Module& a, const Module& b) {
    check_compatible(a, b);
    std::vector<Matrix> gens;
    gens.reserve(a.gen_count());
    for (size_t i = 0; i < a.gen_count(); ++i) gens.push_back(kronecker(a.gen(i), b.gen(i)));
    return Module(a.group(), a.field(), std::move(gens));
}

inline Module direct_sum(const Module& a, const Module& b) {
    check_compatible(a, b);
    std::vector<Matrix> gens;
    gens.reserve(a.gen_count());
    for (size_t i = 0; i < a.gen_count(); ++i) gens.push_back(direct_sum_blocks(a.gen(i), b.gen(i)));
    return Module(a.group(), a.field(), std::move(gens));
}

/// Contragredient: g acts as transpose(rho(g)^-1).
inline Module dual(const Module& m) {
    std::vector<Matrix> gens;
    gens.reserve(m.gen_count());
    for (size_t i = 0; i < m.gen_count(); ++i) gens.push_back(m.gen_inverse(i).transpose());
    return Module(m.group(), m.field(), std::move(gens));
}

/// Restriction along a named subgroup embedding: the subgroup's generators
/// act by the evaluated word matrices.
inline Module restrict_module(const Module& m, const SubgroupSpec& s) {
    std::vector<Matrix> gens;
    gens.reserve(s.words.size());
    for (auto& w : s.words) gens.push_back(m.evaluate_word(w));
    return Module(s.realize(), m.field(), std::move(gens));
}

inline Module restrict_module(const Module& m, const std::string& subgroup_name) {
    return restrict_module(m, subgroup_spec(m.group(), subgroup_name));
}

/// Scalar extension along GF(2^j) <= GF(2^k), j | k. Entries are re-encoded
/// through the subfield embedding x_j -> x_k^((2^k-1)/(2^j-1)).
inline Module extend_scalars(const Module& m, const Field& big) {
    const Field small = m.field();
    if (big.degree() % small.degree() != 0) throw std::invalid_argument("extend_scalars: not a subfield");
    std::vector<uint8_t> embed(small.size());
    embed[0] = 0;
    uint8_t sg = small.generator();
    uint8_t bg = big.pow(big.generator(), (big.size() - 1) / (small.size() - 1));
    uint8_t se = 1, be = 1;
    embed[1] = 1;
    for (unsigned i = 1; i < small.size() - 1; ++i) {
        se = small.mul(se, sg);
        be = big.mul(be, bg);
        embed[se] = be;
    }
    std::vector<Matrix> gens;
    for (size_t t = 0; t < m.gen_count(); ++t) {
        Matrix g(big, m.dim(), m.dim());
        for (uint32_t i = 0; i < m.dim(); ++i)
            for (uint32_t j = 0; j < m.dim(); ++j)
                if (uint8_t v = m.gen(t).get(i, j)) g.set(i, j, embed[v]);
        gens.push_back(std::move(g));
    }
    return Module(m.group(), big, std::move(gens));
}

/// Entrywise field automorphism x -> x^2 (Galois twist of the module).
inline Module frobenius_twist(const Module& m) {
    std::vector<Matrix> gens;
    for (size_t t = 0; t < m.gen_count(); ++t) {
        Matrix g(m.field(), m.dim(), m.dim());
        for (uint32_t i = 0; i < m.dim(); ++i)
            for (uint32_t j = 0; j < m.dim(); ++j)
                if (uint8_t v = m.gen(t).get(i, j)) g.set(i, j, m.field().frobenius(v));
        gens.push_back(std::move(g));
    }
    return Module(m.group(), m.field(), std::move(gens));
}

/// Smallest subspace containing the seed rows and closed under the group
/// action; echelonized (RREF) basis rows.
inline RowBasis spin(const Module& m, const Matrix& seeds) {
    RowBasis basis(m.field(), m.dim());
    std::vector<uint32_t> queue;
    for (uint32_t i = 0; i < seeds.rows(); ++i)
        if (basis.add_row(seeds, i)) queue.push_back(basis.dim() - 1);
    // worklist over newly added basis rows; closure under the generators
    // suffices since the actions are invertible
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t r = queue[head];
        Matrix v(m.field(), 1, m.dim());
        std::memcpy(v.row(0), basis.row(r), v.words_per_row() * 8);
        for (size_t gi = 0; gi < m.gen_count(); ++gi) {
            Matrix w = mat_mul(v, m.gen(gi));
            if (basis.add_row(w, 0)) queue.push_back(basis.dim() - 1);
        }
    }
    // rows mutate during back-substitution; re-queue by index is fine because
    // the row space only grows and reduction keeps RREF
    return basis;
}

inline RowBasis spin_vector(const Module& m, const Matrix& row1) { return spin(m, row1); }

/// The submodule on an action-closed row space, with the induced action.
inline Module submodule(const Module& m, const RowBasis& basis) {
    uint32_t s = basis.dim();
    Matrix B = basis.to_matrix();
    std::vector<Matrix> gens;
    for (size_t gi = 0; gi < m.gen_count(); ++gi) {
        Matrix img = mat_mul(B, m.gen(gi));
        Matrix a(m.field(), s, s);
        for (uint32_t i = 0; i < s; ++i) {
            // rows of img must lie in the span; coordinates = pivot entries
            std::vector<uint64_t> v(img.row(i), img.row(i) + img.words_per_row());
            if (basis.reduce(v.data()) >= 0) throw std::runtime_error("submodule: basis not action-closed");
            auto coords = basis.coordinates(img.row(i));
            for (uint32_t j = 0; j < s; ++j)
                if (coords[j]) a.set(i, j, coords[j]);
        }
        gens.push_back(std::move(a));
    }
    return Module(m.group(), m.field(), std::move(gens));
}

/// Induced action on a complement coordinate system; throws NotInvariant-style
/// if the subspace is not action-closed.
inline Module quotient(const Module& m, const RowBasis& sub) {
    // complement coordinates: unit vectors at non-pivot columns
    Matrix comp = sub.complement_basis();
    uint32_t q = comp.rows();
    std::vector<uint32_t> freecols(q);
    {
        uint32_t t = 0;
        std::vector<bool> is_pivot(m.dim(), false);
        for (int p : sub.pivots()) is_pivot[uint32_t(p)] = true;
        for (uint32_t j = 0; j < m.dim(); ++j)
            if (!is_pivot[j]) freecols[t++] = j;
    }
    std::vector<Matrix> gens;
    for (size_t gi = 0; gi < m.gen_count(); ++gi) {
        // closure check: sub rows must stay inside sub
        Matrix simg = mat_mul(sub.to_matrix(), m.gen(gi));
        for (uint32_t i = 0; i < simg.rows(); ++i) {
            std::vector<uint64_t> v(simg.row(i), simg.row(i) + simg.words_per_row());
            if (sub.reduce(v.data()) >= 0) throw std::runtime_error("quotient: subspace not action-closed");
        }
        Matrix img = mat_mul(comp, m.gen(gi));
        Matrix a(m.field(), q, q);
        for (uint32_t i = 0; i < q; ++i) {
            std::vector<uint64_t> v(img.row(i), img.row(i) + img.words_per_row());
            sub.reduce(v.data());  // kill pivot columns
            for (uint32_t j = 0; j < q; ++j) {
                uint8_t e = Matrix::get_packed(v.data(), freecols[j], m.field().degree());
                if (e) a.set(i, j, e);
            }
        }
        gens.push_back(std::move(a));
    }
    return Module(m.group(), m.field(), std::move(gens));
}

enum class PermAction { Natural, Regular, Cosets };

/// 0/1 permutation matrices for the requested action.
inline Module permutation_module(const GroupPtr& g, const Field& f, PermAction action,
                                 const std::string& subgroup_name = "") {
    std::vector<Perm> action_perms;
    if (action == PermAction::Natural) {
        action_perms = g->gens;
    } else if (action == PermAction::Regular) {
        const auto& tab = g->elements();
        uint32_t n = uint32_t(tab.elements.size());
        for (auto& gen : g->gens) {
            Perm p(n);
            for (uint32_t i = 0; i < n; ++i) p.img[i] = tab.index.at(tab.elements[i] * gen);
            action_perms.push_back(std::move(p));
        }
    } else {
        auto it = g->subgroups.find(subgroup_name);
        if (it == g->subgroups.end()) throw std::invalid_argument("unknown action subgroup: " + subgroup_name);
        const auto& tab = g->elements();
        auto sub_idx = subgroup_element_indices(*g, it->second);
        // right cosets Hx; representative = smallest element index in coset
        uint32_t n = uint32_t(tab.elements.size());
        std::vector<uint32_t> coset_rep(n, UINT32_MAX);
        std::vector<uint32_t> reps;
        for (uint32_t x = 0; x < n; ++x) {
            if (coset_rep[x] != UINT32_MAX) continue;
            uint32_t id = uint32_t(reps.size());
            reps.push_back(x);
            for (uint32_t h : sub_idx) {
                uint32_t y = tab.index.at(tab.elements[h] * tab.elements[x]);
                coset_rep[y] = id;
            }
        }
        for (auto& gen : g->gens) {
            Perm p(uint32_t(reps.size()));
            for (uint32_t c = 0; c < reps.size(); ++c)
                p.img[c] = coset_rep[tab.index.at(tab.elements[reps[c]] * gen)];
            action_perms.push_back(std::move(p));
        }
    }
    std::vector<Matrix> gens;
    for (auto& p : action_perms) {
        Matrix m(f, p.degree(), p.degree());
        for (uint32_t i = 0; i < p.degree(); ++i) m.set(i, p.img[i], 1);
        gens.push_back(std::move(m));
    }
    return Module(g, f, std::move(gens));
}

inline Module regular_module(const GroupPtr& g, const Field& f) {
    return permutation_module(g, f, PermAction::Regular);
}

/// Generators of P whose augmentation ideal generates rad(kG); requires the
/// radical recipe (normal Sylow p-subgroup with odd-order quotient, or the
/// group itself a p-group).
inline std::vector<Matrix> radical_generator_matrices(const Module& m) {
    const GroupData& g = *m.group();
    if (g.is_2group()) {
        std::vector<Matrix> v;
        for (size_t i = 0; i < m.gen_count(); ++i) v.push_back(m.gen(i));
        return v;
    }
    if (g.radical_subgroup.empty())
        throw std::runtime_error(g.name + ": no radical recipe for this group");
    auto it = g.subgroups.find(g.radical_subgroup);
    if (it == g.subgroups.end()) throw std::runtime_error("radical subgroup words missing");
    std::vector<Matrix> v;
    for (auto& w : it->second) v.push_back(m.evaluate_word(w));
    return v;
}

inline bool has_radical_recipe(const Module& m) {
    const GroupData& g = *m.group();
    return g.is_2group() || (!g.radical_subgroup.empty() && g.subgroups.count(g.radical_subgroup));
}

/// rad(M) = M * I(P) * kG: span of the images of (rho(p)-1) closed under the
/// group action; returns an RREF basis.
inline RowBasis radical_rows(const Module& m) {
    auto pgens = radical_generator_matrices(m);
    Matrix stacked(m.field(), 0, m.dim());
    RowBasis seeds(m.field(), m.dim());
    for (auto& pm : pgens) {
        Matrix d = pm;  // rho(p) - I
        for (uint32_t i = 0; i < m.dim(); ++i) d.set(i, i, m.field().add(d.get(i, i), 1));
        seeds.add_all_rows(d);
    }
    return spin(m, seeds.to_matrix());
}

/// M / rad(M) as a module (semisimple).
inline Module head_module(const Module& m) { return quotient(m, radical_rows(m)); }

/// A minimal generating set when the radical is available (lifts a basis of
/// M/rad M); otherwise a small generating set found by greedy spinning.
inline Matrix module_generators(const Module& m) {
    if (m.dim() == 0) return Matrix(m.field(), 0, 0);
    if (has_radical_recipe(m)) {
        RowBasis rad = radical_rows(m);
        return rad.complement_basis();
    }
    // greedy: accumulate unit vectors not yet in the spanned submodule
    std::vector<uint32_t> picks;
    Matrix seeds(m.field(), 0, m.dim());
    RowBasis span(m.field(), m.dim());
    for (uint32_t j = 0; j < m.dim() && span.dim() < m.dim(); ++j) {
        Matrix probe(m.field(), 1, m.dim());
        probe.set(0, j, 1);
        if (span.contains_row(probe, 0)) continue;
        picks.push_back(j);
        Matrix s(m.field(), uint32_t(picks.size()), m.dim());
        for (uint32_t i = 0; i < picks.size(); ++i) s.set(i, picks[i], 1);
        span = spin(m, s);
        seeds = std::move(s);
    }
    return seeds;
}

/// Invariant checks: invertible actions and (when the permutation
/// realization is available) relation spot-checks: random words evaluating to
/// the identity permutation must act as the identity matrix.
inline void validate_module(const Module& m, Rng rng, unsigned relation_samples = 64) {
    for (size_t i = 0; i < m.gen_count(); ++i) (void)m.gen_inverse(i);  // throws if singular
    if (!m.group() || m.group()->gens.empty()) return;
    const auto& g = *m.group();
    unsigned found = 0, tries = 0;
    while (found < relation_samples && tries < relation_samples * 64) {
        ++tries;
        Word w;
        unsigned len = 2 + unsigned(rng.below(10));
        for (unsigned t = 0; t < len; ++t) {
            int32_t tok = int32_t(1 + rng.below(g.gens.size()));
            w.push_back(rng.coin() ? tok : -tok);
        }
        Perm p = g.evaluate(w);
        if (!p.is_identity()) continue;
        ++found;
        Matrix mm = m.evaluate_word(w);
        if (mm != Matrix::identity(m.field(), m.dim()))
            throw std::runtime_error("validate_module: relation violated by matrices");
    }
}

}  // namespace modrep
