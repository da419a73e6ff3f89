#pragma once

#include <memory>
#include <optional>

#include "perm.hpp"

namespace modrep {

/// A finite group given by permutation generators on n points, plus named
/// subgroup embeddings (words in the generators). The declared order is
/// checked against full enumeration on demand.
struct GroupData {
    std::string name;
    uint32_t npoints = 0;
    std::vector<Perm> gens;
    uint64_t declared_order = 0;
    std::map<std::string, std::vector<Word>> subgroups;

    /// Name of a designated normal p-subgroup whose augmentation ideal
    /// generates the radical of the group algebra in characteristic p
    /// (valid when the quotient by it has odd order). Empty when unknown.
    std::string radical_subgroup;

    mutable std::shared_ptr<ElementTable> elements_;  // lazily built

    const ElementTable& elements() const {
        if (!elements_) elements_ = std::make_shared<ElementTable>(enumerate_group(gens));
        return *elements_;
    }

    uint64_t order() const { return elements().elements.size(); }

    bool is_2group() const {
        uint64_t n = order();
        return n && (n & (n - 1)) == 0;
    }

    Perm evaluate(const Word& w) const { return evaluate_word_perm(w, gens); }
};

using GroupPtr = std::shared_ptr<const GroupData>;

/// Validate the GroupData invariants; throws with a message on failure.
inline void validate_group(const GroupData& g) {
    if (g.gens.empty()) throw std::runtime_error(g.name + ": no generators");
    for (auto& p : g.gens) {
        if (p.degree() != g.npoints) throw std::runtime_error(g.name + ": generator degree mismatch");
        if (!p.is_bijection()) throw std::runtime_error(g.name + ": generator not a bijection");
    }
    if (g.declared_order && g.order() != g.declared_order)
        throw std::runtime_error(g.name + ": declared order " + std::to_string(g.declared_order) +
                                 " != computed " + std::to_string(g.order()));
    for (auto& [sname, words] : g.subgroups) {
        for (auto& w : words) (void)g.evaluate(w);  // throws on bad tokens
        (void)sname;
    }
}

/// Resolved subgroup: its own GroupData on the same points, generated by the
/// evaluated words.
struct SubgroupSpec {
    std::string name;
    std::vector<Word> words;
    GroupPtr parent;

    GroupPtr realize() const {
        auto sub = std::make_shared<GroupData>();
        sub->name = parent->name + "." + name;
        sub->npoints = parent->npoints;
        for (auto& w : words) sub->gens.push_back(parent->evaluate(w));
        sub->declared_order = 0;
        if (sub->is_2group()) sub->radical_subgroup = "";  // p-group: whole group
        return sub;
    }
};

inline SubgroupSpec subgroup_spec(const GroupPtr& g, const std::string& name) {
    auto it = g->subgroups.find(name);
    if (it == g->subgroups.end()) throw std::invalid_argument(g->name + ": unknown subgroup " + name);
    return SubgroupSpec{name, it->second, g};
}

/// Right-coset table for a subgroup given by words: coset index per group
/// element, plus one representative element index per coset (the smallest).
struct CosetTable {
    std::vector<uint32_t> coset_of;  // element index -> coset index
    std::vector<uint32_t> reps;      // coset index -> element index
};

inline CosetTable coset_table(const GroupData& g, const std::vector<Word>& subgroup_words);

/// All elements of the subgroup generated by the given words, as indices
/// into the parent's element table.
inline std::vector<uint32_t> subgroup_element_indices(const GroupData& g, const std::vector<Word>& words) {
    const auto& tab = g.elements();
    std::vector<Perm> sgens;
    for (auto& w : words) sgens.push_back(g.evaluate(w));
    auto sub = enumerate_group(sgens);
    std::vector<uint32_t> idx;
    idx.reserve(sub.elements.size());
    for (auto& e : sub.elements) {
        auto it = tab.index.find(e);
        if (it == tab.index.end()) throw std::runtime_error("subgroup element escapes parent group");
        idx.push_back(it->second);
    }
    return idx;
}

inline CosetTable coset_table(const GroupData& g, const std::vector<Word>& subgroup_words) {
    const auto& tab = g.elements();
    auto sub_idx = subgroup_element_indices(g, subgroup_words);
    uint32_t n = uint32_t(tab.elements.size());
    CosetTable ct;
    ct.coset_of.assign(n, UINT32_MAX);
    for (uint32_t x = 0; x < n; ++x) {
        if (ct.coset_of[x] != UINT32_MAX) continue;
        uint32_t id = uint32_t(ct.reps.size());
        ct.reps.push_back(x);
        for (uint32_t h : sub_idx) ct.coset_of[tab.index.at(tab.elements[h] * tab.elements[x])] = id;
    }
    return ct;
}

}  // namespace modrep
