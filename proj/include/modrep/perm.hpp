#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace modrep {

/// Permutation of {0..n-1}, stored as the image list. Products compose
/// left-to-right: (a*b)[x] = b[a[x]].
struct Perm {
    std::vector<uint32_t> img;

    Perm() = default;
    explicit Perm(uint32_t n) : img(n) { std::iota(img.begin(), img.end(), 0u); }
    explicit Perm(std::vector<uint32_t> v) : img(std::move(v)) {}

    uint32_t degree() const { return uint32_t(img.size()); }
    uint32_t operator()(uint32_t x) const { return img[x]; }

    bool is_identity() const {
        for (uint32_t i = 0; i < img.size(); ++i)
            if (img[i] != i) return false;
        return true;
    }

    bool is_bijection() const {
        std::vector<bool> seen(img.size(), false);
        for (uint32_t v : img) {
            if (v >= img.size() || seen[v]) return false;
            seen[v] = true;
        }
        return true;
    }

    Perm inverse() const {
        Perm p(degree());
        for (uint32_t i = 0; i < img.size(); ++i) p.img[img[i]] = i;
        return p;
    }

    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }
};

inline Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("perm degree mismatch");
    Perm p(a.degree());
    for (uint32_t i = 0; i < a.degree(); ++i) p.img[i] = b.img[a.img[i]];
    return p;
}

/// A word in group generators: tokens are 1-based indices, negative for the
/// inverse (so {1,-2} means g0 * g1^-1, applied left to right).
using Word = std::vector<int32_t>;

inline std::string word_str(const Word& w) {
    std::string s;
    for (int32_t t : w) {
        if (!s.empty()) s += " ";
        s += std::to_string(t);
    }
    return s.empty() ? "-" : s;
}

inline Word parse_word(const std::string& s) {
    Word w;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i >= s.size()) break;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        std::string tok = s.substr(i, j - i);
        if (tok == "-")
            ;  // identity word marker
        else
            w.push_back(int32_t(std::stol(tok)));
        i = j;
    }
    return w;
}

template <class T>
inline T evaluate_word(const Word& w, const std::vector<T>& gens, const std::vector<T>& gen_invs, const T& id) {
    T r = id;
    for (int32_t t : w) {
        if (t == 0 || size_t(std::abs(t)) > gens.size()) throw std::invalid_argument("bad word token");
        r = r * (t > 0 ? gens[size_t(t) - 1] : gen_invs[size_t(-t) - 1]);
    }
    return r;
}

inline Perm evaluate_word_perm(const Word& w, const std::vector<Perm>& gens) {
    std::vector<Perm> invs;
    invs.reserve(gens.size());
    for (auto& g : gens) invs.push_back(g.inverse());
    return evaluate_word(w, gens, invs, Perm(gens.empty() ? 0 : gens[0].degree()));
}

/// Breadth-first enumeration of the group generated by gens, as permutations
/// paired with defining words. Deterministic order (identity first). Intended
/// for the small groups handled here; bails out beyond max_size.
struct ElementTable {
    std::vector<Perm> elements;
    std::vector<Word> words;
    std::map<Perm, uint32_t> index;
    /// element i = elements[built_from[i].first] * gens[built_from[i].second]
    /// (identity: {0, UINT32_MAX})
    std::vector<std::pair<uint32_t, uint32_t>> built_from;
};

inline ElementTable enumerate_group(const std::vector<Perm>& gens, size_t max_size = 200000) {
    if (gens.empty()) throw std::invalid_argument("enumerate_group: no generators");
    ElementTable t;
    Perm id(gens[0].degree());
    t.elements.push_back(id);
    t.words.push_back({});
    t.built_from.push_back({0, UINT32_MAX});
    t.index[id] = 0;
    for (size_t head = 0; head < t.elements.size(); ++head) {
        Perm cur = t.elements[head];  // copy: vector may reallocate
        Word curw = t.words[head];
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            Perm nxt = cur * gens[gi];
            if (t.index.count(nxt)) continue;
            Word w = curw;
            w.push_back(int32_t(gi + 1));
            t.index[nxt] = uint32_t(t.elements.size());
            t.elements.push_back(std::move(nxt));
            t.words.push_back(std::move(w));
            t.built_from.push_back({uint32_t(head), uint32_t(gi)});
            if (t.elements.size() > max_size) throw std::runtime_error("enumerate_group: group too large");
        }
    }
    return t;
}

}  // namespace modrep
