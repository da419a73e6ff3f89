#pragma once

#include <fstream>
#include <nlohmann/json.hpp>

#include "closure.hpp"

namespace modrep {

using nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> read_content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i == line.size() || line[i] == '#') continue;
        lines.push_back(line.substr(i));
    }
    return lines;
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// .grp: group name, point count, generator permutations (image lists),
// declared order, named subgroups as generator words

inline GroupPtr read_group(std::istream& in, const std::string& what = "<grp>") {
    auto lines = detail::read_content_lines(in);
    size_t at = 0;
    auto need = [&](const char* kw) {
        if (at >= lines.size()) throw ParseError(what + ": unexpected end of file, wanted " + kw);
        auto t = detail::tokens(lines[at++]);
        if (t.empty() || t[0] != kw) throw ParseError(what + ": expected '" + kw + "' line");
        return t;
    };
    auto g = std::make_shared<GroupData>();
    g->name = need("group").at(1);
    g->npoints = uint32_t(std::stoul(need("points").at(1)));
    g->declared_order = std::stoull(need("order").at(1));
    unsigned ngens = unsigned(std::stoul(need("gens").at(1)));
    for (unsigned i = 0; i < ngens; ++i) {
        if (at >= lines.size()) throw ParseError(what + ": missing generator row");
        auto t = detail::tokens(lines[at++]);
        if (t.size() != g->npoints) throw ParseError(what + ": generator row has wrong length");
        std::vector<uint32_t> img;
        for (auto& v : t) img.push_back(uint32_t(std::stoul(v)));
        Perm p(std::move(img));
        if (!p.is_bijection()) throw ParseError(what + ": generator is not a bijection");
        g->gens.push_back(std::move(p));
    }
    while (at < lines.size()) {
        auto t = detail::tokens(lines[at]);
        if (t[0] == "radical") {
            g->radical_subgroup = t.at(1);
            ++at;
            continue;
        }
        if (t[0] != "subgroup") throw ParseError(what + ": expected 'subgroup' or 'radical', got " + lines[at]);
        ++at;
        std::string name = t.at(1);
        unsigned nwords = unsigned(std::stoul(t.at(2)));
        std::vector<Word> words;
        for (unsigned i = 0; i < nwords; ++i) {
            if (at >= lines.size()) throw ParseError(what + ": missing subgroup word");
            words.push_back(parse_word(lines[at++]));
        }
        g->subgroups[name] = std::move(words);
    }
    validate_group(*g);
    return g;
}

inline GroupPtr read_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_group(in, path);
}

inline void write_group(std::ostream& out, const GroupData& g) {
    out << "group " << g.name << "\n";
    out << "points " << g.npoints << "\n";
    out << "order " << (g.declared_order ? g.declared_order : g.order()) << "\n";
    out << "gens " << g.gens.size() << "\n";
    for (auto& p : g.gens) {
        for (uint32_t i = 0; i < p.degree(); ++i) out << (i ? " " : "") << p.img[i];
        out << "\n";
    }
    if (!g.radical_subgroup.empty()) out << "radical " << g.radical_subgroup << "\n";
    for (auto& [name, words] : g.subgroups) {
        out << "subgroup " << name << " " << words.size() << "\n";
        for (auto& w : words) out << word_str(w) << "\n";
    }
}

// ---------------------------------------------------------------------------
// .mrep: header (version, name, group, field degree, dimension, generator
// count), then g*d rows of d base-2^k digits

struct MrepFile {
    std::string name;
    std::string group_name;
    unsigned field_degree = 1;
    Module module;  // group reference must be supplied at read time
};

inline char digit_char(uint8_t v) { return v < 10 ? char('0' + v) : char('a' + (v - 10)); }
inline uint8_t digit_value(char c, const std::string& what) {
    if (c >= '0' && c <= '9') return uint8_t(c - '0');
    if (c >= 'a' && c <= 'f') return uint8_t(10 + c - 'a');
    throw ParseError(what + ": bad entry digit");
}

inline MrepFile read_mrep(std::istream& in, const GroupPtr& group, const std::string& what = "<mrep>") {
    auto lines = detail::read_content_lines(in);
    size_t at = 0;
    auto need = [&](const char* kw) {
        if (at >= lines.size()) throw ParseError(what + ": unexpected end of file, wanted " + kw);
        auto t = detail::tokens(lines[at++]);
        if (t.empty() || t[0] != kw) throw ParseError(what + ": expected '" + kw + "' line");
        return t;
    };
    auto ver = need("mrep");
    if (ver.at(1) != "1") throw ParseError(what + ": unsupported format version");
    MrepFile f;
    f.name = need("name").at(1);
    f.group_name = need("group").at(1);
    f.field_degree = unsigned(std::stoul(need("field").at(1)));
    unsigned dim = unsigned(std::stoul(need("dim").at(1)));
    unsigned ngens = unsigned(std::stoul(need("gens").at(1)));
    if (group->name != f.group_name)
        throw ParseError(what + ": module is for group " + f.group_name + ", not " + group->name);
    if (ngens != group->gens.size()) throw ParseError(what + ": generator count mismatch with group");
    Field fld(f.field_degree);
    if (lines.size() - at != size_t(ngens) * dim) throw ParseError(what + ": wrong number of matrix rows");
    std::vector<Matrix> gens;
    for (unsigned gi = 0; gi < ngens; ++gi) {
        Matrix m(fld, dim, dim);
        for (unsigned i = 0; i < dim; ++i) {
            const std::string& row = lines[at++];
            if (row.size() != dim) throw ParseError(what + ": matrix row has wrong length");
            for (unsigned j = 0; j < dim; ++j) {
                uint8_t v = digit_value(row[j], what);
                if (v >= fld.size()) throw ParseError(what + ": entry out of field range");
                if (v) m.set(i, j, v);
            }
        }
        gens.push_back(std::move(m));
    }
    f.module = Module(group, fld, std::move(gens));
    return f;
}

inline MrepFile read_mrep_file(const std::string& path, const GroupPtr& group) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_mrep(in, group, path);
}

inline void write_mrep(std::ostream& out, const std::string& name, const Module& m) {
    out << "mrep 1\n";
    out << "name " << name << "\n";
    out << "group " << m.group()->name << "\n";
    out << "field " << m.field().degree() << "\n";
    out << "dim " << m.dim() << "\n";
    out << "gens " << m.gen_count() << "\n";
    for (size_t gi = 0; gi < m.gen_count(); ++gi)
        for (uint32_t i = 0; i < m.dim(); ++i) {
            for (uint32_t j = 0; j < m.dim(); ++j) out << digit_char(m.gen(gi).get(i, j));
            out << "\n";
        }
}

inline void write_mrep_file(const std::string& path, const std::string& name, const Module& m) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_mrep(out, name, m);
}

// ---------------------------------------------------------------------------
// expected-table files: lines "LHS = c1*Label1 + c2*Label2 + ..." with LHS of
// the form GEN*X; an optional trailing IDEAL marks unspecified ideal parts

inline ExpectedTable read_expected_table(std::istream& in, const std::string& what = "<tbl>") {
    auto lines = detail::read_content_lines(in);
    ExpectedTable table;
    size_t at = 0;
    if (at < lines.size()) {
        auto t = detail::tokens(lines[at]);
        if (t.size() >= 2 && t[0] == "table") {
            table.gen_label = t[1];
            ++at;
        }
    }
    for (; at < lines.size(); ++at) {
        const std::string& line = lines[at];
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(what + ": missing '=' in row: " + line);
        std::string lhs = line.substr(0, eq);
        std::string rhs = line.substr(eq + 1);
        auto star = lhs.find('*');
        if (star == std::string::npos) throw ParseError(what + ": LHS must be GEN*X: " + line);
        std::string genl = detail::tokens(lhs.substr(0, star)).at(0);
        std::string xl = detail::tokens(lhs.substr(star + 1)).at(0);
        if (table.gen_label.empty()) table.gen_label = genl;
        if (genl != table.gen_label) throw ParseError(what + ": mixed generators in table");
        ExpectedRow row;
        row.x = xl;
        row.source_line = line;
        // split rhs on '+'
        size_t pos = 0;
        while (pos <= rhs.size()) {
            size_t next = rhs.find('+', pos);
            std::string term = rhs.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            pos = next == std::string::npos ? rhs.size() + 1 : next + 1;
            auto tt = detail::tokens(term);
            if (tt.empty()) continue;
            if (tt.size() != 1) throw ParseError(what + ": bad term: " + term);
            std::string tok = tt[0];
            if (tok == "IDEAL") {
                row.ideal_wildcard = true;
                continue;
            }
            uint32_t mult = 1;
            auto st = tok.find('*');
            if (st != std::string::npos) {
                mult = uint32_t(std::stoul(tok.substr(0, st)));
                tok = tok.substr(st + 1);
            }
            if (mult == 0) throw ParseError(what + ": zero multiplicity in: " + line);
            row.terms[tok] += mult;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline ExpectedTable read_expected_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_expected_table(in, path);
}

// ---------------------------------------------------------------------------
// JSON reports

inline json closure_to_json(const ClosureResult& cr) {
    json j;
    j["schema"] = "modrep-closure-1";
    j["generator"] = cr.gen_label;
    j["ideal"] = cr.ideal == IdealKind::ProjectiveOnly ? "projective" : "cyclic";
    j["status"] = cr.status == ClosureResult::Closed ? "closed" : "budget-exceeded";
    j["seed"] = cr.seed;
    j["limits"] = {{"max_classes", cr.limits.max_classes}, {"max_dim", cr.limits.max_dim}};
    json cat = json::array();
    for (auto& e : cr.catalog) {
        json je = {{"label", e.label}, {"dim", e.dim}, {"endo_dim", e.endo_dim}};
        je["certified"] = (e.cert == CertLevel::Certified);
        if (e.periodicity) {
            je["periodic"] = e.periodicity->periodic;
            if (e.periodicity->periodic) je["period"] = e.periodicity->period;
            je["omega_dims"] = e.periodicity->orbit_dims;
        }
        if (!e.vertex_note.empty()) je["vertex"] = e.vertex_note;
        cat.push_back(je);
    }
    j["catalog"] = cat;
    json rows = json::array();
    for (auto& r : cr.rows) {
        json jr;
        jr["x"] = r.x;
        jr["parts"] = r.parts;
        jr["ideal"] = r.ideal;
        jr["product_dim"] = r.product_dim;
        jr["dim_ok"] = r.dim_ok;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    return j;
}

inline json witness_to_json(const Witness& w) {
    json j;
    j["degree"] = w.degree();
    std::vector<std::string> cs;
    for (auto& c : w.coeffs) cs.push_back(int128_str(c));
    j["coefficients_ascending"] = cs;
    j["evaluation_vanishes"] = w.evaluation_vanishes;
    j["polynomial"] = w.poly_str();
    return j;
}

inline const char* verdict_str(RowVerdict v) {
    switch (v) {
        case RowVerdict::Strict: return "STRICT";
        case RowVerdict::Structural: return "STRUCTURAL";
        case RowVerdict::Mismatch: return "MISMATCH";
        default: return "MISSING";
    }
}

inline json compare_to_json(const CompareReport& rep) {
    json rows = json::array();
    for (auto& r : rep.rows) {
        json jr;
        jr["x"] = r.x;
        jr["verdict"] = verdict_str(r.verdict);
        jr["expected"] = r.expected_str;
        jr["computed"] = r.computed_str;
        if (r.expected_inconsistent) jr["expected_line_inconsistent"] = true;
        if (!r.note.empty()) jr["note"] = r.note;
        rows.push_back(jr);
    }
    return {{"rows", rows},
            {"strict", rep.strict},
            {"structural", rep.structural},
            {"mismatch", rep.mismatch},
            {"missing", rep.missing}};
}

}  // namespace modrep
