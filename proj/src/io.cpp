#include "gla/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gla {

namespace {

struct Cursor {
    const std::string& line;
    std::size_t lineno;
    std::size_t col = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("line " + std::to_string(lineno) + ", column " +
                    std::to_string(col + 1) + ": " + msg);
    }
    void skip_ws() {
        while (col < line.size() && std::isspace(static_cast<unsigned char>(line[col])))
            ++col;
    }
    bool at_end() {
        skip_ws();
        return col >= line.size();
    }
    char peek() {
        skip_ws();
        if (col >= line.size()) fail("unexpected end of line");
        return line[col];
    }
    void expect(char ch) {
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++col;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = col;
        while (col < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[col])) || line[col] == '_'))
            ++col;
        if (col == start) fail("expected a name");
        return line.substr(start, col - start);
    }
    long long integer() {
        skip_ws();
        std::size_t start = col;
        if (col < line.size() && (line[col] == '-' || line[col] == '+')) ++col;
        while (col < line.size() && std::isdigit(static_cast<unsigned char>(line[col])))
            ++col;
        if (col == start || (col == start + 1 && !std::isdigit(static_cast<unsigned char>(line[start]))))
            fail("expected an integer");
        return std::stoll(line.substr(start, col - start));
    }
};

LieElement parse_monomial(Cursor& cur, const AlgebraPtr& F) {
    if (cur.peek() == '[') {
        cur.expect('[');
        LieElement l = parse_monomial(cur, F);
        cur.expect(',');
        LieElement r = parse_monomial(cur, F);
        cur.expect(']');
        return l.bracket(r);
    }
    std::string name = cur.ident();
    const auto& gens = F->hall()->generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) {
            auto [d, idx] = F->hall()->generator_position(i);
            return F->basis_element(d, idx);
        }
    cur.fail("unknown generator '" + name + "'");
}

LieElement parse_relation(Cursor& cur, const AlgebraPtr& F) {
    const PrimeField field = F->field();
    LieElement sum = F->element();
    while (true) {
        long long coeff = cur.integer();
        cur.expect('*');
        LieElement m = parse_monomial(cur, F);
        sum = sum.add(m.scale(field.reduce(coeff)));
        if (cur.at_end()) break;
        cur.expect('+');
    }
    if (sum.homogeneous_degree() < 0) cur.fail("relation is not homogeneous");
    return sum;
}

Vec relation_key(const LieElement& r) {
    Vec key{static_cast<Scalar>(r.homogeneous_degree())};
    int d = r.homogeneous_degree();
    for (auto s : r.coords(d)) key.push_back(s);
    return key;
}

void normalize(AlgebraFile& f) {
    std::vector<LieElement> rels;
    for (const auto& r : f.relations) {
        if (r.is_zero()) continue;
        bool dup = false;
        for (const auto& o : rels) dup |= o == r;
        if (!dup) rels.push_back(r);
    }
    std::sort(rels.begin(), rels.end(), [](const LieElement& a, const LieElement& b) {
        return relation_key(a) < relation_key(b);
    });
    f.relations = std::move(rels);
}

}  // namespace

AlgebraFile parse_algebra(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            lines.push_back(line);
        }
    }
    auto blank = [](const std::string& s) {
        return s.find_first_not_of(" \t\r") == std::string::npos;
    };

    AlgebraFile f;
    enum { kHeader, kP, kClass, kGensKw, kGens, kRels } state = kHeader;
    std::vector<GeneratorSymbol> gens;
    std::vector<std::pair<std::string, std::size_t>> rel_lines;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (blank(lines[i])) continue;
        Cursor cur{lines[i], i + 1};
        switch (state) {
            case kHeader: {
                if (cur.ident() != "gla" || cur.integer() != 1)
                    cur.fail("expected header 'gla 1'");
                if (!cur.at_end()) cur.fail("trailing input");
                state = kP;
                break;
            }
            case kP: {
                if (cur.ident() != "p") cur.fail("expected 'p <prime>'");
                long long p = cur.integer();
                if (p < 2 || p > 46337) cur.fail("modulus out of range");
                f.p = static_cast<std::uint32_t>(p);
                try {
                    PrimeField check(f.p);
                } catch (const Error&) {
                    cur.fail("modulus is not prime");
                }
                if (!cur.at_end()) cur.fail("trailing input");
                state = kClass;
                break;
            }
            case kClass: {
                if (cur.ident() != "class") cur.fail("expected 'class <2|3>'");
                long long c = cur.integer();
                if (c != 2 && c != 3) cur.fail("class must be 2 or 3");
                f.class_c = static_cast<int>(c);
                if (!cur.at_end()) cur.fail("trailing input");
                state = kGensKw;
                break;
            }
            case kGensKw: {
                if (cur.ident() != "gens") cur.fail("expected 'gens'");
                if (!cur.at_end()) cur.fail("trailing input");
                state = kGens;
                break;
            }
            case kGens: {
                std::string word = cur.ident();
                if (word == "rels") {
                    if (!cur.at_end()) cur.fail("trailing input");
                    state = kRels;
                    break;
                }
                long long d = cur.integer();
                if (d < 1 || d > f.class_c) cur.fail("generator degree out of range");
                for (const auto& g : gens)
                    if (g.name == word) cur.fail("duplicate generator '" + word + "'");
                gens.push_back({word, static_cast<int>(d)});
                if (!cur.at_end()) cur.fail("trailing input");
                break;
            }
            case kRels:
                rel_lines.emplace_back(lines[i], i + 1);
                break;
        }
    }
    if (state < kGens) throw Error("incomplete file: header, p, class, gens required");

    f.gens = gens;
    f.free_alg = Algebra::free_algebra(PrimeField(f.p), f.class_c, gens);
    f.gens = f.free_alg->hall()->generators();  // canonical order
    for (const auto& [line, no] : rel_lines) {
        Cursor cur{line, no};
        f.relations.push_back(parse_relation(cur, f.free_alg));
    }
    normalize(f);
    f.algebra = f.relations.empty() ? f.free_alg : quotient(f.free_alg, f.relations);
    return f;
}

AlgebraFile load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra(buf.str());
}

std::string print_algebra(const AlgebraFile& f) {
    std::ostringstream out;
    out << "gla 1\n";
    out << "p " << f.p << "\n";
    out << "class " << f.class_c << "\n";
    out << "gens\n";
    for (const auto& g : f.gens) out << g.name << " " << g.degree << "\n";
    out << "rels\n";
    const FreeLie* hall = f.free_alg->hall();
    for (const auto& r : f.relations) {
        int d = r.homogeneous_degree();
        bool first = true;
        for (std::size_t i = 0; i < r.coords(d).size(); ++i) {
            Scalar c = r.coords(d)[i];
            if (c == 0) continue;
            if (!first) out << " + ";
            out << c << "*" << hall->monomial_name(d, i);
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

AlgebraFile make_file(std::uint32_t p, int class_c,
                      std::vector<GeneratorSymbol> gens,
                      const std::vector<LieElement>& relations) {
    AlgebraFile f;
    f.p = p;
    f.class_c = class_c;
    f.free_alg = Algebra::free_algebra(PrimeField(p), class_c, std::move(gens));
    f.gens = f.free_alg->hall()->generators();
    for (const auto& r : relations) {
        if (r.parent() != f.free_alg) {
            // accept relations over any free algebra with identical hall data
            if (r.parent()->dims() != f.free_alg->dims())
                throw Error("relation from an incompatible algebra");
            LieElement moved = f.free_alg->element();
            for (int d = 1; d <= class_c; ++d) moved.coords(d) = r.coords(d);
            f.relations.push_back(std::move(moved));
        } else {
            f.relations.push_back(r);
        }
        if (f.relations.back().homogeneous_degree() < 0)
            throw Error("relation is not homogeneous");
    }
    normalize(f);
    f.algebra = f.relations.empty() ? f.free_alg : quotient(f.free_alg, f.relations);
    return f;
}

LieElement parse_element(const AlgebraFile& f, const std::string& expr) {
    Cursor cur{expr, 1};
    LieElement free_elem = parse_relation(cur, f.free_alg);
    return f.algebra->hall() ? free_elem : f.algebra->project_from_free(free_elem);
}

AlgebraFile to_file(AlgebraPtr M) {
    if (const QuotientData* qd = M->quotient_data()) {
        return make_file(M->field().p(), M->class_c(),
                         qd->free_algebra->hall()->generators(), qd->relations);
    }
    if (M->hall())
        return make_file(M->field().p(), M->class_c(), M->hall()->generators(), {});
    CanonicalPair cp = canonical_pair(M);
    std::vector<LieElement> rels;
    for (int d = 2; d <= M->class_c(); ++d)
        for (const Vec& row : cp.ideal_basis_reps[d - 1])
            rels.push_back(cp.free_alg->from_degree_vec(d, row));
    return make_file(M->field().p(), M->class_c(),
                     cp.free_alg->hall()->generators(), rels);
}

}  // namespace gla
