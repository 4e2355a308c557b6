#pragma once

// Words, monomial orders, and noncommutative polynomials in the free
// algebra K<g₁,…,g_k>, plus the Presentation type (generators + homogeneous
// relations) that the Gröbner oracle and the algebra builders share.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "autalg/field.hpp"

namespace autalg {

/// A word in the free monoid on the generators, stored as generator indices
/// into the owning presentation's generator list.  The empty word is the
/// unit.
using Word = std::vector<int>;

struct Generator {
    std::string name;
    int degree = 1;
};

/// Degree-lexicographic order: words compare first by total degree, then by
/// the precedence of the leftmost differing letter (rank 0 = highest
/// precedence, and higher-precedence letters make the word larger).
struct MonomialOrder {
    std::vector<int> rank;    // rank[generator index]
    std::vector<int> degree;  // degree[generator index]

    int word_degree(const Word& w) const {
        int d = 0;
        for (int g : w) d += degree[static_cast<std::size_t>(g)];
        return d;
    }

    /// true iff u < v.
    bool less(const Word& u, const Word& v) const {
        int du = word_degree(u), dv = word_degree(v);
        if (du != dv) return du < dv;
        for (std::size_t i = 0; i < u.size() && i < v.size(); ++i) {
            if (u[i] != v[i])
                return rank[static_cast<std::size_t>(u[i])] > rank[static_cast<std::size_t>(v[i])];
        }
        return u.size() < v.size();
    }
};

/// Polynomial in the free algebra: finitely many words with nonzero
/// coefficients.  Terms live in a map keyed by word (lexicographic vector
/// order), which makes the representation canonical independent of any
/// monomial order.
struct NCPolynomial {
    FieldDescriptor field;
    std::map<Word, FieldElement> terms;

    NCPolynomial() = default;
    explicit NCPolynomial(const FieldDescriptor& fd) : field(fd) {}

    static NCPolynomial monomial(const FieldDescriptor& fd, const Word& w, const FieldElement& c) {
        NCPolynomial p(fd);
        p.add_term(w, c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Word& w, const FieldElement& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    NCPolynomial& operator+=(const NCPolynomial& o) {
        for (const auto& [w, c] : o.terms) add_term(w, c);
        return *this;
    }
    NCPolynomial& operator-=(const NCPolynomial& o) {
        for (const auto& [w, c] : o.terms) add_term(w, -c);
        return *this;
    }

    NCPolynomial scaled(const FieldElement& k) const {
        NCPolynomial r(field);
        if (k.is_zero()) return r;
        for (const auto& [w, c] : terms) r.terms.emplace(w, c * k);
        return r;
    }

    /// left · this · right (word-by-word concatenation).
    NCPolynomial framed(const Word& left, const Word& right) const {
        NCPolynomial r(field);
        for (const auto& [w, c] : terms) {
            Word nw;
            nw.reserve(left.size() + w.size() + right.size());
            nw.insert(nw.end(), left.begin(), left.end());
            nw.insert(nw.end(), w.begin(), w.end());
            nw.insert(nw.end(), right.begin(), right.end());
            r.terms.emplace(std::move(nw), c);
        }
        return r;
    }

    /// Largest term under the given order.  Polynomial must be nonzero.
    const std::pair<const Word, FieldElement>& leading_term(const MonomialOrder& ord) const {
        if (terms.empty()) throw field_error("leading term of zero polynomial");
        const std::pair<const Word, FieldElement>* best = &*terms.begin();
        for (const auto& t : terms)
            if (ord.less(best->first, t.first)) best = &t;
        return *best;
    }

    bool is_homogeneous(const MonomialOrder& ord) const {
        if (terms.empty()) return true;
        int d = ord.word_degree(terms.begin()->first);
        for (const auto& [w, c] : terms)
            if (ord.word_degree(w) != d) return false;
        return true;
    }

    bool operator==(const NCPolynomial& o) const { return field == o.field && terms == o.terms; }
    bool operator!=(const NCPolynomial& o) const { return !(*this == o); }
};

/// A finitely presented graded algebra: named generators with degrees and a
/// list of homogeneous relations.
struct Presentation {
    FieldDescriptor field;
    std::vector<Generator> generators;
    std::vector<NCPolynomial> relations;

    int generator_index(const std::string& name) const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i].name == name) return static_cast<int>(i);
        return -1;
    }

    /// Deglex order with precedence = declaration order (first generator
    /// highest).
    MonomialOrder declaration_order() const {
        MonomialOrder ord;
        ord.rank.resize(generators.size());
        ord.degree.resize(generators.size());
        std::iota(ord.rank.begin(), ord.rank.end(), 0);
        for (std::size_t i = 0; i < generators.size(); ++i) ord.degree[i] = generators[i].degree;
        return ord;
    }

    std::string word_str(const Word& w) const {
        if (w.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i > 0) out += ".";
            out += generators[static_cast<std::size_t>(w[i])].name;
        }
        return out;
    }

    std::string poly_str(const NCPolynomial& p) const {
        if (p.is_zero()) return "0";
        std::string out;
        for (const auto& [w, c] : p.terms) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            if (!w.empty()) out += "*" + word_str(w);
        }
        return out;
    }

    void validate() const {
        MonomialOrder ord = declaration_order();
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (generators[i].degree < 1) throw field_error("generator degrees must be >= 1");
            for (std::size_t j = i + 1; j < generators.size(); ++j)
                if (generators[i].name == generators[j].name)
                    throw field_error("duplicate generator name '" + generators[i].name + "'");
        }
        for (const auto& rel : relations) {
            if (rel.is_zero()) throw field_error("zero relation");
            if (!(rel.field == field)) throw field_error("relation field mismatch");
            if (!rel.is_homogeneous(ord)) throw field_error("non-homogeneous relation");
            for (const auto& [w, c] : rel.terms)
                for (int g : w)
                    if (g < 0 || static_cast<std::size_t>(g) >= generators.size())
                        throw field_error("relation uses undeclared generator");
        }
    }
};

/// Hilbert values h(0..N) with the method that produced them.
struct HilbertData {
    enum class Method { closed, groebner };
    std::vector<long long> values;
    Method method = Method::closed;
};

} // namespace autalg
