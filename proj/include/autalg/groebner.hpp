#pragma once

// Degree-truncated noncommutative Buchberger completion over the free
// algebra, normal-word enumeration, and the Hilbert oracle.  The basis is
// completed degree by degree: every suffix/prefix overlap ambiguity of
// degree ≤ N is resolved, which makes normal-word counts exact for all
// degrees ≤ N.  The finished basis is reduced (no leading word divides
// another; every element tail-reduced and monic) and sorted, hence
// canonical for the ideal regardless of input relation order.

#include <queue>
#include <tuple>
#include <vector>

#include "autalg/ncpoly.hpp"
#include "autalg/presentation.hpp"

namespace autalg {

struct TruncatedGroebnerBasis {
    MonomialOrder order;
    int degree_bound = 0;
    std::vector<NCPolynomial> elements; // monic, reduced, sorted by leading word
    std::vector<Word> leading;          // parallel to elements
};

namespace detail {

/// Does `pattern` occur as a contiguous subword of `w`?  Returns the first
/// position, or -1.  Plain scanning: alphabets and degrees here are small.
inline int find_subword(const Word& w, const Word& pattern) {
    if (pattern.empty() || pattern.size() > w.size()) return pattern.empty() ? 0 : -1;
    for (std::size_t pos = 0; pos + pattern.size() <= w.size(); ++pos) {
        bool hit = true;
        for (std::size_t k = 0; k < pattern.size(); ++k)
            if (w[pos + k] != pattern[k]) { hit = false; break; }
        if (hit) return static_cast<int>(pos);
    }
    return -1;
}

/// Normal form of f with respect to the listed (monic) rewriting rules:
/// repeatedly rewrite the order-largest reducible term.  `alive` (optional)
/// masks rules; `skip` excludes one rule, for tail-reduction of a basis
/// element against the others.
inline NCPolynomial normal_form(const MonomialOrder& ord, const std::vector<NCPolynomial>& polys,
                                const std::vector<Word>& leads, const std::vector<bool>* alive,
                                std::size_t skip, NCPolynomial f) {
    while (true) {
        const Word* target = nullptr;
        std::size_t by = 0;
        int at = -1;
        for (const auto& [w, c] : f.terms) {
            if (target && !ord.less(*target, w)) continue;
            for (std::size_t e = 0; e < polys.size(); ++e) {
                if ((alive && !(*alive)[e]) || e == skip) continue;
                int pos = find_subword(w, leads[e]);
                if (pos >= 0) {
                    target = &w;
                    by = e;
                    at = pos;
                    break;
                }
            }
        }
        if (!target) return f;
        Word left(target->begin(), target->begin() + at);
        Word right(target->begin() + at + static_cast<std::ptrdiff_t>(leads[by].size()), target->end());
        FieldElement coeff = f.terms.at(*target);
        f -= polys[by].framed(left, right).scaled(coeff);
    }
}

class Completion {
public:
    Completion(const MonomialOrder& ord, int bound) : ord_(ord), bound_(bound) {}

    void run(const std::vector<NCPolynomial>& relations) {
        for (const auto& rel : relations) insert(rel);
        while (!pairs_.empty()) {
            auto [deg, i, j, o] = pairs_.top();
            pairs_.pop();
            if (!alive_[static_cast<std::size_t>(i)] || !alive_[static_cast<std::size_t>(j)]) continue;
            insert(s_polynomial(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                static_cast<std::size_t>(o)));
        }
        tail_reduce_all();
    }

    TruncatedGroebnerBasis finish() {
        TruncatedGroebnerBasis gb;
        gb.order = ord_;
        gb.degree_bound = bound_;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < polys_.size(); ++i)
            if (alive_[i]) idx.push_back(i);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return ord_.less(leads_[a], leads_[b]); });
        for (std::size_t i : idx) {
            gb.elements.push_back(polys_[i]);
            gb.leading.push_back(leads_[i]);
        }
        return gb;
    }

    NCPolynomial reduce_full(NCPolynomial f, std::size_t skip = static_cast<std::size_t>(-1)) const {
        return normal_form(ord_, polys_, leads_, &alive_, skip, std::move(f));
    }

private:
    void insert(NCPolynomial f) {
        std::queue<NCPolynomial> pending;
        pending.push(std::move(f));
        while (!pending.empty()) {
            NCPolynomial g = reduce_full(pending.front());
            pending.pop();
            if (g.is_zero()) continue;
            const auto& [lead, coeff] = g.leading_term(ord_);
            if (ord_.word_degree(lead) > bound_) continue; // beyond the truncation horizon
            NCPolynomial monic = g.scaled(coeff.inverse());
            Word lw = lead;
            // Existing elements whose lead contains the new lead become
            // redundant as written; pull them out and re-reduce them.
            for (std::size_t e = 0; e < polys_.size(); ++e) {
                if (!alive_[e]) continue;
                if (find_subword(leads_[e], lw) >= 0) {
                    alive_[e] = false;
                    pending.push(polys_[e]);
                }
            }
            std::size_t id = polys_.size();
            polys_.push_back(std::move(monic));
            leads_.push_back(std::move(lw));
            alive_.push_back(true);
            for (std::size_t e = 0; e < polys_.size(); ++e) {
                if (!alive_[e]) continue;
                enqueue_overlaps(e, id);
                if (e != id) enqueue_overlaps(id, e);
            }
        }
    }

    /// Overlaps where a proper suffix of lead(i) equals a proper prefix of
    /// lead(j); inclusion ambiguities never arise because no live lead
    /// divides another.
    void enqueue_overlaps(std::size_t i, std::size_t j) {
        const Word& u = leads_[i];
        const Word& v = leads_[j];
        std::size_t max_o = std::min(u.size(), v.size()) - 1;
        for (std::size_t o = 1; o <= max_o; ++o) {
            bool match = true;
            for (std::size_t k = 0; k < o; ++k)
                if (u[u.size() - o + k] != v[k]) { match = false; break; }
            if (!match) continue;
            int deg = ord_.word_degree(u);
            for (std::size_t k = o; k < v.size(); ++k)
                deg += ord_.degree[static_cast<std::size_t>(v[k])];
            if (deg <= bound_)
                pairs_.push({deg, static_cast<int>(i), static_cast<int>(j), static_cast<int>(o)});
        }
    }

    NCPolynomial s_polynomial(std::size_t i, std::size_t j, std::size_t o) const {
        const Word& u = leads_[i];
        const Word& v = leads_[j];
        Word right(v.begin() + static_cast<std::ptrdiff_t>(o), v.end());
        Word left(u.begin(), u.end() - static_cast<std::ptrdiff_t>(o));
        NCPolynomial s = polys_[i].framed({}, right);
        s -= polys_[j].framed(left, {});
        return s;
    }

    void tail_reduce_all() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t e = 0; e < polys_.size(); ++e) {
                if (!alive_[e]) continue;
                NCPolynomial r = reduce_full(polys_[e], e);
                if (r != polys_[e]) {
                    // Leads are pairwise indivisible, so only the tail can
                    // change; the element stays monic with the same lead.
                    polys_[e] = std::move(r);
                    changed = true;
                }
            }
        }
    }

    MonomialOrder ord_;
    int bound_;
    std::vector<NCPolynomial> polys_;
    std::vector<Word> leads_;
    std::vector<bool> alive_;
    // (overlap degree, i, j, overlap length), processed smallest degree first.
    std::priority_queue<std::tuple<int, int, int, int>, std::vector<std::tuple<int, int, int, int>>,
                        std::greater<>>
        pairs_;
};

} // namespace detail

inline TruncatedGroebnerBasis truncated_groebner(const Presentation& p, const MonomialOrder& order,
                                                 int degree_bound) {
    p.validate();
    for (const auto& rel : p.relations) {
        int d = order.word_degree(rel.terms.begin()->first);
        if (d < 1) throw field_error("relation of degree 0 would collapse the algebra");
        if (d > degree_bound)
            throw field_error("relation degree " + std::to_string(d) + " exceeds truncation bound " +
                              std::to_string(degree_bound));
        if (!rel.is_homogeneous(order)) throw field_error("non-homogeneous relation");
    }
    detail::Completion comp(order, degree_bound);
    comp.run(p.relations);
    return comp.finish();
}

/// Normal form of f modulo the truncated basis (valid for deg f ≤ bound).
inline NCPolynomial reduce(const NCPolynomial& f, const TruncatedGroebnerBasis& gb) {
    for (const auto& [w, c] : f.terms)
        if (gb.order.word_degree(w) > gb.degree_bound)
            throw field_error("reduce: polynomial degree exceeds the truncation bound");
    return detail::normal_form(gb.order, gb.elements, gb.leading, nullptr,
                               static_cast<std::size_t>(-1), f);
}

/// All normal words (no leading word of gb as a subword), grouped by degree
/// 0..bound and sorted ascending under the order within each degree.
inline std::vector<std::vector<Word>> normal_words(const TruncatedGroebnerBasis& gb) {
    const std::size_t gens = gb.order.degree.size();
    const int N = gb.degree_bound;
    std::vector<std::vector<Word>> by_degree(static_cast<std::size_t>(N) + 1);
    by_degree[0].push_back({});
    for (int d = 1; d <= N; ++d) {
        auto& out = by_degree[static_cast<std::size_t>(d)];
        for (std::size_t g = 0; g < gens; ++g) {
            int dg = gb.order.degree[g];
            if (dg > d) continue;
            for (const Word& w : by_degree[static_cast<std::size_t>(d - dg)]) {
                Word cand = w;
                cand.push_back(static_cast<int>(g));
                // w is normal, so any offending leading word must end at the
                // freshly appended letter: only suffixes need checking.
                bool normal = true;
                for (const Word& lead : gb.leading) {
                    if (lead.size() > cand.size()) continue;
                    bool match = true;
                    for (std::size_t k = 0; k < lead.size(); ++k)
                        if (cand[cand.size() - lead.size() + k] != lead[k]) { match = false; break; }
                    if (match) { normal = false; break; }
                }
                if (normal) out.push_back(std::move(cand));
            }
        }
        // Lexicographic on precedence ranks: highest-precedence letter first,
        // e.g. {xx, yx, yy} at degree 2 for a commutative pair with x > y.
        std::sort(out.begin(), out.end());
    }
    return by_degree;
}

inline std::vector<std::vector<Word>> normal_words(const Presentation& p, const MonomialOrder& order,
                                                   int degree_bound) {
    return normal_words(truncated_groebner(p, order, degree_bound));
}

inline HilbertData hilbert_oracle(const TruncatedGroebnerBasis& gb) {
    HilbertData h;
    h.method = HilbertData::Method::groebner;
    for (const auto& words : normal_words(gb)) h.values.push_back(static_cast<long long>(words.size()));
    return h;
}

inline HilbertData hilbert_oracle(const Presentation& p, const MonomialOrder& order, int degree_bound) {
    return hilbert_oracle(truncated_groebner(p, order, degree_bound));
}

} // namespace autalg
