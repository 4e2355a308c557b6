#pragma once

// The central construction: from (V, L, R, σ) data build the quadratic
// algebra presentation on x₁..x_m, c, b, a, evaluate its Hilbert function
// by the closed component-sum formula, and realize the correspondence with
// linear recurrent sequences (both directions), the named example families,
// direct sums, and polynomial-line extensions.

#include <string>
#include <vector>

#include "autalg/ncpoly.hpp"
#include "autalg/recurrence.hpp"

namespace autalg {

/// Generators x₁..x_m, c, b, a (all degree 1) and the defining relations:
///   XX   all m² products xᵢxⱼ,
///   Ya   y·a for y ∈ {x₁..x_m, c, b, a},
///   bY   b·y for y ∈ {x₁..x_m, c, b}  (b·a already appears in Ya),
///   aL   a·ℓ for each echelon basis vector ℓ of L,
///   Rb   ρ·b for each echelon basis vector ρ of R,
///   and the m commutation relations xᵢc − c·σ(xᵢ).
/// Total relation count: m² + 3m + 5 + r + l.
inline Presentation build_vlrs(const VlrsData& data) {
    data.validate();
    const std::size_t m = data.m;
    Presentation p;
    p.field = data.field;
    for (std::size_t i = 1; i <= m; ++i) p.generators.push_back({"x" + std::to_string(i), 1});
    p.generators.push_back({"c", 1});
    p.generators.push_back({"b", 1});
    p.generators.push_back({"a", 1});
    const int gen_c = static_cast<int>(m), gen_b = static_cast<int>(m) + 1, gen_a = static_cast<int>(m) + 2;
    const FieldElement one = FieldElement::one(data.field);

    auto word_rel = [&](int g1, int g2) {
        p.relations.push_back(NCPolynomial::monomial(data.field, {g1, g2}, one));
    };

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) word_rel(static_cast<int>(i), static_cast<int>(j));
    for (int y = 0; y < static_cast<int>(m) + 3; ++y) word_rel(y, gen_a);
    for (int y = 0; y < static_cast<int>(m) + 2; ++y) word_rel(gen_b, y);
    for (std::size_t row = 0; row < data.L.dim(); ++row) {
        NCPolynomial rel(data.field);
        for (std::size_t i = 0; i < m; ++i)
            rel.add_term({gen_a, static_cast<int>(i)}, data.L.basis.at(row, i));
        p.relations.push_back(std::move(rel));
    }
    for (std::size_t row = 0; row < data.R.dim(); ++row) {
        NCPolynomial rel(data.field);
        for (std::size_t i = 0; i < m; ++i)
            rel.add_term({static_cast<int>(i), gen_b}, data.R.basis.at(row, i));
        p.relations.push_back(std::move(rel));
    }
    for (std::size_t i = 0; i < m; ++i) {
        // xᵢc − c·σ(xᵢ), where σ(xᵢ) = Σ_k σ_{k,i} x_k reads off column i.
        NCPolynomial rel(data.field);
        rel.add_term({static_cast<int>(i), gen_c}, one);
        for (std::size_t k = 0; k < m; ++k)
            rel.add_term({gen_c, static_cast<int>(k)}, -data.sigma.at(k, i));
        p.relations.push_back(std::move(rel));
    }
    p.validate();
    return p;
}

/// Closed-formula Hilbert values: h(0)=1, h(1)=m+3, h(2)=3m+4−r−l, and for
/// n ≥ 0
///   h(n+3) = (m+4) + (m−r) + (m − dim σⁿ⁺¹L) + (m − dim(R+σⁿL)),
/// the four normal-word class sizes summed.
inline HilbertData hilbert_closed(const VlrsData& data, std::size_t n_max) {
    data.validate();
    HilbertData h;
    h.method = HilbertData::Method::closed;
    const long long m = static_cast<long long>(data.m);
    const long long r = static_cast<long long>(data.r()), l = static_cast<long long>(data.l());
    h.values.push_back(1);
    if (n_max >= 1) h.values.push_back(m + 3);
    if (n_max >= 2) h.values.push_back(3 * m + 4 - r - l);
    if (n_max >= 3) {
        IntersectionProfile prof = orbit_profile(data, n_max - 2);
        for (std::size_t deg = 3; deg <= n_max; ++deg) {
            std::size_t n = deg - 3;
            long long img = static_cast<long long>(prof.dim_image(n + 1));
            long long sum = static_cast<long long>(prof.dim_sum(n));
            h.values.push_back((m + 4) + (m - r) + (m - img) + (m - sum));
        }
    }
    return h;
}

/// Cor-5.1-style data from a recurrence with invertible companion matrix:
/// m = d, σ = companion, L = span{(a₀,…,a_{d−1})}, R = the hyperplane of
/// vectors with first coordinate zero.  Then h(n+3) = 2d+4 + [aₙ = 0].
inline VlrsData from_recurrence(const LinearRecurrence& rec) {
    rec.validate();
    if (!rec.invertible_companion())
        throw field_error("from_recurrence needs trailing coefficient != 0 (invertible companion)");
    bool all_zero = true;
    for (const auto& a : rec.initial)
        if (!a.is_zero()) all_zero = false;
    if (all_zero) throw field_error("from_recurrence needs a nonzero initial vector");
    const std::size_t d = rec.order();
    VlrsData data;
    data.field = rec.field;
    data.m = d;
    data.sigma = companion_matrix(rec);
    data.L = Subspace::span_rows(rec.field, {rec.initial}, d);
    std::vector<std::vector<FieldElement>> hyperplane;
    for (std::size_t i = 1; i < d; ++i) {
        std::vector<FieldElement> e(d, FieldElement::zero(rec.field));
        e[i] = FieldElement::one(rec.field);
        hyperplane.push_back(std::move(e));
    }
    data.R = Subspace::span_rows(rec.field, hyperplane, d);
    data.validate();
    return data;
}

/// Inverse direction for data with dim L = 1, dim R = m−1: the sequence
/// aₙ = uᵀσⁿv with v spanning L and u spanning the annihilator of R
/// satisfies aₙ = 0 ⟺ cₙ = 1.  Returns its fitted minimal recurrence.
inline LinearRecurrence to_recurrence(const VlrsData& data, std::size_t n_max) {
    data.validate();
    if (data.l() != 1 || data.r() + 1 != data.m)
        throw field_error("to_recurrence needs dim L = 1 and dim R = m-1");
    Subspace ann = kernel(data.R.basis);
    if (ann.dim() != 1) throw field_error("internal: annihilator of R is not a line");
    return from_orbit(ann.basis.row(0), data.sigma, data.L.basis.row(0), n_max).recurrence;
}

/// Fermat-style family: m=3, L = span{(1,1,1)}, R = span{(1,−1,0),(1,0,1)},
/// σ = diag(α,β,1).  Closed Hilbert: h(n+3) = 10 + [αⁿ+βⁿ = 1].
inline VlrsData family_fermat(const FieldElement& alpha, const FieldElement& beta) {
    if (!(alpha.descriptor() == beta.descriptor()))
        throw field_error("family_fermat parameters must share a field");
    if (alpha.is_zero() || beta.is_zero()) throw field_error("family_fermat needs nonzero parameters");
    const FieldDescriptor fd = alpha.descriptor();
    const FieldElement one = FieldElement::one(fd), zero = FieldElement::zero(fd);
    VlrsData data;
    data.field = fd;
    data.m = 3;
    data.L = Subspace::span_rows(fd, {{one, one, one}}, 3);
    data.R = Subspace::span_rows(fd, {{one, -one, zero}, {one, zero, one}}, 3);
    data.sigma = Matrix(fd, 3, 3);
    data.sigma.at(0, 0) = alpha;
    data.sigma.at(1, 1) = beta;
    data.sigma.at(2, 2) = one;
    return data;
}

/// Lech-style family over F_p(x): σ = diag(x+1, x, 1), L = span{(1,1,1)},
/// R = span{(1,1,0),(1,0,1)}.  Closed Hilbert: h(n+3) = 10 + [n a power of p].
inline VlrsData family_lech(std::uint64_t p) {
    const FieldDescriptor fd = FieldDescriptor::rational_functions(p);
    const FieldElement one = FieldElement::one(fd), zero = FieldElement::zero(fd);
    const FieldElement x = FieldElement::from_poly(FpPoly::x(p));
    VlrsData data;
    data.field = fd;
    data.m = 3;
    data.L = Subspace::span_rows(fd, {{one, one, one}}, 3);
    data.R = Subspace::span_rows(fd, {{one, one, zero}, {one, zero, one}}, 3);
    data.sigma = Matrix(fd, 3, 3);
    data.sigma.at(0, 0) = x + one;
    data.sigma.at(1, 1) = x;
    data.sigma.at(2, 2) = one;
    return data;
}

/// Segment family: m=2, L = span{(1,1)}, R = span{(1,−α^ρ)}, σ = diag(α,1).
/// cₙ = 1 exactly when αⁿ⁺ρ = −1, which over a finite field carves out one
/// residue class (or nothing); the Hilbert values follow the computed cₙ.
inline VlrsData family_segment(std::size_t rho, const FieldElement& alpha) {
    if (alpha.is_zero()) throw field_error("family_segment needs nonzero alpha");
    if (rho == 0) throw field_error("family_segment needs rho > 0");
    const FieldDescriptor fd = alpha.descriptor();
    const FieldElement one = FieldElement::one(fd);
    VlrsData data;
    data.field = fd;
    data.m = 2;
    data.L = Subspace::span_rows(fd, {{one, one}}, 2);
    data.R = Subspace::span_rows(fd, {{one, -pow(alpha, rho)}}, 2);
    data.sigma = Matrix(fd, 2, 2);
    data.sigma.at(0, 0) = alpha;
    data.sigma.at(1, 1) = one;
    return data;
}

/// Block-diagonal direct sum: V = V₁⊕V₂, L = L₁⊕L₂, R = R₁⊕R₂, σ = σ₁⊕σ₂.
/// The intersection profile is additive: cₙ(a⊕b) = cₙ(a) + cₙ(b).
inline VlrsData direct_sum(const VlrsData& a, const VlrsData& b) {
    if (!(a.field == b.field)) throw field_error("direct_sum needs one shared field");
    a.validate();
    b.validate();
    const std::size_t m = a.m + b.m;
    VlrsData out;
    out.field = a.field;
    out.m = m;
    out.sigma = Matrix(a.field, m, m);
    for (std::size_t i = 0; i < a.m; ++i)
        for (std::size_t j = 0; j < a.m; ++j) out.sigma.at(i, j) = a.sigma.at(i, j);
    for (std::size_t i = 0; i < b.m; ++i)
        for (std::size_t j = 0; j < b.m; ++j) out.sigma.at(a.m + i, a.m + j) = b.sigma.at(i, j);
    auto blocked = [&](const Subspace& first, const Subspace& second) {
        std::vector<std::vector<FieldElement>> rows;
        for (std::size_t i = 0; i < first.dim(); ++i) {
            std::vector<FieldElement> v(m, FieldElement::zero(a.field));
            for (std::size_t j = 0; j < a.m; ++j) v[j] = first.basis.at(i, j);
            rows.push_back(std::move(v));
        }
        for (std::size_t i = 0; i < second.dim(); ++i) {
            std::vector<FieldElement> v(m, FieldElement::zero(a.field));
            for (std::size_t j = 0; j < b.m; ++j) v[a.m + j] = second.basis.at(i, j);
            rows.push_back(std::move(v));
        }
        return Subspace::span_rows(a.field, rows, m);
    };
    out.L = blocked(a.L, b.L);
    out.R = blocked(a.R, b.R);
    return out;
}

/// Adjoin t fresh degree-1 generators u₁..u_t, each spanning its own
/// polynomial line K[uᵢ] and annihilating every other generator (both
/// sides).  Every positive-degree Hilbert value grows by exactly t.
inline Presentation add_polynomial_summands(const Presentation& p, std::size_t t) {
    p.validate();
    Presentation out = p;
    const FieldElement one = FieldElement::one(p.field);
    std::vector<int> fresh;
    for (std::size_t i = 1; i <= t; ++i) {
        std::string name = "u" + std::to_string(i);
        if (out.generator_index(name) >= 0)
            throw field_error("add_polynomial_summands: generator name '" + name + "' already taken");
        fresh.push_back(static_cast<int>(out.generators.size()));
        out.generators.push_back({name, 1});
    }
    const int old_count = static_cast<int>(p.generators.size());
    for (int u : fresh) {
        for (int y = 0; y < old_count; ++y) {
            out.relations.push_back(NCPolynomial::monomial(p.field, {u, y}, one));
            out.relations.push_back(NCPolynomial::monomial(p.field, {y, u}, one));
        }
        for (int v : fresh)
            if (v != u) out.relations.push_back(NCPolynomial::monomial(p.field, {u, v}, one));
    }
    out.validate();
    return out;
}

} // namespace autalg
