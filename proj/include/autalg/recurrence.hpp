#pragma once

// C-finite (linear recurrent) sequence engine over exact fields: term
// generation, companion matrices, zero sets, orbit sequences aₙ = uᵀMⁿv,
// minimal-recurrence fitting (Berlekamp-Massey), detection of
// finite-set ∪ arithmetic-progression structure in boolean prefixes, and
// construction of recurrences with prescribed zero sets.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "autalg/linalg.hpp"

namespace autalg {

/// Homogeneous linear recurrence aₙ = γ₁aₙ₋₁ + … + γ_d aₙ₋_d with initial
/// terms a₀..a_{d−1}.
struct LinearRecurrence {
    FieldDescriptor field;
    std::vector<FieldElement> coeffs;  // γ₁..γ_d
    std::vector<FieldElement> initial; // a₀..a_{d−1}

    std::size_t order() const { return coeffs.size(); }

    /// The companion matrix is invertible iff the trailing coefficient γ_d
    /// is nonzero (needed when the recurrence seeds an algebra).
    bool invertible_companion() const { return !coeffs.empty() && !coeffs.back().is_zero(); }

    void validate() const {
        if (coeffs.empty() || coeffs.size() != initial.size())
            throw field_error("recurrence needs order >= 1 with matching initial terms");
        for (const auto& c : coeffs)
            if (!(c.descriptor() == field)) throw field_error("recurrence coefficient field mismatch");
        for (const auto& a : initial)
            if (!(a.descriptor() == field)) throw field_error("recurrence initial-term field mismatch");
    }
};

/// a₀..a_{n_max}, computed exactly.
inline std::vector<FieldElement> terms(const LinearRecurrence& rec, std::size_t n_max) {
    rec.validate();
    std::size_t d = rec.order();
    std::vector<FieldElement> out;
    out.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n < d) {
            out.push_back(rec.initial[n]);
        } else {
            FieldElement v = FieldElement::zero(rec.field);
            for (std::size_t i = 1; i <= d; ++i) v += rec.coeffs[i - 1] * out[n - i];
            out.push_back(v);
        }
    }
    return out;
}

/// The d×d companion matrix with superdiagonal 1s and last row
/// (γ_d, …, γ₁); iterating vₙ₊₁ = Mvₙ on vₙ = (aₙ..aₙ₊d₋₁) advances the
/// recurrence.
inline Matrix companion_matrix(const LinearRecurrence& rec) {
    rec.validate();
    std::size_t d = rec.order();
    Matrix m(rec.field, d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) m.at(i, i + 1) = FieldElement::one(rec.field);
    for (std::size_t j = 0; j < d; ++j) m.at(d - 1, j) = rec.coeffs[d - 1 - j];
    return m;
}

inline std::set<std::size_t> zero_set(const LinearRecurrence& rec, std::size_t n_max) {
    std::set<std::size_t> zeros;
    std::vector<FieldElement> ts = terms(rec, n_max);
    for (std::size_t n = 0; n <= n_max; ++n)
        if (ts[n].is_zero()) zeros.insert(n);
    return zeros;
}

/// Berlekamp-Massey over an exact field: the shortest recurrence that
/// regenerates the whole prefix, or nullopt when the fitted order exceeds
/// ⌊len/2⌋ (not enough data to trust the fit).
inline std::optional<LinearRecurrence> minimal_recurrence(const std::vector<FieldElement>& prefix) {
    if (prefix.size() < 2) throw field_error("minimal_recurrence needs a prefix of length >= 2");
    const FieldDescriptor fd = prefix.front().descriptor();
    const FieldElement zero = FieldElement::zero(fd);
    const FieldElement one = FieldElement::one(fd);

    // Connection polynomial C with C[0] = 1; discrepancies are cleared with
    // the standard shifted update C -= (delta/b)·x^m·B.
    std::vector<FieldElement> C = {one}, B = {one};
    std::size_t L = 0, m = 1;
    FieldElement b = one;
    for (std::size_t n = 0; n < prefix.size(); ++n) {
        FieldElement delta = prefix[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) delta += C[i] * prefix[n - i];
        if (delta.is_zero()) {
            ++m;
        } else if (2 * L <= n) {
            std::vector<FieldElement> T = C;
            FieldElement f = delta / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, zero);
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= f * B[i];
            L = n + 1 - L;
            B = std::move(T);
            b = delta;
            m = 1;
        } else {
            FieldElement f = delta / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, zero);
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= f * B[i];
            ++m;
        }
    }

    if (L == 0) {
        // All-zero prefix: order 1 with unit coefficient regenerates it.
        LinearRecurrence rec{fd, {one}, {zero}};
        return rec;
    }
    if (L > prefix.size() / 2) return std::nullopt;

    LinearRecurrence rec;
    rec.field = fd;
    rec.coeffs.reserve(L);
    for (std::size_t i = 1; i <= L; ++i) rec.coeffs.push_back(i < C.size() ? -C[i] : zero);
    rec.initial.assign(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(L));
    return rec;
}

/// The orbit sequence aₙ = uᵀMⁿv together with its fitted minimal
/// recurrence (guaranteed to exist for n_max ≥ 2·dim M by Cayley-Hamilton).
struct OrbitSequence {
    std::vector<FieldElement> values;
    LinearRecurrence recurrence;
};

inline OrbitSequence from_orbit(const std::vector<FieldElement>& u, const Matrix& M,
                                const std::vector<FieldElement>& v, std::size_t n_max) {
    if (M.rows != M.cols || u.size() != M.rows || v.size() != M.rows)
        throw field_error("from_orbit shape mismatch");
    OrbitSequence out;
    std::vector<FieldElement> state = v;
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0) state = M.apply_vector(state);
        FieldElement dot = FieldElement::zero(M.field);
        for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * state[i];
        out.values.push_back(dot);
    }
    auto fit = minimal_recurrence(out.values);
    if (!fit)
        throw field_error("orbit fit needs n_max >= 2*dim(M); got " + std::to_string(n_max) +
                          " for dimension " + std::to_string(M.rows));
    out.recurrence = *fit;
    return out;
}

/// A finite set together with finitely many one-sided arithmetic
/// progressions {start, start+step, ...} — the shape of zero sets of
/// C-finite sequences in characteristic 0 and of the structured examples
/// here.  Normalized so the finite part is disjoint from the progressions.
struct SMLSet {
    std::vector<std::size_t> finite;                          // sorted, deduplicated
    std::vector<std::pair<std::size_t, std::size_t>> progressions; // (start, step >= 1)

    bool contains(std::size_t n) const {
        if (std::binary_search(finite.begin(), finite.end(), n)) return true;
        for (auto [s, step] : progressions)
            if (n >= s && (n - s) % step == 0) return true;
        return false;
    }

    void normalize() {
        std::sort(finite.begin(), finite.end());
        finite.erase(std::unique(finite.begin(), finite.end()), finite.end());
        std::sort(progressions.begin(), progressions.end());
        progressions.erase(std::unique(progressions.begin(), progressions.end()), progressions.end());
        std::vector<std::size_t> kept;
        for (std::size_t n : finite) {
            bool covered = false;
            for (auto [s, step] : progressions)
                if (n >= s && (n - s) % step == 0) { covered = true; break; }
            if (!covered) kept.push_back(n);
        }
        finite = std::move(kept);
    }

    bool operator==(const SMLSet& o) const {
        return finite == o.finite && progressions == o.progressions;
    }
};

/// Scan a boolean prefix for eventually-periodic structure: the smallest
/// (preperiod ρ, period T) in lexicographic order such that
///   - bits[n] == bits[n+T] for all n in [ρ, len−T),
///   - ρ ≤ T (the claimed preperiod may not exceed the claimed period, so a
///     detection cannot hide arbitrary data in the preperiod), and
///   - ρ + guard·T ≤ len (at least `guard` full periods are witnessed).
/// Returns the corresponding SML set, or nullopt when no such pair fits in
/// the prefix.  This is a bounded heuristic: it certifies consistency with
/// the prefix only.
inline std::optional<SMLSet> sml_detect(const std::vector<bool>& bits, std::size_t guard) {
    if (guard < 1) throw field_error("sml_detect guard must be >= 1");
    const std::size_t len = bits.size();
    for (std::size_t rho = 0; rho + guard <= len; ++rho) {
        std::size_t t_cap = (len - rho) / guard;
        for (std::size_t T = std::max<std::size_t>(rho, 1); T <= t_cap; ++T) {
            bool periodic = true;
            for (std::size_t n = rho; n + T < len; ++n) {
                if (bits[n] != bits[n + T]) { periodic = false; break; }
            }
            if (!periodic) continue;
            SMLSet out;
            for (std::size_t q = rho; q < rho + T && q < len; ++q)
                if (bits[q]) out.progressions.push_back({q, T});
            for (std::size_t n = 0; n < rho; ++n)
                if (bits[n]) out.finite.push_back(n);
            out.normalize();
            return out;
        }
    }
    return std::nullopt;
}

/// An element of exact multiplicative order `step` in fd, if one exists.
inline FieldElement root_of_unity(const FieldDescriptor& fd, std::size_t step) {
    if (step == 1) return FieldElement::one(fd);
    if (fd.kind == FieldKind::Rationals) {
        if (step == 2) return FieldElement::from_integer(fd, -1);
        throw field_error("Q has no element of multiplicative order " + std::to_string(step));
    }
    std::uint64_t p = fd.p;
    if ((p - 1) % step != 0)
        throw field_error("F" + std::to_string(p) + " has no element of order " + std::to_string(step) +
                          " (step must divide p-1)");
    std::vector<std::size_t> prime_divs;
    std::size_t rem = step;
    for (std::size_t q = 2; q * q <= rem; ++q)
        while (rem % q == 0) { prime_divs.push_back(q); rem /= q; }
    if (rem > 1) prime_divs.push_back(rem);
    std::sort(prime_divs.begin(), prime_divs.end());
    prime_divs.erase(std::unique(prime_divs.begin(), prime_divs.end()), prime_divs.end());
    for (std::uint64_t g = 2; g < p; ++g) {
        std::uint64_t cand = fp::pow(g, (p - 1) / step, p);
        bool exact = cand != 1;
        for (std::size_t q : prime_divs)
            if (exact && fp::pow(cand, step / q, p) == 1) exact = false;
        if (exact)
            return fd.kind == FieldKind::PrimeField
                       ? FieldElement::from_residue(fd, cand)
                       : FieldElement::from_poly(FpPoly::constant(p, cand));
    }
    throw field_error("no element of order " + std::to_string(step) + " found"); // unreachable for prime p
}

/// Build a recurrence whose zero set on [0, ∞) is exactly
/// singletons ∪ ⋃ {s, s+δ, s+2δ, …}.  Each singleton {s} contributes a
/// factor θⁿ − θˢ with θ of infinite order (2 over Q, x over F_p(x);
/// impossible over F_p).  Each progression (s, δ) contributes ω⁽ⁿ⁻ˢ⁾ − 1
/// with ω of exact order δ, corrected to 1 at the finitely many positions
/// n < s with n ≡ s (mod δ) so the realized set is genuinely one-sided.
/// The product sequence is C-finite; its minimal recurrence is fitted from
/// enough terms to cover the order bound.
inline LinearRecurrence recurrence_with_zero_set(
    const std::vector<std::size_t>& singletons,
    const std::vector<std::pair<std::size_t, std::size_t>>& progressions, const FieldDescriptor& fd) {
    std::optional<FieldElement> theta;
    if (!singletons.empty()) {
        if (fd.kind == FieldKind::Rationals) theta = FieldElement::from_integer(fd, 2);
        else if (fd.kind == FieldKind::RationalFunctions) theta = parse_element("x", fd);
        else
            throw field_error("finite field " + fd.str() +
                              " has no element of infinite order for singleton zeros");
    }
    const std::size_t cap = 512;
    std::vector<FieldElement> omegas;
    std::size_t order_bound = 1;
    // Per-factor order bounds: a geometric-minus-constant factor has order
    // <= 2; the one-sided correction is finitely supported below s, adding
    // at most s to the factor's order.
    for (auto [s, step] : progressions) {
        if (step < 1) throw field_error("progression step must be >= 1");
        omegas.push_back(root_of_unity(fd, step));
        if (order_bound > cap / (2 + s) + 1) order_bound = cap + 1;
        else order_bound *= 2 + s;
        if (order_bound > cap) throw field_error("requested zero set needs recurrence order > 512");
    }
    for (std::size_t i = 0; i < singletons.size(); ++i) {
        order_bound *= 2;
        if (order_bound > cap) throw field_error("requested zero set needs recurrence order > 512");
    }

    std::size_t horizon = 2 * order_bound + 6;
    std::vector<FieldElement> theta_powers; // θˢ for each singleton s
    for (std::size_t s : singletons) theta_powers.push_back(pow(*theta, s));
    FieldElement theta_n = theta ? FieldElement::one(fd) : FieldElement::zero(fd); // running θⁿ
    std::vector<FieldElement> values;
    values.reserve(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
        FieldElement v = FieldElement::one(fd);
        for (std::size_t i = 0; i < singletons.size(); ++i) v *= theta_n - theta_powers[i];
        for (std::size_t i = 0; i < progressions.size(); ++i) {
            auto [s, step] = progressions[i];
            std::size_t e = (n + step - s % step) % step; // (n - s) mod step, kept nonnegative
            FieldElement f = pow(omegas[i], e) - FieldElement::one(fd);
            if (n < s && e == 0) f += FieldElement::one(fd); // one-sided correction
            v *= f;
        }
        values.push_back(v);
        if (theta) theta_n *= *theta;
    }
    auto fit = minimal_recurrence(values);
    if (!fit) throw field_error("internal: zero-set product sequence did not fit its order bound");
    return *fit;
}

} // namespace autalg
