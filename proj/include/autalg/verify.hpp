#pragma once

// The acceptance gate: ten self-contained checks covering the construction,
// both Hilbert paths, the automaton certification, the recurrence
// correspondences, and the underlying exact arithmetic.  Each criterion
// reports pass/fail with a short diagnostic; run_acceptance() executes all
// of them.

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "autalg/automaton.hpp"

namespace autalg {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace acceptance {

inline FieldElement fe(const FieldDescriptor& fd, long long v) {
    return FieldElement::from_integer(fd, v);
}

/// Random VLRS instance: invertible σ, arbitrary L and R.
inline VlrsData random_vlrs(std::mt19937& rng, const FieldDescriptor& fd, std::size_t max_m) {
    std::uniform_int_distribution<std::size_t> mdist(1, max_m);
    std::uniform_int_distribution<long long> edist(0, static_cast<long long>(fd.p) - 1);
    VlrsData d;
    d.field = fd;
    d.m = mdist(rng);
    d.sigma = Matrix(fd, d.m, d.m);
    do {
        for (auto& e : d.sigma.entries) e = fe(fd, edist(rng));
    } while (rank(d.sigma) < d.m);
    auto random_space = [&]() {
        std::uniform_int_distribution<std::size_t> kdist(0, d.m);
        std::size_t k = kdist(rng);
        std::vector<std::vector<FieldElement>> rows(k);
        for (auto& row : rows) {
            row.reserve(d.m);
            for (std::size_t j = 0; j < d.m; ++j) row.push_back(fe(fd, edist(rng)));
        }
        return Subspace::span_rows(fd, rows, d.m);
    };
    d.L = random_space();
    d.R = random_space();
    return d;
}

inline bool counts_are(const Presentation& p, std::size_t g, std::size_t s, std::string& why) {
    if (p.generators.size() != g || p.relations.size() != s) {
        std::ostringstream o;
        o << "expected (g,s)=(" << g << "," << s << "), got (" << p.generators.size() << ","
          << p.relations.size() << ")";
        why = o.str();
        return false;
    }
    return true;
}

inline CriterionResult criterion_presentation_counts() {
    CriterionResult r{1, "presentation counts for the named families", false, ""};
    const FieldDescriptor Q = FieldDescriptor::rationals();
    const FieldDescriptor F11 = FieldDescriptor::prime_field(11);
    std::string why;
    if (!counts_are(build_vlrs(family_fermat(fe(Q, 2), fe(Q, -1))), 6, 26, why)) {
        r.detail = "fermat: " + why;
        return r;
    }
    if (!counts_are(build_vlrs(family_segment(3, fe(F11, 2))), 5, 17, why)) {
        r.detail = "segment: " + why;
        return r;
    }
    const std::vector<LinearRecurrence> recs = {
        {Q, {fe(Q, 1)}, {fe(Q, 1)}},
        {Q, {fe(Q, 1), fe(Q, 1)}, {fe(Q, 1), fe(Q, 1)}},
        {Q, {fe(Q, 2), fe(Q, 1), fe(Q, -2)}, {fe(Q, 1), fe(Q, 0), fe(Q, 4)}}};
    for (const auto& rec : recs) {
        std::size_t d = rec.order();
        if (!counts_are(build_vlrs(from_recurrence(rec)), d + 3, d * d + 4 * d + 5, why)) {
            r.detail = "from_recurrence d=" + std::to_string(d) + ": " + why;
            return r;
        }
    }
    r.pass = true;
    r.detail = "fermat (6,26), segment (5,17), recurrence d=1,2,3";
    return r;
}

inline CriterionResult criterion_fermat_hilbert() {
    CriterionResult r{2, "Fermat Hilbert values by formula and by completion", false, ""};
    const FieldDescriptor Q = FieldDescriptor::rationals();
    VlrsData data = family_fermat(fe(Q, 2), fe(Q, -1));
    HilbertData closed = hilbert_closed(data, 20);
    HilbertData oracle = hilbert_oracle(build_vlrs(data), build_vlrs(data).declaration_order(), 20);
    std::vector<long long> expected{1, 6, 10};
    for (int n = 3; n <= 20; ++n) expected.push_back(n == 4 ? 11 : 10);
    if (closed.values != expected) {
        r.detail = "closed formula deviates from the expected pattern";
        return r;
    }
    if (oracle.values != expected) {
        r.detail = "completion oracle deviates from the expected pattern";
        return r;
    }
    r.pass = true;
    r.detail = "1,6,10,10,11,10,...,10 through degree 20, both methods";
    return r;
}

inline CriterionResult criterion_lech_spikes() {
    CriterionResult r{3, "Lech power-of-p spikes for p in {2,3,5,7}", false, ""};
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        VlrsData data = family_lech(p);
        HilbertData closed = hilbert_closed(data, 63);
        for (std::size_t n = 0; n + 3 < closed.values.size(); ++n) {
            bool power = false;
            for (std::size_t q = 1; q <= n; q *= p)
                if (q == n) power = true;
            long long expected = power ? 11 : 10;
            if (closed.values[n + 3] != expected) {
                std::ostringstream o;
                o << "p=" << p << ": h(" << n + 3 << ")=" << closed.values[n + 3] << ", expected "
                  << expected;
                r.detail = o.str();
                return r;
            }
        }
        Presentation pres = build_vlrs(data);
        HilbertData oracle = hilbert_oracle(pres, pres.declaration_order(), 20);
        for (std::size_t d = 0; d <= 20; ++d)
            if (oracle.values[d] != closed.values[d]) {
                std::ostringstream o;
                o << "p=" << p << ": oracle disagrees at degree " << d;
                r.detail = o.str();
                return r;
            }
    }
    r.pass = true;
    r.detail = "spikes exactly at n = p^k through n=60; oracle confirms to degree 20";
    return r;
}

inline CriterionResult criterion_random_oracle(std::uint64_t seed) {
    CriterionResult r{4, "closed formula equals completion oracle on random data", false, ""};
    const FieldDescriptor F101 = FieldDescriptor::prime_field(101);
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    for (int trial = 0; trial < 50; ++trial) {
        VlrsData data = random_vlrs(rng, F101, 4);
        HilbertData closed = hilbert_closed(data, 12);
        Presentation p = build_vlrs(data);
        HilbertData oracle = hilbert_oracle(p, p.declaration_order(), 12);
        if (closed.values != oracle.values) {
            r.detail = "mismatch in trial " + std::to_string(trial);
            return r;
        }
    }
    r.pass = true;
    r.detail = "50 random instances over F101, m <= 4, agree through degree 12";
    return r;
}

inline CriterionResult criterion_class_partition(std::uint64_t seed) {
    CriterionResult r{5, "normal words partition into the four structural classes", false, ""};
    const FieldDescriptor F101 = FieldDescriptor::prime_field(101);
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    for (int trial = 0; trial < 10; ++trial) {
        VlrsData data = random_vlrs(rng, F101, 4);
        const long long m = static_cast<long long>(data.m);
        Presentation p = build_vlrs(data);
        auto words = normal_words(p, p.declaration_order(), 12);
        IntersectionProfile prof = orbit_profile(data, 10);
        const int c_idx = static_cast<int>(data.m), b_idx = c_idx + 1, a_idx = c_idx + 2;
        for (std::size_t n = 0; n + 3 <= 12; ++n) {
            long long u = 0, v = 0, w = 0, t = 0;
            for (const Word& word : words[n + 3]) {
                bool has_a = std::find(word.begin(), word.end(), a_idx) != word.end();
                bool has_b = std::find(word.begin(), word.end(), b_idx) != word.end();
                bool has_x = false;
                for (int g : word)
                    if (g < c_idx) has_x = true;
                if (has_x && has_a && has_b)
                    ++t;
                else if (has_x && has_a)
                    ++w;
                else if (has_x && has_b)
                    ++v;
                else
                    ++u;
            }
            long long eu = m + 4;
            long long ev = m - static_cast<long long>(data.r());
            long long ew = m - static_cast<long long>(prof.dim_image(n + 1));
            long long et = m - static_cast<long long>(prof.dim_sum(n));
            if (u != eu || v != ev || w != ew || t != et) {
                std::ostringstream o;
                o << "trial " << trial << " degree " << n + 3 << ": classes (" << u << "," << v
                  << "," << w << "," << t << ") expected (" << eu << "," << ev << "," << ew << ","
                  << et << ")";
                r.detail = o.str();
                return r;
            }
        }
    }
    r.pass = true;
    r.detail = "10 random instances, class sizes match the dimension formula at every degree";
    return r;
}

inline CriterionResult criterion_segment_certified() {
    CriterionResult r{6, "segment language certifies with the mod-10 pattern", false, ""};
    const FieldDescriptor F11 = FieldDescriptor::prime_field(11);
    VlrsData data = family_segment(3, fe(F11, 2));
    HilbertData closed = hilbert_closed(data, 43);
    for (std::size_t n = 0; n <= 40; ++n) {
        long long expected = 8 + (n % 10 == 2 ? 1 : 0);
        if (closed.values[n + 3] != expected) {
            std::ostringstream o;
            o << "h(" << n + 3 << ")=" << closed.values[n + 3] << ", expected " << expected;
            r.detail = o.str();
            return r;
        }
    }
    Presentation p = build_vlrs(data);
    auto rep = certify_normal_words(p, p.declaration_order(), 40);
    if (rep.verdict != CertificationReport::Verdict::certified) {
        r.detail = "verdict is not CERTIFIED";
        return r;
    }
    for (std::size_t d = 0; d <= 40; ++d)
        if (rep.series_prefix[d] != closed.values[d]) {
            r.detail = "series coefficient differs from the oracle at degree " + std::to_string(d);
            return r;
        }
    r.pass = true;
    r.detail = "CERTIFIED; generating function matches the word counts through degree 40";
    return r;
}

inline CriterionResult criterion_lech_undetermined() {
    CriterionResult r{7, "Lech p=7 exponents resist certification and rational fitting", false, ""};
    VlrsData data = family_lech(7);
    Presentation p = build_vlrs(data);
    auto rep = certify_normal_words(p, p.declaration_order(), 30);
    if (rep.verdict != CertificationReport::Verdict::undetermined) {
        r.detail = "verdict is not UNDETERMINED";
        return r;
    }
    bool found = false;
    for (const auto& fam : rep.fit.families)
        if (!fam.exponents && fam.exponents_seen.size() >= 2 && fam.exponents_seen[0] == 1 &&
            fam.exponents_seen[1] == 7)
            found = true;
    bool mentioned = false;
    for (const auto& d : rep.diagnostics)
        if (d.find("{1, 7}") != std::string::npos) mentioned = true;
    if (!found || !mentioned) {
        r.detail = "non-periodic family with exponent prefix {1, 7} not reported";
        return r;
    }
    if (rational_guess(hilbert_closed(data, 63), 25).has_value()) {
        r.detail = "a bounded-order rational fit unexpectedly matched the 63-term prefix";
        return r;
    }
    r.pass = true;
    r.detail = "UNDETERMINED with exponent prefix {1, 7}; no rational fit of order <= 25";
    return r;
}

inline CriterionResult criterion_recurrence_correspondence() {
    CriterionResult r{8, "recurrence <-> algebra correspondences", false, ""};
    const FieldDescriptor Q = FieldDescriptor::rationals();
    // a_n = 2^n + (-1)^n - 1 satisfies a_n = 2a_{n-1} + a_{n-2} - 2a_{n-3}.
    LinearRecurrence rec{Q,
                         {fe(Q, 2), fe(Q, 1), fe(Q, -2)},
                         {fe(Q, 1), fe(Q, 0), fe(Q, 4)}};
    auto ts = terms(rec, 40);
    HilbertData h = hilbert_closed(from_recurrence(rec), 43);
    for (std::size_t n = 0; n <= 40; ++n) {
        long long indicator = ts[n].is_zero() ? 1 : 0;
        if (h.values[n + 3] - 10 != indicator) {
            r.detail = "zero-indicator identity fails at n=" + std::to_string(n);
            return r;
        }
    }
    VlrsData fermat = family_fermat(fe(Q, 2), fe(Q, -1));
    LinearRecurrence back = to_recurrence(fermat, 40);
    auto zeros = zero_set(back, 40);
    if (zeros != std::set<std::size_t>{1}) {
        r.detail = "extracted recurrence zero set differs from {1}";
        return r;
    }
    r.pass = true;
    r.detail = "h(n+3)-10 equals the zero indicator on [0,40]; extraction round-trips";
    return r;
}

inline CriterionResult criterion_direct_sums() {
    CriterionResult r{9, "direct sums add profiles; polynomial summands shift values", false, ""};
    const FieldDescriptor F11 = FieldDescriptor::prime_field(11);
    VlrsData a = family_segment(3, fe(F11, 2));
    VlrsData b = family_segment(8, fe(F11, 2));
    VlrsData sum = direct_sum(a, b);
    IntersectionProfile pa = orbit_profile(a, 40), pb = orbit_profile(b, 40),
                        ps = orbit_profile(sum, 40);
    for (std::size_t n = 0; n <= 40; ++n)
        if (ps.c(n) != pa.c(n) + pb.c(n)) {
            r.detail = "profile additivity fails at n=" + std::to_string(n);
            return r;
        }
    const FieldDescriptor Q = FieldDescriptor::rationals();
    Presentation base = build_vlrs(family_fermat(fe(Q, 2), fe(Q, -1)));
    HilbertData base_h = hilbert_oracle(base, base.declaration_order(), 12);
    for (std::size_t t : {1u, 2u}) {
        Presentation ext = add_polynomial_summands(base, t);
        HilbertData ext_h = hilbert_oracle(ext, ext.declaration_order(), 12);
        for (std::size_t d = 0; d <= 12; ++d) {
            long long expected = base_h.values[d] + (d >= 1 ? static_cast<long long>(t) : 0);
            if (ext_h.values[d] != expected) {
                std::ostringstream o;
                o << "t=" << t << ": degree " << d << " shifted to " << ext_h.values[d]
                  << ", expected " << expected;
                r.detail = o.str();
                return r;
            }
        }
    }
    r.pass = true;
    r.detail = "c_n additive on [0,40]; +t shift oracle-checked to degree 12 for t=1,2";
    return r;
}

inline CriterionResult criterion_arithmetic_suites(std::uint64_t seed) {
    CriterionResult r{10, "field axioms and linear-algebra identities", false, ""};
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    const std::vector<FieldDescriptor> fields = {FieldDescriptor::rationals(),
                                                 FieldDescriptor::prime_field(101),
                                                 FieldDescriptor::rational_functions(7)};
    std::uniform_int_distribution<long long> small(-9, 9);
    auto random_element = [&](const FieldDescriptor& fd) {
        FieldElement e = fe(fd, small(rng));
        if (fd.kind == FieldKind::Rationals) {
            long long den = 0;
            while (den == 0) den = small(rng);
            e = e / fe(fd, den);
        } else if (fd.kind == FieldKind::RationalFunctions) {
            FieldElement x = parse_element("x", fd);
            e = e + fe(fd, small(rng)) * x;
            FieldElement d = fe(fd, 0);
            while (d.is_zero()) d = fe(fd, small(rng)) + fe(fd, small(rng)) * x;
            e = e / d;
        }
        return e;
    };
    for (const auto& fd : fields) {
        for (int i = 0; i < 1000; ++i) {
            FieldElement a = random_element(fd), b = random_element(fd), c = random_element(fd);
            bool ok = (a + b) == (b + a) && (a * b) == (b * a) &&
                      ((a + b) + c) == (a + (b + c)) && ((a * b) * c) == (a * (b * c)) &&
                      (a * (b + c)) == (a * b + a * c) &&
                      (a + FieldElement::zero(fd)) == a && (a * FieldElement::one(fd)) == a &&
                      (a - a).is_zero();
            if (ok && !a.is_zero()) ok = (a / a) == FieldElement::one(fd);
            if (!ok) {
                r.detail = "field axiom failed over " + fd.str();
                return r;
            }
        }
    }
    const FieldDescriptor F101 = FieldDescriptor::prime_field(101);
    std::uniform_int_distribution<long long> entry(0, 100);
    std::uniform_int_distribution<std::size_t> dims(1, 5);
    for (int i = 0; i < 200; ++i) {
        std::size_t rows = dims(rng), cols = dims(rng);
        Matrix m(F101, rows, cols);
        for (auto& e : m.entries) e = fe(F101, entry(rng));
        if (rank(m) + kernel(m).dim() != cols) {
            r.detail = "rank-nullity failed";
            return r;
        }
        std::size_t amb = dims(rng);
        auto random_space = [&]() {
            std::size_t k = std::uniform_int_distribution<std::size_t>(0, amb)(rng);
            std::vector<std::vector<FieldElement>> rws(k);
            for (auto& row : rws)
                for (std::size_t j = 0; j < amb; ++j) row.push_back(fe(F101, entry(rng)));
            return Subspace::span_rows(F101, rws, amb);
        };
        Subspace A = random_space(), B = random_space();
        if (subspace_sum(A, B).dim() + intersection(A, B).dim() != A.dim() + B.dim()) {
            r.detail = "modular dimension identity failed";
            return r;
        }
    }
    r.pass = true;
    r.detail = "1000 axiom cases per field; 200 rank-nullity and modularity cases";
    return r;
}

} // namespace acceptance

/// Run all ten acceptance criteria; exceptions count as failures.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20240917) {
    using Fn = std::function<CriterionResult()>;
    const std::vector<Fn> criteria = {
        [] { return acceptance::criterion_presentation_counts(); },
        [] { return acceptance::criterion_fermat_hilbert(); },
        [] { return acceptance::criterion_lech_spikes(); },
        [seed] { return acceptance::criterion_random_oracle(seed); },
        // Same seed as criterion 4: its first ten instances are re-examined.
        [seed] { return acceptance::criterion_class_partition(seed); },
        [] { return acceptance::criterion_segment_certified(); },
        [] { return acceptance::criterion_lech_undetermined(); },
        [] { return acceptance::criterion_recurrence_correspondence(); },
        [] { return acceptance::criterion_direct_sums(); },
        [seed] { return acceptance::criterion_arithmetic_suites(seed + 2); }};
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            out.push_back(criteria[i]());
        } catch (const std::exception& e) {
            out.push_back({static_cast<int>(i + 1), "criterion " + std::to_string(i + 1), false,
                           std::string("exception: ") + e.what()});
        }
    }
    return out;
}

} // namespace autalg
