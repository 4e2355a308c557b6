#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "autalg/automaton.hpp"

using namespace autalg;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F11 = FieldDescriptor::prime_field(11);

QPoly poly(std::initializer_list<long long> cs) {
    QPoly p;
    for (long long c : cs) p.push_back(Rational(c));
    qp::trim(p);
    return p;
}

HilbertData data_of(std::initializer_list<long long> vs) {
    HilbertData h;
    h.values.assign(vs.begin(), vs.end());
    return h;
}

MonomialOrder two_letter_order() {
    MonomialOrder ord;
    ord.rank = {0, 1};
    ord.degree = {1, 1};
    return ord;
}

/// Normal words are c^i and c^i b: kill b.b and b.c.
Presentation chain_presentation() {
    Presentation p;
    p.field = Q;
    p.generators = {{"c", 1}, {"b", 1}};
    NCPolynomial bb(Q), bc(Q);
    bb.add_term({1, 1}, FieldElement::one(Q));
    bc.add_term({1, 0}, FieldElement::one(Q));
    p.relations = {bb, bc};
    return p;
}

Presentation free_two() {
    Presentation p;
    p.field = Q;
    p.generators = {{"x", 1}, {"y", 1}};
    return p;
}

const NormalWordFamily* find_family(const FamilyFit& fit, const Word& prefix, const Word& loop,
                                    const Word& suffix) {
    for (const auto& f : fit.families)
        if (f.prefix == prefix && f.loop == loop && f.suffix == suffix) return &f;
    return nullptr;
}

bool automata_equal(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    if (!(a.initial == b.initial && a.accepting == b.accepting && a.transitions == b.transitions))
        return false;
    if (a.alphabet.size() != b.alphabet.size()) return false;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i)
        if (!(a.alphabet[i] == b.alphabet[i])) return false;
    return true;
}

} // namespace

TEST_CASE("Rational polynomial arithmetic", "[ratseries]") {
    QPoly one_plus = poly({1, 1}), one_minus = poly({1, -1});
    CHECK(qp::mul(one_plus, one_minus) == poly({1, 0, -1}));
    CHECK(qp::add(one_plus, one_minus) == poly({2}));
    CHECK(qp::sub(one_plus, one_plus) == QPoly{});
    CHECK(qp::degree(poly({0})) == -1);
    CHECK(qp::degree(poly({3, 0, 2})) == 2);

    auto [q1, r1] = qp::divmod(poly({-1, 0, 0, 1}), poly({-1, 1})); // (z^3-1)/(z-1)
    CHECK(q1 == poly({1, 1, 1}));
    CHECK(qp::is_zero(r1));

    auto [q2, r2] = qp::divmod(poly({1, 0, 1}), poly({1, 1})); // (z^2+1)/(z+1)
    CHECK(q2 == poly({-1, 1}));
    CHECK(r2 == poly({2}));

    CHECK(qp::gcd(poly({-1, 0, 1}), poly({1, 2, 1})) == poly({1, 1}));
    CHECK(qp::gcd(poly({2}), poly({0, 1})) == poly({1}));
    CHECK(qp::div_exact(poly({-1, 0, 1}), poly({1, 1})) == poly({-1, 1}));
}

TEST_CASE("Rational function field over Q", "[ratseries]") {
    QRatFun a(poly({1}), poly({1, -1}));  // 1/(1-z)
    QRatFun b(poly({1}), poly({1, 1}));   // 1/(1+z)
    QRatFun sum = a + b;
    CHECK(sum == QRatFun(poly({2}), poly({1, 0, -1})));
    CHECK(a - a == QRatFun());
    CHECK((a * b) == QRatFun(poly({1}), poly({1, 0, -1})));
    CHECK((a / b) == QRatFun(poly({1, 1}), poly({1, -1})));
    CHECK_THROWS_AS(a / QRatFun(), field_error);
    // Common factors are removed on construction.
    CHECK(QRatFun(poly({-1, 0, 1}), poly({-1, 1})) == QRatFun(poly({1, 1})));
}

TEST_CASE("Integer series construction", "[ratseries]") {
    RationalSeries geo = make_series(poly({1}), poly({1, -1}));
    CHECK(geo.num == std::vector<long long>{1});
    CHECK(geo.den == std::vector<long long>{1, -1});
    CHECK(coefficients(geo, 5) == std::vector<long long>{1, 1, 1, 1, 1, 1});

    // (1+z)/(1-z^2) reduces to 1/(1-z).
    CHECK(make_series(poly({1, 1}), poly({1, 0, -1})) == geo);
    // Scaling by the constant leaves an integer series.
    CHECK(make_series(poly({2}), poly({2, -2})) == geo);

    RationalSeries odd = make_series(poly({0, 0, 1}), poly({1, 0, -1}));
    CHECK(coefficients(odd, 6) == std::vector<long long>{0, 0, 1, 0, 1, 0, 1});

    CHECK_THROWS_AS(make_series(poly({1}), QPoly{}), field_error);
    CHECK_THROWS_AS(make_series(poly({1}), poly({0, 1})), field_error);
    CHECK_THROWS_AS(make_series(poly({1}), poly({2})), field_error); // 1/2 is not integral
}

TEST_CASE("Coefficient extraction follows the recurrence", "[ratseries]") {
    RationalSeries fib = make_series(poly({1}), poly({1, -1, -1}));
    CHECK(coefficients(fib, 7) == std::vector<long long>{1, 1, 2, 3, 5, 8, 13, 21});
    RationalSeries zero = make_series(QPoly{}, poly({1, -1}));
    CHECK(coefficients(zero, 3) == std::vector<long long>{0, 0, 0, 0});
}

TEST_CASE("Rational guessing from value prefixes", "[ratseries]") {
    SECTION("constant sequence") {
        auto s = rational_guess(data_of({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}), 4);
        REQUIRE(s.has_value());
        CHECK(s->num == std::vector<long long>{1});
        CHECK(s->den == std::vector<long long>{1, -1});
    }
    SECTION("Fibonacci needs order two") {
        HilbertData h = data_of({1, 1, 2, 3, 5, 8, 13, 21, 34, 55});
        auto s = rational_guess(h, 4);
        REQUIRE(s.has_value());
        CHECK(s->num == std::vector<long long>{1});
        CHECK(s->den == std::vector<long long>{1, -1, -1});
        CHECK_FALSE(rational_guess(h, 1).has_value());
    }
    SECTION("eventually constant with one spike") {
        auto Qe = [](long long v) { return FieldElement::from_integer(Q, v); };
        HilbertData h = hilbert_closed(family_fermat(Qe(2), Qe(-1)), 30);
        auto s = rational_guess(h, 12);
        REQUIRE(s.has_value());
        CHECK(s->num == std::vector<long long>{1, 5, 4, 0, 1, -1});
        CHECK(s->den == std::vector<long long>{1, -1});
        CHECK(coefficients(*s, 30) == h.values);
    }
    SECTION("power-of-p spikes defeat bounded-order fits") {
        HilbertData h = hilbert_closed(family_lech(7), 63);
        CHECK_FALSE(rational_guess(h, 25).has_value());
    }
    SECTION("input too short for the requested order") {
        CHECK_THROWS_AS(rational_guess(data_of({1, 2, 3}), 2), field_error);
    }
}

TEST_CASE("Canonical word decompositions", "[automaton]") {
    using detail::decompositions;
    SECTION("pure power") {
        auto d = decompositions({0, 0, 0}, 2);
        REQUIRE(d.size() == 1);
        CHECK(d[0].first.prefix.empty());
        CHECK(d[0].first.loop == Word{0});
        CHECK(d[0].first.suffix.empty());
        CHECK(d[0].second == 3);
    }
    SECTION("non-primitive loops are skipped") {
        for (const auto& [sk, reps] : decompositions({0, 1, 0, 1, 0, 1}, 2))
            CHECK(detail::word_is_primitive(sk.loop));
        auto d = decompositions({0, 1, 0, 1}, 2);
        REQUIRE(d.size() == 1); // only (eps, xy, eps); the yx run has one visible repeat
        CHECK(d[0].first.loop == Word{0, 1});
    }
    SECTION("runs are left-maximal") {
        for (const auto& [sk, reps] : decompositions({1, 0, 0, 0, 1}, 2)) {
            // prefix must not end with the loop
            REQUIRE(sk.prefix.size() < 2); // only the y.xxx.y split survives
            CHECK(sk.loop == Word{0});
            CHECK(sk.prefix == Word{1});
            CHECK(sk.suffix == Word{1});
            CHECK(reps == 3);
        }
    }
}

TEST_CASE("Family fitting on simple languages", "[automaton]") {
    SECTION("chain algebra c^i, c^i b") {
        Presentation p = chain_presentation();
        MonomialOrder ord = p.declaration_order();
        auto words = normal_words(p, ord, 12);
        FamilyFit fit = fit_families(words, ord, 3);
        REQUIRE(fit.success);
        CHECK(fit.families.size() == 2);
        CHECK(fit.residue.empty());
        CHECK(fit.split_degree == 0);
        const auto* plain = find_family(fit, {}, {0}, {});
        const auto* tail = find_family(fit, {}, {0}, {1});
        REQUIRE(plain != nullptr);
        REQUIRE(tail != nullptr);
        CHECK(plain->exponents_seen.size() == 13); // e = 0..12
        CHECK(tail->exponents_seen.size() == 12);  // e = 0..11
        CHECK(regenerate_words(fit, ord, 12) == words);
    }
    SECTION("aperiodic top-degree word fails the fit") {
        std::vector<std::vector<Word>> words(7);
        words[0] = {Word{}};
        words[6] = {Word{0, 1, 1, 0, 1, 0}};
        FamilyFit fit = fit_families(words, two_letter_order(), 3);
        CHECK_FALSE(fit.success);
        CHECK_FALSE(fit.failure_reason.empty());
        REQUIRE(fit.residue.size() == 2);
        CHECK(fit.split_degree == 7);
    }
    SECTION("low-degree leftovers become residue") {
        std::vector<std::vector<Word>> words(13);
        words[0] = {Word{}};
        words[2] = {Word{0, 1}};
        words[3] = {Word{1, 0, 0}};
        FamilyFit fit = fit_families(words, two_letter_order(), 3);
        REQUIRE(fit.success);
        CHECK(fit.families.empty());
        CHECK(fit.residue.size() == 3);
        CHECK(fit.split_degree == 4);
    }
    SECTION("evidence threshold is enforced") {
        std::vector<std::vector<Word>> words{{Word{}}};
        CHECK_THROWS_AS(fit_families(words, two_letter_order(), 2), field_error);
    }
}

TEST_CASE("Exponent structure attachment", "[automaton]") {
    NormalWordFamily fam;
    fam.loop = {0};
    fam.loop_degree = 1;

    fam.max_exponent = 20;
    fam.exponents_seen = {};
    for (std::size_t e = 0; e <= 20; ++e) fam.exponents_seen.push_back(e);
    auto all = attach_sml(fam, 3);
    REQUIRE(all.exponents.has_value());
    CHECK(all.exponents->finite.empty());
    CHECK(all.exponents->progressions ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});

    fam.max_exponent = 37;
    fam.exponents_seen = {2, 12, 22, 32};
    auto seg = attach_sml(fam, 3);
    REQUIRE(seg.exponents.has_value());
    CHECK(seg.exponents->finite.empty());
    CHECK(seg.exponents->progressions ==
          std::vector<std::pair<std::size_t, std::size_t>>{{2, 10}});

    fam.max_exponent = 27;
    fam.exponents_seen = {1};
    auto single = attach_sml(fam, 3);
    REQUIRE(single.exponents.has_value());
    CHECK(single.exponents->finite == std::vector<std::size_t>{1});
    CHECK(single.exponents->progressions.empty());

    fam.exponents_seen = {1, 7};
    auto sparse = attach_sml(fam, 3);
    CHECK_FALSE(sparse.exponents.has_value());
}

TEST_CASE("Generating functions of small machines", "[automaton]") {
    SECTION("one accepting state with a unit loop") {
        WeightedAutomaton a;
        a.alphabet = {{Word{0}, 1, "x"}};
        a.accepting = {true};
        a.transitions = {{{0, 0}}};
        RationalSeries s = generating_function(a);
        CHECK(s.num == std::vector<long long>{1});
        CHECK(s.den == std::vector<long long>{1, -1});
        CHECK(count_words_by_degree(a, 5) == std::vector<long long>{1, 1, 1, 1, 1, 1});
    }
    SECTION("two-cycle counts even lengths") {
        WeightedAutomaton a;
        a.alphabet = {{Word{0}, 1, "x"}, {Word{1}, 1, "y"}};
        a.accepting = {true, false};
        a.transitions = {{{0, 1}}, {{1, 0}}};
        RationalSeries s = generating_function(a);
        CHECK(s.num == std::vector<long long>{1});
        CHECK(s.den == std::vector<long long>{1, 0, -1});
        CHECK(count_words_by_degree(a, 6) == std::vector<long long>{1, 0, 1, 0, 1, 0, 1});
    }
    SECTION("weights 1 and 2 on one state give Fibonacci growth") {
        WeightedAutomaton a;
        a.alphabet = {{Word{0}, 1, "x"}, {Word{1, 1}, 2, "yy"}};
        a.accepting = {true};
        a.transitions = {{{0, 0}, {1, 0}}};
        RationalSeries s = generating_function(a);
        CHECK(s.num == std::vector<long long>{1});
        CHECK(s.den == std::vector<long long>{1, -1, -1});
        CHECK(count_words_by_degree(a, 7) == std::vector<long long>{1, 1, 2, 3, 5, 8, 13, 21});
    }
    SECTION("no accepting states") {
        WeightedAutomaton a;
        a.alphabet = {{Word{0}, 1, "x"}};
        a.accepting = {false};
        a.transitions = {{{0, 0}}};
        RationalSeries s = generating_function(a);
        CHECK(s.num.empty());
        CHECK(s.den == std::vector<long long>{1});
    }
}

TEST_CASE("Automaton construction guards", "[automaton]") {
    Presentation p = chain_presentation();
    MonomialOrder ord = p.declaration_order();
    NormalWordFamily fam;
    fam.loop = {0};
    fam.loop_degree = 1;
    fam.max_exponent = 10;
    SECTION("missing exponent structure") {
        CHECK_THROWS_AS(build_automaton({fam}, {}, p, ord), field_error);
    }
    SECTION("overlapping families") {
        fam.exponents = SMLSet{{}, {{0, 1}}};
        CHECK_THROWS_AS(build_automaton({fam, fam}, {}, p, ord), field_error);
    }
    SECTION("duplicate residue words") {
        CHECK_THROWS_AS(build_automaton({}, {Word{0}, Word{0}}, p, ord), field_error);
    }
}

TEST_CASE("Chain algebra certifies to (1+z)/(1-z)", "[automaton]") {
    Presentation p = chain_presentation();
    auto rep = certify_normal_words(p, p.declaration_order(), 12);
    REQUIRE(rep.verdict == CertificationReport::Verdict::certified);
    CHECK(rep.automaton.state_count() == 2);
    CHECK(rep.series.num == std::vector<long long>{1, 1});
    CHECK(rep.series.den == std::vector<long long>{1, -1});
    CHECK(accepts_word(rep.automaton, {}));
    CHECK(accepts_word(rep.automaton, {0, 0, 0, 1}));
    CHECK_FALSE(accepts_word(rep.automaton, {1, 1}));
    CHECK_FALSE(accepts_word(rep.automaton, {1, 0}));
}

TEST_CASE("Fermat normal words certify", "[automaton]") {
    auto Qe = [](long long v) { return FieldElement::from_integer(Q, v); };
    VlrsData data = family_fermat(Qe(2), Qe(-1));
    Presentation p = build_vlrs(data);
    MonomialOrder ord = p.declaration_order();
    auto rep = certify_normal_words(p, ord, 30);

    REQUIRE(rep.verdict == CertificationReport::Verdict::certified);
    CHECK(rep.fit.families.size() == 11);
    CHECK(rep.fit.residue.empty());
    CHECK(rep.fit.split_degree == 0);

    // Generators are x1 x2 x3 c b a = 0..5; the sporadic family a·c^n·x3·b
    // carries exactly the exponent 1.
    const auto* t_family = find_family(rep.fit, {5}, {3}, {2, 4});
    REQUIRE(t_family != nullptr);
    CHECK(t_family->exponents_seen == std::vector<std::size_t>{1});
    REQUIRE(t_family->exponents.has_value());
    CHECK(t_family->exponents->finite == std::vector<std::size_t>{1});
    CHECK(t_family->exponents->progressions.empty());

    const auto* w_family = find_family(rep.fit, {5}, {3}, {1});
    REQUIRE(w_family != nullptr);
    REQUIRE(w_family->exponents.has_value());
    CHECK(w_family->exponents->progressions ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});

    CHECK(rep.automaton.state_count() == 6);
    CHECK(rep.series.num == std::vector<long long>{1, 5, 4, 0, 1, -1});
    CHECK(rep.series.den == std::vector<long long>{1, -1});

    HilbertData closed = hilbert_closed(data, 30);
    CHECK(rep.series_prefix == closed.values);
    CHECK(count_words_by_degree(rep.automaton, 30) == closed.values);

    CHECK(accepts_word(rep.automaton, {5, 3, 2, 4}));        // a.c.x3.b
    CHECK_FALSE(accepts_word(rep.automaton, {5, 3, 3, 2, 4})); // a.c.c.x3.b is not normal
    CHECK(accepts_word(rep.automaton, {3, 3, 3, 3, 3}));     // c^5
    CHECK_FALSE(accepts_word(rep.automaton, {0, 0}));        // x1.x1
    CHECK_FALSE(accepts_word(rep.automaton, {4, 5}));        // b.a

    CHECK(regenerate_words(rep.fit, ord, 30) == normal_words(p, ord, 30));
}

TEST_CASE("Lech exponents stay undetermined", "[automaton]") {
    VlrsData data = family_lech(7);
    Presentation p = build_vlrs(data);
    auto rep = certify_normal_words(p, p.declaration_order(), 30);

    REQUIRE(rep.verdict == CertificationReport::Verdict::undetermined);
    CHECK(rep.fit.families.size() == 11);
    CHECK(rep.fit.residue.empty());

    const auto* t_family = find_family(rep.fit, {5}, {3}, {2, 4});
    REQUIRE(t_family != nullptr);
    CHECK(t_family->exponents_seen == std::vector<std::size_t>{1, 7});
    CHECK_FALSE(t_family->exponents.has_value());

    bool mentioned = false;
    for (const auto& d : rep.diagnostics)
        if (d.find("{1, 7}") != std::string::npos) mentioned = true;
    CHECK(mentioned);

    // The finite snapshot still reproduces every count within the horizon.
    CHECK(rep.automaton.state_count() == 12);
    CHECK(rep.series_prefix == hilbert_closed(data, 30).values);
}

TEST_CASE("Segment language certifies with a mod-10 progression", "[automaton]") {
    VlrsData data = family_segment(3, FieldElement::from_integer(F11, 2));
    Presentation p = build_vlrs(data);
    auto rep = certify_normal_words(p, p.declaration_order(), 40);

    REQUIRE(rep.verdict == CertificationReport::Verdict::certified);
    CHECK(rep.fit.families.size() == 9);
    CHECK(rep.fit.residue.empty());

    // Generators are x1 x2 c b a = 0..4.
    const auto* t_family = find_family(rep.fit, {4}, {2}, {1, 3});
    REQUIRE(t_family != nullptr);
    CHECK(t_family->exponents_seen == std::vector<std::size_t>{2, 12, 22, 32});
    REQUIRE(t_family->exponents.has_value());
    CHECK(t_family->exponents->finite.empty());
    CHECK(t_family->exponents->progressions ==
          std::vector<std::pair<std::size_t, std::size_t>>{{2, 10}});

    CHECK(rep.series.den == std::vector<long long>{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1});
    // The denominator divides (1-z)(1-z^10).
    QPoly den;
    for (long long v : rep.series.den) den.push_back(Rational(v));
    qp::trim(den);
    auto [quot, rem] = qp::divmod(poly({1, -1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1}), den);
    CHECK(qp::is_zero(rem));

    CHECK(rep.series_prefix == hilbert_closed(data, 40).values);
}

TEST_CASE("Free algebra certifies only as a snapshot", "[automaton]") {
    Presentation p = free_two();
    MonomialOrder ord = p.declaration_order();
    auto words = normal_words(p, ord, 8);
    FamilyFit fit = fit_families(words, ord, 3);
    CHECK(fit.success);
    CHECK(fit.residue.empty());
    CHECK(fit.families.size() > 50); // shredded into many small families
    CHECK(regenerate_words(fit, ord, 8) == words);

    auto rep = certify_normal_words(p, ord, 8);
    CHECK(rep.verdict == CertificationReport::Verdict::undetermined);
    std::vector<long long> powers;
    for (int d = 0; d <= 8; ++d) powers.push_back(1LL << d);
    CHECK(rep.series_prefix == powers);
}

TEST_CASE("Automaton construction is canonical", "[automaton]") {
    auto Qe = [](long long v) { return FieldElement::from_integer(Q, v); };
    Presentation p = build_vlrs(family_fermat(Qe(2), Qe(-1)));
    MonomialOrder ord = p.declaration_order();
    auto rep1 = certify_normal_words(p, ord, 30);
    auto rep2 = certify_normal_words(p, ord, 30);
    CHECK(automata_equal(rep1.automaton, rep2.automaton));

    const WeightedAutomaton& a = rep1.automaton;
    const std::size_t n = a.state_count();
    // Every state is reachable from the initial state...
    std::vector<bool> reach(n, false);
    reach[a.initial] = true;
    std::vector<std::size_t> stack{a.initial};
    while (!stack.empty()) {
        std::size_t s = stack.back();
        stack.pop_back();
        for (auto [l, t] : a.transitions[s])
            if (!reach[t]) {
                reach[t] = true;
                stack.push_back(t);
            }
    }
    // ...and every state reaches an accepting state.
    for (std::size_t s = 0; s < n; ++s) {
        CHECK(reach[s]);
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> q{s};
        seen[s] = true;
        bool hits = false;
        while (!q.empty() && !hits) {
            std::size_t u = q.back();
            q.pop_back();
            if (a.accepting[u]) hits = true;
            for (auto [l, t] : a.transitions[u])
                if (!seen[t]) {
                    seen[t] = true;
                    q.push_back(t);
                }
        }
        CHECK(hits);
    }
    // Letters are listed in canonical (weight, word) order.
    for (std::size_t i = 1; i < a.alphabet.size(); ++i) CHECK(a.alphabet[i - 1] < a.alphabet[i]);
}
