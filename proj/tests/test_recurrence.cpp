#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "autalg/recurrence.hpp"

using namespace autalg;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();

FieldElement qi(long long v) { return FieldElement::from_integer(Q, v); }

LinearRecurrence rec_q(const std::vector<long long>& coeffs, const std::vector<long long>& init) {
    LinearRecurrence r;
    r.field = Q;
    for (long long c : coeffs) r.coeffs.push_back(qi(c));
    for (long long a : init) r.initial.push_back(qi(a));
    return r;
}

const LinearRecurrence fibonacci = rec_q({1, 1}, {1, 1});
// a_n = 2^n + (-1)^n - 1: characteristic roots {2, -1, 1}.
const LinearRecurrence fermat_seq = rec_q({2, 1, -2}, {1, 0, 4});

// The Lech sequence a_n = (x+1)^n - x^n - 1 over F_p(x): roots x+1, x, 1
// give elementary-symmetric coefficients.
LinearRecurrence lech_recurrence(std::uint64_t p) {
    FieldDescriptor fd = FieldDescriptor::rational_functions(p);
    FieldElement x = parse_element("x", fd);
    FieldElement one = FieldElement::one(fd);
    LinearRecurrence r;
    r.field = fd;
    FieldElement r1 = x + one, r2 = x, r3 = one;
    r.coeffs = {r1 + r2 + r3, -(r1 * r2 + r1 * r3 + r2 * r3), r1 * r2 * r3};
    r.initial = {-one, FieldElement::zero(fd), x + x};
    return r;
}

std::vector<bool> indicator(const std::set<std::size_t>& s, std::size_t len) {
    std::vector<bool> bits(len, false);
    for (std::size_t n : s)
        if (n < len) bits[n] = true;
    return bits;
}

} // namespace

TEST_CASE("Term generation", "[recurrence]") {
    auto fib = terms(fibonacci, 6);
    std::vector<long long> expect = {1, 1, 2, 3, 5, 8, 13};
    REQUIRE(fib.size() == 7);
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(fib[i] == qi(expect[i]));

    auto fer = terms(fermat_seq, 20);
    std::vector<long long> head = {1, 0, 4, 6, 16, 30};
    for (std::size_t i = 0; i < head.size(); ++i) CHECK(fer[i] == qi(head[i]));
    for (std::size_t n = 0; n <= 20; ++n) {
        // Closed-form cross-check against 2^n + (-1)^n - 1.
        FieldElement closed = pow(qi(2), n) + pow(qi(-1), n) - qi(1);
        CHECK(fer[n] == closed);
    }

    LinearRecurrence zero = rec_q({1, 1}, {0, 0});
    for (const auto& v : terms(zero, 10)) CHECK(v.is_zero());
}

TEST_CASE("Companion matrices", "[recurrence]") {
    Matrix fib = companion_matrix(fibonacci);
    CHECK(fib == Matrix::from_rows(Q, {{qi(0), qi(1)}, {qi(1), qi(1)}}));

    Matrix scalar = companion_matrix(rec_q({7}, {1}));
    CHECK(scalar.rows == 1);
    CHECK(scalar.at(0, 0) == qi(7));

    // v_{n+1} = M v_n with v_n = (a_n, a_{n+1}, a_{n+2}) for the order-3 example.
    Matrix m = companion_matrix(fermat_seq);
    auto seq = terms(fermat_seq, 13);
    std::vector<FieldElement> v = {seq[0], seq[1], seq[2]};
    for (std::size_t n = 0; n <= 10; ++n) {
        CHECK(v == std::vector<FieldElement>{seq[n], seq[n + 1], seq[n + 2]});
        v = m.apply_vector(v);
    }
    CHECK(fermat_seq.invertible_companion());
    CHECK_FALSE(rec_q({1, 0}, {1, 1}).invertible_companion());
}

TEST_CASE("Zero sets", "[recurrence]") {
    CHECK(zero_set(fibonacci, 20).empty());
    CHECK(zero_set(fermat_seq, 40) == std::set<std::size_t>{1});

    LinearRecurrence lech = lech_recurrence(7);
    auto zeros = zero_set(lech, 60);
    CHECK(zeros == std::set<std::size_t>{1, 7, 49});
    // Cross-check against the freshman's-dream identity (x+1)^n == x^n + 1.
    FieldDescriptor fd = lech.field;
    FieldElement x = parse_element("x", fd), one = FieldElement::one(fd);
    auto vals = terms(lech, 60);
    for (std::size_t n = 0; n <= 60; ++n) {
        CHECK(vals[n] == pow(x + one, n) - pow(x, n) - one);
        CHECK(vals[n].is_zero() == (pow(x + one, n) == pow(x, n) + one));
    }
}

TEST_CASE("Orbit sequences and their fits", "[recurrence]") {
    Matrix m = Matrix::from_rows(Q, {{qi(0), qi(1)}, {qi(1), qi(1)}});
    OrbitSequence fib = from_orbit({qi(1), qi(0)}, m, {qi(0), qi(1)}, 12);
    std::vector<long long> expect = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(fib.values[i] == qi(expect[i]));
    CHECK(fib.recurrence.order() <= 2);
    auto regen = terms(fib.recurrence, 12);
    CHECK(regen == fib.values);

    OrbitSequence constant = from_orbit({qi(3), qi(4)}, Matrix::identity(Q, 2), {qi(1), qi(2)}, 8);
    for (const auto& v : constant.values) CHECK(v == qi(11));
    CHECK(constant.recurrence.order() == 1);

    // Fermat data: u spans the annihilator of R, v spans L, so a_n = 0
    // exactly when sigma^n L falls inside R.
    Matrix sigma(Q, 3, 3);
    sigma.at(0, 0) = qi(2);
    sigma.at(1, 1) = qi(-1);
    sigma.at(2, 2) = qi(1);
    OrbitSequence orbit = from_orbit({qi(1), qi(1), qi(-1)}, sigma, {qi(1), qi(1), qi(1)}, 30);
    VlrsData d;
    d.field = Q;
    d.m = 3;
    d.L = Subspace::span_rows(Q, {{qi(1), qi(1), qi(1)}}, 3);
    d.R = Subspace::span_rows(Q, {{qi(1), qi(-1), qi(0)}, {qi(1), qi(0), qi(1)}}, 3);
    d.sigma = sigma;
    IntersectionProfile prof = orbit_profile(d, 30);
    for (std::size_t n = 0; n <= 30; ++n) CHECK(orbit.values[n].is_zero() == (prof.c(n) == 1));
}

TEST_CASE("Minimal recurrence fitting", "[recurrence]") {
    auto fib = minimal_recurrence(terms(fibonacci, 7));
    REQUIRE(fib.has_value());
    CHECK(fib->order() == 2);
    CHECK(fib->coeffs == std::vector<FieldElement>{qi(1), qi(1)});

    auto constant = minimal_recurrence({qi(5), qi(5), qi(5), qi(5)});
    REQUIRE(constant.has_value());
    CHECK(constant->order() == 1);
    CHECK(constant->coeffs == std::vector<FieldElement>{qi(1)});

    auto fer = minimal_recurrence(terms(fermat_seq, 11));
    REQUIRE(fer.has_value());
    CHECK(fer->order() == 3);
    CHECK(fer->coeffs == std::vector<FieldElement>{qi(2), qi(1), qi(-2)});

    // A single spike at the end of a short prefix needs order > len/2.
    CHECK_FALSE(minimal_recurrence({qi(0), qi(0), qi(0), qi(0), qi(0), qi(1)}).has_value());

    // All-zero prefix fits the order-1 zero sequence.
    auto zero = minimal_recurrence({qi(0), qi(0), qi(0), qi(0)});
    REQUIRE(zero.has_value());
    CHECK(zero->order() == 1);
    CHECK(terms(*zero, 6) == std::vector<FieldElement>(7, qi(0)));
}

TEST_CASE("SML detection on boolean prefixes", "[recurrence]") {
    auto empty = sml_detect(std::vector<bool>(60, false), 3);
    REQUIRE(empty.has_value());
    CHECK(empty->finite.empty());
    CHECK(empty->progressions.empty());

    auto all = sml_detect(std::vector<bool>(60, true), 3);
    REQUIRE(all.has_value());
    CHECK(all->finite.empty());
    CHECK(all->progressions == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});

    // {1} ∪ {n ≡ 2 mod 10}: preperiod 2, period 10.
    std::set<std::size_t> seg = {1};
    for (std::size_t n = 2; n < 60; n += 10) seg.insert(n);
    auto detected = sml_detect(indicator(seg, 60), 3);
    REQUIRE(detected.has_value());
    CHECK(detected->finite == std::vector<std::size_t>{1});
    CHECK(detected->progressions == std::vector<std::pair<std::size_t, std::size_t>>{{2, 10}});
    for (std::size_t n = 0; n < 60; ++n) CHECK(detected->contains(n) == seg.count(n));

    // Powers of 7 are not eventually periodic within the window: no valid
    // (preperiod, period) pair survives the guard, so detection declines.
    CHECK_FALSE(sml_detect(indicator({1, 7, 49}, 60), 3).has_value());
    CHECK_FALSE(sml_detect(indicator({1, 7}, 27), 3).has_value());

    // An isolated early spike is absorbed into the finite part.
    auto spike = sml_detect(indicator({1}, 29), 3);
    REQUIRE(spike.has_value());
    CHECK(spike->finite == std::vector<std::size_t>{1});
    CHECK(spike->progressions.empty());
}

TEST_CASE("Recurrences with prescribed zero sets", "[recurrence]") {
    // Singleton {3} over Q: a_n = 2^n - 8.
    LinearRecurrence s3 = recurrence_with_zero_set({3}, {}, Q);
    CHECK(s3.order() <= 2);
    CHECK(zero_set(s3, 40) == std::set<std::size_t>{3});

    // Progression (0,5) over F_11 via an order-5 root of unity.
    FieldDescriptor f11 = FieldDescriptor::prime_field(11);
    LinearRecurrence p5 = recurrence_with_zero_set({}, {{0, 5}}, f11);
    std::set<std::size_t> mult5;
    for (std::size_t n = 0; n <= 60; n += 5) mult5.insert(n);
    CHECK(zero_set(p5, 60) == mult5);

    // Mixed request over F_11(x): {3} ∪ {0,5,10,...}.
    FieldDescriptor f11x = FieldDescriptor::rational_functions(11);
    LinearRecurrence mixed = recurrence_with_zero_set({3}, {{0, 5}}, f11x);
    CHECK(mixed.order() <= 4);
    std::set<std::size_t> want = mult5;
    want.insert(3);
    CHECK(zero_set(mixed, 60) == want);

    // One-sided start: (7,5) must not include 2.
    LinearRecurrence onesided = recurrence_with_zero_set({}, {{7, 5}}, f11);
    std::set<std::size_t> from7;
    for (std::size_t n = 7; n <= 60; n += 5) from7.insert(n);
    CHECK(zero_set(onesided, 60) == from7);

    // Step-1 progression: cofinite zero set {4,5,6,...}.
    LinearRecurrence tail = recurrence_with_zero_set({}, {{4, 1}}, Q);
    std::set<std::size_t> cofinite;
    for (std::size_t n = 4; n <= 40; ++n) cofinite.insert(n);
    CHECK(zero_set(tail, 40) == cofinite);

    // Unsatisfiable requests are rejected.
    CHECK_THROWS_AS(recurrence_with_zero_set({2}, {}, f11), field_error);          // no infinite order
    CHECK_THROWS_AS(recurrence_with_zero_set({}, {{0, 3}}, Q), field_error);       // no order-3 unit in Q
    CHECK_THROWS_AS(recurrence_with_zero_set({}, {{0, 7}}, f11), field_error);     // 7 does not divide 10
}

TEST_CASE("Fitting round-trips random recurrences", "[recurrence][property]") {
    const std::uint64_t seed = 13579;
    INFO("seed " << seed);
    std::mt19937 rng(seed);
    FieldDescriptor f101 = FieldDescriptor::prime_field(101);
    std::uniform_int_distribution<std::uint64_t> res(0, 100);
    std::uniform_int_distribution<std::size_t> ord(1, 4);

    for (int trial = 0; trial < 100; ++trial) {
        FieldDescriptor fd = (trial % 2 == 0) ? Q : f101;
        LinearRecurrence rec;
        rec.field = fd;
        std::size_t d = ord(rng);
        for (std::size_t i = 0; i < d; ++i) {
            long long c = static_cast<long long>(res(rng)) - 50;
            rec.coeffs.push_back(FieldElement::from_integer(fd, c));
            rec.initial.push_back(FieldElement::from_integer(fd, static_cast<long long>(res(rng)) - 50));
        }
        std::size_t N = 4 * d;
        auto seq = terms(rec, N);
        auto fit = minimal_recurrence(seq);
        REQUIRE(fit.has_value());
        REQUIRE(fit->order() <= d);
        REQUIRE(terms(*fit, N) == seq);
    }
}

TEST_CASE("Orbit fits extend beyond the fitting window", "[recurrence][property]") {
    const std::uint64_t seed = 24680;
    INFO("seed " << seed);
    std::mt19937 rng(seed);
    FieldDescriptor fd = FieldDescriptor::prime_field(101);
    std::uniform_int_distribution<std::uint64_t> res(0, 100);
    std::uniform_int_distribution<std::size_t> dims(1, 4);

    for (int trial = 0; trial < 50; ++trial) {
        std::size_t k = dims(rng);
        Matrix m(fd, k, k);
        for (auto& e : m.entries) e = FieldElement::from_residue(fd, res(rng));
        std::vector<FieldElement> u, v;
        for (std::size_t i = 0; i < k; ++i) {
            u.push_back(FieldElement::from_residue(fd, res(rng)));
            v.push_back(FieldElement::from_residue(fd, res(rng)));
        }
        std::size_t N = 2 * k + 2;
        OrbitSequence orbit = from_orbit(u, m, v, N);
        REQUIRE(orbit.recurrence.order() <= k);
        // The fit keeps matching the true orbit for 10 extra steps.
        OrbitSequence longer = from_orbit(u, m, v, N + 10);
        REQUIRE(terms(orbit.recurrence, N + 10) == longer.values);
    }
}

TEST_CASE("SML round-trip on random structured sets", "[recurrence][property]") {
    const std::uint64_t seed = 112233;
    INFO("seed " << seed);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> small(0, 6), step(1, 8), len(40, 80);

    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = len(rng);
        std::set<std::size_t> truth;
        std::vector<std::size_t> singles;
        for (std::size_t i = small(rng) % 3; i > 0; --i) truth.insert(small(rng));
        std::size_t nprog = small(rng) % 3;
        for (std::size_t i = 0; i < nprog; ++i) {
            std::size_t s = small(rng), d = step(rng);
            for (std::size_t k = s; k < n; k += d) truth.insert(k);
        }
        auto bits = indicator(truth, n);
        auto det = sml_detect(bits, 3);
        if (det) {
            for (std::size_t k = 0; k < n; ++k) REQUIRE(det->contains(k) == bits[k]);
        }
    }
}

TEST_CASE("Prescribed zero sets round-trip", "[recurrence][property]") {
    const std::uint64_t seed = 445566;
    INFO("seed " << seed);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> start(0, 8);
    const std::vector<std::size_t> f11_steps = {1, 2, 5, 10};

    for (int trial = 0; trial < 20; ++trial) {
        for (int which = 0; which < 3; ++which) {
            FieldDescriptor fd = which == 0   ? Q
                                 : which == 1 ? FieldDescriptor::prime_field(11)
                                              : FieldDescriptor::rational_functions(11);
            std::vector<std::size_t> singles;
            if (fd.kind != FieldKind::PrimeField && trial % 2 == 0) singles.push_back(start(rng));
            std::vector<std::pair<std::size_t, std::size_t>> progs;
            if (trial % 3 != 0) {
                std::size_t d = fd.kind == FieldKind::Rationals ? (trial % 2 ? 1 : 2)
                                                                : f11_steps[trial % f11_steps.size()];
                progs.push_back({start(rng), d});
            }
            if (singles.empty() && progs.empty()) singles.push_back(fd.kind == FieldKind::PrimeField ? 0 : start(rng));
            if (fd.kind == FieldKind::PrimeField && progs.empty()) continue; // nothing realizable
            if (fd.kind == FieldKind::PrimeField) singles.clear();

            LinearRecurrence rec = recurrence_with_zero_set(singles, progs, fd);
            std::set<std::size_t> want;
            for (std::size_t s : singles) want.insert(s);
            for (auto [s, d] : progs)
                for (std::size_t k = s; k <= 70; k += d) want.insert(k);
            REQUIRE(zero_set(rec, 70) == want);
        }
    }
}
