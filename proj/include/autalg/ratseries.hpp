#pragma once

// Univariate polynomial and rational-function arithmetic over Q, the
// integer-coefficient RationalSeries normal form (denominator constant term
// 1, gcd 1), series expansion, and rational fitting of counting sequences.

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "autalg/ncpoly.hpp"
#include "autalg/recurrence.hpp"

namespace autalg {

/// Dense polynomial over Q, ascending coefficients, no trailing zeros.
using QPoly = std::vector<Rational>;

namespace qp {

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool is_zero(const QPoly& p) { return p.empty(); }

inline int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly constant(long long v) {
    QPoly p;
    if (v != 0) p.push_back(Rational(v));
    return p;
}

inline QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline QPoly scale(QPoly p, const Rational& k) {
    if (k == 0) return {};
    for (auto& c : p) c *= k;
    return p;
}

/// Quotient and remainder with deg rem < deg divisor.
inline std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
    if (den.empty()) throw field_error("polynomial division by zero");
    QPoly quot;
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rational(0));
    while (num.size() >= den.size()) {
        Rational factor = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        quot[shift] = factor;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= factor * den[i];
        trim(num); // the leading term cancels exactly, so this shrinks num
    }
    trim(quot);
    return {std::move(quot), std::move(num)};
}

inline QPoly monic(QPoly p) {
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.empty()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

inline QPoly div_exact(const QPoly& a, const QPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.empty()) throw field_error("inexact polynomial division");
    return q;
}

inline std::string str(const QPoly& p, const std::string& var = "z") {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        Rational c = p[i];
        bool neg = c < 0;
        if (neg) c = -c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string cs = c.str();
        if (i == 0)
            out += cs;
        else {
            if (cs != "1") out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace qp

/// Rational function over Q, kept reduced with monic denominator.
struct QRatFun {
    QPoly num, den;

    QRatFun() : den{Rational(1)} {}
    explicit QRatFun(QPoly n) : num(std::move(n)), den{Rational(1)} {}
    QRatFun(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    void normalize() {
        if (qp::is_zero(den)) throw field_error("rational function with zero denominator");
        if (qp::is_zero(num)) {
            den = {Rational(1)};
            return;
        }
        QPoly g = qp::gcd(num, den);
        if (qp::degree(g) > 0) {
            num = qp::div_exact(num, g);
            den = qp::div_exact(den, g);
        }
        Rational lead = den.back();
        if (!(lead == 1)) {
            for (auto& c : num) c /= lead;
            for (auto& c : den) c /= lead;
        }
    }

    bool is_zero() const { return qp::is_zero(num); }

    QRatFun operator+(const QRatFun& o) const {
        return QRatFun(qp::add(qp::mul(num, o.den), qp::mul(o.num, den)), qp::mul(den, o.den));
    }
    QRatFun operator-(const QRatFun& o) const {
        return QRatFun(qp::sub(qp::mul(num, o.den), qp::mul(o.num, den)), qp::mul(den, o.den));
    }
    QRatFun operator*(const QRatFun& o) const {
        return QRatFun(qp::mul(num, o.num), qp::mul(den, o.den));
    }
    QRatFun operator/(const QRatFun& o) const {
        if (o.is_zero()) throw field_error("rational function division by zero");
        return QRatFun(qp::mul(num, o.den), qp::mul(den, o.num));
    }
    bool operator==(const QRatFun& o) const { return num == o.num && den == o.den; }
};

/// num(z)/den(z) with integer coefficients, den[0] = 1, gcd(num, den) = 1.
/// The Taylor coefficients are the represented counting sequence.
struct RationalSeries {
    std::vector<long long> num;
    std::vector<long long> den; // den[0] == 1 always

    bool operator==(const RationalSeries& o) const { return num == o.num && den == o.den; }
};

namespace detail {

inline long long rational_to_integer(const Rational& v) {
    Rational rounded = v;
    auto n = boost::multiprecision::numerator(rounded);
    auto d = boost::multiprecision::denominator(rounded);
    if (d != 1) throw field_error("series normalization produced a non-integer coefficient");
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        throw field_error("series coefficient exceeds 64-bit range");
    return n.convert_to<long long>();
}

} // namespace detail

/// Reduce num/den over Q, force den(0) = 1, and convert to integer
/// coefficients.  A rational function whose Taylor series is integral always
/// normalizes this way.
inline RationalSeries make_series(QPoly num, QPoly den) {
    if (qp::is_zero(den)) throw field_error("series denominator is zero");
    if (den.front() == 0) throw field_error("series denominator vanishes at 0");
    if (!qp::is_zero(num)) {
        QPoly g = qp::gcd(num, den);
        if (qp::degree(g) > 0) {
            num = qp::div_exact(num, g);
            den = qp::div_exact(den, g);
        }
    } else {
        den = {Rational(1)};
    }
    Rational c0 = den.front();
    RationalSeries s;
    for (const auto& c : num) s.num.push_back(detail::rational_to_integer(c / c0));
    for (const auto& c : den) s.den.push_back(detail::rational_to_integer(c / c0));
    if (s.den.empty()) s.den.push_back(1);
    return s;
}

/// Taylor coefficients 0..n of num/den via the linear recurrence den imposes.
inline std::vector<long long> coefficients(const RationalSeries& s, std::size_t n) {
    std::vector<long long> a(n + 1, 0);
    for (std::size_t k = 0; k <= n; ++k) {
        long long acc = k < s.num.size() ? s.num[k] : 0;
        for (std::size_t j = 1; j < s.den.size() && j <= k; ++j) acc -= s.den[j] * a[k - j];
        a[k] = acc;
    }
    return a;
}

/// Fit a rational function of denominator degree ≤ max_order that regenerates
/// every given Hilbert value, via the minimal linear recurrence of the
/// counting sequence over Q.  Returns none when no such recurrence exists
/// within the data (or its order exceeds max_order).
inline std::optional<RationalSeries> rational_guess(const HilbertData& h, std::size_t max_order) {
    if (h.values.size() < 2 * max_order)
        throw field_error("rational_guess needs at least 2*max_order values");
    const FieldDescriptor Q = FieldDescriptor::rationals();
    std::vector<FieldElement> seq;
    seq.reserve(h.values.size());
    for (long long v : h.values) seq.push_back(FieldElement::from_integer(Q, v));
    std::optional<LinearRecurrence> rec = minimal_recurrence(seq);
    if (!rec || rec->order() > max_order) return std::nullopt;

    const std::size_t d = rec->order();
    QPoly den{Rational(1)};
    den.resize(d + 1, Rational(0));
    for (std::size_t j = 0; j < d; ++j) den[j + 1] = -rec->coeffs[j].rational();
    qp::trim(den);
    // num = den * h truncated below the recurrence threshold d.
    QPoly num(d, Rational(0));
    for (std::size_t k = 0; k < d && k < h.values.size(); ++k) {
        Rational acc(h.values[k]);
        for (std::size_t j = 1; j < den.size() && j <= k; ++j) acc += den[j] * Rational(h.values[k - j]);
        num[k] = acc;
    }
    qp::trim(num);

    RationalSeries s = make_series(std::move(num), std::move(den));
    std::vector<long long> back = coefficients(s, h.values.size() - 1);
    for (std::size_t k = 0; k < h.values.size(); ++k)
        if (back[k] != h.values[k]) return std::nullopt; // fit does not extend over the data
    return s;
}

} // namespace autalg
