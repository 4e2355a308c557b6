#pragma once

// Arithmetic in prime fields F_p (word-sized p) and in the polynomial ring
// F_p[x] (dense coefficient vectors), plus the fraction field F_p(x).
// Everything here is exact; no floating point anywhere.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace autalg {

/// Raised on any domain violation in field / polynomial arithmetic
/// (division by zero, mismatched moduli, malformed literals, ...).
class field_error : public std::runtime_error {
public:
    explicit field_error(const std::string& what) : std::runtime_error(what) {}
};

namespace fp {

// Residue arithmetic mod p.  p is trusted to be prime and < 2^62 so that
// sums never wrap and products fit in unsigned __int128.

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) {
    return a == 0 ? 0 : p - a;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base, p);
        base = mul(base, base, p);
        exp >>= 1;
    }
    return result;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw field_error("division by zero in F_" + std::to_string(p));
    // Extended Euclid on (a, p); p prime guarantees gcd 1.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t; std::swap(t, new_t);
        r -= q * new_r; std::swap(r, new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

/// Reduce a signed integer into [0, p).
inline std::uint64_t from_int(long long v, std::uint64_t p) {
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return static_cast<std::uint64_t>(m);
}

} // namespace fp

/// Deterministic Miller-Rabin for 64-bit inputs (the usual 12-witness set
/// is exact for all n < 2^64).
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = fp::pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = fp::mul(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// Dense univariate polynomial over F_p.  Coefficients are stored in
/// ascending degree with no trailing zeros; the zero polynomial has an
/// empty coefficient vector and degree -1.
struct FpPoly {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> coeffs; // coeffs[i] multiplies x^i

    FpPoly() = default;
    explicit FpPoly(std::uint64_t prime) : p(prime) {}
    FpPoly(std::uint64_t prime, std::vector<std::uint64_t> c) : p(prime), coeffs(std::move(c)) {
        for (auto& v : coeffs) v %= p;
        trim();
    }

    static FpPoly constant(std::uint64_t prime, std::uint64_t value) {
        return FpPoly(prime, {value % prime});
    }
    static FpPoly x(std::uint64_t prime) { return FpPoly(prime, {0, 1}); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::uint64_t leading() const { return coeffs.empty() ? 0 : coeffs.back(); }
    std::uint64_t coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }

    bool operator==(const FpPoly& o) const { return p == o.p && coeffs == o.coeffs; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }
};

inline void check_same_modulus(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw field_error("polynomial modulus mismatch");
}

inline FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    FpPoly r(a.p);
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] = fp::add(a.coeff(i), b.coeff(i), a.p);
    r.trim();
    return r;
}

inline FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    FpPoly r(a.p);
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] = fp::sub(a.coeff(i), b.coeff(i), a.p);
    r.trim();
    return r;
}

inline FpPoly operator-(const FpPoly& a) {
    FpPoly r(a.p);
    r.coeffs.resize(a.coeffs.size());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = fp::neg(a.coeffs[i], a.p);
    return r;
}

inline FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p);
    FpPoly r(a.p);
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = fp::add(r.coeffs[i + j], fp::mul(a.coeffs[i], b.coeffs[j], a.p), a.p);
    }
    r.trim();
    return r;
}

inline FpPoly scale(const FpPoly& a, std::uint64_t k) {
    FpPoly r(a.p);
    k %= a.p;
    r.coeffs.resize(a.coeffs.size());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = fp::mul(a.coeffs[i], k, a.p);
    r.trim();
    return r;
}

/// Quotient and remainder of polynomial division.
inline std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    if (b.is_zero()) throw field_error("polynomial division by zero");
    FpPoly q(a.p), r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.coeffs.assign(a.coeffs.size() - b.coeffs.size() + 1, 0);
    std::uint64_t lead_inv = fp::inv(b.leading(), a.p);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        std::uint64_t c = fp::mul(r.leading(), lead_inv, a.p);
        q.coeffs[shift] = c;
        for (std::size_t i = 0; i < b.coeffs.size(); ++i)
            r.coeffs[i + shift] = fp::sub(r.coeffs[i + shift], fp::mul(c, b.coeffs[i], a.p), a.p);
        r.trim();
    }
    q.trim();
    return {q, r};
}

inline FpPoly make_monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    return scale(a, fp::inv(a.leading(), a.p));
}

/// Monic gcd (gcd(0,0) = 0).
inline FpPoly gcd(FpPoly a, FpPoly b) {
    check_same_modulus(a, b);
    while (!b.is_zero()) {
        FpPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

inline FpPoly pow(FpPoly base, std::uint64_t exp) {
    FpPoly result = FpPoly::constant(base.p, 1);
    while (exp > 0) {
        if (exp & 1) result = result * base;
        base = base * base;
        exp >>= 1;
    }
    return result;
}

/// Canonical display form: descending powers, e.g. "x^2+3x+1", "0", "2x".
inline std::string to_string(const FpPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int d = a.degree(); d >= 0; --d) {
        std::uint64_t c = a.coeff(static_cast<std::size_t>(d));
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c);
            out += "x";
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

/// Element of F_p(x): a reduced fraction num/den with den monic and nonzero.
/// Zero is canonically 0/1.
struct FpRatFun {
    FpPoly num, den;

    FpRatFun() = default;
    FpRatFun(FpPoly n, FpPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    static FpRatFun from_poly(FpPoly n) {
        std::uint64_t p = n.p;
        return FpRatFun(std::move(n), FpPoly::constant(p, 1));
    }

    void normalize() {
        check_same_modulus(num, den);
        if (den.is_zero()) throw field_error("rational function with zero denominator");
        if (num.is_zero()) {
            den = FpPoly::constant(num.p, 1);
            return;
        }
        FpPoly g = gcd(num, den);
        if (g.degree() > 0) {
            num = divmod(num, g).first;
            den = divmod(den, g).first;
        }
        std::uint64_t lead_inv = fp::inv(den.leading(), den.p);
        num = scale(num, lead_inv);
        den = scale(den, lead_inv);
    }

    bool is_zero() const { return num.is_zero(); }
    std::uint64_t modulus() const { return num.p; }

    bool operator==(const FpRatFun& o) const { return num == o.num && den == o.den; }
    bool operator!=(const FpRatFun& o) const { return !(*this == o); }
};

inline FpRatFun operator+(const FpRatFun& a, const FpRatFun& b) {
    return FpRatFun(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline FpRatFun operator-(const FpRatFun& a, const FpRatFun& b) {
    return FpRatFun(a.num * b.den - b.num * a.den, a.den * b.den);
}
inline FpRatFun operator-(const FpRatFun& a) { return FpRatFun(-a.num, a.den); }
inline FpRatFun operator*(const FpRatFun& a, const FpRatFun& b) {
    return FpRatFun(a.num * b.num, a.den * b.den);
}
inline FpRatFun operator/(const FpRatFun& a, const FpRatFun& b) {
    if (b.is_zero()) throw field_error("division by zero in rational function field");
    return FpRatFun(a.num * b.den, a.den * b.num);
}

inline std::string to_string(const FpRatFun& a) {
    if (a.den.degree() == 0) return to_string(a.num); // den == 1 after normalization
    return "(" + to_string(a.num) + ")/(" + to_string(a.den) + ")";
}

} // namespace autalg
