#pragma once

// An exact scalar that carries its field along with it.  Three coefficient
// fields are supported:
//
//   Q       arbitrary-precision rationals (GMP-backed),
//   F_p     prime fields with word-sized p,
//   F_p(x)  univariate rational functions over F_p.
//
// FieldElement is a tagged union over the three representations; every
// binary operation insists that both operands carry the same descriptor.

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "autalg/fp.hpp"

namespace autalg {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class FieldKind { Rationals, PrimeField, RationalFunctions };

/// Identifies a coefficient field.  Canonical text forms: "Q", "F7", "F7(x)".
struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0; // prime characteristic; 0 for Q

    static FieldDescriptor rationals() { return {FieldKind::Rationals, 0}; }

    static FieldDescriptor prime_field(std::uint64_t p) {
        validate_prime(p);
        return {FieldKind::PrimeField, p};
    }

    static FieldDescriptor rational_functions(std::uint64_t p) {
        validate_prime(p);
        return {FieldKind::RationalFunctions, p};
    }

    static void validate_prime(std::uint64_t p) {
        if (p < 2 || p >= (1ull << 62) || !is_prime_u64(p))
            throw field_error("field characteristic must be a prime < 2^62, got " + std::to_string(p));
    }

    static FieldDescriptor parse(std::string_view text) {
        if (text == "Q") return rationals();
        if (text.size() >= 2 && text[0] == 'F') {
            std::string_view rest = text.substr(1);
            bool funs = false;
            if (rest.size() > 3 && rest.substr(rest.size() - 3) == "(x)") {
                funs = true;
                rest = rest.substr(0, rest.size() - 3);
            }
            std::uint64_t p = 0;
            if (!rest.empty()) {
                for (char ch : rest) {
                    if (!std::isdigit(static_cast<unsigned char>(ch))) { p = 0; break; }
                    p = p * 10 + static_cast<std::uint64_t>(ch - '0');
                }
            }
            if (p != 0) return funs ? rational_functions(p) : prime_field(p);
        }
        throw field_error("unrecognized field descriptor '" + std::string(text) + "'");
    }

    std::string str() const {
        switch (kind) {
            case FieldKind::Rationals: return "Q";
            case FieldKind::PrimeField: return "F" + std::to_string(p);
            case FieldKind::RationalFunctions: return "F" + std::to_string(p) + "(x)";
        }
        return "?";
    }

    bool operator==(const FieldDescriptor&) const = default;
};

class FieldElement {
public:
    FieldElement() : desc_(FieldDescriptor::rationals()), value_(Rational(0)) {}

    static FieldElement zero(const FieldDescriptor& fd) { return from_integer(fd, 0); }
    static FieldElement one(const FieldDescriptor& fd) { return from_integer(fd, 1); }

    static FieldElement from_integer(const FieldDescriptor& fd, long long v) {
        FieldElement e;
        e.desc_ = fd;
        switch (fd.kind) {
            case FieldKind::Rationals: e.value_ = Rational(v); break;
            case FieldKind::PrimeField: e.value_ = fp::from_int(v, fd.p); break;
            case FieldKind::RationalFunctions:
                e.value_ = FpRatFun::from_poly(FpPoly::constant(fd.p, fp::from_int(v, fd.p)));
                break;
        }
        return e;
    }

    static FieldElement from_rational(Rational v) {
        FieldElement e;
        e.desc_ = FieldDescriptor::rationals();
        e.value_ = std::move(v);
        return e;
    }

    static FieldElement from_residue(const FieldDescriptor& fd, std::uint64_t r) {
        if (fd.kind != FieldKind::PrimeField) throw field_error("residue value requires a prime field");
        FieldElement e;
        e.desc_ = fd;
        e.value_ = r % fd.p;
        return e;
    }

    static FieldElement from_ratfun(FpRatFun f) {
        FieldElement e;
        e.desc_ = FieldDescriptor::rational_functions(f.modulus());
        e.value_ = std::move(f);
        return e;
    }

    static FieldElement from_poly(FpPoly f) { return from_ratfun(FpRatFun::from_poly(std::move(f))); }

    const FieldDescriptor& descriptor() const { return desc_; }

    bool is_zero() const {
        switch (desc_.kind) {
            case FieldKind::Rationals: return std::get<Rational>(value_) == 0;
            case FieldKind::PrimeField: return std::get<std::uint64_t>(value_) == 0;
            case FieldKind::RationalFunctions: return std::get<FpRatFun>(value_).is_zero();
        }
        return false;
    }
    bool is_one() const { return *this == one(desc_); }

    const Rational& rational() const { return std::get<Rational>(value_); }
    std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
    const FpRatFun& ratfun() const { return std::get<FpRatFun>(value_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        FieldElement r = a;
        switch (a.desc_.kind) {
            case FieldKind::Rationals: r.value_ = a.rational() + b.rational(); break;
            case FieldKind::PrimeField: r.value_ = fp::add(a.residue(), b.residue(), a.desc_.p); break;
            case FieldKind::RationalFunctions: r.value_ = a.ratfun() + b.ratfun(); break;
        }
        return r;
    }

    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        FieldElement r = a;
        switch (a.desc_.kind) {
            case FieldKind::Rationals: r.value_ = a.rational() - b.rational(); break;
            case FieldKind::PrimeField: r.value_ = fp::sub(a.residue(), b.residue(), a.desc_.p); break;
            case FieldKind::RationalFunctions: r.value_ = a.ratfun() - b.ratfun(); break;
        }
        return r;
    }

    friend FieldElement operator-(const FieldElement& a) {
        FieldElement r = a;
        switch (a.desc_.kind) {
            case FieldKind::Rationals: r.value_ = Rational(-a.rational()); break;
            case FieldKind::PrimeField: r.value_ = fp::neg(a.residue(), a.desc_.p); break;
            case FieldKind::RationalFunctions: r.value_ = -a.ratfun(); break;
        }
        return r;
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        FieldElement r = a;
        switch (a.desc_.kind) {
            case FieldKind::Rationals: r.value_ = a.rational() * b.rational(); break;
            case FieldKind::PrimeField: r.value_ = fp::mul(a.residue(), b.residue(), a.desc_.p); break;
            case FieldKind::RationalFunctions: r.value_ = a.ratfun() * b.ratfun(); break;
        }
        return r;
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        if (b.is_zero()) throw field_error("division by zero in " + a.desc_.str());
        FieldElement r = a;
        switch (a.desc_.kind) {
            case FieldKind::Rationals: r.value_ = a.rational() / b.rational(); break;
            case FieldKind::PrimeField:
                r.value_ = fp::mul(a.residue(), fp::inv(b.residue(), a.desc_.p), a.desc_.p);
                break;
            case FieldKind::RationalFunctions: r.value_ = a.ratfun() / b.ratfun(); break;
        }
        return r;
    }

    FieldElement inverse() const { return one(desc_) / *this; }

    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
    FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        return a.value_ == b.value_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    /// Canonical display form; parse_element() round-trips it.
    std::string str() const {
        switch (desc_.kind) {
            case FieldKind::Rationals: return rational().str();
            case FieldKind::PrimeField: return std::to_string(residue());
            case FieldKind::RationalFunctions: return to_string(ratfun());
        }
        return "?";
    }

private:
    void check_compatible(const FieldElement& o) const {
        if (!(desc_ == o.desc_))
            throw field_error("field mismatch: " + desc_.str() + " vs " + o.desc_.str());
    }

    FieldDescriptor desc_;
    std::variant<Rational, std::uint64_t, FpRatFun> value_;
};

inline FieldElement pow(const FieldElement& base, std::uint64_t exp) {
    FieldElement result = FieldElement::one(base.descriptor());
    FieldElement b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

namespace detail {

// Recursive-descent evaluator for scalar literals.  The accepted grammar is
// a small arithmetic expression language evaluated directly in the target
// field:
//
//   expr   := [+|-] term ((+|-) term)*
//   term   := factor ((*|/) factor | factor)*     (juxtaposition multiplies)
//   factor := atom [^ digits]
//   atom   := digits | x | ( expr )
//
// "x" is only meaningful over F_p(x).  This covers the plain forms "7",
// "-3/4", "x^2+2x+1", "(x^2+1)/(x+3)" as well as convenience input like
// "2(x+1)^3".
class LiteralParser {
public:
    LiteralParser(std::string_view text, const FieldDescriptor& fd) : text_(text), fd_(fd) {}

    FieldElement parse() {
        FieldElement v = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw field_error("trailing characters in literal '" + std::string(text_) + "'");
        return v;
    }

private:
    FieldElement expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = (take() == '-');
        FieldElement v = term();
        if (negate) v = -v;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                take();
                FieldElement t = term();
                v = (c == '+') ? v + t : v - t;
            } else {
                return v;
            }
        }
    }

    FieldElement term() {
        FieldElement v = factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                take();
                FieldElement f = factor();
                v = (c == '*') ? v * f : v / f;
            } else if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
                v = v * factor();
            } else {
                return v;
            }
        }
    }

    FieldElement factor() {
        FieldElement v = atom();
        skip_ws();
        if (peek() == '^') {
            take();
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw field_error("exponent must be a nonnegative integer in '" + std::string(text_) + "'");
            std::uint64_t e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                e = e * 10 + static_cast<std::uint64_t>(take() - '0');
            v = pow(v, e);
        }
        return v;
    }

    FieldElement atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            take();
            FieldElement v = expr();
            skip_ws();
            if (peek() != ')') throw field_error("unbalanced parenthesis in '" + std::string(text_) + "'");
            take();
            return v;
        }
        if (c == 'x') {
            take();
            if (fd_.kind != FieldKind::RationalFunctions)
                throw field_error("'x' is not a scalar of " + fd_.str());
            return FieldElement::from_poly(FpPoly::x(fd_.p));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            // Digits are folded modulo p on the fly so huge residue literals
            // stay in range; over Q the full integer is kept.
            if (fd_.kind == FieldKind::Rationals) {
                std::string digits;
                while (std::isdigit(static_cast<unsigned char>(peek()))) digits += take();
                return FieldElement::from_rational(Rational(digits));
            }
            std::uint64_t v = 0;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                v = (v * 10 + static_cast<std::uint64_t>(take() - '0')) % fd_.p;
            return fd_.kind == FieldKind::PrimeField
                       ? FieldElement::from_residue(fd_, v)
                       : FieldElement::from_poly(FpPoly::constant(fd_.p, v));
        }
        throw field_error("malformed literal '" + std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return text_[pos_++]; }

    std::string_view text_;
    FieldDescriptor fd_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse a scalar literal in the given field.  Throws field_error on
/// malformed input or on use of 'x' outside F_p(x).
inline FieldElement parse_element(std::string_view text, const FieldDescriptor& fd) {
    if (text.empty()) throw field_error("empty scalar literal");
    return detail::LiteralParser(text, fd).parse();
}

} // namespace autalg
