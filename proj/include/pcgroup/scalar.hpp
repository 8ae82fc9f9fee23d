#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace pcgroup {

/// The working field: Q (d == 0) or Q(sqrt d) with d square-free, d >= 2.
struct FieldSpec {
    long d = 0;

    static FieldSpec rationals() { return {}; }
    static FieldSpec quadratic(long d);

    bool is_rational() const { return d == 0; }
    std::string to_string() const {
        return d == 0 ? "Q" : "Q(sqrt " + std::to_string(d) + ")";
    }
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline bool is_square_free(long d) {
    if (d < 2) return false;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

inline FieldSpec FieldSpec::quadratic(long d) {
    if (!is_square_free(d))
        throw DomainError("field: d=" + std::to_string(d) + " is not a square-free integer >= 2");
    return FieldSpec{d};
}

/// Exact element a + b*sqrt(d). Rational values carry d == 0 and b == 0, so
/// equality is structural.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}
    Scalar(int v) : a_(v) {}
    Scalar(const mpq_class& a) : a_(a) { a_.canonicalize(); }
    Scalar(long num, long den) : a_(num, den) {
        if (den == 0) throw DomainError("division by zero");
        a_.canonicalize();
    }
    Scalar(const mpq_class& a, const mpq_class& b, long d) : a_(a), b_(b), d_(d) {
        a_.canonicalize();
        b_.canonicalize();
        normalize();
    }

    static Scalar sqrt_of(long d) { return Scalar(mpq_class(0), mpq_class(1), d); }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return d_ == 0; }

    int sign() const {
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 with b^2 d
        mpq_class lhs = a_ * a_;
        mpq_class rhs = b_ * b_ * d_;
        int c = cmp(lhs, rhs);
        return sa > 0 ? c : -c;
    }

    Scalar operator-() const {
        Scalar r;
        r.a_ = -a_;
        r.b_ = -b_;
        r.d_ = d_;
        return r;
    }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        long d = join(x, y);
        if (d == 0) return Scalar(mpq_class(x.a_ + y.a_));
        return Scalar(mpq_class(x.a_ + y.a_), mpq_class(x.b_ + y.b_), d);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        long d = join(x, y);
        if (d == 0) return Scalar(mpq_class(x.a_ - y.a_));
        return Scalar(mpq_class(x.a_ - y.a_), mpq_class(x.b_ - y.b_), d);
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        long d = join(x, y);
        if (d == 0) return Scalar(mpq_class(x.a_ * y.a_));
        return Scalar(mpq_class(x.a_ * y.a_ + x.b_ * y.b_ * d), mpq_class(x.a_ * y.b_ + x.b_ * y.a_), d);
    }
    Scalar inv() const {
        if (a_ == 0 && b_ == 0) throw DomainError("division by zero");
        if (d_ == 0) return Scalar(mpq_class(1 / a_));
        // (a - b sqrt d) / (a^2 - b^2 d)
        mpq_class n = a_ * a_ - b_ * b_ * d_;
        return Scalar(mpq_class(a_ / n), mpq_class(-b_ / n), d_);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        if (x.d_ != 0 && y.d_ != 0 && x.d_ != y.d_) return false;
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
        if (x.d_ == 0 && y.d_ == 0) {
            int c = cmp(x.a_, y.a_);
            return c < 0 ? std::strong_ordering::less
                         : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    std::string str() const {
        if (b_ == 0) return a_.get_str();
        mpq_class mag = abs(b_);
        return a_.get_str() + (sgn(b_) < 0 ? " - " : " + ") + mag.get_str() + "*sqrt(" +
               std::to_string(d_) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

private:
    mpq_class a_{0};
    mpq_class b_{0};
    long d_ = 0;

    void normalize() {
        if (b_ == 0) {
            d_ = 0;
        } else if (d_ == 0) {
            throw DomainError("irrational part without a quadratic field");
        }
    }
    static long join(const Scalar& x, const Scalar& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
        throw DomainError("mixed fields Q(sqrt " + std::to_string(x.d_) + ") and Q(sqrt " +
                          std::to_string(y.d_) + ")");
    }
};

inline int sign(const Scalar& x) { return x.sign(); }
inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }
inline const Scalar& min(const Scalar& x, const Scalar& y) { return y < x ? y : x; }
inline const Scalar& max(const Scalar& x, const Scalar& y) { return x < y ? y : x; }

/// True when x lives in the given field.
inline bool belongs_to(const Scalar& x, const FieldSpec& F) { return x.d() == 0 || x.d() == F.d; }

namespace detail {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    bool accept(std::string_view tok) {
        skip_ws();
        if (s.substr(i, tok.size()) == tok) {
            i += tok.size();
            return true;
        }
        return false;
    }
    // ASCII '-' or U+2212
    bool accept_minus() { return accept("-") || accept("\xE2\x88\x92"); }
    bool peek_digit() {
        skip_ws();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    std::string digits() {
        skip_ws();
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw ParseError("expected digits at offset " + std::to_string(i) + " in '" + std::string(s) + "'");
        std::string out(s.substr(i, j - i));
        i = j;
        return out;
    }
    mpq_class unsigned_rational() {
        std::string num = digits();
        std::size_t save = i;
        skip_ws();
        if (i < s.size() && s[i] == '/') {
            ++i;
            std::string den = digits();
            mpz_class dz(den);
            if (dz == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
            mpq_class q(mpz_class(num), dz);
            q.canonicalize();
            return q;
        }
        i = save;
        return mpq_class(mpz_class(num));
    }
};

}  // namespace detail

/// Parses `rational ( +|- rational*sqrt(d) )?` in the given field. A bare
/// `rational*sqrt(d)` is also accepted.
inline Scalar parse_scalar(std::string_view text, const FieldSpec& F = {}) {
    detail::Cursor c{text};
    bool neg = c.accept_minus();
    if (!neg) c.accept("+");
    mpq_class a = c.unsigned_rational();
    if (neg) a = -a;
    mpq_class b = 0;
    long d = 0;
    auto read_sqrt = [&]() {
        if (!c.accept("sqrt") || !c.accept("(")) throw ParseError("expected sqrt(d) in '" + std::string(text) + "'");
        d = std::stol(c.digits());
        if (!c.accept(")")) throw ParseError("expected ')' in '" + std::string(text) + "'");
    };
    if (c.accept("*")) {
        // bare b*sqrt(d)
        read_sqrt();
        b = a;
        a = 0;
    } else if (!c.eof()) {
        bool bneg;
        if (c.accept_minus()) bneg = true;
        else if (c.accept("+")) bneg = false;
        else throw ParseError("unexpected text in scalar '" + std::string(text) + "'");
        b = c.unsigned_rational();
        if (bneg) b = -b;
        if (!c.accept("*")) throw ParseError("expected '*' in '" + std::string(text) + "'");
        read_sqrt();
    }
    if (!c.eof()) throw ParseError("trailing text in scalar '" + std::string(text) + "'");
    if (d != 0) {
        if (F.is_rational()) throw DomainError("sqrt term '" + std::string(text) + "' in field Q");
        if (d != F.d)
            throw DomainError("sqrt(" + std::to_string(d) + ") in field " + F.to_string());
        return Scalar(a, b, d);
    }
    return Scalar(a);
}

inline std::string print_scalar(const Scalar& x) { return x.str(); }

}  // namespace pcgroup
