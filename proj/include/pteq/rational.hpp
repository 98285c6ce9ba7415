#pragma once

#include <pteq/errors.hpp>

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>

namespace pteq {

/*
 * Exact rational scalar.
 *
 * Invariants: denominator > 0 and gcd(|numerator|, denominator) = 1 at all
 * times. Every constructor canonicalizes; GMP keeps arithmetic results
 * canonical given canonical operands. There is no floating point anywhere.
 */
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den) {
        if (den == 0) throw PreconditionError("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw PreconditionError("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}

    // Parses "p/q" or "p", base 10, optional leading '-' on the numerator.
    // Strict: GMP would skip whitespace inside the digits, the wire format
    // does not.
    static Rational parse(std::string_view text) {
        std::string s(text);
        const auto digits = [](std::string_view part, bool sign_ok) {
            if (sign_ok && !part.empty() && part.front() == '-') part.remove_prefix(1);
            if (part.empty()) return false;
            for (char c : part)
                if (c < '0' || c > '9') return false;
            return true;
        };
        const size_t slash = s.find('/');
        const bool shaped =
            slash == std::string::npos
                ? digits(s, true)
                : digits(std::string_view(s).substr(0, slash), true) &&
                      digits(std::string_view(s).substr(slash + 1), false) &&
                      s.find('/', slash + 1) == std::string::npos;
        if (!shaped) throw ParseError("Rational: cannot parse '" + s + "'");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw ParseError("Rational: cannot parse '" + s + "'");
        if (q.get_den() == 0)
            throw ParseError("Rational: zero denominator in '" + s + "'");
        q.canonicalize();
        Rational r;
        r.v_ = q;
        return r;
    }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const {
        Rational r;
        r.v_ = ::abs(v_);
        return r;
    }

    // max(|numerator|, denominator); the height used for point enumeration.
    mpz_class height() const {
        mpz_class a = ::abs(v_.get_num());
        return a > v_.get_den() ? a : v_.get_den();
    }

    Rational reciprocal() const {
        if (is_zero()) throw PreconditionError("Rational: reciprocal of zero");
        Rational r;
        r.v_ = 1 / v_;
        return r;
    }

    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw PreconditionError("Rational: division by zero");
        return wrap(a.v_ / b.v_);
    }
    Rational operator-() const { return wrap(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw PreconditionError("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    static Rational wrap(mpq_class q) {
        Rational r;
        r.v_ = std::move(q);
        return r;
    }

    mpq_class v_;
};

} // namespace pteq
