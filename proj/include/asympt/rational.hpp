#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "asympt/errors.hpp"

namespace asympt {

using Integer = mpz_class;

// Exact rational scalar. Thin wrapper over GMP's mpq_class whose only job is
// to guarantee the canonical-form invariant (lowest terms, denominator > 0)
// on every construction path; mpq arithmetic preserves it from there.
class Rational {
  public:
    Rational() = default;
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(const Integer& n) : q_(n) {}
    Rational(long n, long d) : q_(n, d) { canonicalize(); }
    Rational(const Integer& n, const Integer& d) : q_(n, d) { canonicalize(); }
    explicit Rational(const mpq_class& q) : q_(q) { canonicalize(); }

    // Parses "p/q", "p", or a decimal literal like "-0.125" (exact dyadic).
    static Rational from_string(const std::string& text);

    const Integer num() const { return q_.get_num(); }
    const Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return wrap(-q_); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string str() const;
    double to_double() const { return q_.get_d(); }

  private:
    static Rational wrap(mpq_class q) {
        Rational r;
        r.q_ = std::move(q);
        return r;
    }
    void canonicalize() {
        if (q_.get_den() == 0) throw DivisionByZero("rational with zero denominator");
        q_.canonicalize();
    }
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

// r^e for integer e (e < 0 requires r != 0).
Rational pow(const Rational& r, long e);

// Exact n-th root if it exists (n >= 1); nullopt otherwise.
std::optional<Rational> exact_root(const Rational& r, unsigned long n);

// r^(p/q) when the result is rational; nullopt otherwise.
std::optional<Rational> exact_pow(const Rational& base, const Rational& expo);

// Complex number with exact rational real and imaginary parts.
struct RationalComplex {
    Rational re;
    Rational im;

    RationalComplex() = default;
    RationalComplex(Rational r) : re(std::move(r)) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    Rational norm2() const { return re * re + im * im; }
    RationalComplex conj() const { return {re, -im}; }

    RationalComplex operator-() const { return {-re, -im}; }
    RationalComplex& operator+=(const RationalComplex& o) { re += o.re; im += o.im; return *this; }
    RationalComplex& operator-=(const RationalComplex& o) { re -= o.re; im -= o.im; return *this; }
    RationalComplex& operator*=(const RationalComplex& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    RationalComplex& operator/=(const RationalComplex& o) {
        Rational n2 = o.norm2();
        if (n2.is_zero()) throw DivisionByZero("complex division by zero");
        RationalComplex c = o.conj();
        *this *= c;
        re /= n2;
        im /= n2;
        return *this;
    }
    friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
    friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
    friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::string str() const;
};

// sqrt over Q(i) when it exists exactly.
std::optional<RationalComplex> exact_sqrt(const RationalComplex& z);

// Closed rational interval; the basic enclosure type for values that are not
// exactly representable (logarithms, suprema at irrational critical points).
struct RatInterval {
    Rational lo;
    Rational hi;

    RatInterval() = default;
    RatInterval(Rational point) : lo(point), hi(std::move(point)) {}
    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw DomainError("interval with lo > hi");
    }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }

    RatInterval operator-() const { return {-hi, -lo}; }
    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b);

    RatInterval scaled(const Rational& c) const {
        return c >= Rational(0) ? RatInterval{lo * c, hi * c} : RatInterval{hi * c, lo * c};
    }
    static RatInterval hull(const RatInterval& a, const RatInterval& b) {
        return {min(a.lo, b.lo), max(a.hi, b.hi)};
    }
    // Interval of |x| over this interval.
    RatInterval abs_hull() const;
};

// Rigorous enclosure of ln(x) for rational x > 0, width <= tol.
RatInterval log_enclosure(const Rational& x, const Rational& tol);

// Exact rational plus a finite combination of logarithms of positive
// rationals: value = rational_part + sum coeff * ln(node). This is the exact
// carrier for principal-value integrals; it collapses to a plain rational
// when every log coefficient cancels.
struct LogSum {
    Rational rational_part;
    std::map<Rational, Rational> logs;  // node (> 0) -> coefficient

    void add_log(const Rational& node, const Rational& coeff);
    LogSum& operator+=(const LogSum& o);
    LogSum& operator*=(const Rational& c);
    friend LogSum operator+(LogSum a, const LogSum& b) { return a += b; }

    bool is_exact() const { return logs.empty(); }
    RatInterval enclose(const Rational& tol) const;
};

}  // namespace asympt
