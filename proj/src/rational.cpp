#include "asympt/rational.hpp"

#include <mpfr.h>

#include <cstdlib>
#include <ostream>
#include <sstream>

namespace asympt {

Rational Rational::from_string(const std::string& text) {
    std::string s = text;
    // strip spaces
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty rational literal", 0);

    auto dot = t.find('.');
    if (dot != std::string::npos) {
        // decimal literal: mantissa / 10^frac_digits
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        std::size_t frac = t.size() - dot - 1;
        if (frac == 0) throw ParseError("trailing dot in rational literal", dot);
        mpz_class n;
        if (mpz_set_str(n.get_mpz_t(), digits.c_str(), 10) != 0)
            throw ParseError("bad decimal literal '" + text + "'", 0);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac);
        return Rational(n, d);
    }

    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
        throw ParseError("bad rational literal '" + text + "'", 0);
    if (q.get_den() == 0) throw DivisionByZero("rational with zero denominator");
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    std::ostringstream os;
    os << q_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.raw(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return q;
}

Integer ceil(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return q;
}

Rational pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r.is_zero()) {
        if (e < 0) throw DivisionByZero("0 raised to a negative power");
        return Rational(0);
    }
    unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), mag);
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), mag);
    return e > 0 ? Rational(n, d) : Rational(d, n);
}

std::optional<Rational> exact_root(const Rational& r, unsigned long n) {
    if (n == 0) throw DomainError("0-th root");
    if (n == 1) return r;
    if (r.sign() < 0 && n % 2 == 0) return std::nullopt;
    Integer rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), r.num().get_mpz_t(), n);
    int exact_d = mpz_root(rd.get_mpz_t(), r.den().get_mpz_t(), n);
    if (!exact_n || !exact_d) return std::nullopt;
    return Rational(rn, rd);
}

std::optional<Rational> exact_pow(const Rational& base, const Rational& expo) {
    if (!mpz_fits_slong_p(expo.num().get_mpz_t()) || !mpz_fits_ulong_p(expo.den().get_mpz_t()))
        throw DomainError("exponent too large");
    long p = expo.num().get_si();
    unsigned long q = expo.den().get_ui();
    auto root = exact_root(base, q);
    if (!root) return std::nullopt;
    return pow(*root, p);
}

std::string RationalComplex::str() const {
    if (im.is_zero()) return re.str();
    std::string s = "(" + re.str();
    s += im.sign() < 0 ? "-" : "+";
    s += abs(im).str() + "i)";
    return s;
}

std::optional<RationalComplex> exact_sqrt(const RationalComplex& z) {
    if (z.is_zero()) return RationalComplex{};
    if (z.is_real()) {
        if (z.re.sign() > 0) {
            auto r = exact_root(z.re, 2);
            if (r) return RationalComplex{*r};
            return std::nullopt;
        }
        auto r = exact_root(-z.re, 2);
        if (r) return RationalComplex{Rational(0), *r};
        return std::nullopt;
    }
    // sqrt(a+bi) = x+yi with x^2 = (a + |z|)/2, y = b/(2x); needs |z| rational.
    auto mod = exact_root(z.norm2(), 2);
    if (!mod) return std::nullopt;
    auto x2 = (z.re + *mod) / 2;
    auto x = exact_root(x2, 2);
    if (!x || x->is_zero()) return std::nullopt;
    Rational y = z.im / (*x * 2);
    return RationalComplex{*x, y};
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

RatInterval RatInterval::abs_hull() const {
    if (lo.sign() >= 0) return *this;
    if (hi.sign() <= 0) return -*this;
    return {Rational(0), max(-lo, hi)};
}

namespace {

// Exact dyadic rational from an mpfr value.
Rational mpfr_to_rational(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Rational(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Rational r(mant);
    if (e >= 0) {
        mpz_class two_e;
        mpz_ui_pow_ui(two_e.get_mpz_t(), 2, static_cast<unsigned long>(e));
        return r * Rational(two_e);
    }
    mpz_class two_e;
    mpz_ui_pow_ui(two_e.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    return r / Rational(two_e);
}

}  // namespace

RatInterval log_enclosure(const Rational& x, const Rational& tol) {
    if (x.sign() <= 0) throw DomainError("log of non-positive rational");
    if (x == Rational(1)) return RatInterval{Rational(0)};
    if (tol.sign() <= 0) throw DomainError("log enclosure needs tol > 0");

    mpfr_t q, lo, hi;
    mpfr_init2(q, 128);
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        mpfr_set_prec(q, prec);
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_q(q, x.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_log(lo, q, MPFR_RNDD);
        mpfr_set_q(q, x.raw().get_mpq_t(), MPFR_RNDU);
        mpfr_log(hi, q, MPFR_RNDU);
        Rational rlo = mpfr_to_rational(lo);
        Rational rhi = mpfr_to_rational(hi);
        mpfr_clear(lo);
        mpfr_clear(hi);
        if (rhi - rlo <= tol) {
            mpfr_clear(q);
            return {rlo, rhi};
        }
        if (prec > 1 << 20) {
            mpfr_clear(q);
            throw Error("log enclosure did not converge");
        }
    }
}

void LogSum::add_log(const Rational& node, const Rational& coeff) {
    if (coeff.is_zero()) return;
    if (node.sign() <= 0) throw DomainError("LogSum node must be positive");
    if (node == Rational(1)) return;
    auto it = logs.find(node);
    if (it == logs.end()) {
        logs.emplace(node, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) logs.erase(it);
    }
}

LogSum& LogSum::operator+=(const LogSum& o) {
    rational_part += o.rational_part;
    for (const auto& [node, coeff] : o.logs) add_log(node, coeff);
    return *this;
}

LogSum& LogSum::operator*=(const Rational& c) {
    if (c.is_zero()) {
        rational_part = Rational(0);
        logs.clear();
        return *this;
    }
    rational_part *= c;
    for (auto& [node, coeff] : logs) coeff *= c;
    return *this;
}

RatInterval LogSum::enclose(const Rational& tol) const {
    RatInterval acc{rational_part};
    if (logs.empty()) return acc;
    Rational per_term = tol / Rational(static_cast<long>(logs.size()));
    for (const auto& [node, coeff] : logs) {
        Rational c = abs(coeff);
        RatInterval l = log_enclosure(node, per_term / max(c, Rational(1)));
        acc = acc + l.scaled(coeff);
    }
    return acc;
}

}  // namespace asympt
