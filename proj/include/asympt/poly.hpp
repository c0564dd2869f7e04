#pragma once

#include <string>
#include <vector>

#include "asympt/rational.hpp"

namespace asympt {

// Univariate polynomial with exact rational coefficients, degree-ascending.
// Canonical form: no trailing zero coefficients (the zero polynomial has an
// empty coefficient vector).
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }
    static Poly constant(Rational v) { return Poly(std::vector<Rational>{std::move(v)}); }
    static Poly monomial(const Rational& coeff, std::size_t degree);

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const;  // Horner
    RationalComplex eval(const RationalComplex& x) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly scaled(const Rational& c) const;
    Poly derivative() const;
    Poly nth_derivative(unsigned n) const;
    // Antiderivative with zero constant term.
    Poly antiderivative() const;
    Poly pow(unsigned n) const;

    // p(a*x + b): composition with a linear argument map.
    Poly compose_linear(const Rational& a, const Rational& b) const;
    // p(x + b).
    Poly taylor_shift(const Rational& b) const { return compose_linear(Rational(1), b); }
    // x^deg * p(1/x): coefficient reversal.
    Poly reversed() const;

    // Quotient and remainder of exact division by d (d != 0).
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    // Monic gcd.
    static Poly gcd(Poly a, Poly b);
    // p / gcd(p, p'): same roots, all simple.
    Poly squarefree_part() const;

    // Upper bound for |p| on [a, b] via coefficient magnitudes.
    Rational abs_bound(const Rational& a, const Rational& b) const;

    // Number of sign changes in the coefficient sequence (zeros skipped).
    int sign_variations() const;

    std::string str(const std::string& var = "x") const;

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace asympt
