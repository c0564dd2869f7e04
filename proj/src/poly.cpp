#include "asympt/poly.hpp"

#include <sstream>

namespace asympt {

Poly Poly::monomial(const Rational& coeff, std::size_t degree) {
    if (coeff.is_zero()) return Poly{};
    std::vector<Rational> c(degree + 1, Rational(0));
    c[degree] = coeff;
    return Poly(std::move(c));
}

Rational Poly::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalComplex Poly::eval(const RationalComplex& x) const {
    RationalComplex acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + RationalComplex(*it);
    return acc;
}

Poly Poly::operator-() const {
    std::vector<Rational> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(-v);
    return Poly(std::move(c));
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly Poly::scaled(const Rational& c) const {
    if (c.is_zero()) return Poly{};
    std::vector<Rational> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(v * c);
    return Poly(std::move(out));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly{};
    std::vector<Rational> out;
    out.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * Rational(static_cast<long>(i)));
    return Poly(std::move(out));
}

Poly Poly::nth_derivative(unsigned n) const {
    Poly p = *this;
    for (unsigned i = 0; i < n; ++i) p = p.derivative();
    return p;
}

Poly Poly::antiderivative() const {
    if (is_zero()) return Poly{};
    std::vector<Rational> out(c_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
    return Poly(std::move(out));
}

Poly Poly::pow(unsigned n) const {
    Poly acc = Poly::constant(Rational(1));
    Poly base = *this;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

Poly Poly::compose_linear(const Rational& a, const Rational& b) const {
    // Horner in (a*x + b).
    Poly arg(std::vector<Rational>{b, a});
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * arg + Poly::constant(*it);
    return acc;
}

Poly Poly::reversed() const {
    std::vector<Rational> out(c_.rbegin(), c_.rend());
    return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly rem = *this;
    if (rem.degree() < d.degree()) return {Poly{}, rem};
    std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - d.degree() + 1), Rational(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
        Rational factor = rem.leading() / d.leading();
        q[shift] = factor;
        rem -= Poly::monomial(factor, shift) * d;
    }
    return {Poly(std::move(q)), rem};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(Rational(1) / a.leading());
}

Poly Poly::squarefree_part() const {
    if (is_zero() || degree() == 0) return *this;
    Poly g = gcd(*this, derivative());
    return divmod(g).first;
}

Rational Poly::abs_bound(const Rational& a, const Rational& b) const {
    Rational m = max(abs(a), abs(b));
    Rational bound(0), p(1);
    for (const auto& v : c_) {
        bound += abs(v) * p;
        p *= m;
    }
    return bound;
}

int Poly::sign_variations() const {
    int variations = 0;
    int last = 0;
    for (const auto& v : c_) {
        int s = v.sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << (c_[i].sign() > 0 ? " + " : " - ");
        else if (c_[i].sign() < 0) os << "-";
        first = false;
        Rational a = abs(c_[i]);
        if (i == 0 || a != Rational(1)) os << a.str();
        if (i > 0) {
            if (a != Rational(1)) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace asympt
