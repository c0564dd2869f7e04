#include "asympt/piecewise.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace asympt {

namespace {

// Order of contact of two polynomials at x: the largest c with matching
// derivatives 0..c, or -1 when the values already differ. Identical
// polynomials give INT_MAX.
int contact_order(const Poly& l, const Poly& r, const Rational& x) {
    if (l == r) return INT_MAX;
    Poly dl = l, dr = r;
    long cap = std::max(l.degree(), r.degree()) + 2;
    for (int c = 0; c <= cap; ++c) {
        if (dl(x) != dr(x)) return c - 1;
        dl = dl.derivative();
        dr = dr.derivative();
    }
    return INT_MAX;  // unreachable: distinct polys differ in some derivative
}

}  // namespace

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (pieces_.empty() && breaks_.empty()) return;
    if (breaks_.size() != pieces_.size() + 1)
        throw DomainError("piecewise: breakpoint/piece count mismatch");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1]))
            throw DomainError("piecewise: breakpoints not strictly increasing");
    normalize();
}

void PiecewisePoly::normalize() {
    // merge adjacent identical pieces
    std::size_t w = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (w > 0 && pieces_[i] == pieces_[w - 1]) {
            breaks_[w] = breaks_[i + 1];
            continue;
        }
        pieces_[w] = pieces_[i];
        breaks_[w + 1] = breaks_[i + 1];
        ++w;
    }
    pieces_.resize(w);
    breaks_.resize(w + 1);
    // trim zero end pieces
    std::size_t lo = 0, hi = pieces_.size();
    while (lo < hi && pieces_[lo].is_zero()) ++lo;
    while (hi > lo && pieces_[hi - 1].is_zero()) --hi;
    if (lo == hi) {
        breaks_.clear();
        pieces_.clear();
        return;
    }
    pieces_ = std::vector<Poly>(pieces_.begin() + lo, pieces_.begin() + hi);
    breaks_ = std::vector<Rational>(breaks_.begin() + lo, breaks_.begin() + hi + 1);
}

PiecewisePoly PiecewisePoly::single(const Rational& a, const Rational& b, Poly p) {
    if (!(a < b)) throw DomainError("piecewise: empty interval");
    return PiecewisePoly({a, b}, {std::move(p)});
}

PiecewisePoly PiecewisePoly::indicator(const std::vector<std::pair<Rational, Rational>>& intervals) {
    std::vector<Rational> breaks;
    std::vector<Poly> pieces;
    for (const auto& [a, b] : intervals) {
        if (!(a < b)) throw DomainError("indicator: empty interval");
        if (!breaks.empty() && a < breaks.back())
            throw DomainError("indicator: intervals overlap or are unsorted");
        if (!breaks.empty() && a == breaks.back()) {
            breaks.push_back(b);
            pieces.push_back(Poly::constant(Rational(1)));
            continue;
        }
        if (!breaks.empty()) {
            breaks.push_back(a);
            pieces.push_back(Poly{});
        } else {
            breaks.push_back(a);
        }
        breaks.push_back(b);
        pieces.push_back(Poly::constant(Rational(1)));
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

std::optional<std::pair<Rational, Rational>> PiecewisePoly::support() const {
    if (is_zero()) return std::nullopt;
    return std::make_pair(breaks_.front(), breaks_.back());
}

long PiecewisePoly::max_degree() const {
    long d = -1;
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
}

std::size_t PiecewisePoly::locate(const Rational& x) const {
    if (is_zero() || x < breaks_.front() || x > breaks_.back()) return static_cast<std::size_t>(-1);
    if (x == breaks_.back()) return pieces_.size() - 1;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

Rational PiecewisePoly::operator()(const Rational& x) const {
    std::size_t i = locate(x);
    if (i == static_cast<std::size_t>(-1)) return Rational(0);
    return pieces_[i](x);
}

Rational PiecewisePoly::eval_left(const Rational& x) const {
    if (is_zero() || x <= breaks_.front() || x > breaks_.back()) return Rational(0);
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t i = (it != breaks_.end() && *it == x) ? static_cast<std::size_t>(it - breaks_.begin())
                                                      : static_cast<std::size_t>(it - breaks_.begin());
    return pieces_[i - 1](x);
}

Rational PiecewisePoly::eval_right(const Rational& x) const {
    if (is_zero() || x < breaks_.front() || x >= breaks_.back()) return Rational(0);
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1](x);
}

Rational PiecewisePoly::derivative_at(const Rational& x, unsigned n) const {
    // One-sided piece polynomials; zero outside the support.
    Poly l{}, r{};
    if (!is_zero()) {
        if (x > breaks_.front() && x <= breaks_.back()) {
            auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
            std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
            l = (it != breaks_.end() && *it == x) ? pieces_[i - 1] : pieces_[i - 1];
        }
        if (x >= breaks_.front() && x < breaks_.back()) r = pieces_[locate(x)];
    }
    for (unsigned m = 0; m <= n; ++m)
        if (l.nth_derivative(m)(x) != r.nth_derivative(m)(x))
            throw InsufficientSmoothness("derivative of order " + std::to_string(n) +
                                         " does not exist classically at x = " + x.str());
    return r.nth_derivative(n)(x);
}

namespace {

enum class CombineMode { Add, Mul };

PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, CombineMode mode) {
    if (mode == CombineMode::Add) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
    } else {
        if (a.is_zero() || b.is_zero()) return PiecewisePoly{};
    }
    std::set<Rational> cuts(a.breakpoints().begin(), a.breakpoints().end());
    cuts.insert(b.breakpoints().begin(), b.breakpoints().end());
    std::vector<Rational> breaks(cuts.begin(), cuts.end());
    std::vector<Poly> pieces;
    pieces.reserve(breaks.size() - 1);
    auto piece_of = [](const PiecewisePoly& f, const Rational& lo, const Rational& hi) {
        const auto& bk = f.breakpoints();
        if (f.is_zero() || hi <= bk.front() || lo >= bk.back()) return Poly{};
        auto it = std::upper_bound(bk.begin(), bk.end(), lo);
        return f.pieces()[static_cast<std::size_t>(it - bk.begin()) - 1];
    };
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        Poly pa = piece_of(a, breaks[i], breaks[i + 1]);
        Poly pb = piece_of(b, breaks[i], breaks[i + 1]);
        pieces.push_back(mode == CombineMode::Add ? pa + pb : pa * pb);
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

}  // namespace

PiecewisePoly PiecewisePoly::operator-() const {
    std::vector<Poly> p;
    p.reserve(pieces_.size());
    for (const auto& q : pieces_) p.push_back(-q);
    PiecewisePoly out;
    out.breaks_ = breaks_;
    out.pieces_ = std::move(p);
    return out;
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, CombineMode::Add);
}

PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) { return a + (-b); }

PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, CombineMode::Mul);
}

PiecewisePoly PiecewisePoly::scaled(const Rational& c) const {
    if (c.is_zero()) return PiecewisePoly{};
    std::vector<Poly> p;
    p.reserve(pieces_.size());
    for (const auto& q : pieces_) p.push_back(q.scaled(c));
    PiecewisePoly out;
    out.breaks_ = breaks_;
    out.pieces_ = std::move(p);
    return out;
}

PiecewisePoly PiecewisePoly::affine(const Rational& scale, const Rational& shift) const {
    if (scale.is_zero()) throw DomainError("affine: degenerate scale 0");
    if (is_zero()) return *this;
    Rational inv = Rational(1) / scale;
    std::vector<Rational> breaks;
    std::vector<Poly> pieces;
    breaks.reserve(breaks_.size());
    pieces.reserve(pieces_.size());
    if (scale.sign() > 0) {
        for (const auto& b : breaks_) breaks.push_back(scale * b + shift);
        for (const auto& p : pieces_) pieces.push_back(p.compose_linear(inv, -shift * inv));
    } else {
        for (auto it = breaks_.rbegin(); it != breaks_.rend(); ++it)
            breaks.push_back(scale * *it + shift);
        for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it)
            pieces.push_back(it->compose_linear(inv, -shift * inv));
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

Rational PiecewisePoly::integrate(const Rational& a, const Rational& b) const {
    if (a > b) throw DomainError("integrate: invalid interval [" + a.str() + ", " + b.str() + "]");
    if (is_zero() || b <= breaks_.front() || a >= breaks_.back()) return Rational(0);
    Rational acc(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        Rational lo = max(a, breaks_[i]);
        Rational hi = min(b, breaks_[i + 1]);
        if (lo >= hi) continue;
        Poly anti = pieces_[i].antiderivative();
        acc += anti(hi) - anti(lo);
    }
    return acc;
}

Rational PiecewisePoly::integrate() const {
    if (is_zero()) return Rational(0);
    return integrate(breaks_.front(), breaks_.back());
}

Rational PiecewisePoly::moment(unsigned k) const {
    if (is_zero()) return Rational(0);
    PiecewisePoly weighted = *this;
    for (auto& p : weighted.pieces_) p = p * Poly::monomial(Rational(1), k);
    return weighted.integrate();
}

int PiecewisePoly::continuity_class() const {
    if (is_zero()) return INT_MAX;
    int cls = INT_MAX;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        const Poly& l = (i == 0) ? Poly{} : pieces_[i - 1];
        const Poly& r = (i == breaks_.size() - 1) ? Poly{} : pieces_[i];
        cls = std::min(cls, contact_order(l, r, breaks_[i]));
    }
    return cls;
}

PiecewisePoly PiecewisePoly::derivative() const {
    int cls = continuity_class();
    if (cls < 1)
        throw InsufficientSmoothness(
            "piecewise function is C^" + std::to_string(cls) +
            "; classical derivative undefined (distributional derivative required)");
    return derivative_ae();
}

PiecewisePoly PiecewisePoly::nth_derivative(unsigned n) const {
    PiecewisePoly f = *this;
    for (unsigned i = 0; i < n; ++i) f = f.derivative();
    return f;
}

PiecewisePoly PiecewisePoly::derivative_ae() const {
    std::vector<Poly> p;
    p.reserve(pieces_.size());
    for (const auto& q : pieces_) p.push_back(q.derivative());
    if (is_zero()) return PiecewisePoly{};
    return PiecewisePoly(breaks_, std::move(p));
}

std::vector<std::pair<Rational, Rational>> PiecewisePoly::jumps() const {
    std::vector<std::pair<Rational, Rational>> out;
    if (is_zero()) return out;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        Rational l = (i == 0) ? Rational(0) : pieces_[i - 1](breaks_[i]);
        Rational r = (i == breaks_.size() - 1) ? Rational(0) : pieces_[i](breaks_[i]);
        if (l != r) out.emplace_back(breaks_[i], r - l);
    }
    return out;
}

PiecewisePoly PiecewisePoly::restricted(const Rational& a, const Rational& b) const {
    if (a > b) throw DomainError("restricted: invalid interval");
    if (is_zero() || b <= breaks_.front() || a >= breaks_.back() || a == b) return PiecewisePoly{};
    std::vector<Rational> breaks;
    std::vector<Poly> pieces;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        Rational lo = max(a, breaks_[i]);
        Rational hi = min(b, breaks_[i + 1]);
        if (lo >= hi) continue;
        if (breaks.empty()) breaks.push_back(lo);
        breaks.push_back(hi);
        pieces.push_back(pieces_[i]);
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

// ---------------------------------------------------------------------------
// Convolution
// ---------------------------------------------------------------------------

namespace {

// Polynomial in t with Poly-in-x coefficients; index = power of t.
using BiPoly = std::vector<Poly>;

// q(x - t) expanded in powers of t.
BiPoly substitute_x_minus_t(const Poly& q) {
    BiPoly out;
    const auto& c = q.coeffs();
    for (std::size_t p = 0; p < c.size(); ++p) {
        if (c[p].is_zero()) continue;
        Rational binom(1);
        for (std::size_t r = 0; r <= p; ++r) {
            if (out.size() <= r) out.resize(r + 1);
            Rational sign = (r % 2 == 0) ? Rational(1) : Rational(-1);
            out[r] += Poly::monomial(c[p] * binom * sign, p - r);
            binom *= Rational(static_cast<long>(p - r));
            binom /= Rational(static_cast<long>(r + 1));
        }
    }
    return out;
}

BiPoly multiply_by_t_poly(const Poly& p, const BiPoly& b) {
    if (p.is_zero() || b.empty()) return {};
    BiPoly out(p.coeffs().size() + b.size() - 1);
    for (std::size_t s = 0; s < p.coeffs().size(); ++s) {
        if (p.coeffs()[s].is_zero()) continue;
        for (std::size_t r = 0; r < b.size(); ++r) out[s + r] += b[r].scaled(p.coeffs()[s]);
    }
    return out;
}

BiPoly antiderivative_in_t(const BiPoly& b) {
    BiPoly out(b.size() + 1);
    for (std::size_t r = 0; r < b.size(); ++r)
        out[r + 1] = b[r].scaled(Rational(1, static_cast<long>(r + 1)));
    return out;
}

Poly substitute_t_const(const BiPoly& b, const Rational& e) {
    Poly acc;
    Rational ep(1);
    for (const auto& coeff : b) {
        acc += coeff.scaled(ep);
        ep *= e;
    }
    return acc;
}

Poly substitute_t_x_minus(const BiPoly& b, const Rational& e) {
    Poly acc;
    Poly arg(std::vector<Rational>{-e, Rational(1)});  // x - e
    Poly argpow = Poly::constant(Rational(1));
    for (const auto& coeff : b) {
        acc += coeff * argpow;
        argpow *= arg;
    }
    return acc;
}

// Exact convolution of p on [a,b] with q on [c,d] (both zero outside).
PiecewisePoly convolve_boxed(const Poly& p, const Rational& a, const Rational& b, const Poly& q,
                             const Rational& c, const Rational& d) {
    BiPoly anti = antiderivative_in_t(multiply_by_t_poly(p, substitute_x_minus_t(q)));
    // Integration bounds: t from max(a, x-d) to min(b, x-c); which argument is
    // active is constant on each of the (at most three) cells below.
    Rational x1 = a + c;
    Rational x2 = min(a + d, b + c);
    Rational x3 = max(a + d, b + c);
    Rational x4 = b + d;
    std::vector<Rational> breaks{x1, x2};
    std::vector<Poly> pieces;
    pieces.push_back(substitute_t_x_minus(anti, c) - substitute_t_const(anti, a));
    if (x2 < x3) {
        breaks.push_back(x3);
        if (a + d <= b + c)
            pieces.push_back(substitute_t_x_minus(anti, c) - substitute_t_x_minus(anti, d));
        else
            pieces.push_back(substitute_t_const(anti, b) - substitute_t_const(anti, a));
    }
    breaks.push_back(x4);
    pieces.push_back(substitute_t_const(anti, b) - substitute_t_x_minus(anti, d));
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

}  // namespace

PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& g) {
    if (f.is_zero() || g.is_zero()) return PiecewisePoly{};
    PiecewisePoly acc;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        if (f.pieces()[i].is_zero()) continue;
        for (std::size_t j = 0; j < g.piece_count(); ++j) {
            if (g.pieces()[j].is_zero()) continue;
            acc = acc + convolve_boxed(f.pieces()[i], f.breakpoints()[i], f.breakpoints()[i + 1],
                                       g.pieces()[j], g.breakpoints()[j], g.breakpoints()[j + 1]);
        }
    }
    return acc;
}

std::string PiecewisePoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i) os << ", ";
        os << "[" << breaks_[i].str() << ", " << breaks_[i + 1].str() << "]: " << pieces_[i].str();
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// TailedPiecewise
// ---------------------------------------------------------------------------

TailedPiecewise::TailedPiecewise(PiecewisePoly core) {
    if (core.is_zero()) {
        breaks_ = {Rational(0), Rational(1)};
        pieces_ = {Poly{}};
    } else {
        breaks_ = core.breakpoints();
        pieces_ = core.pieces();
    }
    normalize();
}

TailedPiecewise TailedPiecewise::polynomial(Poly p) {
    TailedPiecewise out;
    out.breaks_ = {Rational(0), Rational(1)};
    out.pieces_ = {p};
    out.left_ = p;
    out.right_ = std::move(p);
    return out;
}

TailedPiecewise::TailedPiecewise(PiecewisePoly core, Poly left, Poly right)
    : left_(std::move(left)), right_(std::move(right)) {
    if (core.is_zero()) throw DomainError("tailed: explicit tails need a nonempty core window");
    breaks_ = core.breakpoints();
    pieces_ = core.pieces();
    normalize();
}

void TailedPiecewise::normalize() {
    // merge adjacent identical pieces
    std::size_t w = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (w > 0 && pieces_[i] == pieces_[w - 1]) {
            breaks_[w] = breaks_[i + 1];
            continue;
        }
        pieces_[w] = pieces_[i];
        breaks_[w + 1] = breaks_[i + 1];
        ++w;
    }
    pieces_.resize(w);
    breaks_.resize(w + 1);
    // absorb end pieces equal to their tail
    while (pieces_.size() > 1 && pieces_.front() == left_) {
        pieces_.erase(pieces_.begin());
        breaks_.erase(breaks_.begin());
    }
    while (pieces_.size() > 1 && pieces_.back() == right_) {
        pieces_.pop_back();
        breaks_.pop_back();
    }
    if (pieces_.size() == 1 && pieces_[0] == left_ && left_ == right_) {
        breaks_ = {Rational(0), Rational(1)};  // canonical pure-polynomial form
    }
}

bool TailedPiecewise::is_zero() const {
    if (!left_.is_zero() || !right_.is_zero()) return false;
    for (const auto& p : pieces_)
        if (!p.is_zero()) return false;
    return true;
}

Rational TailedPiecewise::operator()(const Rational& x) const {
    if (x < breaks_.front()) return left_(x);
    if (x > breaks_.back()) return right_(x);
    if (x == breaks_.back()) return pieces_.back()(x);
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1](x);
}

Rational TailedPiecewise::derivative_at(const Rational& x, unsigned n) const {
    auto poly_left_of = [&](const Rational& t) -> Poly {
        if (t <= breaks_.front()) return left_;
        if (t > breaks_.back()) return right_;
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
        if (it != breaks_.end() && *it == t) return i == 0 ? left_ : pieces_[i - 1];
        return pieces_[i - 1];
    };
    auto poly_right_of = [&](const Rational& t) -> Poly {
        if (t < breaks_.front()) return left_;
        if (t >= breaks_.back()) return right_;
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
        return pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
    };
    Poly l = poly_left_of(x), r = poly_right_of(x);
    for (unsigned m = 0; m <= n; ++m)
        if (l.nth_derivative(m)(x) != r.nth_derivative(m)(x))
            throw InsufficientSmoothness("derivative of order " + std::to_string(n) +
                                         " does not exist classically at x = " + x.str());
    return r.nth_derivative(n)(x);
}

namespace {

Poly tp_piece_between(const std::vector<Rational>& breaks, const std::vector<Poly>& pieces,
                      const Poly& left, const Poly& right, const Rational& lo, const Rational& hi) {
    if (hi <= breaks.front()) return left;
    if (lo >= breaks.back()) return right;
    auto it = std::upper_bound(breaks.begin(), breaks.end(), lo);
    return pieces[static_cast<std::size_t>(it - breaks.begin()) - 1];
}

}  // namespace

TailedPiecewise TailedPiecewise::operator-() const {
    TailedPiecewise out = *this;
    for (auto& p : out.pieces_) p = -p;
    out.left_ = -out.left_;
    out.right_ = -out.right_;
    return out;
}

namespace {

TailedPiecewise tp_combine(const TailedPiecewise& a, const TailedPiecewise& b, bool mul);

}

TailedPiecewise operator+(const TailedPiecewise& a, const TailedPiecewise& b) {
    return tp_combine(a, b, false);
}

TailedPiecewise operator-(const TailedPiecewise& a, const TailedPiecewise& b) { return a + (-b); }

TailedPiecewise operator*(const TailedPiecewise& a, const TailedPiecewise& b) {
    return tp_combine(a, b, true);
}

bool operator==(const TailedPiecewise& a, const TailedPiecewise& b) {
    return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_ && a.left_ == b.left_ &&
           a.right_ == b.right_;
}

TailedPiecewise TailedPiecewise::scaled(const Rational& c) const {
    TailedPiecewise out = *this;
    for (auto& p : out.pieces_) p = p.scaled(c);
    out.left_ = out.left_.scaled(c);
    out.right_ = out.right_.scaled(c);
    out.normalize();
    return out;
}

int TailedPiecewise::continuity_class() const {
    int cls = INT_MAX;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        const Poly& l = (i == 0) ? left_ : pieces_[i - 1];
        const Poly& r = (i == breaks_.size() - 1) ? right_ : pieces_[i];
        cls = std::min(cls, contact_order(l, r, breaks_[i]));
    }
    return cls;
}

TailedPiecewise TailedPiecewise::derivative() const {
    int cls = continuity_class();
    if (cls < 1)
        throw InsufficientSmoothness(
            "function is C^" + std::to_string(cls) +
            "; classical derivative undefined (distributional derivative required)");
    TailedPiecewise out = *this;
    for (auto& p : out.pieces_) p = p.derivative();
    out.left_ = out.left_.derivative();
    out.right_ = out.right_.derivative();
    out.normalize();
    return out;
}

TailedPiecewise TailedPiecewise::nth_derivative(unsigned n) const {
    TailedPiecewise f = *this;
    for (unsigned i = 0; i < n; ++i) f = f.derivative();
    return f;
}

Rational TailedPiecewise::integrate(const Rational& a, const Rational& b) const {
    if (a > b) throw DomainError("integrate: invalid interval");
    Rational acc(0);
    Rational lo = breaks_.front(), hi = breaks_.back();
    if (a < min(lo, b)) {
        Poly anti = left_.antiderivative();
        Rational ub = min(lo, b);
        acc += anti(ub) - anti(a);
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        Rational l = max(a, breaks_[i]);
        Rational h = min(b, breaks_[i + 1]);
        if (l >= h) continue;
        Poly anti = pieces_[i].antiderivative();
        acc += anti(h) - anti(l);
    }
    if (b > max(hi, a)) {
        Poly anti = right_.antiderivative();
        Rational lb = max(hi, a);
        acc += anti(b) - anti(lb);
    }
    return acc;
}

PiecewisePoly TailedPiecewise::materialized(const Rational& a, const Rational& b) const {
    if (a >= b) throw DomainError("materialized: empty window");
    std::set<Rational> cuts{a, b};
    for (const auto& t : breaks_)
        if (a < t && t < b) cuts.insert(t);
    std::vector<Rational> breaks(cuts.begin(), cuts.end());
    std::vector<Poly> pieces;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        pieces.push_back(tp_piece_between(breaks_, pieces_, left_, right_, breaks[i], breaks[i + 1]));
    return PiecewisePoly(std::move(breaks), std::move(pieces));
}

namespace {

TailedPiecewise tp_combine(const TailedPiecewise& a, const TailedPiecewise& b, bool mul) {
    std::set<Rational> cuts;
    auto add_window = [&](const TailedPiecewise& t) {
        cuts.insert(t.window_lo());
        cuts.insert(t.window_hi());
    };
    add_window(a);
    add_window(b);
    Rational lo = *cuts.begin(), hi = *cuts.rbegin();
    if (lo == hi) hi = lo + Rational(1);
    PiecewisePoly am = a.materialized(lo - Rational(1), hi + Rational(1));
    PiecewisePoly bm = b.materialized(lo - Rational(1), hi + Rational(1));
    // Materialization covers [lo-1, hi+1]; outside, combine the tails directly.
    Poly left = mul ? a.left_tail() * b.left_tail() : a.left_tail() + b.left_tail();
    Poly right = mul ? a.right_tail() * b.right_tail() : a.right_tail() + b.right_tail();
    PiecewisePoly core = mul ? am * bm : am + bm;
    // Rebuild the core on exactly [lo-1, hi+1] so the tails take over outside.
    std::set<Rational> corecuts{lo - Rational(1), hi + Rational(1)};
    for (const auto& t : core.breakpoints())
        if (lo - Rational(1) < t && t < hi + Rational(1)) corecuts.insert(t);
    std::vector<Rational> breaks(corecuts.begin(), corecuts.end());
    std::vector<Poly> pieces;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        Rational m2 = breaks[i] + breaks[i + 1];
        // pick the piece polynomial covering this subinterval
        const auto& bk = core.breakpoints();
        Poly p{};
        if (!core.is_zero() && !(breaks[i + 1] <= bk.front()) && !(breaks[i] >= bk.back())) {
            auto it = std::upper_bound(bk.begin(), bk.end(), breaks[i]);
            p = core.pieces()[static_cast<std::size_t>(it - bk.begin()) - 1];
        }
        (void)m2;
        pieces.push_back(std::move(p));
    }
    PiecewisePoly rebuilt(std::move(breaks), std::move(pieces));
    if (rebuilt.is_zero() && left.is_zero() && right.is_zero()) return TailedPiecewise{};
    if (rebuilt.is_zero()) {
        //핵 zero core but nonzero tails: synthesize an explicit window
        rebuilt = PiecewisePoly::single(lo - Rational(1), hi + Rational(1), Poly{});
        TailedPiecewise out;
        return TailedPiecewise(PiecewisePoly({lo - Rational(1), hi + Rational(1)}, {Poly{}}),
                               std::move(left), std::move(right));
    }
    return TailedPiecewise(std::move(rebuilt), std::move(left), std::move(right));
}

}  // namespace

TailedPiecewise TailedPiecewise::convolve_compact(const PiecewisePoly& g) const {
    if (g.is_zero() || is_zero()) return TailedPiecewise{};
    auto supp = g.support();
    Rational u = supp->first, v = supp->second;
    Poly newleft = convolve_poly_moments(left_, g);
    Poly newright = convolve_poly_moments(right_, g);
    Rational wlo = window_lo() + u, whi = window_hi() + v;
    // For x in [wlo, whi] the convolution reads f on [x-v, x-u], which lies in
    // the materialization window below; the result is exact there.
    PiecewisePoly mat = materialized(window_lo() + u - v - Rational(1), window_hi() + v - u + Rational(1));
    PiecewisePoly conv = convolve(mat, g);
    std::set<Rational> cuts{wlo, whi};
    for (const auto& t : conv.breakpoints())
        if (wlo < t && t < whi) cuts.insert(t);
    std::vector<Rational> breaks(cuts.begin(), cuts.end());
    std::vector<Poly> pieces;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto& bk = conv.breakpoints();
        Poly p{};
        if (!conv.is_zero() && !(breaks[i + 1] <= bk.front()) && !(breaks[i] >= bk.back())) {
            auto it = std::upper_bound(bk.begin(), bk.end(), breaks[i]);
            p = conv.pieces()[static_cast<std::size_t>(it - bk.begin()) - 1];
        }
        pieces.push_back(std::move(p));
    }
    return TailedPiecewise(PiecewisePoly(std::move(breaks), std::move(pieces)), std::move(newleft),
                           std::move(newright));
}

std::string TailedPiecewise::str() const {
    std::ostringstream os;
    os << "(..., " << breaks_.front().str() << "]: " << left_.str();
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        os << ", [" << breaks_[i].str() << ", " << breaks_[i + 1].str() << "]: " << pieces_[i].str();
    os << ", [" << breaks_.back().str() << ", ...): " << right_.str();
    return os.str();
}

TailedPiecewise primitive(const PiecewisePoly& f) {
    if (f.is_zero()) return TailedPiecewise{};
    const auto& breaks = f.breakpoints();
    std::vector<Poly> pieces;
    Rational acc(0);
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        Poly anti = f.pieces()[i].antiderivative();
        pieces.push_back(anti + Poly::constant(acc - anti(breaks[i])));
        acc += anti(breaks[i + 1]) - anti(breaks[i]);
    }
    return TailedPiecewise(PiecewisePoly(breaks, std::move(pieces)), Poly{},
                           Poly::constant(acc));
}

Poly convolve_poly_moments(const Poly& p, const PiecewisePoly& g) {
    if (p.is_zero() || g.is_zero()) return Poly{};
    Poly acc;
    Poly dp = p;
    Rational factorial(1);
    for (long i = 0; i <= p.degree(); ++i) {
        if (i > 0) {
            dp = dp.derivative();
            factorial *= Rational(i);
        }
        Rational mi = g.moment(static_cast<unsigned>(i));
        Rational sign = (i % 2 == 0) ? Rational(1) : Rational(-1);
        acc += dp.scaled(sign * mi / factorial);
    }
    return acc;
}

}  // namespace asympt
