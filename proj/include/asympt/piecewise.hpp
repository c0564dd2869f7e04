#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asympt/poly.hpp"

namespace asympt {

// Compactly supported piecewise polynomial with rational breakpoints.
// Identically zero outside [breaks.front(), breaks.back()]. Canonical form:
// breakpoints strictly increasing, zero end pieces trimmed, adjacent equal
// pieces merged; equality of canonical forms decides equality of functions.
class PiecewisePoly {
  public:
    PiecewisePoly() = default;  // the zero function
    PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces);

    // Single piece p on [a, b].
    static PiecewisePoly single(const Rational& a, const Rational& b, Poly p);
    // Indicator of a finite union of disjoint intervals (given sorted).
    static PiecewisePoly indicator(const std::vector<std::pair<Rational, Rational>>& intervals);

    bool is_zero() const { return pieces_.empty(); }
    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<Poly>& pieces() const { return pieces_; }
    // Support interval, or nullopt for the zero function.
    std::optional<std::pair<Rational, Rational>> support() const;
    long max_degree() const;

    // Pointwise value; pieces are taken on [b_i, b_{i+1}) and the final
    // breakpoint evaluates its piece from the left. Irrelevant wherever the
    // function is continuous.
    Rational operator()(const Rational& x) const;
    Rational eval_left(const Rational& x) const;
    Rational eval_right(const Rational& x) const;
    // Classical n-th derivative at x; throws InsufficientSmoothness when the
    // one-sided jets at a breakpoint disagree.
    Rational derivative_at(const Rational& x, unsigned n) const;

    PiecewisePoly operator-() const;
    friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b);
    friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
        return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_;
    }

    PiecewisePoly scaled(const Rational& c) const;
    // x -> f((x - shift) / scale); scale != 0.
    PiecewisePoly affine(const Rational& scale, const Rational& shift) const;
    PiecewisePoly translated(const Rational& shift) const { return affine(Rational(1), shift); }

    // Exact integral over [a, b] (a <= b required).
    Rational integrate(const Rational& a, const Rational& b) const;
    Rational integrate() const;  // over the whole support
    // Integral of x^k * f over the support.
    Rational moment(unsigned k) const;

    // Largest c such that f is C^c at every breakpoint (support ends count,
    // since f vanishes outside); -1 means a jump somewhere. Returns a large
    // sentinel for the zero function.
    int continuity_class() const;
    // Classical derivative; requires continuity_class() >= 1.
    PiecewisePoly derivative() const;
    PiecewisePoly nth_derivative(unsigned n) const;
    // Piecewise formal derivative, ignoring breakpoint smoothness. Equals the
    // distributional derivative only when f is continuous.
    PiecewisePoly derivative_ae() const;
    // Jump f(x+) - f(x-) at each discontinuity point.
    std::vector<std::pair<Rational, Rational>> jumps() const;

    // f restricted to [a, b] (zero outside).
    PiecewisePoly restricted(const Rational& a, const Rational& b) const;

    // Exact convolution; both operands compactly supported by construction.
    friend PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& g);

    std::string str() const;

  private:
    // Piece index covering x, or npos.
    std::size_t locate(const Rational& x) const;
    void normalize();

    std::vector<Rational> breaks_;  // size n+1 when n pieces, empty when zero
    std::vector<Poly> pieces_;
};

// Piecewise polynomial with polynomial tails: equals left(x) for
// x <= breaks.front(), right(x) for x >= breaks.back(), and piecewise
// polynomials in between. Closed under +, *, derivative, and convolution with
// a compactly supported PiecewisePoly; represents embedded smooth functions
// (global polynomials) and convolution ramps like H * D_eps.
class TailedPiecewise {
  public:
    TailedPiecewise() : TailedPiecewise(PiecewisePoly{}) {}
    // Compact: tails zero.
    TailedPiecewise(PiecewisePoly core);
    // A global polynomial.
    static TailedPiecewise polynomial(Poly p);
    static TailedPiecewise constant(const Rational& c) { return polynomial(Poly::constant(c)); }
    // core inside its window, given tails outside.
    TailedPiecewise(PiecewisePoly core, Poly left, Poly right);

    const Poly& left_tail() const { return left_; }
    const Poly& right_tail() const { return right_; }
    // Window outside which the tails apply.
    Rational window_lo() const { return breaks_.front(); }
    Rational window_hi() const { return breaks_.back(); }
    bool is_compact() const { return left_.is_zero() && right_.is_zero(); }
    bool is_zero() const;

    Rational operator()(const Rational& x) const;
    Rational derivative_at(const Rational& x, unsigned n) const;

    TailedPiecewise operator-() const;
    friend TailedPiecewise operator+(const TailedPiecewise& a, const TailedPiecewise& b);
    friend TailedPiecewise operator-(const TailedPiecewise& a, const TailedPiecewise& b);
    friend TailedPiecewise operator*(const TailedPiecewise& a, const TailedPiecewise& b);
    friend bool operator==(const TailedPiecewise& a, const TailedPiecewise& b);

    TailedPiecewise scaled(const Rational& c) const;
    int continuity_class() const;
    TailedPiecewise derivative() const;
    TailedPiecewise nth_derivative(unsigned n) const;
    Rational integrate(const Rational& a, const Rational& b) const;

    // Exact restriction to [a, b] as a compact PiecewisePoly (zero outside).
    PiecewisePoly materialized(const Rational& a, const Rational& b) const;

    // Exact f * g for compact g: moment formula on the polynomial tails,
    // piecewise convolution in the interior.
    TailedPiecewise convolve_compact(const PiecewisePoly& g) const;

    std::string str() const;

  private:
    void normalize();
    std::vector<Rational> breaks_;  // size >= 2; degenerate window allowed for pure polys
    std::vector<Poly> pieces_;      // size = breaks_.size() - 1
    Poly left_, right_;

    friend class PwSupremum;
};

// Antiderivative A(x) = integral_{-inf}^x f, as a function with constant 0
// left tail and constant integral() right tail.
TailedPiecewise primitive(const PiecewisePoly& f);

// Exact polynomial equal to p * g for a global polynomial p and compact g:
// (p * g)(x) = sum_i p^(i)(x) (-1)^i m_i(g) / i!, where m_i are moments of g.
Poly convolve_poly_moments(const Poly& p, const PiecewisePoly& g);

}  // namespace asympt
