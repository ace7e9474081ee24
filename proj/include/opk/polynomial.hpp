#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "opk/rational.hpp"

namespace opk {

// Dense univariate polynomial, coefficient of x^i at index i. Normalized:
// no trailing zero coefficients, degree() == -1 for the zero polynomial.
template <class T>
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static UniPoly monomial(T coeff, std::size_t power) {
        std::vector<T> c(power + 1);
        c[power] = std::move(coeff);
        return UniPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& leading() const { return c_.back(); }

    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

    template <class X>
    X eval(const X& x) const {
        X acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return UniPoly(std::move(d));
    }

    UniPoly operator-() const {
        auto c = c_;
        for (auto& x : c) x = -x;
        return UniPoly(std::move(c));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (b.c_[j] != 0) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const T& s, const UniPoly& p) {
        auto c = p.c_;
        for (auto& x : c) x *= s;
        return UniPoly(std::move(c));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPoly = UniPoly<Integer>;
using RatPoly = UniPoly<Rational>;

inline RatPoly to_rational(const IntPoly& p) {
    std::vector<Rational> c(p.coeffs().begin(), p.coeffs().end());
    return RatPoly(std::move(c));
}

// Multiplies by the lcm of denominators; the positive scale preserves signs
// and real roots.
inline IntPoly clear_denominators(const RatPoly& p) {
    Integer l(1);
    for (const auto& q : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.push_back(q.get_num() * div_exact(l, q.get_den()));
    return IntPoly(std::move(c));
}

inline Integer content(const IntPoly& p) {
    Integer g(0);
    for (const auto& c : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    Integer g = content(p);
    if (sgn(p.leading()) < 0) g = -g;
    std::vector<Integer> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(div_exact(x, g));
    return IntPoly(std::move(c));
}

// Euclidean remainder over the rationals.
inline RatPoly rem(RatPoly a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("rem: division by zero polynomial");
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational q = a.leading() / b.leading();
        a = a - RatPoly::monomial(q, static_cast<std::size_t>(a.degree() - b.degree())) * b;
    }
    return a;
}

inline IntPoly gcd_poly(const IntPoly& a, const IntPoly& b) {
    RatPoly u = to_rational(a), v = to_rational(b);
    while (!v.is_zero()) {
        RatPoly r = rem(u, v);
        // keep coefficients small along the remainder sequence
        u = v;
        v = to_rational(primitive_part(clear_denominators(r)));
    }
    return primitive_part(clear_denominators(u));
}

inline IntPoly squarefree_part(const IntPoly& p) {
    if (p.degree() <= 0) return primitive_part(p);
    IntPoly g = gcd_poly(p, p.derivative());
    if (g.degree() == 0) return primitive_part(p);
    // exact division p / g over the rationals
    RatPoly u = to_rational(p), d = to_rational(g), q;
    while (!u.is_zero() && u.degree() >= d.degree()) {
        Rational c = u.leading() / d.leading();
        auto m = RatPoly::monomial(c, static_cast<std::size_t>(u.degree() - d.degree()));
        q = q + m;
        u = u - m * d;
    }
    return primitive_part(clear_denominators(q));
}

// Integer polynomial with the same signs on x > 0 as p(x + b) for rational b:
// with b = u/v this is sum_i c_i v^(d-i) (v x + u)^i, computed by Horner.
inline IntPoly shift_cleared(const IntPoly& p, const Rational& b) {
    const Integer u = b.get_num(), v = b.get_den();
    IntPoly acc;
    IntPoly lin({u, v});
    Integer vpow(1);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * lin + IntPoly({p.coeff(static_cast<std::size_t>(i)) * vpow});
        if (i > 0) vpow *= v;
    }
    return acc;
}

inline int sign_variations(const std::vector<int>& signs) {
    int var = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

inline int descartes_variations(const IntPoly& p) {
    std::vector<int> s;
    s.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) s.push_back(sgn(c));
    return sign_variations(s);
}

// Sturm chain of the squarefree part; each member is primitive over Z
// (positive rescaling keeps the sign sequence of a Sturm chain valid).
inline std::vector<IntPoly> sturm_sequence(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm_sequence: zero polynomial");
    std::vector<IntPoly> chain;
    IntPoly p0 = squarefree_part(p);
    chain.push_back(p0);
    if (p0.degree() == 0) return chain;
    chain.push_back(primitive_part(p0.derivative()));
    while (chain.back().degree() > 0) {
        RatPoly r = rem(to_rational(chain[chain.size() - 2]), to_rational(chain.back()));
        if (r.is_zero()) break;  // cannot happen for squarefree input
        chain.push_back(primitive_part(clear_denominators(-r)));
    }
    return chain;
}

inline int sturm_variations_at(const std::vector<IntPoly>& chain, const Rational& x) {
    std::vector<int> s;
    s.reserve(chain.size());
    for (const auto& p : chain) s.push_back(sgn(p.eval(x)));
    return sign_variations(s);
}

inline int sturm_variations_at_plus_infinity(const std::vector<IntPoly>& chain) {
    std::vector<int> s;
    s.reserve(chain.size());
    for (const auto& p : chain) s.push_back(sgn(p.leading()));
    return sign_variations(s);
}

// Number of distinct real roots in the open interval (a, b).
inline int sturm_count_open(const IntPoly& p, const Rational& a, const Rational& b) {
    IntPoly sf = squarefree_part(p);
    // endpoints that are roots must be deflated before comparing variations
    for (const Rational& e : {a, b}) {
        while (sf.eval(e) == 0) {
            RatPoly lin({-e, Rational(1)});
            RatPoly u = to_rational(sf), q;
            while (!u.is_zero() && u.degree() >= 1) {
                auto m = RatPoly::monomial(u.leading(), static_cast<std::size_t>(u.degree() - 1));
                q = q + m;
                u = u - m * lin;
            }
            sf = primitive_part(clear_denominators(q));
        }
    }
    auto chain = sturm_sequence(sf);
    return sturm_variations_at(chain, a) - sturm_variations_at(chain, b);
}

// Distinct real roots strictly greater than bound. Descartes on the shifted
// polynomial decides when it reports 0 or 1 variations (exact in both cases);
// otherwise Sturm on the squarefree part.
inline int count_real_roots_above(const IntPoly& p, const Rational& bound) {
    if (p.is_zero()) throw std::invalid_argument("count_real_roots_above: zero polynomial");
    IntPoly q = shift_cleared(p, bound);
    // strip roots at the bound itself: powers of x
    std::size_t low = 0;
    while (low < q.coeffs().size() && q.coeffs()[low] == 0) ++low;
    if (low > 0) {
        std::vector<Integer> c(q.coeffs().begin() + static_cast<long>(low), q.coeffs().end());
        q = IntPoly(std::move(c));
    }
    int var = descartes_variations(q);
    if (var <= 1) return var;
    auto chain = sturm_sequence(q);  // takes the squarefree part internally
    return sturm_variations_at(chain, Rational(0)) - sturm_variations_at_plus_infinity(chain);
}

inline int count_real_roots_above(const RatPoly& p, const Rational& bound) {
    return count_real_roots_above(clear_denominators(p), bound);
}

// Both roots of a x^2 + b x + c when they are rational (perfect-square
// discriminant), smaller root first; nullopt signals irrational/complex roots.
inline std::optional<std::pair<Rational, Rational>> quadratic_roots_exact(const Integer& a,
                                                                          const Integer& b,
                                                                          const Integer& c) {
    if (sgn(a) == 0) throw std::invalid_argument("quadratic_roots_exact: a = 0");
    Integer disc = b * b - 4 * a * c, root;
    if (!perfect_sqrt(disc, root)) return std::nullopt;
    Rational r1 = rat(-b - root, 2 * a), r2 = rat(-b + root, 2 * a);
    if (r2 < r1) std::swap(r1, r2);
    return std::make_pair(r1, r2);
}

}  // namespace opk
