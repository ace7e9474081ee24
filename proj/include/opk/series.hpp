#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "opk/rational.hpp"

namespace opk {

// Formal power series with exact rational coefficients, truncated at a stated
// order: coefficients of t^0 .. t^order are meaningful, arithmetic is exact
// mod t^(order+1).
class TruncatedSeries {
  public:
    explicit TruncatedSeries(int order) : c_(static_cast<std::size_t>(order) + 1) {
        if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
    }

    TruncatedSeries(int order, std::vector<Rational> coeffs) : TruncatedSeries(order) {
        for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = std::move(coeffs[i]);
    }

    // the series t
    static TruncatedSeries identity(int order) {
        TruncatedSeries s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](std::size_t i) const { return c_.at(i); }
    void set(std::size_t i, Rational v) { c_.at(i) = std::move(v); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    // index of the highest nonzero coefficient, or -1
    int top() const {
        for (int i = order(); i >= 0; --i)
            if (c_[static_cast<std::size_t>(i)] != 0) return i;
        return -1;
    }

    TruncatedSeries truncated(int new_order) const {
        TruncatedSeries s(new_order);
        for (std::size_t i = 0; i < s.c_.size() && i < c_.size(); ++i) s.c_[i] = c_[i];
        return s;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries s(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] = a.c_[i] + b.c_[i];
        return s;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries s(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] = a.c_[i] - b.c_[i];
        return s;
    }

    friend TruncatedSeries operator*(const Rational& s, TruncatedSeries a) {
        for (auto& c : a.c_) c *= s;
        return a;
    }

    // schoolbook product, skipping zero coefficients (the series met here are
    // often supported on a sparse arithmetic progression)
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries s(std::min(a.order(), b.order()));
        const int N = s.order();
        for (int i = 0; i <= std::min(a.order(), N); ++i) {
            const Rational& ai = a.c_[static_cast<std::size_t>(i)];
            if (ai == 0) continue;
            const int jmax = std::min(b.order(), N - i);
            for (int j = 0; j <= jmax; ++j) {
                const Rational& bj = b.c_[static_cast<std::size_t>(j)];
                if (bj == 0) continue;
                s.c_[static_cast<std::size_t>(i + j)] += ai * bj;
            }
        }
        return s;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.c_ == b.c_;
    }

  private:
    std::vector<Rational> c_;
};

// 1/f mod t^(order+1); requires a nonzero constant term.
inline TruncatedSeries reciprocal(const TruncatedSeries& f) {
    if (f[0] == 0) throw std::invalid_argument("reciprocal: zero constant term");
    TruncatedSeries r(f.order());
    Rational inv0 = 1 / f[0];
    r.set(0, inv0);
    for (int k = 1; k <= f.order(); ++k) {
        Rational acc(0);
        for (int j = 1; j <= k; ++j)
            if (f[static_cast<std::size_t>(j)] != 0)
                acc += f[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
        r.set(static_cast<std::size_t>(k), -acc * inv0);
    }
    return r;
}

// g(f(t)) truncated at the smaller order; f must have zero constant term.
inline TruncatedSeries compose(const TruncatedSeries& g, const TruncatedSeries& f) {
    if (f[0] != 0) throw std::invalid_argument("compose: inner series has a constant term");
    const int N = std::min(g.order(), f.order());
    TruncatedSeries acc(N);
    TruncatedSeries fN = f.truncated(N);
    for (int i = g.top(); i >= 0; --i) {
        acc = acc * fN;
        acc.set(0, acc[0] + g[static_cast<std::size_t>(i)]);
    }
    return acc;
}

// Compositional inverse by the coefficient-extraction formula
// [t^k] f^<-1> = (1/k) [u^(k-1)] (u/f(u))^k.
inline TruncatedSeries lagrange_invert(const TruncatedSeries& f) {
    if (f[0] != 0 || f.order() < 1 || f[1] == 0)
        throw std::invalid_argument("lagrange_invert: need zero constant term and nonzero t coefficient");
    const int N = f.order();
    // u/f(u) = 1/(c1 + c2 u + ...), one order lower is enough
    TruncatedSeries shifted(N - 1 >= 0 ? N - 1 : 0);
    for (int i = 0; i <= shifted.order(); ++i) shifted.set(static_cast<std::size_t>(i), f[static_cast<std::size_t>(i + 1)]);
    TruncatedSeries h = reciprocal(shifted);
    TruncatedSeries pow(h.order());
    pow.set(0, Rational(1));
    TruncatedSeries out(N);
    for (int k = 1; k <= N; ++k) {
        pow = pow * h;
        out.set(static_cast<std::size_t>(k), pow[static_cast<std::size_t>(k - 1)] / Rational(static_cast<long>(k)));
    }
    return out;
}

// Compositional inverse by order-doubling fixed-point iteration
// g <- g - (f(g) - t) / f'(g); the independent second route.
inline TruncatedSeries newton_invert(const TruncatedSeries& f) {
    if (f[0] != 0 || f.order() < 1 || f[1] == 0)
        throw std::invalid_argument("newton_invert: need zero constant term and nonzero t coefficient");
    const int N = f.order();
    TruncatedSeries fp(N);  // f'
    for (int i = 1; i <= N; ++i)
        fp.set(static_cast<std::size_t>(i - 1), Rational(static_cast<long>(i)) * f[static_cast<std::size_t>(i)]);
    TruncatedSeries g(1);
    g.set(1, 1 / f[1]);
    int m = 1;
    while (m < N) {
        m = std::min(2 * m, N);
        TruncatedSeries gm = g.truncated(m);
        TruncatedSeries err = compose(f.truncated(m), gm) - TruncatedSeries::identity(m);
        TruncatedSeries slope = compose(fp.truncated(m), gm);
        g = gm - err * reciprocal(slope);
    }
    return g;
}

inline std::optional<int> first_nonzero_index(const TruncatedSeries& s) {
    for (int i = 0; i <= s.order(); ++i)
        if (s[static_cast<std::size_t>(i)] != 0) return i;
    return std::nullopt;
}

// g_P(g_dual(t)) - t: identically zero through the truncation order when the
// operad is Koszul.
inline TruncatedSeries gk_residual(const TruncatedSeries& gp, const TruncatedSeries& gdual) {
    return compose(gp, gdual) - TruncatedSeries::identity(std::min(gp.order(), gdual.order()));
}

// Generator series of the minimal model: g_E(t) = t - g_P^<-1>(t).
inline TruncatedSeries minimal_model_generators(const TruncatedSeries& gp) {
    return TruncatedSeries::identity(gp.order()) - lagrange_invert(gp);
}

// Index of the first strictly negative coefficient, if any.
inline std::optional<int> scan_negative(const TruncatedSeries& s) {
    for (int i = 0; i <= s.order(); ++i)
        if (s[static_cast<std::size_t>(i)] < 0) return i;
    return std::nullopt;
}

struct GapReport {
    std::vector<Rational> weight_coeffs;  // coefficient at t^(p(n-1)+1), index p
    std::optional<int> q;                 // first weight >= 2 with a zero after a nonzero
    int d = 0;                            // zero-run length within the truncation
    bool nonzero_after = false;
};

// Gap detection on a generator series supported on exponents p(n-1)+1. The
// test is zero/nonzero only, so it is independent of the sign convention for
// Euler characteristics.
inline GapReport detect_gap(const TruncatedSeries& ge, int n) {
    if (n < 2) throw std::invalid_argument("detect_gap: n >= 2 required");
    for (int i = 0; i <= ge.order(); ++i)
        if (ge[static_cast<std::size_t>(i)] != 0 && (i < 1 || (i - 1) % (n - 1) != 0))
            throw std::invalid_argument("detect_gap: support violates the arity constraint");
    GapReport r;
    const int pmax = (ge.order() - 1) / (n - 1);
    for (int p = 0; p <= pmax; ++p)
        r.weight_coeffs.push_back(ge[static_cast<std::size_t>(p * (n - 1) + 1)]);
    for (int p = 2; p <= pmax; ++p) {
        if (r.weight_coeffs[static_cast<std::size_t>(p)] == 0 &&
            r.weight_coeffs[static_cast<std::size_t>(p - 1)] != 0) {
            r.q = p;
            int d = 0;
            while (p + d <= pmax && r.weight_coeffs[static_cast<std::size_t>(p + d)] == 0) ++d;
            r.d = d;
            r.nonzero_after = (p + d <= pmax);
            break;
        }
    }
    return r;
}

// Series files: one "exponent coefficient" pair per line, exact fractions.
inline void write_series(std::ostream& os, const TruncatedSeries& s) {
    for (int i = 0; i <= s.order(); ++i)
        if (s[static_cast<std::size_t>(i)] != 0)
            os << i << ' ' << to_string(s[static_cast<std::size_t>(i)]) << '\n';
}

inline TruncatedSeries read_series(std::istream& is, int order) {
    TruncatedSeries s(order);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long expo;
        std::string coeff;
        if (!(ls >> expo >> coeff)) throw std::invalid_argument("read_series: malformed line: " + line);
        if (expo < 0) throw std::invalid_argument("read_series: negative exponent");
        if (expo <= order) s.set(static_cast<std::size_t>(expo), rat_from_string(coeff));
    }
    return s;
}

}  // namespace opk
