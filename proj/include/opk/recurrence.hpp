#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opk/polynomial.hpp"
#include "opk/rational.hpp"

namespace opk {

// Linear recurrence with polynomial coefficients, alternating-sign
// convention: sum_{i=0}^{k} (-1)^i s_i(n) x_{n-i} = 0.
struct Recurrence {
    std::vector<IntPoly> s;

    int order() const { return static_cast<int>(s.size()) - 1; }
};

namespace detail {

inline IntPoly poly_from_strings(const std::vector<const char*>& ascending) {
    std::vector<Integer> c;
    c.reserve(ascending.size());
    for (const char* s : ascending) c.push_back(int_from_string(s));
    return IntPoly(std::move(c));
}

// product of (a*n + b - k) for k = 0 .. count-1
inline IntPoly falling_product(long a, long b, int count) {
    IntPoly p({Integer(1)});
    for (int k = 0; k < count; ++k) p = p * IntPoly({Integer(b - k), Integer(a)});
    return p;
}

}  // namespace detail

// The order-2 recurrence annihilating the coefficients of h (the inverse of
// t - t^8 + t^15 reads t h(t^7)), stored in the factored form in which it was
// derived by creative telescoping:
//   s0 = 2187 (prod_{k=0}^{13} (7n+1-k)) (degree-6 factor)
//   s1 = (prod_{k=0}^{6} (7n-6-k)) (degree-13 factor)
//   s2 = 15 (15n-14) (prod_{k=0}^{12} (15n-16-k)) (degree-6 factor)
// All three expand to degree 20. The transcription is gated four ways: the
// residual on the closed-form sequence, the residual of the re-guessed
// recurrence, the characteristic-polynomial coefficients, and the exact roots.
inline Recurrence telescoped_recurrence() {
    IntPoly s0 = IntPoly({Integer(2187)}) * detail::falling_product(7, 1, 14) *
                 detail::poly_from_strings({"-1760658480", "4812446376", "-3846578936",
                                            "-658627050", "2527684225", "-1295222226",
                                            "215870371"});
    IntPoly s1 = detail::falling_product(7, -6, 7) *
                 detail::poly_from_strings(
                     {"1361946602938521600", "-27319025166066426240", "228076143949070673408",
                      "-1062333018859963548504", "3092269284168816801572",
                      "-5912167336650049878706", "7497470293244974003099",
                      "-6061259307194791053272", "2596574853470043847011",
                      "123881005609280551032", "-848711700458546819207",
                      "485734175892096120376", "-126939777974315203483",
                      "13362081892033179314"});
    IntPoly s2 = IntPoly({Integer(15)}) * IntPoly({Integer(-14), Integer(15)}) *
         detail::falling_product(15, -16, 13) *
         detail::poly_from_strings({"-5085720", "73255350", "-370521431", "817295010",
                                    "-710371340", "0", "215870371"});
    return Recurrence{{s0, s1, s2}};
}

struct ResidualReport {
    bool all_zero = true;
    std::optional<long> first_nonzero_n;
    Rational first_nonzero_value;
};

// Exact residual sum_i (-1)^i s_i(n) x_{n-i} over lo <= n <= hi; zero iff the
// sequence solves the recurrence on the range.
inline ResidualReport residual_check(const Recurrence& r, const std::vector<Rational>& x, long lo,
                                     long hi) {
    ResidualReport rep;
    if (lo < r.order()) throw std::invalid_argument("residual_check: range needs predecessors");
    if (hi >= static_cast<long>(x.size())) throw std::invalid_argument("residual_check: range beyond table");
    for (long n = lo; n <= hi; ++n) {
        Rational acc(0);
        for (int i = 0; i <= r.order(); ++i) {
            Rational term = Rational(r.s[static_cast<std::size_t>(i)].eval(Integer(n))) *
                            x[static_cast<std::size_t>(n - i)];
            acc += (i % 2 == 0) ? term : -term;
        }
        if (acc != 0) {
            rep.all_zero = false;
            rep.first_nonzero_n = n;
            rep.first_nonzero_value = acc;
            return rep;
        }
    }
    return rep;
}

// Undetermined-coefficients recurrence guessing: finds a nonzero element of
// the nullspace of the interpolation system over the exact data, normalized
// by integer content with the top coefficient of s_0 positive. Returns
// nullopt when no recurrence of the given shape annihilates the data.
inline std::optional<Recurrence> guess_recurrence(const std::vector<Rational>& x, int order,
                                                  int degree, int safety_margin = 8) {
    const int unknowns = (order + 1) * (degree + 1);
    const long first_n = order;
    const long rows_needed = unknowns + safety_margin;
    if (static_cast<long>(x.size()) < first_n + rows_needed)
        throw std::invalid_argument("guess_recurrence: not enough terms");

    // row for n: sum_{i,d} (-1)^i n^d x_{n-i} c_{i,d} = 0
    std::vector<std::vector<Rational>> m;
    for (long n = first_n; n < first_n + rows_needed; ++n) {
        std::vector<Rational> row;
        row.reserve(static_cast<std::size_t>(unknowns));
        for (int i = 0; i <= order; ++i) {
            Rational base = x[static_cast<std::size_t>(n - i)];
            if (i % 2 == 1) base = -base;
            Rational npow(1);
            for (int d = 0; d <= degree; ++d) {
                row.push_back(base * npow);
                npow *= Rational(n);
            }
        }
        m.push_back(std::move(row));
    }

    // Gauss-Jordan to reduced row echelon form
    const std::size_t ncols = static_cast<std::size_t>(unknowns);
    std::vector<long> pivot_row_of_col(ncols, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
        std::size_t sel = rank;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[rank], m[sel]);
        Rational inv = 1 / m[rank][col];
        for (std::size_t j = col; j < ncols; ++j) m[rank][j] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t j = col; j < ncols; ++j) m[r][j] -= f * m[rank][j];
        }
        pivot_row_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    if (rank == ncols) return std::nullopt;  // trivial nullspace only

    // kernel vector: first free column set to 1
    std::size_t free_col = 0;
    while (pivot_row_of_col[free_col] >= 0) ++free_col;
    std::vector<Rational> v(ncols, Rational(0));
    v[free_col] = 1;
    for (std::size_t col = 0; col < ncols; ++col) {
        long pr = pivot_row_of_col[col];
        if (pr >= 0) v[col] = -m[static_cast<std::size_t>(pr)][free_col];
    }

    // clear denominators, strip content, make the leading coefficient of s_0
    // positive
    Integer lcm(1);
    for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> w(ncols);
    Integer g(0);
    for (std::size_t j = 0; j < ncols; ++j) {
        w[j] = Rational(v[j] * Rational(lcm)).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[j].get_mpz_t());
    }
    for (auto& z : w) z = div_exact(z, g);
    int s0_top_sign = 0;
    for (int d = degree; d >= 0 && s0_top_sign == 0; --d) s0_top_sign = sgn(w[static_cast<std::size_t>(d)]);
    if (s0_top_sign < 0)
        for (auto& z : w) z = -z;

    Recurrence rec;
    for (int i = 0; i <= order; ++i) {
        std::vector<Integer> coeffs(w.begin() + static_cast<long>(i) * (degree + 1),
                                    w.begin() + static_cast<long>(i + 1) * (degree + 1));
        rec.s.emplace_back(std::move(coeffs));
    }
    return rec;
}

// Two recurrences of the same order annihilate the same solution space iff
// their coefficient vectors are proportional at every n; the cross products
// s_i s'_j - s_j s'_i must vanish identically.
inline bool residual_equivalent(const Recurrence& a, const Recurrence& b) {
    if (a.order() != b.order()) return false;
    for (std::size_t i = 0; i < a.s.size(); ++i)
        for (std::size_t j = i + 1; j < a.s.size(); ++j)
            if (!(a.s[i] * b.s[j] == a.s[j] * b.s[i])) return false;
    return true;
}

// Roots of the characteristic polynomial chi(t) = a0 t^2 - a1 t + a2, the
// a_i being the top-degree coefficients of the s_i (the recurrence's own
// signs folded in). Smaller root first.
inline std::optional<std::pair<Rational, Rational>> char_roots(const Recurrence& r) {
    if (r.order() != 2) throw std::invalid_argument("char_roots: order-2 recurrence required");
    int d = std::max({r.s[0].degree(), r.s[1].degree(), r.s[2].degree()});
    Integer a0 = r.s[0].coeff(static_cast<std::size_t>(d));
    Integer a1 = r.s[1].coeff(static_cast<std::size_t>(d));
    Integer a2 = r.s[2].coeff(static_cast<std::size_t>(d));
    return quadratic_roots_exact(a0, -a1, a2);
}

inline IntPoly characteristic_polynomial(const Recurrence& r) {
    int d = 0;
    for (const auto& p : r.s) d = std::max(d, p.degree());
    std::vector<Integer> c(r.s.size());
    for (std::size_t i = 0; i < r.s.size(); ++i) {
        Integer a = r.s[i].coeff(static_cast<std::size_t>(d));
        c[r.s.size() - 1 - i] = (i % 2 == 0) ? a : -a;
    }
    return IntPoly(std::move(c));
}

struct RadiusFacts {
    bool derivative_factors = false;   // 1 - 8t^7 + 15t^14 == (1-3t^7)(1-5t^7)
    bool critical_value_identity = false;  // ((1/5^(1/7))(21/25))^7 == 21^7/5^15
    bool lambda_minus_inverse = false;     // lambda_- * radius == 1
    Rational radius;                       // 21^7 / 5^15
    Rational lambda_minus;
    Rational lambda_plus;

    bool pass() const { return derivative_factors && critical_value_identity && lambda_minus_inverse; }
};

// The radius-of-convergence facts behind the asymptotics: the derivative of
// t - t^8 + t^15 factors exactly, the critical value collapses to 21^7/5^15,
// and that value is the reciprocal of the smaller characteristic root.
inline RadiusFacts radius_facts() {
    RadiusFacts f;
    IntPoly lhs;
    {
        std::vector<Integer> c(15, Integer(0));
        c[0] = 1;
        c[7] = -8;
        c[14] = 15;
        lhs = IntPoly(std::move(c));
    }
    std::vector<Integer> f3(8, Integer(0)), f5(8, Integer(0));
    f3[0] = 1;
    f3[7] = -3;
    f5[0] = 1;
    f5[7] = -5;
    f.derivative_factors = (lhs == IntPoly(std::move(f3)) * IntPoly(std::move(f5)));

    f.radius = rat(pow_int(Integer(21), 7), pow_int(Integer(5), 15));
    Rational crit = pow_rat(rat(21, 25), 7) / Rational(5);
    f.critical_value_identity = (crit == f.radius);

    auto roots = char_roots(telescoped_recurrence());
    if (roots) {
        f.lambda_minus = roots->first;
        f.lambda_plus = roots->second;
        f.lambda_minus_inverse = (f.lambda_minus * f.radius == 1);
    }
    return f;
}

}  // namespace opk
