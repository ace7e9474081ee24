#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "opk/cobar.hpp"
#include "opk/consequence.hpp"
#include "opk/positivity.hpp"
#include "opk/recurrence.hpp"
#include "opk/sequences.hpp"
#include "opk/series.hpp"

// The acceptance checks behind both the `run-all` subcommand and the
// acceptance test binary. Each criterion runs exact verifications at pinned
// tolerances and reports a single pass/fail with a short witness summary.
namespace opk::acceptance {

enum class Profile { kQuick, kFull };

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline TreeMonomial graft_chain(const Alphabet& a, TreeMonomial base,
                                std::initializer_list<std::pair<int, int>> steps) {
    for (auto [slot, token] : steps) base = graft(a, base, slot, TreeMonomial::corolla(a, token)).tree;
    return base;
}

// exhaustive check of the contraction rule: contracting a regular edge drops
// card(reg) by one, contracting a singular edge preserves it
inline bool eq2_holds(int n, std::string& detail_out) {
    Alphabet a = Alphabet::cobar(n);
    for (const auto& s : enumerate_trees(a, {n + 1, 0})) {
        auto cls = classify_edges(a, s);
        if (static_cast<int>(cls.regular.size() + cls.singular.size()) != n) {
            detail_out = "edge count != n for " + format_compact(a, s);
            return false;
        }
        for (std::size_t e : cls.regular) {
            auto c = classify_edges(a, contract_edge(a, s, e));
            if (c.regular.size() != cls.regular.size() - 1) {
                detail_out = "regular contraction failed on " + format_compact(a, s);
                return false;
            }
        }
        for (std::size_t e : cls.singular) {
            auto c = classify_edges(a, contract_edge(a, s, e));
            if (c.regular.size() != cls.regular.size()) {
                detail_out = "singular contraction failed on " + format_compact(a, s);
                return false;
            }
        }
    }
    return true;
}

inline TruncatedSeries sparse_series(int order, std::initializer_list<std::pair<int, long>> terms) {
    TruncatedSeries s(order);
    for (auto [e, c] : terms) s.set(static_cast<std::size_t>(e), Rational(c));
    return s;
}

}  // namespace detail

// 1. d(nu) = n! mu^(n+1), exactly, with the n=2 epsilon pattern.
inline CriterionResult criterion_boundary(Profile p) {
    CriterionResult r{1, "boundary formula d(nu) = n! mu^(n+1)", true, ""};
    std::ostringstream d;
    int nmax = (p == Profile::kFull) ? 5 : 4;
    for (int n = 2; n <= nmax; ++n) {
        auto chk = verify_boundary_formula(n);
        r.pass = r.pass && chk.formula_holds;
        d << "n=" << n << " coeff=" << chk.coefficient << (chk.formula_holds ? "" : " MISMATCH") << "; ";
    }
    Alphabet a2 = Alphabet::cobar(2);
    TreePolynomial nu2 = nu(a2, 2);
    TreeMonomial xi = TreeMonomial::corolla(a2, 2);
    TreeMonomial mu = TreeMonomial::corolla(a2, 1);
    auto t1 = graft(a2, xi, 2, mu).tree;  // fat root, mu in the middle slot
    auto t2 = graft(a2, xi, 1, mu).tree;
    auto t3 = graft(a2, xi, 3, mu).tree;
    auto t4 = graft(a2, mu, 1, xi).tree;
    auto t5 = graft(a2, mu, 2, xi).tree;
    bool eps_ok = nu2.coeff(t1) == -1 && nu2.coeff(t2) == -1 && nu2.coeff(t3) == 1 &&
                  nu2.coeff(t4) == 1 && nu2.coeff(t5) == 1;
    r.pass = r.pass && eps_ok;
    d << "n=2 eps pattern (-1,-1,+1,+1,+1): " << (eps_ok ? "ok" : "WRONG");
    r.detail = d.str();
    return r;
}

// 2. The contraction rule holds exhaustively; mu^(n+1) is the unique 0-tree
// without singular edges and no 0-tree lacks regular edges.
inline CriterionResult criterion_eq2(Profile) {
    CriterionResult r{2, "edge rule under contraction + endpoint facts, exhaustive n=2..4", true, ""};
    std::ostringstream d;
    for (int n = 2; n <= 4; ++n) {
        std::string why;
        bool ok = detail::eq2_holds(n, why);
        auto chk = verify_boundary_formula(n);
        r.pass = r.pass && ok && chk.b0_empty && chk.b1_is_comb;
        d << "n=" << n << (ok ? " eq2 ok" : (" eq2 FAIL " + why))
          << (chk.b0_empty ? "" : " B0 nonempty!") << (chk.b1_is_comb ? "" : " B1 not unique!") << "; ";
    }
    r.detail = d.str();
    return r;
}

// 3. c_n is a cycle and not a boundary; the whistle-blower has an empty
// preimage and the predicted coefficient.
inline CriterionResult criterion_cycle(Profile) {
    CriterionResult r{3, "cycle c_n: d(c_n)=0, non-boundary certificate, whistle-blower", true, ""};
    std::ostringstream d;
    for (int n = 2; n <= 4; ++n) {
        Alphabet a = Alphabet::cobar(n);
        TreePolynomial cn = cycle_cn(n);
        bool dz = differential(a, cn).is_zero();
        Integer expect = factorial(static_cast<unsigned long>(n - 1));
        if (n % 2 == 0) expect = -expect;  // (-1)^(n+1) (n-1)!
        bool wc = (cn.coeff(whistle_blower(a, n)) == Rational(expect));
        r.pass = r.pass && dz && wc;
        d << "n=" << n << " d(c_n)=0:" << dz << " coeff(w_n) ok:" << wc << "; ";
    }
    for (int n = 2; n <= 3; ++n) {
        Alphabet a = Alphabet::cobar(n);
        auto q = is_boundary(a, cycle_cn(n));
        bool ok = !q.solvable && q.rank_augmented == q.rank + 1;
        r.pass = r.pass && ok;
        d << "n=" << n << " non-boundary rank " << q.rank << "/" << q.rank_augmented << "; ";
    }
    for (int n = 2; n <= 5; ++n) {
        Alphabet a = Alphabet::cobar(n);
        bool empty = boundary_preimage_monomials(a, whistle_blower(a, n)).empty();
        r.pass = r.pass && empty;
        d << "n=" << n << " preimage empty:" << empty << "; ";
    }
    r.detail = d.str();
    return r;
}

// 4. The n=8 dimension series by exact corank, dual-prime agreement.
inline CriterionResult criterion_dimensions(Profile p) {
    int wmax = (p == Profile::kFull) ? 5 : 4;
    CriterionResult r{4, "n=8 dimension series by consequence-matrix corank", true, ""};
    std::ostringstream d;
    auto ds = poincare_series(8, wmax);
    const long expected[] = {1, 7, 69, 790, 9842};
    for (const auto& w : ds.weights) {
        bool ok = (w.dim == Integer(expected[w.w - 1]));
        r.pass = r.pass && ok;
        d << "w=" << w.w << " dim=" << w.dim << (ok ? "" : " EXPECTED " + std::to_string(expected[w.w - 1])) << "; ";
    }
    r.pass = r.pass && ds.primes_agree;
    d << "primes agree:" << ds.primes_agree;
    r.detail = d.str();
    return r;
}

// 5. The closed form for the inverse-series coefficients reproduces the
// weight dimensions: two fully independent pipelines.
inline CriterionResult criterion_cross_oracle(Profile p) {
    int wmax = (p == Profile::kFull) ? 5 : 4;
    CriterionResult r{5, "a_closed(w) equals the weight-w dimension, w = 2..5", true, ""};
    std::ostringstream d;
    auto ds = poincare_series(8, wmax);
    for (const auto& w : ds.weights) {
        if (w.w < 2) continue;
        Integer aw = a_closed(w.w);
        bool ok = (Rational(aw) == Rational(w.dim));
        r.pass = r.pass && ok;
        d << "w=" << w.w << " a=" << aw << " dim=" << w.dim << (ok ? "" : " MISMATCH") << "; ";
    }
    r.detail = d.str();
    return r;
}

// 6. The minimal-model generator series computed from the dimension data has
// the gap: zero Euler characteristic at weights 3, 4, 5.
inline CriterionResult criterion_gap(Profile p) {
    int wmax = (p == Profile::kFull) ? 5 : 4;
    CriterionResult r{6, "generator series gap at weights >= 3", true, ""};
    std::ostringstream d;
    auto ds = poincare_series(8, wmax);
    TruncatedSeries ge = minimal_model_generators(ds.series);
    bool ok = abs(ge[8]) == 1 && abs(ge[15]) == 1 && ge[22] == 0;
    if (wmax >= 4) ok = ok && ge[29] == 0;
    if (wmax >= 5) ok = ok && ge[36] == 0;
    auto gap = detect_gap(ge, 8);
    ok = ok && gap.q.has_value() && *gap.q == 3;
    r.pass = ok;
    d << "g_E coeffs at 8,15,22,29,36: " << to_string(ge[8]) << "," << to_string(ge[15]) << ","
      << to_string(ge[22]);
    if (wmax >= 4) d << "," << to_string(ge[29]);
    if (wmax >= 5) d << "," << to_string(ge[36]);
    d << "; gap starts at weight " << (gap.q ? std::to_string(*gap.q) : "none");
    r.detail = d.str();
    return r;
}

// 7. The positivity certificate, plus the direct scan of the inverse series.
inline CriterionResult criterion_positivity(Profile) {
    CriterionResult r{7, "positivity: scan through t^350 and the full certificate at N=300", true, ""};
    std::ostringstream d;
    TruncatedSeries f = detail::sparse_series(350, {{1, 1}, {8, -1}, {15, 1}});
    auto neg = scan_negative(lagrange_invert(f));
    r.pass = !neg.has_value();
    d << "scan t^350: " << (neg ? "NEGATIVE at " + std::to_string(*neg) : "none") << "; ";
    auto rep = positivity_certificate(300);
    r.pass = r.pass && rep.all_pass;
    d << "certificate steps: ";
    for (const auto& s : rep.steps) d << (s.pass ? "+" : ("FAIL(" + std::to_string(s.index) + ")"));
    auto rf = radius_facts();
    bool roots_ok = rf.lambda_minus == rat(30517578125L, 1801088541L) &&
                    rf.lambda_plus == rat(14348907L, 823543L) && rf.pass();
    r.pass = r.pass && roots_ok;
    d << "; radius/root identities: " << (roots_ok ? "ok" : "FAIL");
    r.detail = d.str();
    return r;
}

// 8. Recurrence integrity: residuals vanish, the re-guessed recurrence is
// residual-equivalent, and tampering is caught.
inline CriterionResult criterion_recurrence(Profile) {
    CriterionResult r{8, "recurrence: residuals 2..300, re-guess, tamper controls", true, ""};
    std::ostringstream d;
    Recurrence rec = telescoped_recurrence();
    SequenceTable a = a_table(300);
    auto res = residual_check(rec, a.values, 2, 300);
    r.pass = res.all_zero;
    d << "residual(a,2..300)=" << (res.all_zero ? "0" : "NONZERO") << "; ";

    auto guessed = guess_recurrence(a.values, 2, 20);
    bool g_ok = guessed.has_value() && residual_equivalent(*guessed, rec);
    r.pass = r.pass && g_ok;
    d << "guess(2,20) residual-equivalent:" << g_ok << "; ";

    // negative controls: a perturbed value and a perturbed coefficient both fail
    auto tampered_values = a.values;
    tampered_values[10] += 1;
    bool catches_value = !residual_check(rec, tampered_values, 2, 300).all_zero;
    Recurrence bad = rec;
    {
        auto c = bad.s[1].coeffs();
        c[7] += 1;
        bad.s[1] = IntPoly(std::move(c));
    }
    bool catches_coeff = !residual_check(bad, a.values, 2, 300).all_zero;
    r.pass = r.pass && catches_value && catches_coeff;
    d << "tamper caught (value, coeff): " << catches_value << "," << catches_coeff;
    r.detail = d.str();
    return r;
}

// 9. Contrast cases: the positivity criterion works for n <= 7 and is silent
// for n = 8. "Terms" counts the support of the inverse series (exponents
// k(n-1)+1); the first negative for n = 7 sits at exponent 1171, support
// term 195.
inline CriterionResult criterion_contrast(Profile) {
    CriterionResult r{9, "inverse of t - t^n + t^(2n-1): negative for n=2..7, none for n=8", true, ""};
    std::ostringstream d;
    for (int n = 2; n <= 7; ++n) {
        int order = 399 * (n - 1) + 1;
        TruncatedSeries f = detail::sparse_series(order, {{1, 1}, {n, -1}, {2 * n - 1, 1}});
        auto neg = scan_negative(newton_invert(f));
        bool ok = neg.has_value();
        r.pass = r.pass && ok;
        d << "n=" << n << " first negative " << (neg ? "t^" + std::to_string(*neg) : "NONE") << "; ";
    }
    {
        TruncatedSeries f = detail::sparse_series(349 * 7 + 1, {{1, 1}, {8, -1}, {15, 1}});
        auto neg = scan_negative(newton_invert(f));
        bool ok = !neg.has_value();
        r.pass = r.pass && ok;
        d << "n=8 within 350 support terms: " << (ok ? "none" : "NEGATIVE at " + std::to_string(*neg));
    }
    r.detail = d.str();
    return r;
}

// 10. Property suites: d^2 = 0, inversion agreement, composition inverses,
// Fuss-Catalan counts, the free-dimension identity.
inline CriterionResult criterion_properties(Profile p) {
    CriterionResult r{10, "property suites (d^2, inversion, counts)", true, ""};
    std::ostringstream d;

    for (int n = 2; n <= 4; ++n) {
        Alphabet a = Alphabet::cobar(n);
        bool ok = true;
        for (const auto& t : enumerate_trees(a, {n - 2, 2}))
            ok = ok && differential(a, differential(a, t)).is_zero();
        r.pass = r.pass && ok;
        d << "d^2=0 exhaustive n=" << n << ":" << ok << "; ";
    }
    {
        // degree-3 slices: all of them for n=2, a deterministic sample for n=3
        Alphabet a2 = Alphabet::cobar(2);
        bool ok = true;
        for (const auto& t : enumerate_trees(a2, {1, 3}))
            ok = ok && differential(a2, differential(a2, t)).is_zero();
        Alphabet a3 = Alphabet::cobar(3);
        auto slice = enumerate_trees(a3, {2, 3});
        std::mt19937_64 rng(12345);
        for (int k = 0; k < 40; ++k) {
            const auto& t = slice[rng() % slice.size()];
            ok = ok && differential(a3, differential(a3, t)).is_zero();
        }
        r.pass = r.pass && ok;
        d << "d^2=0 degree-3:" << ok << "; ";
    }
    {
        std::mt19937_64 rng(987654321);
        bool ok = true;
        int count = (p == Profile::kFull) ? 100 : 25;
        for (int k = 0; k < count && ok; ++k) {
            TruncatedSeries f(60);
            f.set(1, Rational(1 + static_cast<long>(rng() % 5)));
            for (int i = 2; i <= 60; ++i)
                f.set(static_cast<std::size_t>(i),
                      rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 7)));
            TruncatedSeries gl = lagrange_invert(f), gn = newton_invert(f);
            ok = ok && gl == gn && compose(f, gl) == TruncatedSeries::identity(60) &&
                 compose(gl, f) == TruncatedSeries::identity(60);
        }
        r.pass = r.pass && ok;
        d << "lagrange=newton & compositional inverses on " << ((p == Profile::kFull) ? 100 : 25)
          << " random series:" << ok << "; ";
    }
    {
        bool ok = true;
        for (int n = 2; n <= 6 && ok; ++n) {
            Alphabet a = Alphabet::mu_only(n);
            for (int q = 1; q <= 5 && ok; ++q) {
                auto trees = enumerate_trees(a, {q});
                ok = Integer(static_cast<unsigned long>(trees.size())) == free_dim(n, q);
            }
        }
        for (int n = 2; n <= 8 && ok; ++n) {
            Integer lhs = free_dim(n, n + 1);
            Integer rhs = binomial(Integer(static_cast<long>(n) * n + n - 1),
                                   static_cast<unsigned long>(n - 1));
            ok = (lhs == rhs);
        }
        r.pass = r.pass && ok;
        d << "Fuss-Catalan counts and free_dim identity:" << ok;
    }
    r.detail = d.str();
    return r;
}

inline std::vector<CriterionResult> run(Profile p) {
    return {criterion_boundary(p),   criterion_eq2(p),       criterion_cycle(p),
            criterion_dimensions(p), criterion_cross_oracle(p), criterion_gap(p),
            criterion_positivity(p), criterion_recurrence(p),   criterion_contrast(p),
            criterion_properties(p)};
}

}  // namespace opk::acceptance
