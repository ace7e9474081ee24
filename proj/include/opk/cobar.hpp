#pragma once

#include <optional>
#include <vector>

#include "opk/tree_polynomial.hpp"
#include "opk/trees.hpp"

namespace opk {

// The cobar differential: d(mu) = 0, d(xi) = sum_i mu o_i mu, extended as a
// derivation. Expanding the k-th xi in preorder carries the Koszul sign
// (-1)^(k-1); the two replacement mu letters are even, so no further signs
// arise from their placement.
inline TreePolynomial differential(const Alphabet& a, const TreeMonomial& t) {
    const int n = a.gen(1).arity;
    TreePolynomial out;
    int xi_index = 0;
    for (std::size_t pos = 0; pos < t.code.size(); ++pos) {
        if (t.code[pos] != 2) continue;
        ++xi_index;
        int sign = (xi_index % 2 == 1) ? 1 : -1;
        auto kids = child_positions(a, t, pos);
        std::size_t end = subtree_end(a, t, pos);
        for (int i = 1; i <= n; ++i) {
            TreeMonomial s;
            s.code.reserve(t.code.size() + 1);
            s.code.insert(s.code.end(), t.code.begin(), t.code.begin() + static_cast<long>(pos));
            s.code.push_back(1);
            auto copy_kid = [&](int k) {
                std::size_t b = kids[static_cast<std::size_t>(k)];
                std::size_t e = subtree_end(a, t, b);
                s.code.insert(s.code.end(), t.code.begin() + static_cast<long>(b),
                              t.code.begin() + static_cast<long>(e));
            };
            for (int k = 0; k < i - 1; ++k) copy_kid(k);
            s.code.push_back(1);
            for (int k = i - 1; k < i - 1 + n; ++k) copy_kid(k);
            for (int k = i - 1 + n; k < 2 * n - 1; ++k) copy_kid(k);
            s.code.insert(s.code.end(), t.code.begin() + static_cast<long>(end), t.code.end());
            out.add(s, Rational(sign));
        }
    }
    return out;
}

inline TreePolynomial differential(const Alphabet& a, const TreePolynomial& p) {
    TreePolynomial out;
    for (const auto& [t, c] : p.terms()) {
        TreePolynomial dt = differential(a, t);
        dt *= c;
        out += dt;
    }
    return out;
}

struct BoundaryCheck {
    int n = 0;
    bool formula_holds = false;   // d(nu) == n! mu^(n+1) exactly
    bool b0_empty = false;        // no 0-tree has reg(S) empty
    bool b1_is_comb = false;      // mu^(n+1) is the unique 0-tree with sng(S) empty
    std::size_t one_trees = 0;
    std::size_t zero_trees = 0;
    Integer coefficient;          // coefficient of mu^(n+1) in d(nu)
    std::optional<TreeMonomial> first_mismatch;

    bool pass() const { return formula_holds && b0_empty && b1_is_comb; }
};

inline BoundaryCheck verify_boundary_formula(int n, std::size_t budget = 1'000'000) {
    Alphabet a = Alphabet::cobar(n);
    BoundaryCheck r;
    r.n = n;

    TreePolynomial lhs = differential(a, nu(a, n, budget));
    TreeMonomial comb = mu_comb(a, n);
    TreePolynomial rhs = TreePolynomial::single(comb, Rational(factorial(static_cast<unsigned long>(n))));
    r.coefficient = lhs.coeff(comb).get_num();
    r.formula_holds = (lhs == rhs);
    if (!r.formula_holds) {
        TreePolynomial diff = lhs;
        diff -= rhs;
        if (!diff.is_zero()) r.first_mismatch = diff.terms().begin()->first;
    }
    r.one_trees = enumerate_trees(a, {n - 1, 1}, budget).size();

    auto zeros = enumerate_trees(a, {n + 1, 0}, budget);
    r.zero_trees = zeros.size();
    std::size_t no_sng = 0;
    bool comb_sng_free = false, any_reg_free = false;
    for (const auto& s : zeros) {
        auto cls = classify_edges(a, s);
        if (cls.singular.empty()) {
            ++no_sng;
            if (s == comb) comb_sng_free = true;
        }
        if (cls.regular.empty()) any_reg_free = true;
    }
    r.b0_empty = !any_reg_free;
    r.b1_is_comb = (no_sng == 1 && comb_sng_free);
    return r;
}

// x_n = ((xi o_{n-1} mu) o_{n-2} mu) ... o_1 mu: the fat corolla with mu at
// slots 1..n-1 and leaves at slots n..2n-1.
inline TreeMonomial x_monomial(const Alphabet& a, int n) {
    TreeMonomial t = TreeMonomial::corolla(a, 2);
    for (int i = n - 1; i >= 1; --i) t = graft(a, t, i, TreeMonomial::corolla(a, 1)).tree;
    return t;
}

// w_n = mu o_n x_n, the unique way to reach w_n by grafting into mu.
inline TreeMonomial whistle_blower(const Alphabet& a, int n) {
    return graft(a, TreeMonomial::corolla(a, 1), n, x_monomial(a, n)).tree;
}

// c_n = mu o_n nu - nu o_{n^2} mu: a degree-1 cycle of weight n+2.
inline TreePolynomial cycle_cn(int n, std::size_t budget = 1'000'000) {
    Alphabet a = Alphabet::cobar(n);
    TreePolynomial v = nu(a, n, budget);
    TreeMonomial mu = TreeMonomial::corolla(a, 1);
    TreePolynomial out = graft(a, mu, n, v);
    out -= graft(a, v, n * n, mu);
    return out;
}

struct BoundaryQuery {
    bool solvable = false;
    TreePolynomial witness;      // d(witness) == target when solvable
    std::size_t basis_size = 0;  // degree-2 monomials of the matching slice
    std::size_t rank = 0;        // rank of the differential matrix
    std::size_t rank_augmented = 0;
};

// Decides whether a homogeneous degree-1 element is a boundary by solving
// d(x) = q over the degree-2 monomial basis of the same weight and arity,
// exactly over the rationals. Returns a witness or the rank certificate
// (rank_augmented = rank + 1 refutes solvability).
inline BoundaryQuery is_boundary(const Alphabet& a, const TreePolynomial& q,
                                 std::size_t budget = 1'000'000) {
    BoundaryQuery out;
    if (q.is_zero()) {
        out.solvable = true;
        return out;
    }
    const TreeMonomial& probe = q.terms().begin()->first;
    int w = tree_weight(a, probe);
    long mu_count = w - 4;
    std::vector<TreeMonomial> basis;
    if (mu_count >= 0) basis = enumerate_trees(a, {mu_count, 2}, budget);
    out.basis_size = basis.size();

    // echelon rows keyed by their leading degree-1 monomial, with the
    // combination of basis columns that produced them
    struct Row {
        TreePolynomial vec;
        std::map<std::size_t, Rational> comb;
    };
    std::map<TreeMonomial, Row> pivots;

    auto reduce = [&](TreePolynomial vec, std::map<std::size_t, Rational> comb)
        -> std::optional<Row> {
        while (!vec.is_zero()) {
            const TreeMonomial lead = vec.terms().begin()->first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                Rational inv = 1 / vec.terms().begin()->second;
                vec *= inv;
                for (auto& [j, c] : comb) c *= inv;
                return Row{std::move(vec), std::move(comb)};
            }
            Rational f = vec.terms().begin()->second;
            TreePolynomial sub = it->second.vec;
            sub *= f;
            vec -= sub;
            for (const auto& [j, c] : it->second.comb) {
                auto [jt, fresh] = comb.try_emplace(j, -f * c);
                if (!fresh) {
                    jt->second -= f * c;
                    if (jt->second == 0) comb.erase(jt);
                }
            }
        }
        return std::nullopt;
    };

    for (std::size_t j = 0; j < basis.size(); ++j) {
        TreePolynomial dj = differential(a, basis[j]);
        if (dj.is_zero()) continue;
        auto row = reduce(std::move(dj), {{j, Rational(1)}});
        if (row) pivots.emplace(row->vec.terms().begin()->first, std::move(*row));
    }
    out.rank = pivots.size();

    auto residue = reduce(q, {});
    if (!residue) {
        out.solvable = true;
        out.rank_augmented = out.rank;
    } else {
        out.solvable = false;
        out.rank_augmented = out.rank + 1;
        return out;
    }

    // Recover the witness: the combination accumulated while reducing q
    // satisfies q - sum lambda_j d(basis_j) = 0 with lambda_j = -comb[j].
    // Re-run the reduction, this time capturing the combination.
    TreePolynomial vec = q;
    std::map<std::size_t, Rational> comb;
    while (!vec.is_zero()) {
        const TreeMonomial lead = vec.terms().begin()->first;
        const Row& row = pivots.at(lead);
        Rational f = vec.terms().begin()->second;
        TreePolynomial sub = row.vec;
        sub *= f;
        vec -= sub;
        for (const auto& [j, c] : row.comb) {
            auto [jt, fresh] = comb.try_emplace(j, -f * c);
            if (!fresh) {
                jt->second -= f * c;
                if (jt->second == 0) comb.erase(jt);
            }
        }
    }
    for (const auto& [j, c] : comb) out.witness.add(basis[j], -c);
    return out;
}

// All degree-2 monomials whose differential has a nonzero coefficient on w.
// For the whistle-blower this list is empty: every candidate would need a
// vertex of arity 3n-2, which the alphabet lacks.
inline std::vector<TreeMonomial> boundary_preimage_monomials(const Alphabet& a,
                                                             const TreeMonomial& w,
                                                             std::size_t budget = 1'000'000) {
    std::vector<TreeMonomial> out;
    long mu_count = tree_weight(a, w) - 4;
    if (mu_count < 0) return out;
    for (const auto& t : enumerate_trees(a, {mu_count, 2}, budget))
        if (differential(a, t).coeff(w) != 0) out.push_back(t);
    return out;
}

}  // namespace opk
