#pragma once

#include <map>

#include "opk/rational.hpp"
#include "opk/trees.hpp"

namespace opk {

// Exact linear combination of tree monomials; zero coefficients are never
// stored. All keys of a well-formed value share (arity, degree, weight).
class TreePolynomial {
  public:
    using Terms = std::map<TreeMonomial, Rational>;

    TreePolynomial() = default;

    void add(const TreeMonomial& t, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(t, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TreePolynomial& operator+=(const TreePolynomial& o) {
        for (const auto& [t, c] : o.terms_) add(t, c);
        return *this;
    }

    TreePolynomial& operator-=(const TreePolynomial& o) {
        for (const auto& [t, c] : o.terms_) add(t, -c);
        return *this;
    }

    TreePolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [t, c] : terms_) c *= s;
        }
        return *this;
    }

    friend TreePolynomial operator*(const Rational& s, TreePolynomial p) { return p *= s; }

    Rational coeff(const TreeMonomial& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    friend bool operator==(const TreePolynomial& a, const TreePolynomial& b) {
        return a.terms_ == b.terms_;
    }

    static TreePolynomial single(const TreeMonomial& t, Rational c = Rational(1)) {
        TreePolynomial p;
        p.add(t, c);
        return p;
    }

  private:
    Terms terms_;
};

// Linear extension of grafting: p o_slot g and f o_slot p.
inline TreePolynomial graft(const Alphabet& a, const TreePolynomial& p, int slot,
                            const TreeMonomial& g) {
    TreePolynomial out;
    for (const auto& [t, c] : p.terms()) {
        auto r = graft(a, t, slot, g);
        out.add(r.tree, c * r.sign);
    }
    return out;
}

inline TreePolynomial graft(const Alphabet& a, const TreeMonomial& f, int slot,
                            const TreePolynomial& p) {
    TreePolynomial out;
    for (const auto& [t, c] : p.terms()) {
        auto r = graft(a, f, slot, t);
        out.add(r.tree, c * r.sign);
    }
    return out;
}

// nu = sum over all 1-trees T of epsilon_T T. Every coefficient is a nonzero
// integer by construction.
inline TreePolynomial nu(const Alphabet& a, int n, std::size_t budget = 1'000'000) {
    TreePolynomial out;
    for (const auto& t : enumerate_trees(a, {n - 1, 1}, budget))
        out.add(t, Rational(epsilon(a, n, t)));
    return out;
}

}  // namespace opk
