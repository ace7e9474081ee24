#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "opk/consequence.hpp"
#include "opk/tree_polynomial.hpp"
#include "opk/trees.hpp"

using namespace opk;

TEST_CASE("enumeration counts") {
    Alphabet a2 = Alphabet::cobar(2);
    REQUIRE(enumerate_trees(a2, {1, 1}).size() == 5);  // the five 1-trees for n=2

    Alphabet a3 = Alphabet::mu_only(3);
    REQUIRE(enumerate_trees(a3, {4}).size() == 55);

    REQUIRE(enumerate_trees(a2, {0, 0}).size() == 1);  // the arity-1 identity
    REQUIRE(enumerate_trees(a2, {0, 0})[0] == TreeMonomial::leaf());
}

TEST_CASE("Fuss-Catalan counts for n <= 6, p <= 5") {
    for (int n = 2; n <= 6; ++n) {
        Alphabet a = Alphabet::mu_only(n);
        for (int p = 1; p <= 5; ++p) {
            auto trees = enumerate_trees(a, {p});
            REQUIRE(Integer(static_cast<unsigned long>(trees.size())) == free_dim(n, p));
        }
    }
}

TEST_CASE("enumerated trees are valid, duplicate-free, sorted, with the right multiset") {
    Alphabet a = Alphabet::cobar(3);
    auto trees = enumerate_trees(a, {2, 1});
    std::set<TreeMonomial> seen;
    for (const auto& t : trees) {
        REQUIRE(valid_code(a, t));
        REQUIRE(vertex_count(t, 1) == 2);
        REQUIRE(vertex_count(t, 2) == 1);
        REQUIRE(seen.insert(t).second);
    }
    REQUIRE(std::is_sorted(trees.begin(), trees.end()));
}

TEST_CASE("enumeration budget") {
    Alphabet a = Alphabet::mu_only(3);
    REQUIRE_THROWS_AS(enumerate_trees(a, {4}, 10), BudgetExceeded);
}

TEST_CASE("serialization round trips") {
    Alphabet a = Alphabet::cobar(2);
    for (const auto& t : enumerate_trees(a, {2, 1})) {
        REQUIRE(parse_compact(a, format_compact(a, t)) == t);
        REQUIRE(parse_nested(a, format_nested(a, t)) == t);
    }
    TreeMonomial comb = mu_comb(a, 2);
    REQUIRE(format_nested(a, comb) == "m(,m(,m(,)))");
    REQUIRE(format_compact(a, comb) == "m.m.m..");
    REQUIRE_THROWS_AS(parse_compact(a, "m."), std::invalid_argument);    // unclosed slot
    REQUIRE_THROWS_AS(parse_compact(a, "m...."), std::invalid_argument); // trailing leaves
    REQUIRE_THROWS_AS(parse_compact(a, "q.."), std::invalid_argument);   // unknown generator
}

TEST_CASE("grafting") {
    Alphabet a = Alphabet::cobar(2);
    TreeMonomial mu = TreeMonomial::corolla(a, 1);
    TreeMonomial xi = TreeMonomial::corolla(a, 2);

    auto left_comb = graft(a, mu, 1, mu);
    REQUIRE(left_comb.sign == 1);
    REQUIRE(format_nested(a, left_comb.tree) == "m(m(,),)");

    // mu^(n) composed at the last slot gives mu^(n+1)
    TreeMonomial m3 = mu_comb(a, 2);
    auto r = graft(a, m3, tree_arity(m3), mu);
    TreeMonomial m4 = graft(a, mu, 2, m3).tree;
    REQUIRE(r.tree == m4);

    auto xx = graft(a, xi, 1, xi);
    REQUIRE(xx.sign == 1);  // nothing of positive degree to the right of slot 1
    REQUIRE(tree_arity(xx.tree) == 5);
    REQUIRE(tree_degree(a, xx.tree) == 2);

    // grafting a degree-1 letter past a degree-1 letter flips the sign
    auto x_then = graft(a, xi, 3, mu).tree;  // xi with mu at its last slot
    auto signed_graft = graft(a, graft(a, mu, 1, xi).tree, 4, xi);
    REQUIRE(signed_graft.sign == 1);  // slot 4 is right of the xi letters? no letters after
    auto signed_graft2 = graft(a, graft(a, mu, 2, xi).tree, 1, xi);
    REQUIRE(signed_graft2.sign == -1);  // the grafted xi passes one xi letter

    REQUIRE_THROWS_AS(graft(a, mu, 3, mu), std::invalid_argument);
    REQUIRE_THROWS_AS(graft(a, mu, 0, mu), std::invalid_argument);
    (void)x_then;
}

TEST_CASE("graft reassociation identities on degree-0 trees") {
    Alphabet a = Alphabet::mu_only(3);
    auto trees = enumerate_trees(a, {2});
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& f = trees[rng() % trees.size()];
        const auto& g = trees[rng() % trees.size()];
        const auto& h = trees[rng() % trees.size()];
        int i = 1 + static_cast<int>(rng() % static_cast<unsigned long>(tree_arity(f)));
        int j = 1 + static_cast<int>(rng() % static_cast<unsigned long>(tree_arity(g) + tree_arity(f) - 1));
        TreeMonomial fi = graft(a, f, i, g).tree;
        if (j >= i && j < i + tree_arity(g)) {
            // lands inside g
            REQUIRE(graft(a, fi, j, h).tree == graft(a, f, i, graft(a, g, j - i + 1, h).tree).tree);
        } else if (j >= i + tree_arity(g)) {
            REQUIRE(graft(a, fi, j, h).tree ==
                    graft(a, graft(a, f, j - tree_arity(g) + 1, h).tree, i, g).tree);
        } else {
            REQUIRE(graft(a, fi, j, h).tree == graft(a, graft(a, f, j, h).tree, i + tree_arity(h) - 1, g).tree);
        }
    }
}

TEST_CASE("spine") {
    Alphabet a3 = Alphabet::cobar(3);
    REQUIRE(spine(a3, mu_comb(a3, 3)).size() == 4);
    REQUIRE(spine(a3, TreeMonomial::corolla(a3, 1)).size() == 1);
    // the flattened tree with two bar vertices: root has a hanging mu and a
    // rightmost internal child which itself has a hanging mu
    TreeMonomial s = parse_compact(a3, "mm....mm.....");
    REQUIRE(spine(a3, s).size() == 2);
}

TEST_CASE("edge classification") {
    Alphabet a3 = Alphabet::cobar(3);
    auto comb = mu_comb(a3, 3);
    auto cls = classify_edges(a3, comb);
    REQUIRE(cls.regular.size() == 3);
    REQUIRE(cls.singular.empty());

    TreeMonomial s = parse_compact(a3, "mm....mm.....");
    auto scls = classify_edges(a3, s);
    REQUIRE(scls.regular.size() == 1);
    REQUIRE(scls.singular.size() == 2);

    // n=2: the five 1-trees with their card(reg) values
    Alphabet a2 = Alphabet::cobar(2);
    TreeMonomial mu = TreeMonomial::corolla(a2, 1), xi = TreeMonomial::corolla(a2, 2);
    REQUIRE(classify_edges(a2, graft(a2, xi, 2, mu).tree).regular.empty());       // T1
    REQUIRE(classify_edges(a2, graft(a2, xi, 1, mu).tree).regular.empty());       // T2
    REQUIRE(classify_edges(a2, graft(a2, xi, 3, mu).tree).regular.size() == 1);   // T3
    REQUIRE(classify_edges(a2, graft(a2, mu, 1, xi).tree).regular.size() == 1);   // T4
    REQUIRE(classify_edges(a2, graft(a2, mu, 2, xi).tree).regular.size() == 1);   // T5

    // two fat vertices are rejected
    REQUIRE_THROWS_AS(classify_edges(a2, graft(a2, xi, 1, xi).tree), std::invalid_argument);
}

TEST_CASE("edge contraction") {
    Alphabet a2 = Alphabet::cobar(2);
    TreeMonomial mu = TreeMonomial::corolla(a2, 1);
    auto two = graft(a2, mu, 1, mu).tree;
    auto edges = internal_edges(a2, two);
    REQUIRE(edges.size() == 1);
    REQUIRE(contract_edge(a2, two, edges[0]) == TreeMonomial::corolla(a2, 2));

    Alphabet a3 = Alphabet::cobar(3);
    auto comb = mu_comb(a3, 3);
    auto spine_edges = classify_edges(a3, comb).regular;
    auto contracted = contract_edge(a3, comb, spine_edges[1]);
    REQUIRE(is_one_tree(a3, contracted, 3));
    REQUIRE(classify_edges(a3, contracted).regular.size() == 2);  // one regular edge used up

    TreeMonomial s = parse_compact(a3, "mm....mm.....");
    auto reg = classify_edges(a3, s).regular;
    REQUIRE(classify_edges(a3, contract_edge(a3, s, reg[0])).regular.empty());

    REQUIRE_THROWS_AS(contract_edge(a3, comb, 1), std::invalid_argument);  // a leaf position
}

TEST_CASE("the contraction rule, exhaustively for n = 2, 3") {
    for (int n : {2, 3}) {
        Alphabet a = Alphabet::cobar(n);
        for (const auto& s : enumerate_trees(a, {n + 1, 0})) {
            auto cls = classify_edges(a, s);
            REQUIRE(static_cast<int>(cls.regular.size() + cls.singular.size()) == n);
            for (auto e : cls.regular)
                REQUIRE(classify_edges(a, contract_edge(a, s, e)).regular.size() ==
                        cls.regular.size() - 1);
            for (auto e : cls.singular)
                REQUIRE(classify_edges(a, contract_edge(a, s, e)).regular.size() == cls.regular.size());
        }
    }
}

TEST_CASE("epsilon") {
    Alphabet a2 = Alphabet::cobar(2);
    TreeMonomial mu = TreeMonomial::corolla(a2, 1), xi = TreeMonomial::corolla(a2, 2);
    REQUIRE(epsilon(a2, 2, graft(a2, xi, 2, mu).tree) == -1);
    REQUIRE(epsilon(a2, 2, graft(a2, xi, 3, mu).tree) == 1);
    REQUIRE(epsilon(a2, 2, graft(a2, mu, 1, xi).tree) == 1);

    Alphabet a3 = Alphabet::cobar(3);
    // g = 0: (-1)^4 0! 2! = 2 ; g = 2: (-1)^6 2! 0! = 2
    TreeMonomial x3 = x_monomial(a3, 3);
    REQUIRE(classify_edges(a3, x3).regular.empty());
    REQUIRE(epsilon(a3, 3, x3) == 2);
    auto contracted = contract_edge(a3, mu_comb(a3, 3), classify_edges(a3, mu_comb(a3, 3)).regular[0]);
    REQUIRE(classify_edges(a3, contracted).regular.size() == 2);
    REQUIRE(epsilon(a3, 3, contracted) == 2);

    REQUIRE_THROWS_AS(epsilon(a2, 2, mu), std::invalid_argument);
}

TEST_CASE("nu") {
    Alphabet a2 = Alphabet::cobar(2);
    TreePolynomial v2 = nu(a2, 2);
    REQUIRE(v2.size() == 5);
    TreeMonomial mu = TreeMonomial::corolla(a2, 1), xi = TreeMonomial::corolla(a2, 2);
    REQUIRE(v2.coeff(graft(a2, xi, 1, mu).tree) == -1);
    REQUIRE(v2.coeff(graft(a2, xi, 2, mu).tree) == -1);
    REQUIRE(v2.coeff(graft(a2, xi, 3, mu).tree) == 1);
    REQUIRE(v2.coeff(graft(a2, mu, 1, xi).tree) == 1);
    REQUIRE(v2.coeff(graft(a2, mu, 2, xi).tree) == 1);

    Alphabet a3 = Alphabet::cobar(3);
    TreePolynomial v3 = nu(a3, 3);
    REQUIRE(v3.size() == 55);  // no zero coefficients, full support
    for (const auto& [t, c] : v3.terms()) {
        REQUIRE((c == -1 || c == 2));
        REQUIRE(c != 0);
    }
}

TEST_CASE("mu_comb") {
    Alphabet a2 = Alphabet::cobar(2);
    REQUIRE(tree_arity(mu_comb(a2, 2)) == 4);
    Alphabet a3 = Alphabet::cobar(3);
    REQUIRE(tree_arity(mu_comb(a3, 3)) == 9);
    REQUIRE(tree_weight(a3, mu_comb(a3, 3)) == 4);
    for (int n = 2; n <= 5; ++n) {
        Alphabet a = Alphabet::cobar(n);
        REQUIRE(classify_edges(a, mu_comb(a, n)).singular.empty());
    }
}

TEST_CASE("endpoint facts: B1 unique, B0 empty, for n = 2, 3") {
    for (int n : {2, 3}) {
        Alphabet a = Alphabet::cobar(n);
        TreeMonomial comb = mu_comb(a, n);
        int no_sng = 0;
        for (const auto& s : enumerate_trees(a, {n + 1, 0})) {
            auto cls = classify_edges(a, s);
            REQUIRE(!cls.regular.empty());
            if (cls.singular.empty()) {
                ++no_sng;
                REQUIRE(s == comb);
            }
        }
        REQUIRE(no_sng == 1);
    }
}
