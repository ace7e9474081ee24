#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opk/rational.hpp"

namespace opk {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeneratorSignature {
    char name;
    int arity;
    int degree;
    int weight;
};

// Vertex alphabet of a free ns operad. Token 0 is the leaf marker; token k >= 1
// refers to gens()[k-1].
class Alphabet {
  public:
    explicit Alphabet(std::vector<GeneratorSignature> gens) : gens_(std::move(gens)) {
        for (const auto& g : gens_)
            if (g.arity < 1) throw std::invalid_argument("Alphabet: generator arity must be >= 1");
    }

    // mu of arity n in degree 0 and xi of arity 2n-1 in degree 1, the free
    // generators of the cobar complex studied here.
    static Alphabet cobar(int n) {
        require_n(n);
        return Alphabet({{'m', n, 0, 1}, {'x', 2 * n - 1, 1, 2}});
    }

    static Alphabet mu_only(int n) {
        require_n(n);
        return Alphabet({{'m', n, 0, 1}});
    }

    static void require_n(int n) {
        if (n < 2) throw std::invalid_argument("alphabet requires n >= 2");
    }

    std::size_t size() const { return gens_.size(); }
    const GeneratorSignature& gen(int token) const { return gens_.at(static_cast<std::size_t>(token - 1)); }
    int arity(int token) const { return token == 0 ? 0 : gen(token).arity; }
    int degree(int token) const { return token == 0 ? 0 : gen(token).degree; }
    int weight(int token) const { return token == 0 ? 0 : gen(token).weight; }

    std::optional<int> token_of(char name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return static_cast<int>(i + 1);
        return std::nullopt;
    }

  private:
    std::vector<GeneratorSignature> gens_;
};

// A planar rooted tree with labeled vertices, encoded as its preorder word:
// root first, children left to right, leaves marked by token 0. Two monomials
// are equal iff their codes are equal, and the lexicographic order on codes is
// the canonical order used everywhere.
struct TreeMonomial {
    std::vector<std::int8_t> code;

    auto operator<=>(const TreeMonomial&) const = default;

    static TreeMonomial leaf() { return TreeMonomial{{0}}; }
    static TreeMonomial corolla(const Alphabet& a, int token) {
        TreeMonomial t;
        t.code.push_back(static_cast<std::int8_t>(token));
        t.code.insert(t.code.end(), static_cast<std::size_t>(a.arity(token)), 0);
        return t;
    }
};

inline bool valid_code(const Alphabet& a, const TreeMonomial& t) {
    if (t.code.empty()) return false;
    long open = 1;
    for (std::size_t i = 0; i < t.code.size(); ++i) {
        if (open <= 0) return false;
        int tok = t.code[i];
        if (tok < 0 || tok > static_cast<int>(a.size())) return false;
        open += a.arity(tok) - 1;
    }
    return open == 0;
}

inline int leaf_count(const TreeMonomial& t) {
    int k = 0;
    for (auto c : t.code) k += (c == 0);
    return k;
}

inline int tree_arity(const TreeMonomial& t) { return leaf_count(t); }

inline int tree_degree(const Alphabet& a, const TreeMonomial& t) {
    int d = 0;
    for (auto c : t.code) d += a.degree(c);
    return d;
}

inline int tree_weight(const Alphabet& a, const TreeMonomial& t) {
    int w = 0;
    for (auto c : t.code) w += a.weight(c);
    return w;
}

inline int vertex_count(const TreeMonomial& t, int token) {
    int k = 0;
    for (auto c : t.code) k += (c == token);
    return k;
}

// One past the end of the subtree whose root is at position pos.
inline std::size_t subtree_end(const Alphabet& a, const TreeMonomial& t, std::size_t pos) {
    long open = 1;
    std::size_t i = pos;
    while (open > 0) {
        open += a.arity(t.code[i]) - 1;
        ++i;
    }
    return i;
}

// Positions of the children slots (subtree roots) of the vertex at pos.
inline std::vector<std::size_t> child_positions(const Alphabet& a, const TreeMonomial& t,
                                                std::size_t pos) {
    std::vector<std::size_t> kids;
    int ar = a.arity(t.code[pos]);
    kids.reserve(static_cast<std::size_t>(ar));
    std::size_t q = pos + 1;
    for (int k = 0; k < ar; ++k) {
        kids.push_back(q);
        q = subtree_end(a, t, q);
    }
    return kids;
}

// parent[i] = code position of the parent vertex of position i; root gets -1.
inline std::vector<long> parent_positions(const Alphabet& a, const TreeMonomial& t) {
    std::vector<long> parent(t.code.size(), -1);
    std::vector<std::pair<std::size_t, int>> stack;  // (vertex pos, remaining slots)
    for (std::size_t i = 0; i < t.code.size(); ++i) {
        if (!stack.empty()) {
            parent[i] = static_cast<long>(stack.back().first);
            if (--stack.back().second == 0) stack.pop_back();
        }
        if (t.code[i] != 0) stack.emplace_back(i, a.arity(t.code[i]));
    }
    return parent;
}

// Internal edges, indexed by the preorder position of the child vertex.
inline std::vector<std::size_t> internal_edges(const Alphabet& a, const TreeMonomial& t) {
    std::vector<std::size_t> edges;
    for (std::size_t i = 1; i < t.code.size(); ++i)
        if (t.code[i] != 0) edges.push_back(i);
    (void)a;
    return edges;
}

struct GraftResult {
    TreeMonomial tree;
    int sign;  // Koszul sign of moving the grafted letters into place
};

// Planar substitution of g into leaf slot i (1-based) of f. The grafted word
// passes the letters of f after that leaf, whence the sign.
inline GraftResult graft(const Alphabet& a, const TreeMonomial& f, int slot,
                         const TreeMonomial& g) {
    if (slot < 1 || slot > tree_arity(f)) throw std::invalid_argument("graft: slot out of range");
    std::size_t pos = 0;
    int seen = 0;
    for (; pos < f.code.size(); ++pos) {
        if (f.code[pos] == 0 && ++seen == slot) break;
    }
    int deg_after = 0;
    for (std::size_t j = pos + 1; j < f.code.size(); ++j) deg_after += a.degree(f.code[j]);
    int sign = (tree_degree(a, g) * deg_after) % 2 == 0 ? 1 : -1;
    TreeMonomial out;
    out.code.reserve(f.code.size() + g.code.size() - 1);
    out.code.insert(out.code.end(), f.code.begin(), f.code.begin() + static_cast<long>(pos));
    out.code.insert(out.code.end(), g.code.begin(), g.code.end());
    out.code.insert(out.code.end(), f.code.begin() + static_cast<long>(pos) + 1, f.code.end());
    return {std::move(out), sign};
}

// The maximal path root -> rightmost child -> ... while the rightmost child is
// internal: the horizontal bar when the tree is flattened along its rightmost
// leg. Positions in preorder code.
inline std::vector<std::size_t> spine(const Alphabet& a, const TreeMonomial& t) {
    if (t.code[0] == 0) throw std::invalid_argument("spine: tree has no internal vertex");
    std::vector<std::size_t> sp{0};
    std::size_t cur = 0;
    for (;;) {
        auto kids = child_positions(a, t, cur);
        std::size_t last = kids.back();
        if (t.code[last] == 0) break;
        sp.push_back(last);
        cur = last;
    }
    return sp;
}

struct EdgeClassification {
    std::vector<std::size_t> regular;
    std::vector<std::size_t> singular;
};

inline bool is_fat(const Alphabet& a, const TreeMonomial& t, std::size_t pos) {
    return t.code[pos] != 0 && a.gen(t.code[pos]).weight > 1;
}

// Edge classification of a 0- or 1-tree. An edge (parent -> v) is singular iff
// v is non-fat, every child of v is a leaf, and the edge is not on the spine;
// all other edges are regular. Only the main spine counts as flattened:
// hanging subtrees are not recursively flattened (this is the reading under
// which contraction changes card(reg) by exactly the regular/singular rule).
inline EdgeClassification classify_edges(const Alphabet& a, const TreeMonomial& t) {
    int fats = 0;
    for (std::size_t i = 0; i < t.code.size(); ++i)
        if (t.code[i] != 0 && is_fat(a, t, i)) ++fats;
    if (fats > 1) throw std::invalid_argument("classify_edges: more than one fat vertex");
    auto sp = spine(a, t);
    std::vector<bool> on_spine(t.code.size(), false);
    for (auto p : sp) on_spine[p] = true;
    EdgeClassification out;
    for (std::size_t v : internal_edges(a, t)) {
        bool leaf_children = true;
        for (auto k : child_positions(a, t, v))
            if (t.code[k] != 0) leaf_children = false;
        if (!is_fat(a, t, v) && leaf_children && !on_spine[v])
            out.singular.push_back(v);
        else
            out.regular.push_back(v);
    }
    return out;
}

// Collapse the internal edge whose child vertex sits at position child_pos.
// The merged vertex has arity a(parent) + a(child) - 1 and must exist in the
// alphabet (two n-ary vertices merge into the fat (2n-1)-ary one).
inline TreeMonomial contract_edge(const Alphabet& a, const TreeMonomial& s, std::size_t child_pos) {
    if (child_pos == 0 || child_pos >= s.code.size() || s.code[child_pos] == 0)
        throw std::invalid_argument("contract_edge: not an internal edge");
    auto parent = parent_positions(a, s);
    std::size_t ppos = static_cast<std::size_t>(parent[child_pos]);
    int merged_arity = a.arity(s.code[ppos]) + a.arity(s.code[child_pos]) - 1;
    int merged_token = 0;
    for (std::size_t k = 1; k <= a.size(); ++k)
        if (a.arity(static_cast<int>(k)) == merged_arity) merged_token = static_cast<int>(k);
    if (merged_token == 0)
        throw std::invalid_argument("contract_edge: no generator of the merged arity");
    TreeMonomial out = s;
    out.code[ppos] = static_cast<std::int8_t>(merged_token);
    out.code.erase(out.code.begin() + static_cast<long>(child_pos));
    return out;
}

inline bool is_zero_tree(const Alphabet& a, const TreeMonomial& t, int n) {
    return vertex_count(t, 1) == n + 1 && vertex_count(t, 2) == 0;
}

inline bool is_one_tree(const Alphabet& a, const TreeMonomial& t, int n) {
    (void)a;
    return vertex_count(t, 1) == n - 1 && vertex_count(t, 2) == 1;
}

// epsilon_T = (-1)^(g+n+1) g! (n-g-1)! with g = card(reg(T)), for a 1-tree T.
inline Integer epsilon(const Alphabet& a, int n, const TreeMonomial& t) {
    if (!is_one_tree(a, t, n)) throw std::invalid_argument("epsilon: not a 1-tree");
    auto cls = classify_edges(a, t);
    int g = static_cast<int>(cls.regular.size());
    if (g < 0 || g > n - 1) throw std::logic_error("epsilon: card(reg) out of range");
    Integer e = factorial(static_cast<unsigned long>(g)) *
                factorial(static_cast<unsigned long>(n - 1 - g));
    return ((g + n + 1) % 2 == 0) ? e : -e;
}

// mu^(n+1): n+1 copies of mu, each grafted at the last slot of its parent.
inline TreeMonomial mu_comb(const Alphabet& a, int n) {
    TreeMonomial t = TreeMonomial::corolla(a, 1);
    for (int k = 0; k < n; ++k) t = graft(a, t, tree_arity(t), TreeMonomial::corolla(a, 1)).tree;
    return t;
}

// All planar trees with exactly counts[k] vertices labeled by generator k+1,
// emitted in canonical (lexicographic) code order. Throws BudgetExceeded when
// more than budget trees would be produced.
inline std::vector<TreeMonomial> enumerate_trees(const Alphabet& a, std::vector<long> counts,
                                                 std::size_t budget = 1'000'000) {
    if (counts.size() != a.size()) counts.resize(a.size(), 0);
    long leaves = 1;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] < 0) throw std::invalid_argument("enumerate_trees: negative count");
        leaves += counts[k] * (a.arity(static_cast<int>(k + 1)) - 1);
    }
    std::vector<TreeMonomial> out;
    if (leaves < 1) return out;
    TreeMonomial cur;
    auto rec = [&](auto&& self, long open, long rem_leaves) -> void {
        if (open == 0) {
            bool done = rem_leaves == 0;
            for (long c : counts) done = done && c == 0;
            if (done) {
                if (out.size() >= budget) throw BudgetExceeded("enumerate_trees: budget exceeded");
                out.push_back(cur);
            }
            return;
        }
        if (open > rem_leaves) return;  // leaves are the only tokens that close slots
        if (rem_leaves > 0) {
            cur.code.push_back(0);
            self(self, open - 1, rem_leaves - 1);
            cur.code.pop_back();
        }
        for (std::size_t k = 0; k < counts.size(); ++k) {
            if (counts[k] == 0) continue;
            --counts[k];
            cur.code.push_back(static_cast<std::int8_t>(k + 1));
            self(self, open - 1 + a.arity(static_cast<int>(k + 1)), rem_leaves);
            cur.code.pop_back();
            ++counts[k];
        }
    };
    rec(rec, 1, leaves);
    return out;
}

// Nested serialization, e.g. "m(m(,,),,)" for n = 3; a leaf is the empty
// string between separators.
inline std::string format_nested(const Alphabet& a, const TreeMonomial& t) {
    std::string out;
    auto emit = [&](auto&& self, std::size_t pos) -> std::size_t {
        if (t.code[pos] == 0) return pos + 1;
        out += a.gen(t.code[pos]).name;
        out += '(';
        std::size_t q = pos + 1;
        for (int k = 0; k < a.arity(t.code[pos]); ++k) {
            if (k) out += ',';
            q = self(self, q);
        }
        out += ')';
        return q;
    };
    emit(emit, 0);
    if (out.empty()) out = "()";  // the bare identity leaf
    return out;
}

// Compact serialization: the preorder word itself, '.' for a leaf.
inline std::string format_compact(const Alphabet& a, const TreeMonomial& t) {
    std::string out;
    out.reserve(t.code.size());
    for (auto c : t.code) out += (c == 0) ? '.' : a.gen(c).name;
    return out;
}

inline TreeMonomial parse_compact(const Alphabet& a, std::string_view s) {
    TreeMonomial t;
    for (char ch : s) {
        if (ch == '.') {
            t.code.push_back(0);
        } else {
            auto tok = a.token_of(ch);
            if (!tok) throw std::invalid_argument("parse_compact: unknown generator");
            t.code.push_back(static_cast<std::int8_t>(*tok));
        }
    }
    if (!valid_code(a, t)) throw std::invalid_argument("parse_compact: not a valid tree word");
    return t;
}

inline TreeMonomial parse_nested(const Alphabet& a, std::string_view s) {
    TreeMonomial t;
    std::size_t i = 0;
    auto rec = [&](auto&& self) -> void {
        if (i >= s.size() || s[i] == ',' || s[i] == ')') {  // empty slot: a leaf
            t.code.push_back(0);
            return;
        }
        auto tok = a.token_of(s[i]);
        if (!tok) throw std::invalid_argument("parse_nested: unknown generator");
        t.code.push_back(static_cast<std::int8_t>(*tok));
        ++i;
        if (i >= s.size() || s[i] != '(') throw std::invalid_argument("parse_nested: expected (");
        ++i;
        for (int k = 0; k < a.arity(*tok); ++k) {
            if (k) {
                if (i >= s.size() || s[i] != ',')
                    throw std::invalid_argument("parse_nested: expected ,");
                ++i;
            }
            self(self);
        }
        if (i >= s.size() || s[i] != ')') throw std::invalid_argument("parse_nested: expected )");
        ++i;
    };
    if (s == "()") return TreeMonomial::leaf();
    rec(rec);
    if (i != s.size() || !valid_code(a, t))
        throw std::invalid_argument("parse_nested: trailing input or bad arity");
    return t;
}

}  // namespace opk
