#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "opk/cobar.hpp"
#include "opk/modp.hpp"
#include "opk/rational.hpp"
#include "opk/series.hpp"
#include "opk/trees.hpp"

namespace opk {

// Number of planar trees with w vertices of arity n (Fuss-Catalan):
// (1/(w(n-1)+1)) C(nw, w) -- the dimension of the weight-w component of the
// free operad on one n-ary generator.
inline Integer free_dim(int n, int w) {
    if (n < 2 || w < 0) throw std::invalid_argument("free_dim: need n >= 2, w >= 0");
    Integer c = binomial(Integer(static_cast<long>(n) * w), static_cast<unsigned long>(w));
    return div_exact(c, Integer(static_cast<long>(w) * (n - 1) + 1));
}

// Number of distinct consequences of weight w of one quadratic relation on
// one n-ary operation: C(nw-1, w-2). Equals the number of slot-trees.
inline Integer consequence_count(int n, int w) {
    if (w < 2) throw std::invalid_argument("consequence_count: w >= 2 required");
    return binomial(Integer(static_cast<long>(n) * w - 1), static_cast<unsigned long>(w - 2));
}

// Sparse matrix of the weight-w consequences of the relation sum_i mu o_i mu.
// Row r = slot-tree r with the relation substituted into its (2n-1)-ary slot,
// expanded in the canonical basis of weight-w mu-trees (the columns).
struct ConsequenceMatrix {
    int n = 0;
    int w = 0;
    std::size_t nrows = 0;
    std::size_t ncols = 0;
    // entries of one row, sorted by column; values are small nonneg integers
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> rows;
};

inline ConsequenceMatrix build_consequence_matrix(int n, int w, std::size_t column_budget = 100'000) {
    if (w < 2) throw std::invalid_argument("build_consequence_matrix: w >= 2 required");
    Alphabet a = Alphabet::cobar(n);
    Integer cols_expected = free_dim(n, w);
    if (cols_expected > static_cast<long>(column_budget))
        throw BudgetExceeded("build_consequence_matrix: column budget exceeded");
    auto columns = enumerate_trees(a, {w, 0}, column_budget);
    auto slots = enumerate_trees(a, {w - 2, 1}, column_budget * 2);

    ConsequenceMatrix m;
    m.n = n;
    m.w = w;
    m.ncols = columns.size();
    m.nrows = slots.size();
    m.rows.reserve(slots.size());
    for (const auto& st : slots) {
        // substituting the relation into the slot is the same expansion the
        // differential performs on the single fat vertex (all signs +1)
        TreePolynomial row = differential(a, st);
        std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
        entries.reserve(row.size());
        for (const auto& [t, c] : row.terms()) {
            auto it = std::lower_bound(columns.begin(), columns.end(), t);
            if (it == columns.end() || !(*it == t))
                throw std::logic_error("build_consequence_matrix: expansion outside column basis");
            entries.emplace_back(static_cast<std::uint32_t>(it - columns.begin()),
                                 static_cast<std::int64_t>(c.get_num().get_si()));
        }
        m.rows.push_back(std::move(entries));
    }
    return m;
}

// Exact rank over GF(p) by incremental row echelonization: rows are taken in
// canonical order, each is reduced against the pivots found so far (columns
// walked left to right through a dense scratch vector), and a surviving row
// becomes the pivot of its leftmost column. Deterministic, no randomization.
template <class Value, class Ops>
std::size_t echelon_rank(const ConsequenceMatrix& m, const Ops& ops) {
    // pivot rows store only the columns right of their lead; the lead entry is
    // normalized to 1 and kept implicit
    std::vector<std::vector<std::pair<std::uint32_t, Value>>> pivot_rows;
    std::vector<std::int32_t> pivot_of_col(m.ncols, -1);
    std::vector<Value> scratch(m.ncols, ops.zero());
    std::vector<char> touched(m.ncols, 0);
    std::vector<std::uint32_t> seen;
    for (const auto& row : m.rows) {
        seen.clear();
        std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> work;
        auto mark = [&](std::uint32_t c) {
            if (!touched[c]) {
                touched[c] = 1;
                seen.push_back(c);
            }
            work.push(c);
        };
        for (const auto& [c, v] : row) {
            scratch[c] = ops.add(scratch[c], ops.from_int(v));
            mark(c);
        }
        std::optional<std::uint32_t> lead;
        while (!work.empty()) {
            std::uint32_t c = work.top();
            work.pop();
            if (ops.is_zero(scratch[c])) continue;
            if (pivot_of_col[c] < 0) {
                lead = c;
                break;
            }
            Value mult = scratch[c];
            scratch[c] = ops.zero();  // implicit unit lead of the pivot row
            for (const auto& [cc, vv] : pivot_rows[static_cast<std::size_t>(pivot_of_col[c])]) {
                bool was_zero = ops.is_zero(scratch[cc]);
                scratch[cc] = ops.sub(scratch[cc], ops.mul(mult, vv));
                if (was_zero && !ops.is_zero(scratch[cc])) mark(cc);
            }
        }
        if (lead) {
            Value inv = ops.inv(scratch[*lead]);
            std::sort(seen.begin(), seen.end());
            std::vector<std::pair<std::uint32_t, Value>> stored;
            for (std::uint32_t c : seen)
                if (c > *lead && !ops.is_zero(scratch[c]))
                    stored.emplace_back(c, ops.mul(scratch[c], inv));
            pivot_of_col[*lead] = static_cast<std::int32_t>(pivot_rows.size());
            pivot_rows.push_back(std::move(stored));
        }
        for (std::uint32_t c : seen) {
            scratch[c] = ops.zero();
            touched[c] = 0;
        }
    }
    return pivot_rows.size();
}

inline std::size_t rank_mod_p(const ConsequenceMatrix& m, std::uint64_t p) {
    struct FpOps {
        PrimeField f;
        std::uint64_t zero() const { return 0; }
        std::uint64_t from_int(std::int64_t v) const { return f.reduce_signed(v); }
        bool is_zero(std::uint64_t v) const { return v == 0; }
        std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return f.add(a, b); }
        std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return f.sub(a, b); }
        std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return f.mul(a, b); }
        std::uint64_t inv(std::uint64_t a) const { return f.inv(a); }
    };
    return echelon_rank<std::uint64_t>(m, FpOps{PrimeField(p)});
}

// Same elimination over the rationals; used to confirm the modular ranks at
// small weights.
inline std::size_t rank_exact(const ConsequenceMatrix& m) {
    struct QOps {
        Rational zero() const { return Rational(0); }
        Rational from_int(std::int64_t v) const { return Rational(static_cast<long>(v)); }
        bool is_zero(const Rational& v) const { return v == 0; }
        Rational add(const Rational& a, const Rational& b) const { return a + b; }
        Rational sub(const Rational& a, const Rational& b) const { return a - b; }
        Rational mul(const Rational& a, const Rational& b) const { return a * b; }
        Rational inv(const Rational& a) const { return 1 / a; }
    };
    return echelon_rank<Rational>(m, QOps{});
}

struct WeightRecord {
    int w = 0;
    Integer free;
    Integer consequences;          // row count, 0 for w < 2
    std::map<std::uint64_t, std::size_t> rank_by_prime;
    std::optional<std::size_t> rank_exact;
    Integer dim;
};

struct DimensionSeries {
    int n = 0;
    std::vector<WeightRecord> weights;  // w = 1 .. max_weight
    TruncatedSeries series{1};          // sum over w of dim_w t^(w(n-1)+1), plus t
    bool primes_agree = true;
};

// Dimensions of the weight-graded components of the operad with one n-ary
// generator and the relation sum_i mu o_i mu = 0, by exact corank of the
// consequence matrices. Ranks are computed modulo every configured prime and
// must agree; weights up to exact_upto are confirmed over the rationals.
inline DimensionSeries poincare_series(int n, int max_weight,
                                       std::vector<std::uint64_t> primes = {kPrime1, kPrime2},
                                       int exact_upto = 3,
                                       std::size_t column_budget = 100'000) {
    if (primes.empty()) throw std::invalid_argument("poincare_series: need at least one prime");
    DimensionSeries out;
    out.n = n;
    out.series = TruncatedSeries(max_weight * (n - 1) + 1);
    out.series.set(1, Rational(1));  // the identity component
    for (int w = 1; w <= max_weight; ++w) {
        WeightRecord rec;
        rec.w = w;
        rec.free = free_dim(n, w);
        if (w < 2) {
            rec.consequences = 0;
            rec.dim = rec.free;
        } else {
            rec.consequences = consequence_count(n, w);
            ConsequenceMatrix m = build_consequence_matrix(n, w, column_budget);
            std::optional<std::size_t> agreed;
            for (auto p : primes) {
                std::size_t r = rank_mod_p(m, p);
                rec.rank_by_prime[p] = r;
                if (agreed && *agreed != r) out.primes_agree = false;
                agreed = r;
            }
            if (w <= exact_upto) {
                rec.rank_exact = rank_exact(m);
                if (*rec.rank_exact != *agreed) out.primes_agree = false;
            }
            rec.dim = rec.free - Integer(static_cast<unsigned long>(*agreed));
        }
        out.series.set(static_cast<std::size_t>(w * (n - 1) + 1), Rational(rec.dim));
        out.weights.push_back(std::move(rec));
    }
    return out;
}

// Sparse triplet export, "row col value" per line, for external verification.
inline void write_matrix_triplets(std::ostream& os, const ConsequenceMatrix& m) {
    os << "# consequence matrix n=" << m.n << " w=" << m.w << " rows=" << m.nrows
       << " cols=" << m.ncols << '\n';
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (const auto& [c, v] : m.rows[r]) os << r << ' ' << c << ' ' << v << '\n';
}

}  // namespace opk
