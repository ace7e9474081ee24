#pragma once

#include <string>
#include <vector>

#include "opk/rational.hpp"
#include "opk/recurrence.hpp"
#include "opk/series.hpp"

namespace opk {

enum class Provenance { kClosedForm, kRecurrence, kInversion };

struct SequenceTable {
    std::string name;
    std::vector<Rational> values;
    std::vector<Provenance> provenance;

    std::size_t size() const { return values.size(); }
};

// Closed form for the m-th coefficient of h, where the compositional inverse
// of t - t^8 + t^15 is t h(t^7):
//   a_m = (1/(7m+1)) sum_k (-1)^k C(7m+k, k) C(7m+1, m-3k).
// The sum is always divisible by 7m+1 (the coefficients are integers).
inline Integer a_closed(long m) {
    if (m < 0) throw std::invalid_argument("a_closed: m >= 0 required");
    const Integer k7 = Integer(7 * m + 1);
    Integer acc(0);
    for (long k = 0; 3 * k <= m; ++k) {
        Integer term = binomial(Integer(7 * m + k), static_cast<unsigned long>(k)) *
                       binomial(k7, static_cast<unsigned long>(m - 3 * k));
        acc += (k % 2 == 0) ? term : -term;
    }
    if (!divides(k7, acc)) throw std::logic_error("a_closed: sum not divisible by 7m+1");
    return div_exact(acc, k7);
}

inline SequenceTable a_table(long count) {
    SequenceTable t;
    t.name = "a";
    for (long m = 0; m <= count; ++m) {
        t.values.emplace_back(a_closed(m));
        t.provenance.push_back(Provenance::kClosedForm);
    }
    return t;
}

// a_m read off the series route: coefficient of t^(7m+1) in the Lagrange
// inverse of t - t^8 + t^15. Independent of a_closed.
inline SequenceTable a_from_inversion(long count) {
    TruncatedSeries f(static_cast<int>(7 * count + 1));
    f.set(1, Rational(1));
    f.set(8, Rational(-1));
    f.set(15, Rational(1));
    TruncatedSeries inv = lagrange_invert(f);
    SequenceTable t;
    t.name = "a(inversion)";
    for (long m = 0; m <= count; ++m) {
        t.values.push_back(inv[static_cast<std::size_t>(7 * m + 1)]);
        t.provenance.push_back(Provenance::kInversion);
    }
    return t;
}

// The auxiliary solution of the same recurrence with b_0 = 0, b_1 = 1,
// propagated exactly; s_0 never vanishes on n >= 2 (its real roots all lie
// below 2), which the loop asserts.
inline SequenceTable b_table(long count, const Recurrence& rec = telescoped_recurrence()) {
    if (rec.order() != 2) throw std::invalid_argument("b_table: order-2 recurrence required");
    SequenceTable t;
    t.name = "b";
    t.values = {Rational(0), Rational(1)};
    t.provenance = {Provenance::kRecurrence, Provenance::kRecurrence};
    for (long n = 2; n <= count; ++n) {
        Integer v0 = rec.s[0].eval(Integer(n));
        if (v0 == 0) throw std::logic_error("b_table: s0 vanished on the evaluation range");
        Rational bn = (Rational(rec.s[1].eval(Integer(n))) * t.values[static_cast<std::size_t>(n - 1)] -
                       Rational(rec.s[2].eval(Integer(n))) * t.values[static_cast<std::size_t>(n - 2)]) /
                      Rational(v0);
        t.values.push_back(std::move(bn));
        t.provenance.push_back(Provenance::kRecurrence);
    }
    return t;
}

}  // namespace opk
