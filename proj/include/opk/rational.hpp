#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opk {

// Exact arithmetic substrate. Integer is sign-magnitude arbitrary precision,
// Rational is kept reduced with a positive denominator; all operations are
// exact. Backed by GMP.
using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class does not canonicalize two-argument constructions, so all code
// builds rationals through here.
inline Rational rat(Integer num, Integer den) {
    if (sgn(den) == 0) throw std::invalid_argument("rat: zero denominator");
    Rational q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline Rational rat(long num, long den = 1) { return rat(Integer(num), Integer(den)); }

inline Integer int_from_string(std::string_view s) {
    return Integer(std::string(s), 10);
}

// Accepts "p" or "p/q"; result is reduced.
inline Rational rat_from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(int_from_string(s));
    return rat(int_from_string(s.substr(0, slash)), int_from_string(s.substr(slash + 1)));
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(const Integer& n, unsigned long k) {
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) { return binomial(Integer(n), k); }

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rat(const Rational& base, unsigned long e) {
    return rat(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
}

// Exact square root when z is a perfect square.
inline bool perfect_sqrt(const Integer& z, Integer& root) {
    if (sgn(z) < 0) return false;
    if (mpz_perfect_square_p(z.get_mpz_t()) == 0) return false;
    mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
    return true;
}

inline bool divides(const Integer& d, const Integer& z) {
    return mpz_divisible_p(z.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient; caller guarantees divisibility.
inline Integer div_exact(const Integer& z, const Integer& d) {
    Integer r;
    mpz_divexact(r.get_mpz_t(), z.get_mpz_t(), d.get_mpz_t());
    return r;
}

}  // namespace opk
