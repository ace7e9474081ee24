#pragma once

#include <cstdint>
#include <stdexcept>

namespace opk {

// Residue arithmetic modulo a prime p < 2^62; products fit in __int128.
class PrimeField {
  public:
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || p >= (std::uint64_t(1) << 62))
            throw std::invalid_argument("PrimeField: prime out of range");
    }

    std::uint64_t modulus() const { return p_; }

    std::uint64_t reduce_signed(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return r < 0 ? static_cast<std::uint64_t>(r + static_cast<long long>(p_))
                     : static_cast<std::uint64_t>(r);
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }

    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

  private:
    std::uint64_t p_;
};

// Default cross-validation pair: the Mersenne prime 2^61 - 1 and the largest
// prime below 2^62.
inline constexpr std::uint64_t kPrime1 = (std::uint64_t(1) << 61) - 1;
inline constexpr std::uint64_t kPrime2 = 4611686018427387847ULL;

}  // namespace opk
