#pragma once

// 64-bit modular arithmetic helpers. Products are carried in 128-bit
// intermediates, so operands up to 2^62 are safe everywhere.

#include <cstdint>
#include <numeric>
#include <optional>

#include <rnscmp/error.hpp>

namespace rnscmp {

namespace detail {
using u128 = unsigned __int128;
using i128 = __int128;
} // namespace detail

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((detail::u128(a) + b) % m);
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(detail::u128(a) * b % m);
}

// a * b, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    detail::u128 p = detail::u128(a) * b;
    if (p > ~std::uint64_t{0}) return std::nullopt;
    return static_cast<std::uint64_t>(p);
}

// Multiplicative inverse of a modulo m via extended Euclid.
// Requires gcd(a, m) = 1; the callers establish coprimality first.
inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    using detail::i128;
    i128 r0 = i128(m), r1 = i128(a % m);
    i128 t0 = 0, t1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 r2 = r0 - q * r1;
        i128 t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1)
        throw Error(Errc::not_coprime, "mod_inverse: arguments are not coprime");
    if (t0 < 0) t0 += i128(m);
    return static_cast<std::uint64_t>(t0);
}

// Deterministic 64-bit generator for reproducible operand streams.
// Unlike std::uniform_int_distribution, the output sequence is pinned
// across standard library implementations.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by 128-bit multiply; bias is < 2^-64
    // per draw, negligible for verification sampling and benchmarking.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(detail::u128(next()) * bound >> 64);
    }

  private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t fnv1a64_init = 0xcbf29ce484222325ull;

inline std::uint64_t fnv1a64(std::uint64_t hash, unsigned char byte) {
    return (hash ^ byte) * 0x100000001b3ull;
}

} // namespace rnscmp
