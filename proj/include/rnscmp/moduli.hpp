#pragma once

// Moduli-set construction and the positional conversions (CRT decode,
// mixed-radix digits) together with componentwise residue arithmetic.
//
// ModuliSet validates a pairwise-coprime triple (p1, p2, p3) and
// precomputes every modular constant the rest of the library needs.
// The moduli may appear in any order; nothing here assumes p1 < p2 < p3.

#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>

#include <rnscmp/error.hpp>
#include <rnscmp/math.hpp>
#include <rnscmp/subgroup_table.hpp>

namespace rnscmp {

class RnsNumber;

class ModuliSet {
  public:
    // All arithmetic is unsigned 64-bit; keeping the dynamic range at or
    // below 2^62 leaves CRT intermediates overflow-safe.
    static constexpr std::uint64_t max_range = std::uint64_t{1} << 62;

    // The subgroup table is embedded eagerly for moduli small enough that
    // the O(p2^2) build is negligible; see subgroup_table().
    static constexpr std::uint64_t eager_table_modulus = 1024;

    ModuliSet(std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) : p_{p1, p2, p3} {
        for (auto p : p_)
            if (p < 2)
                throw Error(Errc::modulus_too_small,
                            "modulus " + std::to_string(p) + " is below 2");
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (std::gcd(p_[a], p_[b]) != 1)
                    throw Error(Errc::not_coprime,
                                "moduli " + std::to_string(p_[a]) + " and " +
                                    std::to_string(p_[b]) + " share a factor");
        auto p12 = checked_mul(p1, p2);
        auto m = p12 ? checked_mul(*p12, p3) : std::nullopt;
        if (!m || *m > max_range)
            throw Error(Errc::overflow, "dynamic range p1*p2*p3 exceeds 2^62");
        range_ = *m;
        cluster_width_ = p2 * p3;

        q32_ = p3 % p2;
        inv_q32_ = mod_inverse(q32_, p2);
        w1_ = cluster_width_ % p1;
        inv_w1_ = mod_inverse(w1_, p1);

        for (int i = 0; i < 3; ++i) {
            crt_factor_[i] = range_ / p_[i];
            crt_inverse_[i] = mod_inverse(crt_factor_[i] % p_[i], p_[i]);
        }
        inv_p1_mod_p2_ = mod_inverse(p1 % p2, p2);
        inv_p1_mod_p3_ = mod_inverse(p1 % p3, p3);
        inv_p2_mod_p3_ = mod_inverse(p2 % p3, p3);

        if (p2 <= eager_table_modulus)
            table_ = std::make_shared<const SubgroupTable>(p2, q32_);
    }

    std::uint64_t p1() const noexcept { return p_[0]; }
    std::uint64_t p2() const noexcept { return p_[1]; }
    std::uint64_t p3() const noexcept { return p_[2]; }
    const std::array<std::uint64_t, 3>& moduli() const noexcept { return p_; }

    // Dynamic range M = p1*p2*p3; values live in [0, M).
    std::uint64_t range() const noexcept { return range_; }

    // Width of one cluster, M / p1 = p2*p3.
    std::uint64_t cluster_width() const noexcept { return cluster_width_; }

    std::uint64_t q32() const noexcept { return q32_; }          // p3 mod p2
    std::uint64_t inv_q32() const noexcept { return inv_q32_; }  // q32^-1 mod p2
    std::uint64_t w1() const noexcept { return w1_; }            // (p2*p3) mod p1
    std::uint64_t inv_w1() const noexcept { return inv_w1_; }    // w1^-1 mod p1

    std::uint64_t crt_factor(int i) const { return crt_factor_.at(i); }    // M / p_i
    std::uint64_t crt_inverse(int i) const { return crt_inverse_.at(i); }  // (M/p_i)^-1 mod p_i

    std::uint64_t inv_p1_mod_p2() const noexcept { return inv_p1_mod_p2_; }
    std::uint64_t inv_p1_mod_p3() const noexcept { return inv_p1_mod_p3_; }
    std::uint64_t inv_p2_mod_p3() const noexcept { return inv_p2_mod_p3_; }

    bool has_subgroup_table() const noexcept { return table_ != nullptr; }

    // The cached S(r, i) table. Available whenever p2 <= eager_table_modulus
    // (every set the harness sweeps); larger sets must build their own via
    // build_subgroup_table() and use the table-taking query overloads.
    const SubgroupTable& subgroup_table() const {
        if (!table_)
            throw Error(Errc::range_too_large,
                        "no embedded subgroup table for p2=" + std::to_string(p_[1]) +
                            " (> " + std::to_string(eager_table_modulus) +
                            "); use build_subgroup_table()");
        return *table_;
    }

    inline RnsNumber encode(std::uint64_t n) const;
    inline RnsNumber number(std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) const;

    friend bool operator==(const ModuliSet& a, const ModuliSet& b) noexcept {
        return a.p_ == b.p_;
    }

  private:
    std::array<std::uint64_t, 3> p_;
    std::uint64_t range_ = 0;
    std::uint64_t cluster_width_ = 0;
    std::uint64_t q32_ = 0, inv_q32_ = 0;
    std::uint64_t w1_ = 0, inv_w1_ = 0;
    std::array<std::uint64_t, 3> crt_factor_{};
    std::array<std::uint64_t, 3> crt_inverse_{};
    std::uint64_t inv_p1_mod_p2_ = 0, inv_p1_mod_p3_ = 0, inv_p2_mod_p3_ = 0;
    std::shared_ptr<const SubgroupTable> table_;
};

// A residue triple bound to its moduli set. Instances always satisfy
// 0 <= x_i < p_i; the owning ModuliSet must outlive the number.
class RnsNumber {
  public:
    RnsNumber(const ModuliSet& ms, std::uint64_t x1, std::uint64_t x2, std::uint64_t x3)
        : r_{x1, x2, x3}, ms_(&ms) {
        for (int i = 0; i < 3; ++i)
            if (r_[i] >= ms.moduli()[i])
                throw Error(Errc::out_of_range,
                            "residue " + std::to_string(r_[i]) + " is not below modulus " +
                                std::to_string(ms.moduli()[i]));
    }

    std::uint64_t r1() const noexcept { return r_[0]; }
    std::uint64_t r2() const noexcept { return r_[1]; }
    std::uint64_t r3() const noexcept { return r_[2]; }
    const std::array<std::uint64_t, 3>& residues() const noexcept { return r_; }
    const ModuliSet& moduli() const noexcept { return *ms_; }

    bool is_zero() const noexcept { return r_[0] == 0 && r_[1] == 0 && r_[2] == 0; }

    friend bool operator==(const RnsNumber& a, const RnsNumber& b) noexcept {
        return a.r_ == b.r_ && *a.ms_ == *b.ms_;
    }

  private:
    std::array<std::uint64_t, 3> r_;
    const ModuliSet* ms_;
};

inline RnsNumber ModuliSet::encode(std::uint64_t n) const {
    if (n >= range_)
        throw Error(Errc::out_of_range, "value " + std::to_string(n) +
                                            " is outside [0, " + std::to_string(range_) + ")");
    return RnsNumber(*this, n % p_[0], n % p_[1], n % p_[2]);
}

inline RnsNumber ModuliSet::number(std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) const {
    return RnsNumber(*this, x1, x2, x3);
}

namespace detail {
inline void require_same_set(const RnsNumber& x, const RnsNumber& y) {
    if (!(x.moduli() == y.moduli()))
        throw Error(Errc::moduli_mismatch, "operands belong to different moduli sets");
}
} // namespace detail

// CRT reconstruction: the unique n in [0, M) with n mod p_i = x_i.
inline std::uint64_t decode(const RnsNumber& x) {
    const ModuliSet& ms = x.moduli();
    std::uint64_t acc = 0;
    for (int i = 0; i < 3; ++i) {
        // (x_i * inv_i mod p_i) * (M / p_i) < M, so the sum of three terms
        // stays below 3 * 2^62 and fits in 64 bits.
        std::uint64_t t = mul_mod(x.residues()[i], ms.crt_inverse(i), ms.moduli()[i]);
        acc += t * ms.crt_factor(i);
    }
    return acc % ms.range();
}

inline RnsNumber add(const RnsNumber& x, const RnsNumber& y) {
    detail::require_same_set(x, y);
    const auto& p = x.moduli().moduli();
    return RnsNumber(x.moduli(), add_mod(x.r1(), y.r1(), p[0]), add_mod(x.r2(), y.r2(), p[1]),
                     add_mod(x.r3(), y.r3(), p[2]));
}

inline RnsNumber sub(const RnsNumber& x, const RnsNumber& y) {
    detail::require_same_set(x, y);
    const auto& p = x.moduli().moduli();
    return RnsNumber(x.moduli(), sub_mod(x.r1(), y.r1(), p[0]), sub_mod(x.r2(), y.r2(), p[1]),
                     sub_mod(x.r3(), y.r3(), p[2]));
}

inline RnsNumber mul(const RnsNumber& x, const RnsNumber& y) {
    detail::require_same_set(x, y);
    const auto& p = x.moduli().moduli();
    return RnsNumber(x.moduli(), mul_mod(x.r1(), y.r1(), p[0]), mul_mod(x.r2(), y.r2(), p[1]),
                     mul_mod(x.r3(), y.r3(), p[2]));
}

// Mixed-radix digits, least significant first:
//   value = a1 + a2*p1 + a3*p1*p2,  0 <= a_i < p_i.
struct MrcDigits {
    std::uint64_t a1 = 0;
    std::uint64_t a2 = 0;
    std::uint64_t a3 = 0;

    friend bool operator==(const MrcDigits&, const MrcDigits&) = default;
};

// Sequential subtract-and-divide conversion.
inline MrcDigits mrc_digits(const RnsNumber& x) {
    const ModuliSet& ms = x.moduli();
    const auto& p = ms.moduli();
    MrcDigits d;
    d.a1 = x.r1();
    d.a2 = mul_mod(sub_mod(x.r2(), d.a1, p[1]), ms.inv_p1_mod_p2(), p[1]);
    std::uint64_t t = mul_mod(sub_mod(x.r3(), d.a1, p[2]), ms.inv_p1_mod_p3(), p[2]);
    t = sub_mod(t, d.a2, p[2]);
    d.a3 = mul_mod(t, ms.inv_p2_mod_p3(), p[2]);
    return d;
}

} // namespace rnscmp
