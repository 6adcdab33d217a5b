#pragma once

// The subgroup permutation table: S(r, i) = (r - i * (p3 mod p2)) mod p2
// for r, i in [0, p2). Because gcd(p3 mod p2, p2) = 1, every row is a
// permutation of {0, ..., p2-1}, so each row has an exact inverse lookup:
// index_of(r, v) is the unique i with S(r, i) = v.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <rnscmp/error.hpp>
#include <rnscmp/math.hpp>

namespace rnscmp {

class SubgroupTable {
  public:
    // The table takes O(p2^2) memory; refuse sizes past ~67 MB.
    static constexpr std::uint64_t max_modulus = 4096;

    SubgroupTable(std::uint64_t p2, std::uint64_t q32) : p2_(p2) {
        if (p2 < 2 || p2 > max_modulus)
            throw Error(Errc::range_too_large,
                        "subgroup table supports 2 <= p2 <= " + std::to_string(max_modulus) +
                            ", got p2=" + std::to_string(p2));
        q32 %= p2;
        s_.resize(static_cast<std::size_t>(p2 * p2));
        inv_.resize(s_.size());
        for (std::uint64_t r = 0; r < p2; ++r) {
            std::uint64_t v = r;  // S(r, 0) = r, then each step subtracts q32 mod p2
            for (std::uint64_t i = 0; i < p2; ++i) {
                s_[idx(r, i)] = static_cast<std::uint16_t>(v);
                inv_[idx(r, v)] = static_cast<std::uint16_t>(i);
                v = v >= q32 ? v - q32 : v + p2 - q32;
            }
        }
    }

    std::uint64_t modulus() const noexcept { return p2_; }

    // S(r, i).
    std::uint64_t s(std::uint64_t r, std::uint64_t i) const {
        check_arg(r, "row");
        check_arg(i, "column");
        return s_[idx(r, i)];
    }

    // The unique i with S(r, i) == value.
    std::uint64_t index_of(std::uint64_t r, std::uint64_t value) const {
        check_arg(r, "row");
        check_arg(value, "value");
        return inv_[idx(r, value)];
    }

    std::span<const std::uint16_t> row(std::uint64_t r) const {
        check_arg(r, "row");
        return {s_.data() + idx(r, 0), static_cast<std::size_t>(p2_)};
    }

  private:
    std::size_t idx(std::uint64_t r, std::uint64_t i) const noexcept {
        return static_cast<std::size_t>(r * p2_ + i);
    }

    void check_arg(std::uint64_t v, const char* what) const {
        if (v >= p2_)
            throw Error(Errc::out_of_range, std::string("subgroup table ") + what +
                                                " must be < " + std::to_string(p2_));
    }

    std::uint64_t p2_;
    std::vector<std::uint16_t> s_;
    std::vector<std::uint16_t> inv_;
};

} // namespace rnscmp
