#pragma once

// Magnitude comparison of two RNS numbers by cluster inspection, plus the
// two positional baselines (CRT and mixed-radix) used as oracles and as
// benchmark opponents.
//
// The clustering rule: with Z = X - Y (mod M) and Z != 0,
//   CL(X) > CL(Y)              -> X > Y
//   CL(X) < CL(Y)              -> X < Y
//   CL(X) = CL(Y), CL(Z) = 1   -> X > Y
//   CL(X) = CL(Y), CL(Z) = p1  -> X < Y
// The last two cases are exhaustive: same-cluster operands differ by less
// than one cluster width, so their difference wraps into either the first
// or the last cluster.

#include <cstdint>

#include <rnscmp/cluster.hpp>
#include <rnscmp/moduli.hpp>

namespace rnscmp {

enum class ComparisonResult { less, equal, greater };

inline const char* to_string(ComparisonResult r) {
    switch (r) {
        case ComparisonResult::less: return "LESS";
        case ComparisonResult::equal: return "EQUAL";
        case ComparisonResult::greater: return "GREATER";
    }
    return "?";
}

// Cluster-based comparison; never decodes the operands.
inline ComparisonResult compare(const RnsNumber& x, const RnsNumber& y) {
    detail::require_same_set(x, y);
    RnsNumber z = sub(x, y);
    if (z.is_zero()) return ComparisonResult::equal;
    ClusterIndex cx = cluster_of(x);
    ClusterIndex cy = cluster_of(y);
    if (cx > cy) return ComparisonResult::greater;
    if (cx < cy) return ComparisonResult::less;
    ClusterIndex cz = cluster_of(z);
    if (cz.value == 1) return ComparisonResult::greater;
    if (cz.value == x.moduli().p1()) return ComparisonResult::less;
    throw Error(Errc::internal_inconsistency,
                "same-cluster difference fell in an interior cluster; this is a bug");
}

// Baseline: full CRT reconstruction of both operands.
inline ComparisonResult compare_crt(const RnsNumber& x, const RnsNumber& y) {
    detail::require_same_set(x, y);
    std::uint64_t a = decode(x);
    std::uint64_t b = decode(y);
    if (a < b) return ComparisonResult::less;
    if (a > b) return ComparisonResult::greater;
    return ComparisonResult::equal;
}

// Baseline: mixed-radix digits compared most significant first.
inline ComparisonResult compare_mrc(const RnsNumber& x, const RnsNumber& y) {
    detail::require_same_set(x, y);
    MrcDigits a = mrc_digits(x);
    MrcDigits b = mrc_digits(y);
    if (a.a3 != b.a3) return a.a3 < b.a3 ? ComparisonResult::less : ComparisonResult::greater;
    if (a.a2 != b.a2) return a.a2 < b.a2 ? ComparisonResult::less : ComparisonResult::greater;
    if (a.a1 != b.a1) return a.a1 < b.a1 ? ComparisonResult::less : ComparisonResult::greater;
    return ComparisonResult::equal;
}

} // namespace rnscmp
