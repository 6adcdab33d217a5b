#pragma once

// The clustering process. [0, M) splits into p1 clusters of width p2*p3;
// cluster m covers [(m-1)*p2*p3, m*p2*p3 - 1]. A residue triple is mapped
// to its cluster without leaving the residue domain:
//
//   1. the group is the second residue, r = x2;
//   2. the subgroup index i is recovered from x3 mod p2 through S(r, i);
//   3. m is the unique solution in [1, p1] of
//        (x3 + i*p3 + (m-1)*p2*p3) mod p1 = x1.
//
// cluster_of solves both steps in closed form with precomputed inverses.
// cluster_of_trial keeps the table-lookup-plus-trial formulation as an
// independent in-family cross-check, and cluster_oracle is the positional
// ground truth (decode, then divide).

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <rnscmp/moduli.hpp>
#include <rnscmp/subgroup_table.hpp>

namespace rnscmp {

// 1-based cluster number, m in [1, p1].
struct ClusterIndex {
    std::uint64_t value = 0;

    friend auto operator<=>(const ClusterIndex&, const ClusterIndex&) = default;
};

inline SubgroupTable build_subgroup_table(const ModuliSet& ms) {
    return SubgroupTable(ms.p2(), ms.q32());
}

// Table-lookup recovery of the subgroup index: the unique i in [0, p2)
// with S(r, i) = x3 mod p2.
inline std::uint64_t subgroup_index(const SubgroupTable& table, std::uint64_t r,
                                    std::uint64_t x3) {
    return table.index_of(r, x3 % table.modulus());
}

// Closed-form recovery of the same index: i = (r - x3) * q32^-1 mod p2.
inline std::uint64_t subgroup_index_closed(const ModuliSet& ms, std::uint64_t r,
                                           std::uint64_t x3) {
    if (r >= ms.p2())
        throw Error(Errc::out_of_range, "group index must be < p2");
    return mul_mod(sub_mod(r, x3, ms.p2()), ms.inv_q32(), ms.p2());
}

// The defining congruence of subgroup membership: a number with third
// residue c and first residue a sits in subgroup i of cluster m iff
// (c + i*p3 + (m-1)*p2*p3) = a (mod p1).
inline bool cluster_relation_holds(const ModuliSet& ms, std::uint64_t i, std::uint64_t c,
                                   std::uint64_t a, std::uint64_t m) {
    std::uint64_t p1 = ms.p1();
    std::uint64_t lhs = add_mod(c % p1, mul_mod(i % p1, ms.p3() % p1, p1), p1);
    lhs = add_mod(lhs, mul_mod((m - 1) % p1, ms.w1(), p1), p1);
    return lhs == a % p1;
}

// Closed-form cluster finder:
//   i = (x2 - x3) * q32^-1 mod p2
//   m = 1 + ((x1 - x3 - i*p3) * w1^-1 mod p1)
inline ClusterIndex cluster_of(const RnsNumber& x) {
    const ModuliSet& ms = x.moduli();
    std::uint64_t p1 = ms.p1();
    std::uint64_t i = mul_mod(sub_mod(x.r2(), x.r3(), ms.p2()), ms.inv_q32(), ms.p2());
    std::uint64_t lift = add_mod(x.r3() % p1, mul_mod(i % p1, ms.p3() % p1, p1), p1);
    std::uint64_t t = sub_mod(x.r1(), lift, p1);
    return ClusterIndex{1 + mul_mod(t, ms.inv_w1(), p1)};
}

// Reference formulation: look the subgroup index up in the cached table,
// then try m = 1..p1 until the congruence holds. Slower than cluster_of
// but shares no modular-inverse step with it on the m side.
inline ClusterIndex cluster_of_trial(const RnsNumber& x) {
    const ModuliSet& ms = x.moduli();
    std::uint64_t i = subgroup_index(ms.subgroup_table(), x.r2(), x.r3());
    for (std::uint64_t m = 1; m <= ms.p1(); ++m)
        if (cluster_relation_holds(ms, i, x.r3(), x.r1(), m))
            return ClusterIndex{m};
    throw Error(Errc::no_solution, "no cluster satisfies the congruence; this is a bug");
}

// Ground truth: convert to positional form and divide by the cluster width.
inline ClusterIndex cluster_oracle(const RnsNumber& x) {
    return ClusterIndex{decode(x) / x.moduli().cluster_width() + 1};
}

// One row of the per-(cluster, group) enumeration: the j-th number of
// cluster m whose second residue is r, with its three residues.
struct Table1Row {
    std::uint64_t j = 0;
    std::uint64_t n = 0;  // D(m) + j*p2 + r
    std::uint64_t a = 0;  // n mod p1
    std::uint64_t b = 0;  // n mod p2, always r
    std::uint64_t c = 0;  // n mod p3

    friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

// Materializes the numbers of group r within cluster m, j = 0..p3-1.
// Only tests and docs use this; the solvers never enumerate.
inline std::vector<Table1Row> enumerate_table1(const ModuliSet& ms, ClusterIndex m,
                                               std::uint64_t r) {
    if (m.value < 1 || m.value > ms.p1())
        throw Error(Errc::out_of_range, "cluster index must be in [1, p1]");
    if (r >= ms.p2())
        throw Error(Errc::out_of_range, "group index must be < p2");
    std::uint64_t base = (m.value - 1) * ms.cluster_width();  // D(m)
    std::vector<Table1Row> rows;
    rows.reserve(static_cast<std::size_t>(ms.p3()));
    for (std::uint64_t j = 0; j < ms.p3(); ++j) {
        std::uint64_t n = base + j * ms.p2() + r;
        rows.push_back({j, n, n % ms.p1(), n % ms.p2(), n % ms.p3()});
    }
    return rows;
}

} // namespace rnscmp
