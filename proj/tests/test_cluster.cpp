#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include <rnscmp/cluster.hpp>

#include "test_util.hpp"

using namespace rnscmp;
using testutil::code_of;

namespace {
const std::array<std::uint64_t, 3> kGrid[] = {
    {2, 3, 5}, {3, 5, 7}, {3, 7, 5}, {5, 7, 9}, {7, 11, 13}, {2, 9, 25},
};

// The subgroup index of the j-th number of a group is the quotient of the
// in-cluster offset by p3; derived directly from the layout of a cluster.
std::uint64_t subgroup_of_offset(const ModuliSet& ms, std::uint64_t j, std::uint64_t r) {
    return (j * ms.p2() + r) / ms.p3();
}
}

TEST_CASE("subgroup table rows for (3,5,7)") {
    ModuliSet ms(3, 5, 7);
    const SubgroupTable& t = ms.subgroup_table();
    REQUIRE(t.modulus() == 5);

    using Row = std::vector<std::uint16_t>;
    auto row = [&](std::uint64_t r) { return Row(t.row(r).begin(), t.row(r).end()); };
    CHECK(row(0) == Row{0, 3, 1, 4, 2});
    CHECK(row(1) == Row{1, 4, 2, 0, 3});
    CHECK(row(2) == Row{2, 0, 3, 1, 4});
    CHECK(row(3) == Row{3, 1, 4, 2, 0});
    CHECK(row(4) == Row{4, 2, 0, 3, 1});

    CHECK(t.s(1, 1) == 4);
    CHECK(t.s(3, 4) == 0);
    CHECK(code_of([&] { t.s(5, 0); }) == Errc::out_of_range);
    CHECK(code_of([&] { t.index_of(0, 5); }) == Errc::out_of_range);
}

TEST_CASE("subgroup rows are permutations with exact inverses") {
    for (auto [p1, p2, p3] : kGrid) {
        ModuliSet ms(p1, p2, p3);
        SubgroupTable t = build_subgroup_table(ms);
        REQUIRE(t.modulus() == p2);
        for (std::uint64_t r = 0; r < p2; ++r) {
            auto row = t.row(r);
            std::vector<std::uint16_t> sorted(row.begin(), row.end());
            std::sort(sorted.begin(), sorted.end());
            for (std::uint64_t v = 0; v < p2; ++v) REQUIRE(sorted[v] == v);
            for (std::uint64_t i = 0; i < p2; ++i) REQUIRE(t.index_of(r, t.s(r, i)) == i);
        }
        // The freshly built table matches the one cached on the set.
        const SubgroupTable& cached = ms.subgroup_table();
        for (std::uint64_t r = 0; r < p2; ++r)
            for (std::uint64_t i = 0; i < p2; ++i) REQUIRE(cached.s(r, i) == t.s(r, i));
    }
}

TEST_CASE("subgroup index recovery") {
    ModuliSet ms(3, 5, 7);
    const SubgroupTable& t = ms.subgroup_table();
    CHECK(subgroup_index(t, 1, 4) == 1);
    CHECK(subgroup_index(t, 0, 6) == 2);
    CHECK(subgroup_index(t, 0, 0) == 0);
    CHECK(subgroup_index_closed(ms, 1, 4) == 1);
    CHECK(subgroup_index_closed(ms, 0, 6) == 2);

    SECTION("lookup and closed form agree everywhere") {
        for (auto [p1, p2, p3] : kGrid) {
            ModuliSet m(p1, p2, p3);
            const SubgroupTable& table = m.subgroup_table();
            for (std::uint64_t r = 0; r < p2; ++r)
                for (std::uint64_t x3 = 0; x3 < p3; ++x3)
                    REQUIRE(subgroup_index(table, r, x3) == subgroup_index_closed(m, r, x3));
        }
    }

    CHECK(code_of([&] { subgroup_index_closed(ms, 5, 0); }) == Errc::out_of_range);
}

TEST_CASE("cluster finder fixtures for (3,5,7)") {
    ModuliSet ms(3, 5, 7);
    CHECK(cluster_of(ms.number(2, 1, 4)).value == 1);
    CHECK(cluster_of(ms.number(2, 0, 6)).value == 1);
    CHECK(cluster_of(ms.number(1, 2, 3)).value == 2);
    CHECK(cluster_of(ms.number(0, 3, 0)).value == 2);
    CHECK(cluster_of(ms.number(0, 1, 5)).value == 3);
    CHECK(cluster_of(ms.number(0, 0, 0)).value == 1);
}

TEST_CASE("trial solver matches the closed form") {
    ModuliSet ms(3, 5, 7);
    CHECK(cluster_of_trial(ms.number(0, 3, 0)).value == 2);
    CHECK(cluster_of_trial(ms.number(2, 0, 6)).value == 1);

    for (auto [p1, p2, p3] : kGrid) {
        ModuliSet m(p1, p2, p3);
        for (std::uint64_t n = 0; n < m.range(); ++n) {
            RnsNumber x = m.encode(n);
            REQUIRE(cluster_of_trial(x) == cluster_of(x));
        }
    }
}

TEST_CASE("cluster oracle brackets the range") {
    ModuliSet ms(3, 5, 7);
    CHECK(cluster_oracle(ms.encode(11)).value == 1);
    CHECK(cluster_oracle(ms.encode(34)).value == 1);
    CHECK(cluster_oracle(ms.encode(35)).value == 2);
    CHECK(cluster_oracle(ms.encode(63)).value == 2);
    CHECK(cluster_oracle(ms.encode(69)).value == 2);
    CHECK(cluster_oracle(ms.encode(70)).value == 3);
    CHECK(cluster_oracle(ms.encode(104)).value == 3);

    for (auto [p1, p2, p3] : kGrid) {
        ModuliSet m(p1, p2, p3);
        CHECK(cluster_oracle(m.encode(m.range() - 1)).value == p1);
        CHECK(cluster_oracle(m.encode(0)).value == 1);
    }
}

TEST_CASE("cluster finder matches the positional ground truth") {
    for (auto [p1, p2, p3] : kGrid) {
        ModuliSet m(p1, p2, p3);
        for (std::uint64_t n = 0; n < m.range(); ++n) {
            std::uint64_t expected = n / m.cluster_width() + 1;
            REQUIRE(cluster_of(m.encode(n)).value == expected);
            REQUIRE(cluster_oracle(m.encode(n)).value == expected);
        }
    }
}

TEST_CASE("group enumeration rows") {
    ModuliSet ms(3, 5, 7);
    auto rows = enumerate_table1(ms, ClusterIndex{1}, 1);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == Table1Row{0, 1, 1, 1, 1});
    CHECK(rows[1] == Table1Row{1, 6, 0, 1, 6});
    CHECK(rows[2] == Table1Row{2, 11, 2, 1, 4});
    CHECK(rows[3] == Table1Row{3, 16, 1, 1, 2});
    CHECK(rows[4] == Table1Row{4, 21, 0, 1, 0});
    CHECK(rows[5] == Table1Row{5, 26, 2, 1, 5});
    CHECK(rows[6] == Table1Row{6, 31, 1, 1, 3});

    SECTION("rows are self-consistent for every cluster and group") {
        for (auto [p1, p2, p3] : kGrid) {
            ModuliSet m(p1, p2, p3);
            for (std::uint64_t c = 1; c <= p1; ++c)
                for (std::uint64_t r = 0; r < p2; ++r) {
                    auto table = enumerate_table1(m, ClusterIndex{c}, r);
                    REQUIRE(table.size() == p3);
                    for (const auto& row : table) {
                        REQUIRE(row.a == row.n % p1);
                        REQUIRE(row.b == r);
                        REQUIRE(row.c == (row.j * p2 + r) % p3);
                        REQUIRE(row.n == decode(m.number(row.a, row.b, row.c)));
                        REQUIRE(row.n / m.cluster_width() + 1 == c);
                    }
                }
        }
    }

    SECTION("third-residue column does not depend on the cluster") {
        for (std::uint64_t r = 0; r < 5; ++r) {
            auto m1 = enumerate_table1(ms, ClusterIndex{1}, r);
            auto m2 = enumerate_table1(ms, ClusterIndex{2}, r);
            for (std::size_t j = 0; j < m1.size(); ++j) {
                CHECK(m1[j].c == m2[j].c);
                CHECK(m1[j].b == m2[j].b);
            }
        }
    }

    CHECK(code_of([&] { enumerate_table1(ms, ClusterIndex{0}, 0); }) == Errc::out_of_range);
    CHECK(code_of([&] { enumerate_table1(ms, ClusterIndex{4}, 0); }) == Errc::out_of_range);
    CHECK(code_of([&] { enumerate_table1(ms, ClusterIndex{1}, 5); }) == Errc::out_of_range);
}

TEST_CASE("congruence holds for every enumerated row and across steps") {
    // The subgroup congruence is verified on each row, then across
    // consecutive rows: the index moves by at most one (for p2 < p3), and
    // whichever of the three step shapes applies must itself hold, also
    // one cluster up.
    for (auto triple : {std::array<std::uint64_t, 3>{3, 5, 7}, {2, 3, 5}}) {
        ModuliSet m(triple[0], triple[1], triple[2]);
        std::uint64_t p1 = m.p1(), p2 = m.p2(), p3 = m.p3();
        REQUIRE(p2 < p3);
        for (std::uint64_t c = 1; c <= p1; ++c)
            for (std::uint64_t r = 0; r < p2; ++r) {
                auto rows = enumerate_table1(m, ClusterIndex{c}, r);
                for (const auto& row : rows) {
                    std::uint64_t i = subgroup_of_offset(m, row.j, r);
                    REQUIRE(i < p2);
                    REQUIRE(i == subgroup_index(m.subgroup_table(), r, row.c));
                    REQUIRE(cluster_relation_holds(m, i, row.c, row.a, c));
                }
                for (std::size_t j = 0; j + 1 < rows.size(); ++j) {
                    std::uint64_t i0 = subgroup_of_offset(m, rows[j].j, r);
                    std::uint64_t i1 = subgroup_of_offset(m, rows[j + 1].j, r);
                    REQUIRE((i1 == i0 || i1 == i0 + 1));
                    REQUIRE(cluster_relation_holds(m, i1, rows[j + 1].c, rows[j + 1].a, c));
                    if (c < p1) {
                        auto up = enumerate_table1(m, ClusterIndex{c + 1}, r);
                        REQUIRE(cluster_relation_holds(m, i1, up[j + 1].c, up[j + 1].a, c + 1));
                    }
                }
            }
    }
}

TEST_CASE("large second modulus keeps the closed form available") {
    // p2 past the eager-embedding threshold: no cached table, but the
    // closed-form solver is table-free and stays exact.
    ModuliSet ms(3, 4099, 2);
    for (std::uint64_t n = 0; n < ms.range(); ++n)
        REQUIRE(cluster_of(ms.encode(n)).value == n / ms.cluster_width() + 1);
    CHECK(code_of([&] { ms.subgroup_table(); }) == Errc::range_too_large);
    CHECK(code_of([&] { cluster_of_trial(ms.encode(5)); }) == Errc::range_too_large);
    CHECK(code_of([&] { build_subgroup_table(ms); }) == Errc::range_too_large);

    // Between the eager threshold and the hard cap an explicit build works.
    ModuliSet mid(3, 2048, 5);
    CHECK(code_of([&] { mid.subgroup_table(); }) == Errc::range_too_large);
    SubgroupTable t = build_subgroup_table(mid);
    SplitMix64 rng(99);
    for (int k = 0; k < 500; ++k) {
        std::uint64_t r = rng.next_below(mid.p2());
        std::uint64_t x3 = rng.next_below(mid.p3());
        REQUIRE(subgroup_index(t, r, x3) == subgroup_index_closed(mid, r, x3));
    }
}
