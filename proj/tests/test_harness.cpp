#include <catch2/catch_amalgamated.hpp>

#include <rnscmp/bench.hpp>
#include <rnscmp/verify.hpp>

#include <algorithm>
#include <sstream>

#include "test_util.hpp"

using namespace rnscmp;
using testutil::code_of;

TEST_CASE("exhaustive verify is clean on the reference sets") {
    VerifyReport r = run_verify(ModuliSet(3, 5, 7));
    CHECK(r.mode == "exhaustive");
    CHECK(r.range_checked == 105);
    CHECK(r.pairs_checked == 105 * 105);
    CHECK(r.pairs_exhaustive);
    CHECK(r.cluster_mismatches == 0);
    CHECK(r.compare_mismatches == 0);
    CHECK(r.ok());

    VerifyReport small = run_verify(ModuliSet(2, 3, 5));
    CHECK(small.range_checked == 30);
    CHECK(small.pairs_checked == 900);
    CHECK(small.ok());

    VerifyReport unordered = run_verify(ModuliSet(3, 7, 5));
    CHECK(unordered.ok());
}

TEST_CASE("the default grid verifies clean") {
    for (auto [p1, p2, p3] : default_verify_grid()) {
        VerifyOptions opts;
        opts.pair_budget = 20000;  // keep the unit run quick; sampling is fine here
        VerifyReport r = run_verify(ModuliSet(p1, p2, p3), opts);
        INFO("moduli " << p1 << "," << p2 << "," << p3);
        CHECK(r.ok());
        CHECK(r.range_checked == p1 * p2 * p3);
    }
}

TEST_CASE("verify falls back to pair sampling on big products") {
    VerifyOptions opts;
    opts.pair_budget = 1000;
    opts.seed = 9;
    VerifyReport r = run_verify(ModuliSet(3, 5, 7), opts);
    CHECK_FALSE(r.pairs_exhaustive);
    CHECK(r.pairs_checked == 1000);
    CHECK(r.ok());
}

TEST_CASE("verify honors the exhaustive ceiling") {
    VerifyOptions opts;
    opts.exhaustive_ceiling = 100;
    CHECK(code_of([&] { run_verify(ModuliSet(3, 5, 7), opts); }) == Errc::range_too_large);
}

TEST_CASE("random verify is reproducible from its seed") {
    VerifyOptions opts;
    opts.mode = VerifyMode::random;
    opts.samples = 5000;
    opts.seed = 77;
    ModuliSet ms(7, 11, 13);
    VerifyReport a = run_verify(ms, opts);
    VerifyReport b = run_verify(ms, opts);
    CHECK(a.range_checked == 5000);
    CHECK(a.pairs_checked == 5000);
    CHECK(a.ok());
    CHECK(b.ok());
    CHECK(a.cluster_mismatches == b.cluster_mismatches);
    CHECK(a.compare_mismatches == b.compare_mismatches);
}

TEST_CASE("verify report serializes to json") {
    VerifyReport r = run_verify(ModuliSet(2, 3, 5));
    nlohmann::json j = verify_report_json(r);
    CHECK(j["moduli"] == nlohmann::json::array({2, 3, 5}));
    CHECK(j["mode"] == "exhaustive");
    CHECK(j["range_checked"] == 30);
    CHECK(j["pairs_checked"] == 900);
    CHECK(j["pairs_exhaustive"] == true);
    CHECK(j["cluster_mismatches"] == 0);
    CHECK(j["compare_mismatches"] == 0);
    CHECK(j["cluster_samples"].is_array());
    CHECK(j["wall_ms"].is_number());

    std::string text = verify_report_text(r);
    CHECK(text.find("moduli (2,3,5)") != std::string::npos);
    CHECK(text.find("0 cluster mismatches") != std::string::npos);

    SECTION("and round-trips through its schema") {
        VerifyReport back = verify_report_from_json(nlohmann::json::parse(j.dump()));
        CHECK(back.moduli == r.moduli);
        CHECK(back.mode == r.mode);
        CHECK(back.range_checked == r.range_checked);
        CHECK(back.pairs_checked == r.pairs_checked);
        CHECK(back.pairs_exhaustive == r.pairs_exhaustive);
        CHECK(back.cluster_mismatches == r.cluster_mismatches);
        CHECK(back.compare_mismatches == r.compare_mismatches);
        CHECK(back.wall_ms == r.wall_ms);
        // Re-serializing the parsed report reproduces the document.
        CHECK(verify_report_json(back) == j);

        CHECK(code_of([] { verify_report_from_json(nlohmann::json::object()); }) == Errc::io);
    }
}

TEST_CASE("bench produces one record per method over one stream") {
    ModuliSet ms(3, 5, 7);
    auto records = run_bench(ms, 5000, 42);
    REQUIRE(records.size() == 3);
    CHECK(records[0].method == "cluster-compare");
    CHECK(records[1].method == "crt");
    CHECK(records[2].method == "mrc");
    for (const auto& r : records) {
        CHECK(r.pairs == 5000);
        CHECK(r.moduli == std::array<std::uint64_t, 3>{3, 5, 7});
        CHECK(r.ops_per_sec > 0.0);
    }
    // Identical outcome streams across methods.
    CHECK(records[0].outcome_hash == records[1].outcome_hash);
    CHECK(records[1].outcome_hash == records[2].outcome_hash);

    // Same seed, same stream: the hashes are reproducible.
    auto again = run_bench(ms, 5000, 42);
    CHECK(again[0].outcome_hash == records[0].outcome_hash);
    auto other_seed = run_bench(ms, 5000, 43);
    CHECK(other_seed[0].outcome_hash == other_seed[1].outcome_hash);

    CHECK(code_of([&] { run_bench(ms, 0, 1); }) == Errc::out_of_range);
}

TEST_CASE("bench emits well-formed csv") {
    auto records = run_bench(ModuliSet(2, 3, 5), 100, 7);
    std::string csv = bench_csv(records);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "method,p1,p2,p3,pairs,total_ns,ops_per_sec,outcome_fnv1a");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(rows == 3);
    CHECK(csv.find("cluster-compare,2,3,5,100,") != std::string::npos);

    SECTION("and parses back through its schema") {
        auto back = parse_bench_csv(csv);
        REQUIRE(back.size() == 3);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(back[k].method == records[k].method);
            CHECK(back[k].moduli == records[k].moduli);
            CHECK(back[k].pairs == records[k].pairs);
            CHECK(back[k].total_ns == records[k].total_ns);
            CHECK(back[k].outcome_hash == records[k].outcome_hash);
        }
        CHECK(bench_csv(back) == csv);

        CHECK(code_of([] { parse_bench_csv("nope\n"); }) == Errc::io);
        CHECK(code_of([&] { parse_bench_csv(bench_csv_header() + "\na,b\n"); }) == Errc::io);
        CHECK(code_of([&] {
                  parse_bench_csv(bench_csv_header() + "\nm,x,3,5,1,1,1.0,1\n");
              }) == Errc::io);
    }
}
