#pragma once

// Benchmark runner for the three comparators. All methods see the same
// pre-encoded operand stream; encoding cost is deliberately outside the
// timed region. Each method folds its outcome stream into an FNV-1a hash,
// which both defeats dead-code elimination and gives a cheap cross-method
// agreement check: identical hashes mean identical outcome sequences.

#include <array>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <rnscmp/compare.hpp>
#include <rnscmp/math.hpp>

namespace rnscmp {

struct BenchRecord {
    std::string method;
    std::array<std::uint64_t, 3> moduli{};
    std::uint64_t pairs = 0;
    std::uint64_t total_ns = 0;
    double ops_per_sec = 0.0;
    std::uint64_t outcome_hash = 0;
};

inline std::array<BenchRecord, 3> run_bench(const ModuliSet& ms, std::uint64_t pairs,
                                            std::uint64_t seed) {
    if (pairs == 0)
        throw Error(Errc::out_of_range, "benchmark needs at least one pair");

    SplitMix64 rng(seed);
    std::vector<RnsNumber> xs, ys;
    xs.reserve(pairs);
    ys.reserve(pairs);
    for (std::uint64_t k = 0; k < pairs; ++k) {
        xs.push_back(ms.encode(rng.next_below(ms.range())));
        ys.push_back(ms.encode(rng.next_below(ms.range())));
    }

    auto timed = [&](const char* name, auto&& fn) -> BenchRecord {
        std::uint64_t hash = fnv1a64_init;
        auto t0 = std::chrono::steady_clock::now();
        for (std::uint64_t k = 0; k < pairs; ++k)
            hash = fnv1a64(hash, static_cast<unsigned char>(fn(xs[k], ys[k])));
        auto t1 = std::chrono::steady_clock::now();
        BenchRecord rec;
        rec.method = name;
        rec.moduli = ms.moduli();
        rec.pairs = pairs;
        rec.total_ns =
            static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        rec.ops_per_sec = rec.total_ns == 0 ? 0.0 : pairs * 1e9 / double(rec.total_ns);
        rec.outcome_hash = hash;
        return rec;
    };

    return {timed("cluster-compare", [](const RnsNumber& x, const RnsNumber& y) {
                return static_cast<int>(compare(x, y));
            }),
            timed("crt", [](const RnsNumber& x, const RnsNumber& y) {
                return static_cast<int>(compare_crt(x, y));
            }),
            timed("mrc", [](const RnsNumber& x, const RnsNumber& y) {
                return static_cast<int>(compare_mrc(x, y));
            })};
}

inline std::string bench_csv_header() {
    return "method,p1,p2,p3,pairs,total_ns,ops_per_sec,outcome_fnv1a";
}

inline std::string bench_csv_row(const BenchRecord& r) {
    std::ostringstream out;
    out << r.method << ',' << r.moduli[0] << ',' << r.moduli[1] << ',' << r.moduli[2] << ','
        << r.pairs << ',' << r.total_ns << ',' << std::fixed << r.ops_per_sec << ','
        << r.outcome_hash;
    return out.str();
}

template <typename Records>
std::string bench_csv(const Records& records) {
    std::ostringstream out;
    out << bench_csv_header() << '\n';
    for (const auto& r : records) out << bench_csv_row(r) << '\n';
    return out.str();
}

inline std::vector<BenchRecord> parse_bench_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != bench_csv_header())
        throw Error(Errc::io, "bench csv header does not match the schema");
    std::vector<BenchRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8)
            throw Error(Errc::io, "bench csv row wants 8 fields: " + line);
        try {
            BenchRecord r;
            r.method = cells[0];
            r.moduli = {std::stoull(cells[1]), std::stoull(cells[2]), std::stoull(cells[3])};
            r.pairs = std::stoull(cells[4]);
            r.total_ns = std::stoull(cells[5]);
            r.ops_per_sec = std::stod(cells[6]);
            r.outcome_hash = std::stoull(cells[7]);
            records.push_back(std::move(r));
        } catch (const std::exception&) {
            throw Error(Errc::io, "bench csv row is not numeric: " + line);
        }
    }
    return records;
}

} // namespace rnscmp
