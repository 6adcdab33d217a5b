#include <catch2/catch_amalgamated.hpp>

#include <rnscmp/compare.hpp>
#include <rnscmp/math.hpp>

#include "test_util.hpp"

using namespace rnscmp;
using testutil::code_of;

TEST_CASE("modular helpers stay exact near the range cap") {
    constexpr std::uint64_t big = std::uint64_t{1} << 62;
    CHECK(add_mod(big - 1, big - 1, big) == big - 2);
    CHECK(sub_mod(0, 1, big) == big - 1);
    CHECK(sub_mod(5, 3, 7) == 2);
    CHECK(sub_mod(3, 5, 7) == 5);
    // (2^62-1)^2 mod 2^62-3: needs full 128-bit products.
    CHECK(mul_mod(big - 1, big - 1, big - 3) == 4);
    CHECK(mul_mod(0, big - 1, big - 1) == 0);

    CHECK(checked_mul(std::uint64_t{1} << 31, std::uint64_t{1} << 31).value() == big);
    CHECK(checked_mul(~std::uint64_t{0}, 1).value() == ~std::uint64_t{0});
    CHECK_FALSE(checked_mul(~std::uint64_t{0}, 2).has_value());
    CHECK_FALSE(checked_mul(std::uint64_t{1} << 32, std::uint64_t{1} << 32).has_value());
}

TEST_CASE("modular inverse") {
    CHECK(mod_inverse(1, 2) == 1);
    CHECK(mod_inverse(2, 5) == 3);
    CHECK(mod_inverse(7, 3) == 1);  // reduces its argument first
    CHECK(code_of([] { mod_inverse(2, 4); }) == Errc::not_coprime);
    CHECK(code_of([] { mod_inverse(0, 7); }) == Errc::not_coprime);

    SplitMix64 rng(11);
    for (int k = 0; k < 2000; ++k) {
        std::uint64_t m = 2 + rng.next_below((std::uint64_t{1} << 62) - 2);
        std::uint64_t a = 1 + rng.next_below(m - 1);
        if (std::gcd(a, m) != 1) continue;
        std::uint64_t inv = mod_inverse(a, m);
        REQUIRE(inv < m);
        REQUIRE(mul_mod(a, inv, m) == 1);
    }
}

TEST_CASE("splitmix64 and fnv1a match their reference vectors") {
    SplitMix64 zero(0);
    CHECK(zero.next() == 16294208416658607535ull);
    CHECK(zero.next() == 7960286522194355700ull);
    CHECK(zero.next() == 487617019471545679ull);
    SplitMix64 s42(42);
    CHECK(s42.next() == 13679457532755275413ull);

    SECTION("next_below stays in range and is deterministic") {
        SplitMix64 a(9), b(9);
        for (int k = 0; k < 1000; ++k) {
            std::uint64_t bound = 1 + (k % 97);
            std::uint64_t v = a.next_below(bound);
            REQUIRE(v < bound);
            REQUIRE(v == b.next_below(bound));
        }
    }

    std::uint64_t h = fnv1a64(fnv1a64_init, 'a');
    CHECK(h == 0xaf63dc4c8601ec8cull);
    h = fnv1a64_init;
    for (unsigned char b : {0, 1, 2}) h = fnv1a64(h, b);
    CHECK(h == 15657232601398921512ull);
}

TEST_CASE("arithmetic survives moduli near the word-width cap") {
    // Three primes whose product is just under 2^62.
    ModuliSet ms(2147483647, 65537, 32749);
    CHECK(ms.range() == 4609082331944353811ull);
    CHECK(ms.cluster_width() == 2146271213ull);
    CHECK(ms.inv_q32() == 11763);
    CHECK(ms.inv_w1() == 530165970);
    CHECK(mul_mod(ms.q32(), ms.inv_q32(), ms.p2()) == 1);
    CHECK(mul_mod(ms.w1(), ms.inv_w1(), ms.p1()) == 1);

    SECTION("round trip and comparator agreement on sampled values") {
        SplitMix64 rng(123);
        for (int k = 0; k < 5000; ++k) {
            std::uint64_t n = rng.next_below(ms.range());
            REQUIRE(decode(ms.encode(n)) == n);
        }
        REQUIRE(decode(ms.encode(ms.range() - 1)) == ms.range() - 1);
        for (int k = 0; k < 5000; ++k) {
            std::uint64_t a = rng.next_below(ms.range());
            std::uint64_t b = rng.next_below(ms.range());
            RnsNumber x = ms.encode(a), y = ms.encode(b);
            ComparisonResult want = compare_crt(x, y);
            REQUIRE(compare(x, y) == want);
            REQUIRE(compare_mrc(x, y) == want);
        }
    }

    SECTION("closed-form cluster finder matches the positional oracle at boundaries") {
        SplitMix64 rng(321);
        auto check_n = [&](std::uint64_t n) {
            std::uint64_t expected = n / ms.cluster_width() + 1;
            REQUIRE(cluster_of(ms.encode(n)).value == expected);
            REQUIRE(cluster_oracle(ms.encode(n)).value == expected);
        };
        for (int k = 0; k < 5000; ++k) check_n(rng.next_below(ms.range()));
        for (std::uint64_t m : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{1000},
                                std::uint64_t{2147483646}, std::uint64_t{2147483647}}) {
            std::uint64_t base = (m - 1) * ms.cluster_width();
            check_n(base);
            check_n(base + ms.cluster_width() - 1);
        }
        // MRC digits still recompose; every term fits in 64 bits here.
        for (int k = 0; k < 1000; ++k) {
            std::uint64_t n = rng.next_below(ms.range());
            MrcDigits d = mrc_digits(ms.encode(n));
            REQUIRE(d.a1 + d.a2 * ms.p1() + d.a3 * (ms.p1() * ms.p2()) == n);
        }
    }
}
