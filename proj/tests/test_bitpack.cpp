#include "walkstore/bitvec.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/mixed_radix.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/succinct_array.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace walkstore;

namespace {

std::vector<BigInt> bigs(std::initializer_list<int> v) {
    std::vector<BigInt> out;
    for (int x : v) {
        out.emplace_back(x);
    }
    return out;
}

// random spec of up to max_t positions with radices up to 2^max_bits,
// drawn in runs so that both uniform and mixed layouts occur
RadixSpec random_spec(std::mt19937_64& rng, std::size_t max_t, std::size_t max_bits) {
    RadixSpec spec;
    std::size_t t = rng() % max_t + 1;
    while (spec.size() < t) {
        std::size_t bits = rng() % max_bits + 1;
        BigInt m = 1;
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), bits);
        m = random_below(rng, m) + 1;
        std::size_t count = std::min<std::size_t>(t - spec.size(), rng() % 40 + 1);
        spec.push(m, count);
    }
    return spec;
}

std::vector<BigInt> random_values(std::mt19937_64& rng, const RadixSpec& spec) {
    std::vector<BigInt> v;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        v.push_back(random_below(rng, spec.radix(i)));
    }
    return v;
}

} // namespace

TEST_CASE("bitvec read/write") {
    BitVec v(200);
    v.write(3, 7, 0x55);
    v.write(60, 64, 0xfedcba9876543210ull);
    CHECK(v.read(3, 7) == 0x55);
    CHECK(v.read(60, 64) == 0xfedcba9876543210ull);
    CHECK_THROWS_AS(v.read(190, 20), RangeError);
    CHECK_THROWS_AS(v.write(0, 3, 8), RangeError);
    BigInt b("500000000000000000001");  // just under 2^69
    v.write_big(130, 70, b);
    CHECK(v.read_big(130, 70) == b);
    CHECK(v.read(60, 64) == 0xfedcba9876543210ull);
    probes::reset();
    v.read(60, 64);
    CHECK(probes::words() == 2);
    auto bytes = v.to_bytes();
    CHECK(BitVec::from_bytes(bytes.data(), 200) == v);
}

TEST_CASE("mixed radix examples") {
    RadixSpec s3 = RadixSpec::uniform(3, 3);
    CHECK(mixed_radix_rank(bigs({0, 1, 2}), s3) == 5);
    CHECK(mixed_radix_rank(bigs({0, 0, 0}), s3) == 0);
    CHECK(mixed_radix_rank(bigs({2, 2, 2}), s3) == 26);
    CHECK(mixed_radix_unrank(5, s3) == bigs({0, 1, 2}));
    CHECK(mixed_radix_unrank(0, s3) == bigs({0, 0, 0}));
    CHECK(mixed_radix_unrank(12, RadixSpec::uniform(13, 1)) == bigs({12}));
    CHECK_THROWS_AS(mixed_radix_rank(bigs({0, 3, 0}), s3), RangeError);
    CHECK_THROWS_AS(mixed_radix_unrank(27, s3), RangeError);
}

TEST_CASE("mixed radix is a bijection for small products") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        RadixSpec spec;
        BigInt prod = 1;
        while (true) {
            BigInt m = rng() % 9 + 1;
            if (prod * m > 100000) {
                break;
            }
            spec.push(m);
            prod *= m;
        }
        CHECK(spec.product() == prod);
        for (BigInt v = 0; v < prod; ++v) {
            REQUIRE(mixed_radix_rank(mixed_radix_unrank(v, spec), spec) == v);
        }
    }
}

TEST_CASE("succinct array examples") {
    RadixSpec s3 = RadixSpec::uniform(3, 3);
    auto blocked = SuccinctArray::build(s3, bigs({0, 1, 2}), Strategy::blocked(3));
    CHECK(blocked.payload_bits() == 5);
    CHECK(blocked.get(0) == 0);
    CHECK(blocked.get(1) == 1);
    CHECK(blocked.get(2) == 2);

    std::vector<BigInt> bits;
    for (int i = 7; i >= 0; --i) {
        bits.emplace_back((0xA5 >> i) & 1);
    }
    auto packed = SuccinctArray::build(RadixSpec::uniform(2, 8), bits, Strategy::packed());
    CHECK(packed.payload_bits() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(packed.get(i) == bits[i]);
    }

    auto zeros = SuccinctArray::build(RadixSpec::uniform(7, 10), std::vector<BigInt>(10, 0), Strategy::spill_tree());
    CHECK(zeros.get(0) == 0);

    // spill tree over [5, 7, 11]: every value tuple reads back
    RadixSpec s = RadixSpec(bigs({5, 7, 11}));
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 7; ++b) {
            for (int c = 0; c < 11; ++c) {
                auto arr = SuccinctArray::build(s, bigs({a, b, c}), Strategy::spill_tree());
                REQUIRE(arr.get(0) == a);
                REQUIRE(arr.get(1) == b);
                REQUIRE(arr.get(2) == c);
            }
        }
    }
}

TEST_CASE("spill tree over 1024 ternary digits with K_min 2^20") {
    std::mt19937_64 rng(5);
    RadixSpec spec = RadixSpec::uniform(3, 1024);
    auto values = random_values(rng, spec);
    auto arr = SuccinctArray::build(spec, values, Strategy::spill_tree(1u << 20));
    CHECK(spec.payload_bits() == 1624);
    CHECK(arr.data_bits() <= 1624 + 44);
    CHECK(arr.header_bits() <= 16 + 2 * arr.root_spill_bits());
    for (std::size_t i = 0; i < 1024; ++i) {
        REQUIRE(arr.get(i) == values[i]);
    }
}

TEST_CASE("strategy parameter validation") {
    CHECK_THROWS_AS(Strategy::parse("blocked:0"), ParameterError);
    CHECK_THROWS_AS(Strategy::parse("spill_tree:1"), ParameterError);
    CHECK_THROWS_AS(Strategy::parse("zigzag"), ParseError);
    CHECK(Strategy::parse("blocked:20") == Strategy::blocked(20));
    CHECK(Strategy::parse("spill_tree") == Strategy::spill_tree());
    CHECK_THROWS_AS(SuccinctArray::build(RadixSpec::uniform(3, 2), bigs({0, 1}), Strategy::spill_tree(1)),
                    ParameterError);
    CHECK_THROWS_AS(SuccinctArray::build(RadixSpec::uniform(3, 2), bigs({0, 3}), Strategy::packed()), RangeError);
}

TEST_CASE("round trip and exact space formulas on random specs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t max_bits = trial % 3 == 0 ? 256 : 12;
        RadixSpec spec = random_spec(rng, trial % 10 == 0 ? 2048 : 300, max_bits);
        auto values = random_values(rng, spec);
        const std::size_t t = spec.size();

        auto packed = SuccinctArray::build(spec, values, Strategy::packed());
        std::size_t want_packed = 0;
        for (std::size_t i = 0; i < t; ++i) {
            want_packed += ceil_log2(spec.radix(i));
        }
        CHECK(packed.payload_bits() == want_packed);

        std::size_t b = rng() % 9 + 1;
        auto blocked = SuccinctArray::build(spec, values, Strategy::blocked(b));
        std::size_t want_blocked = 0;
        for (std::size_t lo = 0; lo < t; lo += b) {
            want_blocked += ceil_log2(spec.product(lo, std::min(t, lo + b)));
        }
        CHECK(blocked.payload_bits() == want_blocked);

        auto spill = SuccinctArray::build(spec, values, Strategy::spill_tree());
        double lg_t = std::log2(static_cast<double>(std::max<std::size_t>(t, 2)));
        CHECK(static_cast<double>(spill.data_bits()) <= spec.payload_bits() + 4 * lg_t + 4);
        CHECK(spill.header_bits() <= 16 + 2 * spill.root_spill_bits());

        for (std::size_t i = 0; i < t; ++i) {
            REQUIRE(packed.get(i) == values[i]);
            REQUIRE(blocked.get(i) == values[i]);
            REQUIRE(spill.get(i) == values[i]);
        }
        for (const auto* a : {&packed, &blocked, &spill}) {
            Writer out;
            a->write(out);
            Reader in(out.data());
            auto back = SuccinctArray::read(in);
            CHECK(back == *a);
            CHECK(in.at_end());
        }
        CHECK_THROWS_AS(spill.get(t), RangeError);
    }
}

TEST_CASE("spill tree redundancy grows slowly with t") {
    std::mt19937_64 rng(3);
    double prev = -1;
    for (std::size_t t = 1024; t <= (1u << 16); t *= 2) {
        RadixSpec spec = RadixSpec::uniform(3, t);
        auto values = random_values(rng, spec);
        auto arr = SuccinctArray::build(spec, values, Strategy::spill_tree());
        double red = static_cast<double>(arr.data_bits()) - static_cast<double>(spec.payload_bits());
        CHECK(red <= 4 * std::log2(static_cast<double>(t)) + 64);
        if (prev >= 0) {
            CHECK(red - prev <= 4);
        }
        prev = red;
        for (int q = 0; q < 200; ++q) {
            std::size_t i = rng() % t;
            REQUIRE(arr.get(i) == values[i]);
        }
    }
}

TEST_CASE("blocked reads touch at most three words below 2^128 groups") {
    std::mt19937_64 rng(8);
    RadixSpec spec = RadixSpec::uniform(1000, 5000);
    auto values = random_values(rng, spec);
    auto arr = SuccinctArray::build(spec, values, Strategy::blocked(12));  // 12 * lg 1000 < 120 bits
    for (std::size_t i = 0; i < spec.size(); ++i) {
        probes::reset();
        REQUIRE(arr.get(i) == values[i]);
        REQUIRE(probes::words() <= 3);
    }
    auto auto_b = SuccinctArray::build(spec, values, Strategy::blocked(0));
    CHECK(auto_b.strategy().param == 12);
}

TEST_CASE("append") {
    auto a = SuccinctArray::appendable(Strategy::blocked(20));
    a.append(1, 3);
    a.append(2, 3);
    a.append(0, 3);
    CHECK(a.get(0) == 1);
    CHECK(a.get(1) == 2);
    CHECK(a.get(2) == 0);
    CHECK_THROWS_AS(a.append(3, 3), RangeError);
    CHECK_THROWS_AS(SuccinctArray::appendable(Strategy::spill_tree()), UnsupportedOperation);

    std::mt19937_64 rng(1);
    auto big_arr = SuccinctArray::appendable(Strategy::blocked(20));
    std::vector<BigInt> values;
    for (int i = 0; i < 100000; ++i) {
        values.emplace_back(static_cast<unsigned long>(rng() % 3));
        big_arr.append(values.back(), 3);
    }
    CHECK(big_arr.payload_bits() == 32 * 5000);
    for (int q = 0; q < 2000; ++q) {
        std::size_t i = rng() % values.size();
        REQUIRE(big_arr.get(i) == values[i]);
    }

    // appending matches a batch build byte for byte, also mid-group
    for (auto strat : {Strategy::packed(), Strategy::blocked(7)}) {
        auto online = SuccinctArray::appendable(strat);
        RadixSpec spec;
        std::vector<BigInt> vals;
        for (int i = 0; i < 53; ++i) {
            BigInt m = i < 30 ? 5 : 1000;
            vals.push_back(random_below(rng, m));
            spec.push(m);
            online.append(vals.back(), m);
        }
        auto batch = SuccinctArray::build(spec, vals, strat);
        Writer w1, w2;
        online.write(w1);
        batch.write(w2);
        CHECK(w1.data() == w2.data());
    }
}
