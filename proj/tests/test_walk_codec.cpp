#include "oracle.hpp"

#include "walkstore/errors.hpp"
#include "walkstore/walk_codec.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace walkstore;
namespace gs = walkstore::graphs;

namespace {

std::shared_ptr<CountTable> table_for(const Graph& g) {
    return std::make_shared<CountTable>(std::make_shared<const Graph>(g));
}

} // namespace

TEST_CASE("codec examples on C3 and F") {
    WalkCodec c3(table_for(gs::cycle(3)), 2);
    Walk a{0, 1, 0}, b{0, 2, 0};
    CHECK(c3.encode(a).value == 1);
    CHECK(c3.encode(b).value == 2);
    CHECK(c3.decode_vertex(c3.encode(b), 1) == 2);
    CHECK(c3.decode_full({2, 0, 0, 2}) == b);
    Walk edge{0, 1};
    CHECK(c3.encode(edge).value == 1);
    CHECK(c3.decode_full({1, 1, 1, 0}) == Walk{1});

    WalkCodec f(table_for(gs::fibonacci()), 2);
    std::set<BigInt> codes;
    for (const auto& w : oracle::walks_between(gs::fibonacci(), 3, 0, 0)) {
        codes.insert(f.encode(w).value);
    }
    CHECK(codes == std::set<BigInt>{1, 2, 3});
}

TEST_CASE("codec errors") {
    WalkCodec c3(table_for(gs::cycle(3)), 2);
    Walk bad{0, 0, 1};
    CHECK_THROWS_AS(c3.encode(bad), InvalidWalk);
    CHECK_THROWS_AS(c3.decode_vertex({3, 0, 0, 2}, 1), RangeError);
    CHECK_THROWS_AS(c3.decode_vertex({1, 0, 0, 2}, 3), RangeError);
    CHECK_THROWS_AS(WalkCodec(table_for(gs::cycle(3)), 1), ParameterError);
}

TEST_CASE("predecessor_monotone") {
    std::vector<BigInt> seq{2, 5, 9, 14};
    CHECK(predecessor_monotone(seq, 6) == 1);
    std::vector<BigInt> one{7};
    for (int key = 1; key <= 7; ++key) {
        CHECK(predecessor_monotone(one, key) == 0);
    }
    CHECK_THROWS_AS(predecessor_monotone(seq, 15), RangeError);
    CHECK_THROWS_AS(predecessor_monotone(seq, 0), RangeError);

    // random sequences with non-decreasing gaps against a linear scan
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t len = rng() % 4096 + 1;
        std::vector<BigInt> s;
        BigInt cur = 0, gap = 1;
        s.emplace_back(0);
        for (std::size_t i = 0; i < len; ++i) {
            gap += rng() % 3;
            cur += gap;
            s.push_back(cur);
        }
        for (int q = 0; q < 200; ++q) {
            BigInt key = BigInt(static_cast<unsigned long>(rng())) % s.back() + 1;
            std::size_t want = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] < key) {
                    want = i;
                }
            }
            REQUIRE(predecessor_monotone(s, key) == want);
        }
    }
}

TEST_CASE("codec bijection and positional decode, exhaustive") {
    for (const auto& g : oracle::small_corpus()) {
        if (g.size() > 5) {
            continue;
        }
        auto table = table_for(g);
        for (unsigned b : {2u, 3u, 4u}) {
            WalkCodec codec(table, b);
            for (std::size_t l = 0; l <= 8; ++l) {
                for (Vertex x = 0; x < g.size(); ++x) {
                    for (Vertex y = 0; y < g.size(); ++y) {
                        auto walks = oracle::walks_between(g, l, x, y);
                        REQUIRE(table->walks(l, x, y) == big(walks.size()));
                        std::set<BigInt> seen;
                        for (const auto& w : walks) {
                            WalkCode c = codec.encode(w);
                            REQUIRE(c.value >= 1);
                            REQUIRE(c.value <= big(walks.size()));
                            seen.insert(c.value);
                            REQUIRE(codec.decode_full(c) == w);
                            for (std::size_t q = 0; q <= l; ++q) {
                                std::size_t depth = 0;
                                REQUIRE(codec.decode_vertex(c, q, &depth) == w[q]);
                                std::size_t bound = 1;
                                for (std::size_t p = 1; p < l; p *= b) {
                                    ++bound;
                                }
                                REQUIRE(depth <= bound);
                            }
                        }
                        REQUIRE(seen.size() == walks.size());
                    }
                }
            }
        }
    }
}

TEST_CASE("bottom tables give the same answers") {
    Graph g = gs::aperiodic4();
    auto table = table_for(g);
    WalkCodec plain(table, 2);
    WalkCodec memo(table, 2, 4);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 200; ++t) {
        Walk w{static_cast<Vertex>(rng() % 4)};
        for (int i = 0; i < 40; ++i) {
            auto nb = g.out_neighbors(w.back());
            w.push_back(nb[rng() % nb.size()]);
        }
        WalkCode c = plain.encode(w);
        CHECK(memo.encode(w).value == c.value);
        for (std::size_t q = 0; q < w.size(); ++q) {
            REQUIRE(memo.decode_vertex(c, q) == w[q]);
        }
    }
}

TEST_CASE("long walks decode consistently for B = 2 and B = 4") {
    Graph g = gs::random_digraph(6, 0.5, 77);
    auto table = table_for(g);
    std::mt19937_64 rng(2);
    for (unsigned b : {2u, 4u}) {
        WalkCodec codec(table, b);
        for (int t = 0; t < 20; ++t) {
            Walk w{0};
            while (w.size() < 300) {
                auto nb = g.out_neighbors(w.back());
                if (nb.empty()) {
                    break;
                }
                w.push_back(nb[rng() % nb.size()]);
            }
            WalkCode c = codec.encode(w);
            CHECK(codec.decode_full(c) == w);
            for (int q = 0; q < 50; ++q) {
                std::size_t i = rng() % w.size();
                REQUIRE(codec.decode_vertex(c, i) == w[i]);
            }
        }
    }
}
