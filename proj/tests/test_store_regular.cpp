#include "oracle.hpp"

#include "walkstore/bitvec.hpp"
#include "walkstore/count_table.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/store_regular.hpp"
#include "walkstore/walk_tools.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace walkstore;
namespace gs = walkstore::graphs;

namespace {

// independent re-check of the admissibility condition with 64-bit counts
bool admissible(const Graph& g, std::size_t n, std::size_t l) {
    for (Vertex x = 0; x < g.size(); ++x) {
        for (Vertex y = 0; y < g.size(); ++y) {
            BigInt lhs = big(oracle::count_between(g, l, x, y)) * big(g.size()) * big(n) * big(n);
            BigInt rhs = (big(n) * big(n) + big(g.size())) * pow(big(g.out_degree(0)), l);
            if (lhs > rhs) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::uint8_t> bytes_of(const WalkStore& s) {
    Writer w;
    s.write(w);
    return w.take();
}

} // namespace

TEST_CASE("choose_l examples") {
    Graph c3 = gs::cycle(3);
    CHECK(choose_l(c3, 16) == 7);
    CHECK(oracle::count_between(c3, 6, 0, 0) == 22);
    CHECK(oracle::count_between(c3, 7, 0, 0) == 42);
    CHECK(oracle::count_between(c3, 7, 0, 1) == 43);
    CHECK_FALSE(admissible(c3, 16, 6));

    Graph k4 = gs::complete(4);
    std::size_t l = choose_l(k4, 16);
    CHECK(admissible(k4, 16, l));
    if (l > 1) {
        CHECK_FALSE(admissible(k4, 16, l - 1));
    }
    CHECK(choose_l(gs::self_loop(), 100) == 1);

    CHECK_THROWS_AS(choose_l(gs::cycle(4), 16), UnsupportedGraph);
    CHECK_THROWS_AS(choose_l(gs::two_scc_dag(), 16), UnsupportedGraph);
    CHECK_THROWS_AS(choose_l(gs::fibonacci(), 16), UnsupportedGraph);
}

TEST_CASE("C3 length-16 store: layout, space and every position") {
    Graph c3 = gs::cycle(3);
    Walk w = gen_walk(c3, 16, GenMode::markov, 4);
    for (auto strat : {Strategy::packed(), Strategy::blocked(0), Strategy::spill_tree()}) {
        auto s = RegularStore::build(c3, w, {strat});
        const auto& lay = s->layout();
        CHECK(lay.l == 7);
        CHECK(lay.m == 2);
        CHECK(lay.rem == 2);
        CHECK(lay.block_radix == 43);
        CHECK(lay.rem_radix == 2);
        CHECK_FALSE(lay.plain);
        for (std::size_t i = 0; i <= 16; ++i) {
            CHECK(s->vertex_at(i) == w[i]);
        }
        CHECK_THROWS_AS(s->vertex_at(17), RangeError);
        if (strat == Strategy::packed()) {
            CHECK(s->payload_bits() == 4 * 2 + 2 * 6 + 1);
        }
        // milestones carry ceil(4 lg 3), blocks ceil(2 lg 43 + lg 2)
        std::size_t ideal = static_cast<std::size_t>(std::ceil(4 * std::log2(3.0))) +
                            static_cast<std::size_t>(std::ceil(2 * std::log2(43.0) + 1));
        CHECK(s->payload_bits() <= ideal + 2 * 8);
    }
}

TEST_CASE("plain mode for short walks") {
    Graph c3 = gs::cycle(3);
    Walk w = gen_walk(c3, 5, GenMode::markov, 1);
    auto s = RegularStore::build(c3, w);
    CHECK(s->layout().plain);
    CHECK(s->payload_bits() == 6 * 2);
    CHECK(s->decode_all() == w);
    Walk one{2};
    auto s1 = RegularStore::build(c3, one);
    CHECK(s1->vertex_at(0) == 2);
}

TEST_CASE("K4 long walk round trip on random positions") {
    Graph k4 = gs::complete(4);
    Walk w = gen_walk(k4, 100000, GenMode::markov, 1);
    std::mt19937_64 rng(1);
    for (auto strat : {Strategy::blocked(0), Strategy::spill_tree()}) {
        auto s = RegularStore::build(k4, w, {strat});
        for (int q = 0; q < 10000; ++q) {
            std::size_t i = rng() % w.size();
            REQUIRE(s->vertex_at(i) == w[i]);
        }
        if (strat.kind == Strategy::Kind::spill_tree) {
            double bench = 2 + 100000 * std::log2(3.0);
            CHECK(static_cast<double>(s->payload_bits()) - bench <= 64 + 8 * std::log2(100000.0));
        }
    }
}

TEST_CASE("blocked queries read at most 10 payload words") {
    for (Graph g : {gs::cycle(3), gs::complete(4), gs::complete(6)}) {
        Walk w = gen_walk(g, 20000, GenMode::markov, 2);
        auto s = RegularStore::build(g, w, {Strategy::blocked(0)});
        for (std::size_t i = 0; i < w.size(); i += 7) {
            probes::reset();
            REQUIRE(s->vertex_at(i) == w[i]);
            REQUIRE(probes::words() <= 10);
        }
    }
}

TEST_CASE("online appends match the batch build byte for byte") {
    std::mt19937_64 rng(12);
    for (Graph g : {gs::cycle(3), gs::complete(4), gs::cycle(5)}) {
        for (std::size_t n : {0u, 3u, 16u, 100u, 1001u}) {
            Walk w = gen_walk(g, n, GenMode::markov, n + 1);
            for (auto strat : {Strategy::blocked(0), Strategy::blocked(5), Strategy::packed()}) {
                auto online = RegularStore::online(g, n, {strat});
                for (std::size_t i = 0; i < w.size(); ++i) {
                    online->append_vertex(w[i]);
                    // queries between appends see everything so far
                    std::size_t q = rng() % (i + 1);
                    REQUIRE(online->vertex_at(q) == w[q]);
                }
                online->finish();
                auto batch = RegularStore::build(g, w, {strat});
                CHECK(bytes_of(*online) == bytes_of(*batch));
                CHECK(online->decode_all() == w);
            }
        }
    }
}

TEST_CASE("online errors") {
    Graph c3 = gs::cycle(3);
    CHECK_THROWS_AS(RegularStore::online(c3, 10, {Strategy::spill_tree()}), UnsupportedOperation);
    auto s = RegularStore::online(c3, 10, {Strategy::blocked(0)});
    s->append_vertex(0);
    CHECK_THROWS_AS(s->append_vertex(0), InvalidWalk);
    s->append_vertex(1);
    CHECK(s->vertex_at(1) == 1);
    CHECK_THROWS_AS(s->finish(), ParameterError);
    auto batch = RegularStore::build(c3, Walk{0, 1, 2});
    CHECK_THROWS_AS(batch->append_vertex(0), UnsupportedOperation);
}

TEST_CASE("regular store file round trip") {
    Graph k4 = gs::complete(4);
    Walk w = gen_walk(k4, 3000, GenMode::markov, 5);
    for (auto strat : {Strategy::packed(), Strategy::blocked(0), Strategy::spill_tree()}) {
        auto s = RegularStore::build(k4, w, {strat, 3});
        auto bytes = bytes_of(*s);
        Reader in(bytes);
        auto back = RegularStore::read(in);
        CHECK(back->decode_all() == w);
        CHECK(bytes_of(*back) == bytes);
        CHECK(back->options().branching == 3);
    }
    auto bytes = bytes_of(*RegularStore::build(k4, w));
    bytes[0] = 'X';
    Reader bad(bytes);
    CHECK_THROWS_AS(RegularStore::read(bad), ParseError);
}

TEST_CASE("single vertex with a loop") {
    Walk w(50, 0);
    auto s = RegularStore::build(gs::self_loop(), w);
    CHECK(s->layout().l == 1);
    CHECK(s->decode_all() == w);
    CHECK(s->payload_bits() <= 2);
}
