#include "oracle.hpp"

#include "walkstore/count_table.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/store_pointwise.hpp"
#include "walkstore/walk_tools.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace walkstore;
namespace gs = walkstore::graphs;

namespace {

Poly random_poly(std::mt19937_64& rng, std::size_t len, unsigned bits) {
    Poly p;
    p.lo = rng() % 5;
    for (std::size_t i = 0; i < len; ++i) {
        BigInt v = random_below(rng, pow(big(2), bits));
        p.c.push_back(v);
    }
    p.c.front() += 1;
    p.c.back() += 1;
    return p;
}

Poly naive_mul(const Poly& a, const Poly& b) {
    Poly out;
    out.lo = a.lo + b.lo;
    out.c.assign(a.c.size() + b.c.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            out.c[i + j] += a.c[i] * b.c[j];
        }
    }
    return out;
}

std::uint64_t oracle_S(const Graph& g, const Walk& w, std::uint64_t p) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        s += static_cast<std::uint64_t>(std::ceil(static_cast<double>(p) * std::log2(g.out_degree(w[i])) - 1e-9));
    }
    return s;
}

std::vector<std::uint8_t> bytes_of(const WalkStore& s) {
    Writer w;
    s.write(w);
    return w.take();
}

} // namespace

TEST_CASE("polynomial products agree with schoolbook") {
    std::mt19937_64 rng(5);
    for (auto [la, lb, bits] : {std::tuple{1, 1, 3}, {3, 40, 10}, {17, 17, 1}, {50, 90, 200}, {200, 33, 64}}) {
        Poly a = random_poly(rng, la, bits), b = random_poly(rng, lb, bits);
        Poly prod = poly_mul(a, b);
        CHECK(prod == naive_mul(a, b));
        for (std::uint64_t e = prod.lo; e <= prod.hi(); e += 7) {
            CHECK(product_coefficient(a, b, e) == prod.at(e));
        }
        CHECK(product_coefficient(a, b, prod.hi() + 1) == 0);
    }
    CHECK(poly_mul(Poly{}, Poly{0, {1}}).zero());
}

TEST_CASE("label weights are exact ceilings") {
    CHECK(label_weight(1, 100) == 0);
    CHECK(label_weight(2, 4) == 4);
    CHECK(label_weight(3, 2) == 4);   // ceil(3.1699...)
    CHECK(label_weight(3, 1) == 2);
    CHECK(label_weight(4, 5) == 10);
    for (std::size_t d = 2; d <= 9; ++d) {
        for (std::uint64_t p = 1; p <= 30; ++p) {
            double x = static_cast<double>(p) * std::log2(static_cast<double>(d));
            double r = std::round(x);
            std::uint64_t expect = std::abs(x - r) < 1e-9 ? static_cast<std::uint64_t>(r)
                                                          : static_cast<std::uint64_t>(std::ceil(x));
            CHECK(label_weight(d, p) == expect);
        }
    }
}

TEST_CASE("node label examples") {
    Graph k4 = gs::complete(4);
    Walk abc{0, 1, 2};
    CHECK(label_of(k4, abc, 2) == NodeLabel{0, 2, 8});
    Walk one{3};
    CHECK(label_of(k4, one, 2) == NodeLabel{3, 3, 0});
    Graph f = gs::fibonacci();
    Walk seg{0, 1, 0};
    CHECK(label_of(f, seg, 4) == NodeLabel{0, 0, 4});
}

TEST_CASE("labelled counts") {
    Graph f = gs::fibonacci();
    LabelCountTable t(std::make_shared<const Graph>(f), 4);
    CHECK(t.count(1, {0, 0, 0}) == 1);
    CHECK(t.count(1, {1, 1, 0}) == 1);
    CHECK(t.count(1, {0, 1, 0}) == 0);
    CHECK(t.count(2, {0, 0, 4}) == 1);
    CHECK(t.count(2, {0, 0, 3}) == 0);
}

TEST_CASE("labelled counts match enumeration and conserve walk counts") {
    for (const Graph& g : {gs::fibonacci(), gs::cycle(3), gs::aperiodic4(), gs::two_scc_dag(),
                           gs::random_digraph(4, 0.5, 2)}) {
        for (std::uint64_t p : {1, 3, 7}) {
            LabelCountTable t(std::make_shared<const Graph>(g), p);
            for (std::size_t s = 1; s <= 8; ++s) {
                std::map<std::tuple<Vertex, Vertex, std::uint64_t>, std::uint64_t> tally;
                for (const Walk& w : oracle::all_walks(g, s - 1)) {
                    NodeLabel phi = label_of(g, w, p);
                    CHECK(phi.S == oracle_S(g, w, p));
                    tally[{phi.vl, phi.vr, phi.S}] += 1;
                }
                for (auto& [key, cnt] : tally) {
                    auto [a, b, S] = key;
                    CHECK(t.count(s, {a, b, S}) == cnt);
                }
                for (Vertex a = 0; a < g.size(); ++a) {
                    for (Vertex b = 0; b < g.size(); ++b) {
                        CHECK(t.poly(s, a, b).total() == oracle::count_between(g, s - 1, a, b));
                    }
                }
            }
        }
    }
}

TEST_CASE("pointwise rank is a bijection per label") {
    for (const Graph& g : {gs::fibonacci(), gs::cycle(3), gs::aperiodic4(), gs::complete(4)}) {
        for (std::size_t n = 0; n <= 7; ++n) {
            std::map<std::tuple<Vertex, Vertex, std::uint64_t>, std::set<BigInt>> ranks;
            std::map<std::tuple<Vertex, Vertex, std::uint64_t>, BigInt> counts;
            for (const Walk& w : oracle::all_walks(g, n)) {
                auto s = PointwiseStore::build(g, w);
                const NodeLabel& r = s->root_label();
                auto key = std::tuple{r.vl, r.vr, r.S};
                CHECK(ranks[key].insert(s->rank()).second);
                counts[key] = s->root_count();
                CHECK(s->rank() < s->root_count());
                REQUIRE(s->decode_all() == w);
            }
            for (auto& [key, set] : ranks) {
                CHECK(big(set.size()) == counts[key]);
            }
        }
    }
}

TEST_CASE("pointwise space bound") {
    for (const Graph& g : oracle::small_corpus()) {
        // several branching degrees make the label space grow as n^2
        std::set<std::size_t> degrees;
        for (Vertex v = 0; v < g.size(); ++v) {
            if (g.out_degree(v) > 1) {
                degrees.insert(g.out_degree(v));
            }
        }
        const std::size_t cap = degrees.size() > 1 ? 64 : 300;
        for (std::size_t n : {1, 9, 64, 300}) {
            if (n > cap) {
                continue;
            }
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                Walk w;
                try {
                    w = gen_walk(g, n, GenMode::markov, seed);
                } catch (const GenerationError&) {
                    continue;
                }
                auto s = PointwiseStore::build(g, w);
                CHECK(static_cast<double>(s->payload_bits()) <= benchmark_pointwise_bits(g, w) + 3);
                CHECK(s->decode_all() == w);
            }
        }
    }
}

TEST_CASE("pointwise example walks") {
    Graph f = gs::fibonacci();
    Walk w{0, 0, 1, 0, 0};
    auto s = PointwiseStore::build(f, w);
    CHECK(static_cast<double>(s->payload_bits()) <= 1 + 3 + 2);
    CHECK(s->decode_all() == w);

    // only out-degree-one vertices: the walk is fixed by its start
    Graph dc = gs::directed_cycle(5);
    Walk d{2, 3, 4, 0, 1, 2, 3};
    auto ds = PointwiseStore::build(dc, d);
    CHECK(static_cast<double>(ds->payload_bits()) <= std::log2(5.0) + 2);
    CHECK(ds->payload_bits() == 0);
    CHECK(ds->decode_all() == d);

    Walk single{1};
    auto ss = PointwiseStore::build(f, single);
    CHECK(ss->length() == 0);
    CHECK(ss->vertex_at(0) == 1);
}

TEST_CASE("fibonacci walks of length 1024 meet the point-wise bound") {
    Graph f = gs::fibonacci();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Walk w = gen_walk(f, 1024, GenMode::markov, seed);
        auto s = PointwiseStore::build(f, w);
        CHECK(static_cast<double>(s->payload_bits()) <= benchmark_pointwise_bits(f, w) + 3);
        CHECK(s->header_bits() <= 128);
        std::mt19937_64 rng(seed);
        for (int q = 0; q < 50; ++q) {
            std::size_t i = rng() % 1025;
            CHECK(s->vertex_at(i) == w[i]);
        }
    }
}

TEST_CASE("other precisions are reproducible") {
    Graph g = gs::aperiodic4();
    Walk w = gen_walk(g, 40, GenMode::markov, 2);
    StoreOptions opt;
    opt.precision = 40 * 40;
    auto s = PointwiseStore::build(g, w, opt);
    CHECK(s->precision() == 1600);
    CHECK(s->decode_all() == w);
    auto bytes = bytes_of(*s);
    Reader r(bytes);
    auto back = PointwiseStore::read(r);
    CHECK(back->precision() == 1600);
    CHECK(back->decode_all() == w);
}

TEST_CASE("pointwise files round-trip") {
    for (const Graph& g : {gs::fibonacci(), gs::two_scc_dag(), gs::self_loop()}) {
        for (std::size_t n : {0, 3, 200}) {
            Walk w = gen_walk(g, n, GenMode::markov, 8);
            auto s = PointwiseStore::build(g, w);
            auto bytes = bytes_of(*s);
            Reader r(bytes);
            auto back = PointwiseStore::read(r);
            CHECK(back->decode_all() == w);
            CHECK(bytes_of(*back) == bytes);
            CHECK(back->payload_bits() == s->payload_bits());
            CHECK(back->header_bits() == s->header_bits());
        }
    }
}

TEST_CASE("damaged pointwise files are rejected") {
    Graph g = gs::fibonacci();
    auto s = PointwiseStore::build(g, gen_walk(g, 100, GenMode::markov, 1));
    auto bytes = bytes_of(*s);
    std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 2);
    Reader r(cut);
    CHECK_THROWS_AS(PointwiseStore::read(r), ParseError);
}

TEST_CASE("pointwise input errors") {
    Graph g = gs::fibonacci();
    StoreOptions opt;
    opt.branching = 3;
    CHECK_THROWS_AS(PointwiseStore::build(g, Walk{0, 1}, opt), UnsupportedOperation);
    CHECK_THROWS_AS(PointwiseStore::build(g, Walk{1, 1}), InvalidWalk);
    auto s = PointwiseStore::build(g, Walk{0, 1});
    CHECK_THROWS_AS(s->vertex_at(2), RangeError);
}
