#include "oracle.hpp"

#include "walkstore/analysis.hpp"
#include "walkstore/count_table.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/spectral.hpp"
#include "walkstore/walk_codec.hpp"
#include "walkstore/walk_tools.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace walkstore;
namespace gs = walkstore::graphs;

TEST_CASE("count_walks small examples") {
    CountMatrix c3 = count_walks(gs::cycle(3), 2);
    std::vector<std::vector<int>> want{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
            CHECK(c3(x, y) == want[x][y]);
        }
    }
    CountMatrix f3 = count_walks(gs::fibonacci(), 3);
    CHECK(f3(0, 0) == 3);
    CHECK(f3(0, 1) == 2);
    CHECK(f3(1, 0) == 2);
    CHECK(f3(1, 1) == 1);
    CHECK(count_walks(gs::complete(4), 0) == CountMatrix::identity(4));
}

TEST_CASE("count_walks agrees with enumeration on the small corpus") {
    for (const auto& g : oracle::small_corpus()) {
        CountTable table(std::make_shared<const Graph>(g));
        for (std::size_t l = 0; l <= 8; ++l) {
            std::map<std::pair<Vertex, Vertex>, std::uint64_t> tally;
            for (const auto& w : oracle::all_walks(g, l)) {
                ++tally[{w.front(), w.back()}];
            }
            for (Vertex x = 0; x < g.size(); ++x) {
                for (Vertex y = 0; y < g.size(); ++y) {
                    CHECK(table.walks(l, x, y) == big(tally[{x, y}]));
                }
            }
            CHECK(total_walks(g, l) == table.power(l).total());
            CHECK(matrix_power(g, l) == table.power(l));
        }
    }
}

TEST_CASE("total_walks examples") {
    CHECK(total_walks(gs::fibonacci(), 4) == 13);
    CHECK(total_walks(gs::cycle(3), 3) == 24);
    CHECK(total_walks(gs::self_loop(), 10) == 1);
}

TEST_CASE("count table long lengths match repeated squaring") {
    auto g = std::make_shared<const Graph>(gs::fibonacci());
    CountTable table(g);
    for (std::size_t l : {4095u, 4096u, 4097u, 10000u, 12345u}) {
        CHECK(table.power(l) == matrix_power(*g, l));
    }
    // far lengths inside the dense window go through squaring, then the
    // dense prefix keeps growing consistently around them
    CountTable mixed(std::make_shared<const Graph>(gs::complete_bipartite(3, 3)));
    for (std::size_t l : {3000u, 5u, 300u, 2999u, 250u, 3001u}) {
        CHECK(mixed.power(l) == matrix_power(mixed.graph(), l));
    }
    CountTable capped(g, 10);
    CHECK_THROWS_AS(capped.power(11), ResourceError);
    CHECK(CountTable::default_max_length(1024) == 48);
}

TEST_CASE("analyze examples") {
    auto two = analyze(gs::directed_cycle(2));
    CHECK(two.is_strongly_connected);
    CHECK(two.period[0] == 2);
    CHECK_FALSE(two.is_aperiodic);

    auto f = analyze(gs::fibonacci());
    CHECK(f.is_strongly_connected);
    CHECK(f.period[0] == 1);
    CHECK(f.is_aperiodic);

    std::vector<Edge> e{{0, 1}};
    auto dag = analyze(Graph(2, true, e));
    REQUIRE(dag.scc_list.size() == 2);
    CHECK(dag.scc_list[0] == std::vector<Vertex>{0});
    CHECK(dag.scc_list[1] == std::vector<Vertex>{1});
    CHECK(dag.period[0] == 0);

    auto k4 = analyze(gs::complete(4));
    CHECK(k4.is_regular);
    CHECK(*k4.degree == 3);
    CHECK_FALSE(k4.is_bipartite);
    CHECK(k4.is_aperiodic);
    CHECK(analyze(gs::cycle(4)).is_bipartite);
    CHECK(analyze(gs::cycle(4)).period[0] == 2);
}

TEST_CASE("analyze matches brute force on random graphs") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::size_t k = 2 + seed % 5;
        Graph g = gs::random_digraph(k, 0.3, seed);
        auto a = analyze(g);
        // SCC membership is mutual reachability
        for (Vertex u = 0; u < k; ++u) {
            for (Vertex v = 0; v < k; ++v) {
                bool same = oracle::reachable(g, u, v) && oracle::reachable(g, v, u);
                CHECK((a.scc_of[u] == a.scc_of[v]) == same);
            }
        }
        // topological order of the component list
        for (auto [u, v] : g.edge_list()) {
            CHECK(a.scc_of[u] <= a.scc_of[v]);
        }
        for (std::size_t c = 0; c < a.scc_list.size(); ++c) {
            Graph sub = g.induced(a.scc_list[c]);
            std::vector<Vertex> all(sub.size());
            std::iota(all.begin(), all.end(), 0);
            CHECK(a.period[c] == oracle::brute_period(sub, all, 2 * k));
        }
    }
}

TEST_CASE("undirected connected non-bipartite graphs are aperiodic") {
    for (std::size_t k = 3; k <= 7; k += 2) {
        CHECK(analyze(gs::cycle(k)).is_aperiodic);
    }
    CHECK(analyze(gs::complete(5)).is_aperiodic);
}

TEST_CASE("period layers place every edge one layer forward") {
    for (Graph g : {gs::directed_cycle(3), gs::cycle(6), gs::complete_bipartite(2, 3)}) {
        auto a = analyze(g);
        auto layer = period_layers(g, a.period[0]);
        for (auto [u, v] : g.edge_list()) {
            CHECK(layer[v] == (layer[u] + 1) % a.period[0]);
            if (!g.directed()) {
                CHECK(layer[u] == (layer[v] + 1) % a.period[0]);
            }
        }
    }
}

TEST_CASE("spectral diagnostics") {
    auto k4 = spectral(gs::complete(4));
    CHECK(k4.lambda == doctest::Approx(3.0).epsilon(1e-9));
    for (double p : k4.pi) {
        CHECK(p == doctest::Approx(0.25).epsilon(1e-9));
    }
    CHECK(spectral(gs::cycle(3)).lambda == doctest::Approx(2.0).epsilon(1e-9));
    auto f = spectral(gs::fibonacci());
    CHECK(f.lambda == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-9));
    for (double v : f.nu) {
        CHECK(v > 0);
    }
    // nu^T P = nu^T
    Graph a4 = gs::aperiodic4();
    auto s = spectral(a4);
    for (Vertex y = 0; y < a4.size(); ++y) {
        double acc = 0;
        for (Vertex x : a4.in_neighbors(y)) {
            acc += s.nu[x] / static_cast<double>(a4.out_degree(x));
        }
        CHECK(std::abs(acc - s.nu[y]) < 1e-9);
    }
    CHECK_THROWS_AS(spectral(gs::two_scc_dag()), UnsupportedGraph);
}

TEST_CASE("benchmarks") {
    CHECK(benchmark_worstcase_bits(gs::fibonacci(), 4) == doctest::Approx(std::log2(13.0)).epsilon(1e-12));
    CHECK(benchmark_worstcase_bits(gs::cycle(3), 0) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    CHECK(benchmark_worstcase_bits(gs::complete(4), 10) ==
          doctest::Approx(2 + 10 * std::log2(3.0)).epsilon(1e-12));
    Walk w{0, 0, 1, 0, 0};
    CHECK(benchmark_pointwise_bits(gs::fibonacci(), w) == doctest::Approx(4.0));
    Walk w2{1, 0};
    CHECK(benchmark_pointwise_bits(gs::fibonacci(), w2) == doctest::Approx(1.0));
    Walk k4 = gen_walk(gs::complete(4), 50, GenMode::markov, 3);
    CHECK(std::abs(benchmark_pointwise_bits(gs::complete(4), k4) - (2 + 50 * std::log2(3.0))) < 1e-9);
    Walk bad{1, 1};
    CHECK_THROWS_AS(benchmark_pointwise_bits(gs::fibonacci(), bad), InvalidWalk);
}

TEST_CASE("gen_walk") {
    for (auto mode : {GenMode::markov, GenMode::uniform}) {
        CHECK(gen_walk(gs::fibonacci(), 0, mode, 5).size() == 1);
        CHECK(gen_walk(gs::self_loop(), 5, mode, 5) == Walk(6, 0));
        Walk w = gen_walk(gs::aperiodic4(), 200, mode, 9);
        CHECK(w.size() == 201);
        CHECK_NOTHROW(validate_walk(gs::aperiodic4(), w));
        CHECK(gen_walk(gs::aperiodic4(), 200, mode, 9) == w);
    }
    std::vector<Edge> e{{0, 1}};
    CHECK_THROWS_AS(gen_walk(Graph(2, true, e), 3, GenMode::markov, 1), GenerationError);
}

TEST_CASE("uniform generation is uniform over the 24 length-3 walks of C3") {
    Graph g = gs::cycle(3);
    auto walks = oracle::all_walks(g, 3);
    REQUIRE(walks.size() == 24);
    std::map<Walk, int> freq;
    const int draws = 24000;
    for (int s = 0; s < draws; ++s) {
        ++freq[gen_walk(g, 3, GenMode::uniform, static_cast<std::uint64_t>(s))];
    }
    CHECK(freq.size() == 24);
    double mean = draws / 24.0;
    double sd = std::sqrt(draws * (1.0 / 24) * (23.0 / 24));
    for (auto& [w, c] : freq) {
        CHECK(std::abs(c - mean) <= 3 * sd + 1e-9);
    }
}

TEST_CASE("global unrank then rank is the identity") {
    for (const auto& g : oracle::small_corpus()) {
        if (g.size() > 5) {
            continue;
        }
        auto counts = std::make_shared<CountTable>(std::make_shared<const Graph>(g));
        WalkCodec codec(counts, 2);
        for (std::size_t n = 0; n <= 6; ++n) {
            BigInt total = counts->power(n).total();
            for (BigInt r = 1; r <= total; ++r) {
                Walk w = global_unrank(codec, n, r);
                REQUIRE(global_rank(codec, w) == r);
            }
        }
    }
}

TEST_CASE("graph json and binary round trip") {
    Graph g = gs::aperiodic4();
    CHECK(Graph::from_json(g.to_json()) == g);
    Writer out;
    g.write(out);
    Reader in(out.data());
    CHECK(Graph::read(in) == g);
    CHECK(Graph::from_json(gs::cycle(5).to_json()).hash() == gs::cycle(5).hash());
    CHECK(gs::cycle(5).hash() != gs::complete(5).hash());
    CHECK_THROWS_AS(Graph::from_json("{\"directed\": true}"), ParseError);
    CHECK_THROWS_AS(Graph::from_json("{\"directed\": true, \"k\": 2, \"edges\": [[0, 2]]}"), ParseError);
    CHECK_THROWS_AS(Graph::from_json("not json"), ParseError);
    CHECK_THROWS_AS(Graph(65, true, std::vector<Edge>{}), ResourceError);
}

TEST_CASE("walk files round trip in both formats") {
    Walk w{0, 1, 0, 0, 1};
    for (auto fmt : {WalkFormat::binary, WalkFormat::text}) {
        std::string path = "walk_tools_roundtrip.tmp";
        write_walk(path, w, fmt);
        CHECK(read_walk(path, WalkFormat::automatic) == w);
        CHECK(read_walk(path, fmt) == w);
        std::remove(path.c_str());
    }
}
