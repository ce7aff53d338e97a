#include "walkstore/errors.hpp"
#include "walkstore/report.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/store_file.hpp"
#include "walkstore/walk_tools.hpp"

#include <doctest.h>

#include <cmath>

using namespace walkstore;
namespace gs = walkstore::graphs;

TEST_CASE("auto mode choice") {
    CHECK(auto_mode(gs::cycle(3)) == StoreMode::regular);
    CHECK(auto_mode(gs::complete(4)) == StoreMode::regular);
    CHECK(auto_mode(gs::cycle(4)) == StoreMode::general);  // bipartite
    CHECK(auto_mode(gs::fibonacci()) == StoreMode::general);
    CHECK(auto_mode(gs::two_scc_dag()) == StoreMode::general);
    CHECK(auto_mode(gs::directed_cycle(3)) == StoreMode::general);  // period 3
    CHECK(auto_mode(gs::self_loop()) == StoreMode::regular);
    CHECK(parse_store_mode("pointwise") == StoreMode::pointwise);
    CHECK(store_mode_name(parse_store_mode("auto")) == "auto");
    CHECK_THROWS_AS(parse_store_mode("fast"), ParameterError);
}

TEST_CASE("store files dispatch on their magic") {
    Graph f = gs::fibonacci();
    Walk w = gen_walk(f, 200, GenMode::markov, 4);
    for (StoreMode m : {StoreMode::general, StoreMode::pointwise}) {
        auto s = build_store(f, w, m);
        auto bytes = store_bytes(*s);
        Reader in(bytes);
        auto back = read_store(in);
        CHECK(back->mode() == s->mode());
        CHECK(back->decode_all() == w);
        CHECK_NOTHROW(check_store_graph(*back, f));
        CHECK_THROWS_AS(check_store_graph(*back, gs::complete(4)), ParseError);
    }
    Graph c3 = gs::cycle(3);
    auto r = build_store(c3, gen_walk(c3, 50, GenMode::markov, 1), StoreMode::automatic);
    CHECK(r->mode() == "regular");
    CHECK_THROWS_AS(build_store(gs::two_scc_dag(), Walk{0, 1}, StoreMode::regular), UnsupportedGraph);

    std::vector<std::uint8_t> junk{'R', 'W', 'D', '1', 0, 0};
    Reader dict(junk);
    CHECK_THROWS_AS(read_store(dict), ParseError);
    std::vector<std::uint8_t> empty;
    Reader none(empty);
    CHECK_THROWS_AS(read_store(none), ParseError);
}

TEST_CASE("space report fields") {
    Graph c3 = gs::cycle(3);
    Walk w = gen_walk(c3, 1000, GenMode::markov, 2);
    auto s = build_store(c3, w, StoreMode::regular);
    SpaceReport r = make_report(*s, &w);
    CHECK(r.mode == "regular");
    CHECK(r.n == 1000);
    CHECK(r.benchmark_worstcase_bits == doctest::Approx(std::log2(3.0) + 1000));
    CHECK(r.benchmark_pointwise_bits == doctest::Approx(std::log2(3.0) + 1000));
    CHECK(r.redundancy_worstcase() == doctest::Approx(static_cast<double>(r.payload_bits) - r.benchmark_worstcase_bits).epsilon(1e-6));
    CHECK(r.strategy.find(',') == std::string::npos);

    r.probes = measure_probes(*s, 0, 0, &w);
    CHECK(r.probes->queries == 1001);
    CHECK(r.probes->min_words <= r.probes->max_words);
    auto j = r.to_json(false);
    CHECK_FALSE(j.contains("build_seconds"));
    CHECK_FALSE(j["probes"].contains("query_seconds"));
    CHECK(j["payload_bits"] == r.payload_bits);
    CHECK(r.to_json(true).contains("build_seconds"));

    Walk wrong = w;
    wrong[500] = (wrong[500] + 1) % 3;
    CHECK_THROWS_AS(measure_probes(*s, 0, 0, &wrong), Error);

    std::vector<BenchRow> rows{{"C3", r}};
    auto csv = bench_csv(rows);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(bench_markdown(rows).find("| C3 | 1000 | regular |") != std::string::npos);
}
