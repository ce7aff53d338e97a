#include "walkstore/report.hpp"

#include "walkstore/bitvec.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/walk_tools.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace walkstore {

namespace {

// bits rounded to 1e-6 so that reports print stably
double round6(double v) {
    return std::isfinite(v) ? std::round(v * 1e6) / 1e6 : v;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

} // namespace

double ProbeStats::queries_per_second() const {
    return seconds > 0 ? static_cast<double>(queries) / seconds : 0;
}

ProbeStats measure_probes(const WalkStore& store, std::size_t queries, std::uint64_t seed,
                          const Walk* expected) {
    const std::size_t positions = store.length() + 1;
    const bool all = queries == 0;
    const std::size_t total = all ? positions : queries;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(total);
    for (std::size_t q = 0; q < total; ++q) {
        idx[q] = all ? q : static_cast<std::size_t>(rng() % positions);
    }

    ProbeStats st;
    st.queries = total;
    st.min_words = ~std::uint64_t{0};
    std::uint64_t sum = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i : idx) {
        probes::reset();
        Vertex v = store.vertex_at(i);
        std::uint64_t w = probes::words();
        st.min_words = std::min(st.min_words, w);
        st.max_words = std::max(st.max_words, w);
        st.max_reads = std::max(st.max_reads, probes::reads());
        sum += w;
        if (expected && (*expected)[i] != v) {
            throw Error("store answered vertex " + std::to_string(v) + " at position " + std::to_string(i) +
                        ", walk has " + std::to_string((*expected)[i]));
        }
    }
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (total == 0) {
        st.min_words = 0;
    }
    st.avg_words = total ? static_cast<double>(sum) / static_cast<double>(total) : 0;
    return st;
}

double SpaceReport::redundancy_worstcase() const {
    return round6(static_cast<double>(payload_bits) - benchmark_worstcase_bits);
}

double SpaceReport::redundancy_pointwise() const {
    return round6(static_cast<double>(payload_bits) - benchmark_pointwise_bits);
}

nlohmann::json SpaceReport::to_json(bool timings) const {
    nlohmann::json j;
    j["mode"] = mode;
    j["strategy"] = strategy;
    j["k"] = k;
    j["n"] = n;
    j["payload_bits"] = payload_bits;
    j["header_bits"] = header_bits;
    j["benchmark_worstcase_bits"] = round6(benchmark_worstcase_bits);
    j["benchmark_pointwise_bits"] = round6(benchmark_pointwise_bits);
    j["redundancy_vs_worstcase"] = redundancy_worstcase();
    j["redundancy_vs_pointwise"] = redundancy_pointwise();
    j["params"] = params;
    if (probes) {
        nlohmann::json p;
        p["queries"] = probes->queries;
        p["min_words"] = probes->min_words;
        p["avg_words"] = round6(probes->avg_words);
        p["max_words"] = probes->max_words;
        p["max_reads"] = probes->max_reads;
        if (timings) {
            p["query_seconds"] = probes->seconds;
            p["queries_per_second"] = probes->queries_per_second();
        }
        j["probes"] = p;
    }
    if (timings) {
        j["build_seconds"] = build_seconds;
    }
    return j;
}

SpaceReport make_report(const WalkStore& store, const Walk* walk) {
    Walk decoded;
    if (!walk) {
        decoded = store.decode_all();
        walk = &decoded;
    }
    SpaceReport r;
    r.mode = store.mode();
    r.params = store.describe();
    auto it = r.params.find("strategy");
    r.strategy = it == r.params.end() ? "-" : it->second;
    std::replace(r.strategy.begin(), r.strategy.end(), ',', '+');
    r.k = store.graph().size();
    r.n = store.length();
    r.payload_bits = store.payload_bits();
    r.header_bits = store.header_bits();
    r.benchmark_worstcase_bits = benchmark_worstcase_bits(store.graph(), store.length());
    r.benchmark_pointwise_bits = benchmark_pointwise_bits(store.graph(), *walk);
    return r;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "graph,k,n,mode,strategy,payload_bits,header_bits,benchmark_worstcase_bits,"
          "benchmark_pointwise_bits,redundancy_vs_worstcase,redundancy_vs_pointwise,"
          "min_words,avg_words,max_words,max_reads,queries_per_second,build_seconds\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        os << row.graph << ',' << r.k << ',' << r.n << ',' << r.mode << ',' << r.strategy << ','
           << r.payload_bits << ',' << r.header_bits << ',' << fixed(r.benchmark_worstcase_bits, 6) << ','
           << fixed(r.benchmark_pointwise_bits, 6) << ',' << fixed(r.redundancy_worstcase(), 6) << ','
           << fixed(r.redundancy_pointwise(), 6) << ',';
        if (r.probes) {
            os << r.probes->min_words << ',' << fixed(r.probes->avg_words, 3) << ',' << r.probes->max_words
               << ',' << r.probes->max_reads << ',' << fixed(r.probes->queries_per_second(), 0);
        } else {
            os << ",,,,";
        }
        os << ',' << fixed(r.build_seconds, 4) << '\n';
    }
    return os.str();
}

std::string bench_markdown(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "| graph | n | mode | strategy | payload | lg(1'A^n 1) | pointwise bench | red. worst-case | "
          "red. pointwise | header | words/query (avg / max) | queries/s |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        os << "| " << row.graph << " | " << r.n << " | " << r.mode << " | " << r.strategy << " | "
           << r.payload_bits << " | " << fixed(r.benchmark_worstcase_bits, 2) << " | "
           << fixed(r.benchmark_pointwise_bits, 2) << " | " << fixed(r.redundancy_worstcase(), 2) << " | "
           << fixed(r.redundancy_pointwise(), 2) << " | " << r.header_bits << " | ";
        if (r.probes) {
            os << fixed(r.probes->avg_words, 1) << " / " << r.probes->max_words << " | "
               << fixed(r.probes->queries_per_second(), 0);
        } else {
            os << "- | -";
        }
        os << " |\n";
    }
    return os.str();
}

} // namespace walkstore
