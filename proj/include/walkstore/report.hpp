#ifndef WALKSTORE_REPORT_HPP
#define WALKSTORE_REPORT_HPP

#include "walkstore/store.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace walkstore {

struct ProbeStats {
    std::size_t queries = 0;
    std::uint64_t min_words = 0;
    double avg_words = 0;
    std::uint64_t max_words = 0;
    std::uint64_t max_reads = 0;  // array positions touched
    double seconds = 0;

    double queries_per_second() const;
};

// Runs `queries` uniformly random vertex_at calls (every position when
// queries == 0) and counts payload words touched per call. When `expected`
// is given each answer is checked and a mismatch throws Error.
ProbeStats measure_probes(const WalkStore& store, std::size_t queries, std::uint64_t seed,
                          const Walk* expected = nullptr);

struct SpaceReport {
    std::string mode;
    std::string strategy;
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t payload_bits = 0;
    std::size_t header_bits = 0;
    double benchmark_worstcase_bits = 0;
    double benchmark_pointwise_bits = 0;
    std::optional<ProbeStats> probes;
    double build_seconds = 0;
    std::map<std::string, std::string> params;

    double redundancy_worstcase() const;
    double redundancy_pointwise() const;

    // timings are left out when `timings` is false so that reports of the
    // same input compare byte for byte
    nlohmann::json to_json(bool timings = true) const;
};

// The walk is decoded from the store when not supplied.
SpaceReport make_report(const WalkStore& store, const Walk* walk = nullptr);

struct BenchRow {
    std::string graph;
    SpaceReport report;
};

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_markdown(const std::vector<BenchRow>& rows);

} // namespace walkstore

#endif
