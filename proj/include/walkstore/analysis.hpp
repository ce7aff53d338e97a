#ifndef WALKSTORE_ANALYSIS_HPP
#define WALKSTORE_ANALYSIS_HPP

#include "walkstore/graph.hpp"

#include <optional>
#include <vector>

namespace walkstore {

struct GraphAnalysis {
    // SCCs in topological order: every edge between two components points
    // from an earlier one to a later one.
    std::vector<std::vector<Vertex>> scc_list;
    std::vector<std::size_t> scc_of;  // vertex -> index into scc_list
    // gcd of cycle lengths per SCC; 0 for a single vertex without a loop.
    std::vector<std::size_t> period;
    bool is_strongly_connected = false;
    bool is_aperiodic = false;       // strongly connected with period 1
    bool is_bipartite = false;       // 2-colourable (undirected sense)
    bool is_regular = false;         // every in- and out-degree equals d
    std::optional<std::size_t> degree;
};

GraphAnalysis analyze(const Graph& g);

// Residue class of each vertex of a strongly connected graph modulo its
// period p, with the smallest vertex in class 0. Every edge goes from class
// c to class (c + 1) mod p.
std::vector<std::size_t> period_layers(const Graph& g, std::size_t period);

} // namespace walkstore

#endif
