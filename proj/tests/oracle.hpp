#ifndef WALKSTORE_TESTS_ORACLE_HPP
#define WALKSTORE_TESTS_ORACLE_HPP

// Brute-force reference computations, independent of the library's count
// tables and codecs.

#include "walkstore/graph.hpp"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using walkstore::Graph;
using walkstore::Vertex;
using walkstore::Walk;

// Every length-l walk, in lexicographic vertex order.
inline std::vector<Walk> all_walks(const Graph& g, std::size_t l) {
    std::vector<Walk> out;
    Walk cur;
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == l + 1) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = 0; v < g.size(); ++v) {
            if (cur.empty() || g.has_edge(cur.back(), v)) {
                cur.push_back(v);
                self(self);
                cur.pop_back();
            }
        }
    };
    rec(rec);
    return out;
}

inline std::vector<Walk> walks_between(const Graph& g, std::size_t l, Vertex x, Vertex y) {
    std::vector<Walk> out;
    for (auto& w : all_walks(g, l)) {
        if (w.front() == x && w.back() == y) {
            out.push_back(w);
        }
    }
    return out;
}

inline std::uint64_t count_between(const Graph& g, std::size_t l, Vertex x, Vertex y) {
    // dynamic programming over plain 64-bit counts
    std::vector<std::uint64_t> cur(g.size(), 0);
    cur[x] = 1;
    for (std::size_t s = 0; s < l; ++s) {
        std::vector<std::uint64_t> next(g.size(), 0);
        for (Vertex u = 0; u < g.size(); ++u) {
            for (Vertex v = 0; v < g.size(); ++v) {
                if (g.has_edge(u, v)) {
                    next[v] += cur[u];
                }
            }
        }
        cur = next;
    }
    return cur[y];
}

// gcd of all closed-walk lengths up to max_len through vertices of `comp`
// (0 when there are none).
inline std::size_t brute_period(const Graph& g, const std::vector<Vertex>& comp, std::size_t max_len) {
    std::size_t p = 0;
    for (Vertex v : comp) {
        for (std::size_t l = 1; l <= max_len; ++l) {
            if (count_between(g, l, v, v) > 0) {
                p = std::gcd(p, l);
            }
        }
    }
    return p;
}

inline bool reachable(const Graph& g, Vertex a, Vertex b) {
    std::vector<bool> seen(g.size(), false);
    std::vector<Vertex> stack{a};
    seen[a] = true;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex v : g.out_neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen[b];
}

// The corpus of small graphs used by exhaustive checks.
inline std::vector<Graph> small_corpus() {
    namespace gs = walkstore::graphs;
    std::vector<Graph> out{gs::cycle(3), gs::complete(4), gs::fibonacci(), gs::directed_cycle(2),
                           gs::two_scc_dag(), gs::aperiodic4(), gs::self_loop()};
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        out.push_back(gs::random_digraph(4 + seed % 2, 0.45, seed));
    }
    return out;
}

} // namespace oracle

#endif
