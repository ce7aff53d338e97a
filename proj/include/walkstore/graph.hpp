#ifndef WALKSTORE_GRAPH_HPP
#define WALKSTORE_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace walkstore {

class Writer;
class Reader;

using Vertex = std::uint32_t;
using Walk = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

// Default vertex cap; WALKSTORE_MAX_VERTICES overrides it.
inline constexpr std::size_t kDefaultMaxVertices = 64;
std::size_t max_vertices();

// Fixed, unweighted graph on dense vertex ids [0, k). Undirected graphs are
// stored symmetrically, so out_degree() is the ordinary degree.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t k, bool directed, std::span<const Edge> edges);

    static Graph from_json(const std::string& text);
    static Graph load_json(const std::string& path);
    std::string to_json() const;

    void write(Writer& out) const;
    static Graph read(Reader& in);

    std::size_t size() const { return k_; }
    bool directed() const { return directed_; }

    bool has_edge(Vertex u, Vertex v) const {
        return u < k_ && v < k_ && adj_[static_cast<std::size_t>(u) * k_ + v] != 0;
    }
    std::size_t out_degree(Vertex u) const { return out_[u].size(); }
    std::size_t in_degree(Vertex v) const { return in_[v].size(); }
    std::span<const Vertex> out_neighbors(Vertex u) const { return out_[u]; }
    std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }

    // Edges as given in the file format: arcs for directed graphs, u <= v
    // pairs for undirected ones. Sorted.
    std::vector<Edge> edge_list() const;
    std::size_t arc_count() const;

    // Digest of (directed, k, sorted edge list). Relabelled copies of the
    // same graph hash differently.
    std::uint64_t hash() const;

    // Subgraph induced by `verts`; vertex verts[i] becomes i.
    Graph induced(std::span<const Vertex> verts) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.k_ == b.k_ && a.directed_ == b.directed_ && a.adj_ == b.adj_;
    }

private:
    std::size_t k_ = 0;
    bool directed_ = true;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
};

// Throws InvalidWalk unless every vertex is in range and every step is an edge.
void validate_walk(const Graph& g, std::span<const Vertex> walk);

// Small named graphs used by tests, benchmarks and the CLI.
namespace graphs {
Graph cycle(std::size_t k);           // undirected C_k
Graph complete(std::size_t k);        // undirected K_k
Graph directed_cycle(std::size_t k);  // 0->1->...->k-1->0
Graph fibonacci();                    // 0->0, 0->1, 1->0
Graph self_loop();                    // one vertex with a loop
Graph two_scc_dag();                  // {0,1} -> {2,3} joined by 1->2
Graph aperiodic4();                   // 4-vertex strongly connected aperiodic digraph
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph random_digraph(std::size_t k, double p, std::uint64_t seed);

// Accepts "C<k>", "K<k>", "DC<k>", "F", "LOOP", "DAG2", "A4", "KB<a>x<b>".
Graph by_name(const std::string& name);
} // namespace graphs

} // namespace walkstore

#endif
