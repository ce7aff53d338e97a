#include "walkstore/graph.hpp"

#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace walkstore {

std::size_t max_vertices() {
    if (const char* env = std::getenv("WALKSTORE_MAX_VERTICES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return kDefaultMaxVertices;
}

Graph::Graph(std::size_t k, bool directed, std::span<const Edge> edges)
    : k_(k), directed_(directed), adj_(k * k, 0), out_(k), in_(k) {
    if (k == 0) {
        throw ParameterError("graph must have at least one vertex");
    }
    if (k > max_vertices()) {
        throw ResourceError("graph has " + std::to_string(k) + " vertices, cap is " +
                            std::to_string(max_vertices()));
    }
    for (auto [u, v] : edges) {
        if (u >= k || v >= k) {
            throw ParameterError("edge endpoint out of range");
        }
        adj_[static_cast<std::size_t>(u) * k + v] = 1;
        if (!directed) {
            adj_[static_cast<std::size_t>(v) * k + u] = 1;
        }
    }
    for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = 0; v < k; ++v) {
            if (adj_[u * k + v]) {
                out_[u].push_back(static_cast<Vertex>(v));
                in_[v].push_back(static_cast<Vertex>(u));
            }
        }
    }
}

Graph Graph::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph json: ") + e.what());
    }
    try {
        bool directed = j.at("directed").get<bool>();
        auto k = j.at("k").get<std::size_t>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw ParseError("graph json: edge must be a pair");
            }
            edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
        }
        return Graph(k, directed, edges);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph json: ") + e.what());
    } catch (const ParameterError& e) {
        throw ParseError(std::string("graph json: ") + e.what());
    }
}

Graph Graph::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string Graph::to_json() const {
    nlohmann::json j;
    j["directed"] = directed_;
    j["k"] = k_;
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : edge_list()) {
        j["edges"].push_back({u, v});
    }
    return j.dump();
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < k_; ++u) {
        for (Vertex v : out_[u]) {
            if (directed_ || u <= v) {
                out.emplace_back(static_cast<Vertex>(u), v);
            }
        }
    }
    return out;
}

std::size_t Graph::arc_count() const {
    std::size_t c = 0;
    for (const auto& o : out_) {
        c += o.size();
    }
    return c;
}

std::uint64_t Graph::hash() const {
    // FNV-1a over the canonical byte form.
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v, int nbytes) {
        for (int i = 0; i < nbytes; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(directed_ ? 1 : 0, 1);
    mix(k_, 8);
    for (auto [u, v] : edge_list()) {
        mix(u, 4);
        mix(v, 4);
    }
    return h;
}

Graph Graph::induced(std::span<const Vertex> verts) const {
    std::vector<std::int64_t> local(k_, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        local[verts[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : edge_list()) {
        if (local[u] >= 0 && local[v] >= 0) {
            edges.emplace_back(static_cast<Vertex>(local[u]), static_cast<Vertex>(local[v]));
        }
    }
    return Graph(verts.size(), directed_, edges);
}

void Graph::write(Writer& out) const {
    out.u8(directed_ ? 1 : 0);
    out.u32(static_cast<std::uint32_t>(k_));
    auto edges = edge_list();
    out.u32(static_cast<std::uint32_t>(edges.size()));
    for (auto [u, v] : edges) {
        out.u32(u);
        out.u32(v);
    }
}

Graph Graph::read(Reader& in) {
    bool directed = in.u8() != 0;
    std::size_t k = in.u32();
    std::size_t m = in.u32();
    if (m > in.remaining() / 8) {
        throw ParseError("graph section truncated");
    }
    std::vector<Edge> edges(m);
    for (auto& e : edges) {
        e.first = in.u32();
        e.second = in.u32();
    }
    try {
        return Graph(k, directed, edges);
    } catch (const ParameterError& e) {
        throw ParseError(std::string("graph section: ") + e.what());
    }
}

void validate_walk(const Graph& g, std::span<const Vertex> walk) {
    if (walk.empty()) {
        throw InvalidWalk("walk has no vertices");
    }
    for (std::size_t i = 0; i < walk.size(); ++i) {
        if (walk[i] >= g.size()) {
            throw InvalidWalk("vertex " + std::to_string(walk[i]) + " at position " +
                              std::to_string(i) + " is out of range");
        }
        if (i > 0 && !g.has_edge(walk[i - 1], walk[i])) {
            throw InvalidWalk("no edge " + std::to_string(walk[i - 1]) + "->" +
                              std::to_string(walk[i]) + " at position " + std::to_string(i));
        }
    }
}

namespace graphs {

Graph cycle(std::size_t k) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < k; ++i) {
        e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % k));
    }
    return Graph(k, false, e);
}

Graph complete(std::size_t k) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    }
    return Graph(k, false, e);
}

Graph directed_cycle(std::size_t k) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < k; ++i) {
        e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % k));
    }
    return Graph(k, true, e);
}

Graph fibonacci() {
    std::vector<Edge> e{{0, 0}, {0, 1}, {1, 0}};
    return Graph(2, true, e);
}

Graph self_loop() {
    std::vector<Edge> e{{0, 0}};
    return Graph(1, true, e);
}

Graph two_scc_dag() {
    std::vector<Edge> e{{0, 1}, {1, 0}, {0, 0}, {1, 2}, {2, 3}, {3, 2}, {3, 3}};
    return Graph(4, true, e);
}

Graph aperiodic4() {
    std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 0}, {3, 1}};
    return Graph(4, true, e);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(a + j));
        }
    }
    return Graph(a + b, false, e);
}

Graph random_digraph(std::size_t k, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = 0; v < k; ++v) {
            if (coin(rng)) {
                e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
            }
        }
    }
    return Graph(k, true, e);
}

Graph by_name(const std::string& name) {
    auto num = [&](std::size_t from) -> std::size_t {
        std::size_t pos = 0;
        auto v = std::stoul(name.substr(from), &pos);
        if (pos + from != name.size()) {
            throw ParseError("bad graph name " + name);
        }
        return v;
    };
    try {
        if (name == "F") return fibonacci();
        if (name == "LOOP") return self_loop();
        if (name == "DAG2") return two_scc_dag();
        if (name == "A4") return aperiodic4();
        if (name.rfind("KB", 0) == 0) {
            auto x = name.find('x');
            if (x == std::string::npos) throw ParseError("bad graph name " + name);
            return complete_bipartite(std::stoul(name.substr(2, x - 2)), std::stoul(name.substr(x + 1)));
        }
        if (name.rfind("DC", 0) == 0) return directed_cycle(num(2));
        if (name.rfind('C', 0) == 0) return cycle(num(1));
        if (name.rfind('K', 0) == 0) return complete(num(1));
    } catch (const std::logic_error&) {
        throw ParseError("bad graph name " + name);
    }
    throw ParseError("unknown graph name " + name);
}

} // namespace graphs

} // namespace walkstore
