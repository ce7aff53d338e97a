#include "walkstore/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace walkstore {

namespace {

// Tarjan's algorithm; components come out in reverse topological order.
struct Tarjan {
    const Graph& g;
    std::vector<std::int64_t> index, low;
    std::vector<bool> on_stack;
    std::vector<Vertex> stack;
    std::vector<std::vector<Vertex>> comps;
    std::int64_t counter = 0;

    explicit Tarjan(const Graph& graph)
        : g(graph), index(graph.size(), -1), low(graph.size(), 0), on_stack(graph.size(), false) {}

    void visit(Vertex v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (Vertex w : g.out_neighbors(v)) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<Vertex> comp;
            Vertex w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    }
};

std::size_t component_period(const Graph& g, const std::vector<Vertex>& comp,
                             const std::vector<std::size_t>& scc_of, std::size_t id) {
    if (comp.size() == 1 && !g.has_edge(comp[0], comp[0])) {
        return 0;
    }
    std::vector<std::int64_t> level(g.size(), -1);
    std::queue<Vertex> q;
    level[comp[0]] = 0;
    q.push(comp[0]);
    std::size_t p = 0;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex v : g.out_neighbors(u)) {
            if (scc_of[v] != id) {
                continue;
            }
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            } else {
                auto diff = level[u] + 1 - level[v];
                p = std::gcd(p, static_cast<std::size_t>(diff < 0 ? -diff : diff));
            }
        }
    }
    return p;
}

} // namespace

GraphAnalysis analyze(const Graph& g) {
    GraphAnalysis a;
    const std::size_t k = g.size();
    Tarjan t(g);
    for (Vertex v = 0; v < k; ++v) {
        if (t.index[v] < 0) {
            t.visit(v);
        }
    }
    a.scc_list.assign(t.comps.rbegin(), t.comps.rend());
    a.scc_of.assign(k, 0);
    for (std::size_t c = 0; c < a.scc_list.size(); ++c) {
        for (Vertex v : a.scc_list[c]) {
            a.scc_of[v] = c;
        }
    }
    for (std::size_t c = 0; c < a.scc_list.size(); ++c) {
        a.period.push_back(component_period(g, a.scc_list[c], a.scc_of, c));
    }
    a.is_strongly_connected = a.scc_list.size() == 1;
    a.is_aperiodic = a.is_strongly_connected && a.period[0] == 1;

    // 2-colouring over the underlying undirected graph
    std::vector<int> colour(k, -1);
    a.is_bipartite = true;
    for (Vertex s = 0; s < k && a.is_bipartite; ++s) {
        if (colour[s] >= 0) {
            continue;
        }
        colour[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty() && a.is_bipartite) {
            Vertex u = q.front();
            q.pop();
            auto relax = [&](Vertex v) {
                if (colour[v] < 0) {
                    colour[v] = 1 - colour[u];
                    q.push(v);
                } else if (colour[v] == colour[u]) {
                    a.is_bipartite = false;
                }
            };
            for (Vertex v : g.out_neighbors(u)) relax(v);
            for (Vertex v : g.in_neighbors(u)) relax(v);
        }
    }

    std::size_t d = g.out_degree(0);
    a.is_regular = true;
    for (Vertex v = 0; v < k; ++v) {
        if (g.out_degree(v) != d || g.in_degree(v) != d) {
            a.is_regular = false;
            break;
        }
    }
    if (a.is_regular) {
        a.degree = d;
    }
    return a;
}

std::vector<std::size_t> period_layers(const Graph& g, std::size_t period) {
    std::vector<std::size_t> layer(g.size(), 0);
    std::vector<bool> seen(g.size(), false);
    std::queue<Vertex> q;
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex v : g.out_neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                layer[v] = (layer[u] + 1) % period;
                q.push(v);
            }
        }
    }
    return layer;
}

} // namespace walkstore
