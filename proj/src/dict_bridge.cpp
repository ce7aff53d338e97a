#include "walkstore/dict_bridge.hpp"

#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace walkstore {

void DyadicDist::validate() const {
    if (symbols.empty() || symbols.size() != lengths.size()) {
        throw ParameterError("distribution needs one length per symbol");
    }
    if (symbols.size() > kMaxSymbols) {
        throw ParameterError("distribution has more than " + std::to_string(kMaxSymbols) + " symbols");
    }
    std::vector<char> sorted = symbols;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParameterError("distribution repeats a symbol");
    }
    std::uint64_t kraft = 0;
    for (unsigned l : lengths) {
        if (l > kMaxLength) {
            throw ParameterError("probability below 2^-" + std::to_string(kMaxLength));
        }
        kraft += std::uint64_t{1} << (kMaxLength - l);
    }
    if (kraft != (std::uint64_t{1} << kMaxLength)) {
        throw ParameterError("probabilities do not sum to 1");
    }
}

DyadicDist DyadicDist::from_json(const std::string& text) {
    DyadicDist d;
    try {
        auto j = nlohmann::json::parse(text);
        for (const auto& s : j.at("symbols")) {
            auto str = s.get<std::string>();
            if (str.size() != 1) {
                throw ParseError("distribution symbols must be single characters");
            }
            d.symbols.push_back(str[0]);
        }
        for (const auto& l : j.at("neg_log2_probs")) {
            d.lengths.push_back(l.get<unsigned>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("distribution json: ") + e.what());
    }
    d.validate();
    return d;
}

DyadicDist DyadicDist::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string DyadicDist::to_json() const {
    nlohmann::json j;
    j["symbols"] = nlohmann::json::array();
    for (char c : symbols) {
        j["symbols"].push_back(std::string(1, c));
    }
    j["neg_log2_probs"] = lengths;
    return j.dump();
}

std::size_t DyadicDist::index_of(char c) const {
    auto it = std::find(symbols.begin(), symbols.end(), c);
    if (it == symbols.end()) {
        throw ParameterError(std::string("symbol '") + c + "' is not in the alphabet");
    }
    return static_cast<std::size_t>(it - symbols.begin());
}

unsigned DyadicDist::depth() const {
    return *std::max_element(lengths.begin(), lengths.end());
}

HuffmanGraph build_huffman_graph(const DyadicDist& dist) {
    dist.validate();
    HuffmanGraph hg;
    hg.dist = dist;
    hg.depth = dist.depth();
    const std::size_t t = dist.symbols.size();

    // canonical codes in (length, symbol) order
    std::vector<std::size_t> order(t);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(dist.lengths[a], dist.symbols[a]) < std::pair(dist.lengths[b], dist.symbols[b]);
    });
    std::vector<std::uint64_t> code(t);
    std::uint64_t next = 0;
    for (std::size_t r = 0; r < t; ++r) {
        std::size_t i = order[r];
        code[i] = next;
        if (r + 1 < t) {
            next = (next + 1) << (dist.lengths[order[r + 1]] - dist.lengths[i]);
        }
    }

    // trie nodes: children[node][bit], leaf symbol
    struct Node {
        int child[2] = {-1, -1};
        int symbol = -1;
    };
    std::vector<Node> trie(1);
    for (std::size_t i = 0; i < t; ++i) {
        int cur = 0;
        for (unsigned b = dist.lengths[i]; b-- > 0;) {
            int bit = static_cast<int>((code[i] >> b) & 1);
            if (trie[cur].child[bit] < 0) {
                trie[cur].child[bit] = static_cast<int>(trie.size());
                trie.emplace_back();
            }
            cur = trie[cur].child[bit];
        }
        trie[cur].symbol = static_cast<int>(i);
    }
    // breadth-first numbering
    std::vector<Vertex> id(trie.size());
    std::vector<int> bfs{0};
    for (std::size_t h = 0; h < bfs.size(); ++h) {
        id[bfs[h]] = static_cast<Vertex>(h);
        for (int c : trie[bfs[h]].child) {
            if (c >= 0) {
                bfs.push_back(c);
            }
        }
    }
    std::size_t total = trie.size();
    for (std::size_t i = 0; i < t; ++i) {
        total += hg.depth - dist.lengths[i];
    }
    if (total > max_vertices()) {
        throw ResourceError("code graph needs " + std::to_string(total) + " vertices, cap is " +
                            std::to_string(max_vertices()));
    }
    std::vector<Edge> edges;
    hg.owner.assign(total, -1);
    std::vector<Vertex> leaf(t);
    for (std::size_t n = 0; n < trie.size(); ++n) {
        for (int c : trie[n].child) {
            if (c >= 0) {
                edges.emplace_back(id[n], id[c]);
            }
        }
        if (trie[n].symbol >= 0) {
            leaf[trie[n].symbol] = id[n];
            hg.owner[id[n]] = trie[n].symbol;
        }
    }
    Vertex fresh = static_cast<Vertex>(trie.size());
    hg.cycles.resize(t);
    for (std::size_t i = 0; i < t; ++i) {
        // the tree path from the root, then the return path
        Walk& cyc = hg.cycles[i];
        int cur = 0;
        for (unsigned b = dist.lengths[i]; b-- > 0;) {
            cur = trie[cur].child[(code[i] >> b) & 1];
            cyc.push_back(id[cur]);
        }
        Vertex prev = leaf[i];
        for (unsigned s = 0; s < hg.depth - dist.lengths[i]; ++s) {
            hg.owner[fresh] = static_cast<int>(i);
            edges.emplace_back(prev, fresh);
            cyc.push_back(fresh);
            prev = fresh++;
        }
        edges.emplace_back(prev, 0);
        cyc.push_back(0);
    }
    hg.graph = Graph(total, true, edges);
    return hg;
}

Walk string_to_walk(const HuffmanGraph& hg, const std::string& x) {
    Walk w{0};
    w.reserve(1 + x.size() * (hg.depth + 1));
    for (char c : x) {
        const Walk& cyc = hg.cycles[hg.dist.index_of(c)];
        w.insert(w.end(), cyc.begin(), cyc.end());
    }
    return w;
}

std::string walk_to_string(const HuffmanGraph& hg, std::span<const Vertex> walk) {
    const std::size_t step = hg.depth + 1;
    if (walk.empty() || (walk.size() - 1) % step != 0) {
        throw InvalidWalk("walk length is not a whole number of symbol cycles");
    }
    std::string out;
    for (std::size_t i = 0; i + 1 < walk.size(); i += step) {
        int sym = hg.owner[walk[i + step - 1]];
        if (sym < 0) {
            throw InvalidWalk("cycle does not end on a symbol vertex");
        }
        out.push_back(hg.dist.symbols[sym]);
    }
    return out;
}

double empirical_entropy(const std::string& x) {
    std::map<char, std::size_t> freq;
    for (char c : x) {
        ++freq[c];
    }
    double h = 0;
    const double n = static_cast<double>(x.size());
    for (auto [c, f] : freq) {
        h += static_cast<double>(f) * std::log2(n / static_cast<double>(f));
    }
    return h;
}

SuccinctDictionary SuccinctDictionary::build(const DyadicDist& dist, const std::string& x) {
    SuccinctDictionary d;
    d.hg_ = build_huffman_graph(dist);
    d.size_ = x.size();
    Walk w = string_to_walk(d.hg_, x);
    d.store_ = PointwiseStore::build(d.hg_.graph, w);
    return d;
}

char SuccinctDictionary::get(std::size_t i) const {
    if (i >= size_) {
        throw RangeError("index " + std::to_string(i) + " out of range for string of length " +
                         std::to_string(size_));
    }
    const std::size_t step = hg_.depth + 1;
    int sym = hg_.owner[store_->vertex_at((i + 1) * step - 1)];
    if (sym < 0) {
        throw Error("dictionary walk does not end a cycle on a symbol vertex");
    }
    return hg_.dist.symbols[sym];
}

std::size_t SuccinctDictionary::header_bits() const {
    // symbol byte and a 4-bit length per symbol, plus a 5-bit symbol count
    return store_->header_bits() + 5 + hg_.dist.symbols.size() * (8 + 4);
}

void SuccinctDictionary::write(Writer& out) const {
    out.magic("RWD1");
    out.u16(kFormatVersion);
    out.u8(static_cast<std::uint8_t>(hg_.dist.symbols.size()));
    for (std::size_t i = 0; i < hg_.dist.symbols.size(); ++i) {
        out.u8(static_cast<std::uint8_t>(hg_.dist.symbols[i]));
        out.u8(static_cast<std::uint8_t>(hg_.dist.lengths[i]));
    }
    out.u64(size_);
    store_->write(out);
}

SuccinctDictionary SuccinctDictionary::read(Reader& in) {
    in.expect_magic("RWD1");
    auto version = in.u16();
    if (version != kFormatVersion) {
        throw ParseError("unsupported dictionary version " + std::to_string(version));
    }
    DyadicDist dist;
    std::size_t t = in.u8();
    for (std::size_t i = 0; i < t; ++i) {
        dist.symbols.push_back(static_cast<char>(in.u8()));
        dist.lengths.push_back(in.u8());
    }
    SuccinctDictionary d;
    try {
        d.hg_ = build_huffman_graph(dist);
    } catch (const ParameterError& e) {
        throw ParseError(std::string("dictionary distribution: ") + e.what());
    }
    d.size_ = in.u64();
    d.store_ = PointwiseStore::read(in);
    if (d.store_->graph().hash() != d.hg_.graph.hash()) {
        throw ParseError("dictionary store is not over the distribution's code graph");
    }
    if (d.store_->length() != d.size_ * (d.hg_.depth + 1)) {
        throw ParseError("dictionary store length does not match the string length");
    }
    return d;
}

} // namespace walkstore
