#ifndef WALKSTORE_DICT_BRIDGE_HPP
#define WALKSTORE_DICT_BRIDGE_HPP

#include "walkstore/store_pointwise.hpp"

#include <string>

namespace walkstore {

class Reader;
class Writer;

// Distribution whose probabilities are 2^-len[i], summing to exactly 1.
struct DyadicDist {
    static constexpr std::size_t kMaxSymbols = 16;
    static constexpr unsigned kMaxLength = 8;

    std::vector<char> symbols;
    std::vector<unsigned> lengths;  // -lg of each probability

    // Throws ParameterError unless the symbols are distinct, there are at
    // most kMaxSymbols of them, every length is at most kMaxLength and the
    // probabilities sum to 1.
    void validate() const;
    // JSON {"symbols": ["a", ...], "neg_log2_probs": [1, ...]}
    static DyadicDist from_json(const std::string& text);
    static DyadicDist load_json(const std::string& path);
    std::string to_json() const;

    std::size_t index_of(char c) const;  // throws ParameterError
    unsigned depth() const;              // d = max length
};

// Graph of a canonical prefix code: tree edges root -> leaves (branch
// vertices have out-degree 2), then from each leaf a path of
// d + 1 - len(symbol) edges back to the root, so that every symbol takes
// exactly d + 1 steps. Tree vertices are numbered breadth-first from the
// root (vertex 0), return-path vertices afterwards in symbol order.
struct HuffmanGraph {
    DyadicDist dist;
    Graph graph;
    unsigned depth = 0;
    // vertex -> symbol index for leaves and return-path vertices, -1 for
    // branch vertices
    std::vector<int> owner;
    // per symbol: the d + 1 vertices after the root in its cycle
    std::vector<Walk> cycles;
};

HuffmanGraph build_huffman_graph(const DyadicDist& dist);

// Walk of length (d + 1)|x| from the root; throws ParameterError on a
// symbol outside the alphabet.
Walk string_to_walk(const HuffmanGraph& hg, const std::string& x);
std::string walk_to_string(const HuffmanGraph& hg, std::span<const Vertex> walk);

// sum_c f_c lg(|x| / f_c)
double empirical_entropy(const std::string& x);

// String dictionary: x kept as a point-wise walk store over its Huffman
// graph; get(i) is one vertex query.
class SuccinctDictionary {
public:
    static SuccinctDictionary build(const DyadicDist& dist, const std::string& x);
    static SuccinctDictionary read(Reader& in);
    void write(Writer& out) const;

    char get(std::size_t i) const;
    std::size_t size() const { return size_; }
    const HuffmanGraph& huffman() const { return hg_; }
    const PointwiseStore& store() const { return *store_; }

    std::size_t payload_bits() const { return store_->payload_bits(); }
    // the store's header plus the alphabet and code lengths
    std::size_t header_bits() const;

private:
    HuffmanGraph hg_;
    std::size_t size_ = 0;
    std::unique_ptr<PointwiseStore> store_;
};

} // namespace walkstore

#endif
