#ifndef WALKSTORE_WALK_CODEC_HPP
#define WALKSTORE_WALK_CODEC_HPP

#include "walkstore/count_table.hpp"

#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>

namespace walkstore {

// Rank of a walk among all length-l walks from x to y, in [1, N_l(x, y)].
struct WalkCode {
    BigInt value;
    Vertex x = 0;
    Vertex y = 0;
    std::size_t l = 0;
};

// Largest index i with seq[i] < key, or 0 if there is none. seq must be
// strictly increasing and key in [1, seq.back()].
std::size_t predecessor_monotone(std::span<const BigInt> seq, const BigInt& key);

// Divide-and-conquer walk ranking. A length-l walk is cut at positions
// floor(i * l / B), i = 0..B; the internal cut vertices form a tuple whose
// rank in a count-sorted directory selects a range of codes, and the ranks
// of the B sub-walks are mixed-radix packed inside that range.
class WalkCodec {
public:
    explicit WalkCodec(std::shared_ptr<const CountTable> counts, unsigned branching = 2,
                       std::size_t table_max_len = 0);

    unsigned branching() const { return branching_; }
    std::size_t table_max_len() const { return table_max_len_; }
    const CountTable& counts() const { return *counts_; }
    const Graph& graph() const { return counts_->graph(); }

    // segment = (v_0, ..., v_l), validated against the graph
    WalkCode encode(std::span<const Vertex> segment) const;
    // v_q of the walk with this code; *depth receives the number of
    // directory levels visited
    Vertex decode_vertex(const WalkCode& code, std::size_t q, std::size_t* depth = nullptr) const;
    Walk decode_full(const WalkCode& code) const;

private:
    struct Directory {
        std::size_t tuple_len = 0;       // B - 1
        std::vector<Vertex> tuples;      // flattened, count-sorted
        std::vector<BigInt> prefix;      // 0, c_0, c_0 + c_1, ..., N
    };

    const Directory& directory(std::size_t l, Vertex x, Vertex y) const;
    std::vector<std::size_t> splits(std::size_t l) const;
    // counts of the B sub-walks for one directory entry
    std::vector<const BigInt*> segment_counts(const std::vector<std::size_t>& cut, Vertex x, Vertex y,
                                              const Vertex* tuple) const;
    BigInt encode_rec(std::span<const Vertex> seg) const;
    void decode_rec(Vertex x, Vertex y, std::size_t l, const BigInt& code, Vertex* out) const;
    const std::vector<Vertex>* bottom_table(std::size_t l, Vertex x, Vertex y) const;

    std::shared_ptr<const CountTable> counts_;
    unsigned branching_;
    std::size_t table_max_len_;
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<std::uint64_t, std::unique_ptr<Directory>> dirs_;
    mutable std::unordered_map<std::uint64_t, std::unique_ptr<std::vector<Vertex>>> tables_;
};

// Rank among all length-n walks: (v_0, v_n) blocks in lexicographic order,
// then the codec rank inside the block. Result in [1, 1^T A^n 1].
BigInt global_rank(const WalkCodec& codec, std::span<const Vertex> walk);
Walk global_unrank(const WalkCodec& codec, std::size_t n, const BigInt& rank);

} // namespace walkstore

#endif
