#ifndef WALKSTORE_STORE_POINTWISE_HPP
#define WALKSTORE_STORE_POINTWISE_HPP

#include "walkstore/label_counts.hpp"
#include "walkstore/store.hpp"

#include <shared_mutex>
#include <unordered_map>

namespace walkstore {

class Reader;

// Walk stored as its rank among all walks with the same root label
// (v_0, v_n, S) over a binary tree on the n + 1 positions (left child takes
// ceil(s/2) of s positions). Node ranks combine as
//   offset(c, d, S_1) + rank_left * N(right) + rank_right,
// with child-label tuples ordered by the edge c -> d across the split and
// then by S_1. The payload is ceil(lg N(n + 1, phi_root)) bits, at most
// lg|G| + S/P + 1.
class PointwiseStore : public WalkStore {
public:
    static std::unique_ptr<PointwiseStore> build(const Graph& g, std::span<const Vertex> walk,
                                                 const StoreOptions& opt = {});
    static std::unique_ptr<PointwiseStore> read(Reader& in);

    std::string mode() const override { return "pointwise"; }
    const Graph& graph() const override { return table_->graph(); }
    std::size_t length() const override { return n_; }
    Vertex vertex_at(std::size_t i) const override;
    std::size_t payload_bits() const override;
    // n, P, B and S as Elias-gamma codes, v_0 and v_n at ceil(lg k) bits
    std::size_t header_bits() const override;
    std::map<std::string, std::string> describe() const override;
    void write(Writer& out) const override;

    const NodeLabel& root_label() const { return root_; }
    const BigInt& root_count() const { return count_; }
    const BigInt& rank() const { return rank_; }
    std::uint64_t precision() const { return table_->precision(); }
    const LabelCountTable& table() const { return *table_; }

    // decoded nodes of at least this many positions are cached for reuse
    static constexpr std::size_t kCacheMinSize = 16;

private:
    struct Split {
        NodeLabel left, right;
        BigInt left_rank, right_rank;
    };

    PointwiseStore() = default;
    BigInt rank_node(std::span<const Vertex> seg, NodeLabel& phi) const;
    Split split(std::size_t s, const NodeLabel& phi, BigInt rank) const;
    BitVec body() const;

    std::shared_ptr<LabelCountTable> table_;
    std::size_t n_ = 0;
    NodeLabel root_;
    BigInt rank_;
    BigInt count_;
    mutable std::shared_mutex cache_mu_;
    mutable std::unordered_map<std::uint64_t, Split> cache_;
};

} // namespace walkstore

#endif
