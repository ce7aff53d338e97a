#ifndef WALKSTORE_STORE_REGULAR_HPP
#define WALKSTORE_STORE_REGULAR_HPP

#include "walkstore/store.hpp"
#include "walkstore/walk_codec.hpp"

#include <optional>

namespace walkstore {

class Reader;

struct RegularLayout {
    std::size_t n = 0;
    std::size_t l = 0;    // block length
    std::size_t m = 0;    // full blocks
    std::size_t rem = 0;  // n mod l
    BigInt block_radix;   // floor((1/|G| + 1/n^2) d^l)
    BigInt rem_radix;     // max_{x,y} N_rem(x, y), 1 when rem = 0
    bool plain = false;   // n < 2l: vertices packed one by one

    std::size_t milestone_count() const { return plain ? 0 : m + 1 + (rem > 0 ? 1 : 0); }
};

// Smallest l with N_l(x, y) * |G| * n^2 <= (n^2 + |G|) * d^l for all x, y,
// checked exactly. Throws UnsupportedGraph unless g is connected,
// non-bipartite and regular. If no l with 2l <= n qualifies, returns the
// first l with 2l > n (the caller then stores the walk plainly).
std::size_t choose_l(const Graph& g, std::size_t n);

RegularLayout regular_layout(const CountTable& counts, std::size_t n);

// Walks on connected non-bipartite d-regular graphs: a milestone vertex every
// l steps in one array, the codec rank of each block in a second.
class RegularStore : public WalkStore {
public:
    static std::unique_ptr<RegularStore> build(const Graph& g, std::span<const Vertex> walk,
                                               const StoreOptions& opt = {});
    // Online construction for a walk of planned length n: append_vertex()
    // n + 1 times (the first call supplies v_0), then finish().
    static std::unique_ptr<RegularStore> online(const Graph& g, std::size_t planned_n,
                                                const StoreOptions& opt = {});
    static std::unique_ptr<RegularStore> read(Reader& in);

    void append_vertex(Vertex v);
    void finish();
    // vertices appended so far
    std::size_t appended() const { return appended_; }

    std::string mode() const override { return "regular"; }
    const Graph& graph() const override { return counts_->graph(); }
    std::size_t length() const override { return layout_.n; }
    Vertex vertex_at(std::size_t i) const override;
    std::size_t payload_bits() const override;
    std::size_t header_bits() const override;
    std::map<std::string, std::string> describe() const override;
    void write(Writer& out) const override;

    const RegularLayout& layout() const { return layout_; }
    const SuccinctArray& milestones() const { return milestones_; }
    const SuccinctArray& blocks() const { return blocks_; }
    const StoreOptions& options() const { return opt_; }

private:
    RegularStore(std::shared_ptr<CountTable> counts, const StoreOptions& opt);
    void flush_block(std::size_t len, const BigInt& radix);

    std::shared_ptr<CountTable> counts_;
    std::unique_ptr<WalkCodec> codec_;
    StoreOptions opt_;
    RegularLayout layout_;
    SuccinctArray milestones_;
    SuccinctArray blocks_;

    // online state
    bool online_ = false;
    bool finished_ = true;
    std::size_t appended_ = 0;
    Walk buffer_;  // vertices since the last milestone, milestone included
};

} // namespace walkstore

#endif
