#ifndef WALKSTORE_SUCCINCT_ARRAY_HPP
#define WALKSTORE_SUCCINCT_ARRAY_HPP

#include "walkstore/bitvec.hpp"
#include "walkstore/mixed_radix.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <utility>

namespace walkstore {

class Writer;
class Reader;

struct Strategy {
    enum class Kind : std::uint8_t { packed = 0, blocked = 1, spill_tree = 2 };

    Kind kind = Kind::packed;
    // group length for blocked, K_min for spill_tree (0 means t^2)
    std::uint64_t param = 0;

    static Strategy packed() { return {Kind::packed, 0}; }
    static Strategy blocked(std::uint64_t b) { return {Kind::blocked, b}; }
    static Strategy spill_tree(std::uint64_t k_min = 0) { return {Kind::spill_tree, k_min}; }

    // "packed", "blocked:<b>", "blocked" (automatic group length), "spill_tree",
    // "spill_tree:<K_min>"
    static Strategy parse(const std::string& text);
    std::string name() const;

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

// Group length used by blocked(0): the most positions of this radix whose
// combined rank stays below 2^126, so a group read spans at most 3 words.
std::uint64_t auto_group_length(const BigInt& max_radix);

// Bounded-integer array: position i holds a value in [0, M_i).
class SuccinctArray {
public:
    SuccinctArray() = default;

    static SuccinctArray build(const RadixSpec& spec, const std::vector<BigInt>& values, Strategy strategy);
    // Empty array that grows through append(); packed or blocked only.
    static SuccinctArray appendable(Strategy strategy);

    BigInt get(std::size_t i) const;
    std::uint64_t get_u64(std::size_t i) const { return to_u64(get(i)); }

    void append(const BigInt& value, const BigInt& radix);

    std::size_t size() const { return spec_.size(); }
    const RadixSpec& spec() const { return spec_; }
    Strategy strategy() const { return strategy_; }
    std::uint64_t k_min() const { return k_min_; }

    std::size_t payload_bits() const;
    std::size_t root_spill_bits() const;
    // payload plus root spill: everything that depends on the values
    std::size_t data_bits() const { return payload_bits() + root_spill_bits(); }
    // strategy tag and parameters (16 bits) plus the root spill
    std::size_t header_bits() const { return 16 + root_spill_bits(); }
    // ceil(sum lg M_i)
    std::size_t ideal_bits() const { return spec_.payload_bits(); }

    void write(Writer& out) const;
    static SuccinctArray read(Reader& in);

    friend bool operator==(const SuccinctArray& a, const SuccinctArray& b) {
        return a.strategy_ == b.strategy_ && a.spec_ == b.spec_ && a.payload_ == b.payload_ &&
               a.root_spill_ == b.root_spill_ && a.pending_ == b.pending_;
    }

private:
    struct NodeMeta {
        BigInt range;         // spill range passed to the parent
        std::uint32_t bits;   // payload bits emitted at this node
        std::uint64_t total;  // payload bits of the whole subtree
    };

    void init_layout();
    const NodeMeta& meta(std::size_t lo, std::size_t hi) const;
    const NodeMeta& compute_meta(std::size_t lo, std::size_t hi);
    BigInt encode_node(std::size_t lo, std::size_t hi, std::size_t off, const std::vector<BigInt>& values);
    BigInt get_spill(std::size_t i) const;
    BigInt get_blocked(std::size_t i) const;
    BigInt get_packed(std::size_t i) const;
    void flush_group(BitVec& into, std::vector<std::size_t>& offs, const std::vector<BigInt>& group,
                     std::size_t lo) const;

    RadixSpec spec_;
    Strategy strategy_;
    std::uint64_t k_min_ = 0;
    BitVec payload_;
    BigInt root_spill_;
    BigInt root_range_ = 1;

    // packed: bit offset and width per run
    std::vector<std::size_t> run_bit_start_;
    std::vector<std::size_t> run_width_;
    // blocked: bit offset of every complete group, plus the end
    std::vector<std::size_t> group_off_;
    std::vector<BigInt> pending_;
    // spill tree metadata, keyed by (run, size) inside a run, else (lo, hi)
    std::unordered_map<std::uint64_t, NodeMeta> uniform_meta_;
    std::map<std::pair<std::size_t, std::size_t>, NodeMeta> mixed_meta_;
};

} // namespace walkstore

#endif
