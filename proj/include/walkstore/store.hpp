#ifndef WALKSTORE_STORE_HPP
#define WALKSTORE_STORE_HPP

#include "walkstore/graph.hpp"
#include "walkstore/succinct_array.hpp"

#include <map>
#include <memory>
#include <string>

namespace walkstore {

class Writer;

inline constexpr std::uint16_t kFormatVersion = 1;

struct StoreOptions {
    Strategy strategy = Strategy::spill_tree();
    unsigned branching = 2;        // walk codec B
    std::size_t table_max_len = 0;  // codec bottom tables, 0 = off
    std::uint64_t precision = 0;    // pointwise label precision P, 0 = n
};

// Immutable encoded walk answering "vertex at position i".
class WalkStore {
public:
    virtual ~WalkStore() = default;

    virtual std::string mode() const = 0;
    virtual const Graph& graph() const = 0;
    // walk length n; positions are 0..n
    virtual std::size_t length() const = 0;
    virtual Vertex vertex_at(std::size_t i) const = 0;

    // bits that depend on the stored walk (array payloads and root spills)
    virtual std::size_t payload_bits() const = 0;
    // bookkeeping bits derivable from n and the parameters alone
    virtual std::size_t header_bits() const = 0;
    // free-form parameters for reports
    virtual std::map<std::string, std::string> describe() const = 0;

    // full store file, magic first
    virtual void write(Writer& out) const = 0;

    Walk decode_all() const;

protected:
    void check_index(std::size_t i) const;
};

// Array helpers shared by the stores: resolve blocked(0) against the
// largest radix the array will hold.
Strategy resolve_strategy(Strategy s, const BigInt& max_radix);

} // namespace walkstore

#endif
