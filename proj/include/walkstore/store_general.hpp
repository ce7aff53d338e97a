#ifndef WALKSTORE_STORE_GENERAL_HPP
#define WALKSTORE_STORE_GENERAL_HPP

#include "walkstore/bundle_table.hpp"
#include "walkstore/store.hpp"
#include "walkstore/walk_codec.hpp"

#include <optional>

namespace walkstore {

class Reader;

// Layout of a walk on a strongly connected aperiodic graph. Milestones sit
// at 0, 2H, ..., 2mH; block i runs from milestone i through the half-block
// vertex (2i + 1)H to milestone i + 1, and the tail of length r follows
// milestone m. In direct mode the whole walk is one rank in [0, 1^T A^n 1).
struct CoreLayout {
    std::size_t n = 0;
    std::size_t half = 0;  // H
    std::size_t m = 0;
    std::size_t r = 0;
    bool direct = false;
    BigInt start_radix;    // sum_x s_x
    BigInt bundle_radix;   // sum_x s_x t_x
    BigInt end_radix;      // sum_x t_x R_x, R_x = rowsum_x(A^r)
    BigInt triple_radix;
    // predicted payload minus lg 1^T A^n 1, before array rounding
    double predicted_redundancy = 0;
};

// Layout for one half-block length; nullopt when H does not fit (m = 0 or
// an empty bundle group).
std::optional<CoreLayout> core_layout_for(const CountTable& counts, std::size_t n, std::size_t half);

// Smallest H (searched by doubling, then bisection) whose predicted
// redundancy is at most kCoreTargetBits; the best H seen if none is, or
// direct mode for short walks and one-vertex graphs.
CoreLayout core_layout(const CountTable& counts, std::size_t n);

inline constexpr double kCoreTargetBits = 4.0;
inline constexpr std::size_t kDirectMaxLength = 4096;

// Walk on a strongly connected aperiodic graph: bundle indices at the
// milestones, one triple (half-block vertex, two in-group ranks) per block.
// A query reads at most three array positions.
class AperiodicCore {
public:
    AperiodicCore() = default;
    AperiodicCore(AperiodicCore&&) noexcept = default;
    AperiodicCore& operator=(AperiodicCore&&) noexcept = default;

    static AperiodicCore build(std::shared_ptr<CountTable> counts, std::span<const Vertex> walk,
                               const StoreOptions& opt);
    static AperiodicCore read(Reader& in, std::shared_ptr<CountTable> counts, std::size_t n,
                              const StoreOptions& opt);
    void write(Writer& out) const;

    Vertex vertex_at(std::size_t i) const;
    std::size_t payload_bits() const { return bundles_.data_bits() + triples_.data_bits(); }
    const CoreLayout& layout() const { return lay_; }
    const SuccinctArray& bundles() const { return bundles_; }
    const SuccinctArray& triples() const { return triples_; }

private:
    struct Milestone {
        Vertex x = 0;
        BigInt j1, j2;
        BigInt tail;  // end slot only
    };

    void init(std::shared_ptr<CountTable> counts, const StoreOptions& opt);
    RadixSpec bundle_spec() const;
    Milestone milestone(std::size_t i) const;
    BigInt triple_rank(Vertex x, const BigInt& j2, Vertex y, const BigInt& k2, Vertex x2, const BigInt& j1,
                       const BigInt& k1) const;

    std::shared_ptr<CountTable> counts_;
    std::shared_ptr<WalkCodec> codec_;
    std::shared_ptr<BundleTable> table_;
    CoreLayout lay_;
    std::vector<BigInt> end_before_;  // prefix sums of t_x R_x
    SuccinctArray bundles_;
    SuccinctArray triples_;
};

// Walk inside one strongly connected component (local vertex ids). Period
// p > 1 is reduced to an aperiodic product graph whose vertices are the
// length-p walks between vertices of residue class 0; the few vertices
// before the first class-0 vertex and after the last full product step are
// stored plainly.
class ComponentWalk {
public:
    enum class Kind : std::uint8_t { single = 0, core = 1, periodic = 2 };

    static ComponentWalk build(const Graph& g, std::size_t period, std::span<const Vertex> walk,
                               const StoreOptions& opt);
    static ComponentWalk read(Reader& in, const Graph& g, std::size_t period, std::size_t n,
                              const StoreOptions& opt);
    void write(Writer& out) const;

    Vertex vertex_at(std::size_t i) const;
    std::size_t payload_bits() const;
    std::size_t length() const { return n_; }
    Kind kind() const { return kind_; }
    std::size_t period() const { return period_; }
    const AperiodicCore& core() const { return core_; }

private:
    void init_product(const Graph& g);

    Kind kind_ = Kind::single;
    std::size_t n_ = 0;
    std::size_t period_ = 1;
    Vertex single_ = 0;
    AperiodicCore core_;
    // periodic reduction
    std::size_t offset_ = 0;  // first position in class 0
    std::size_t steps_ = 0;   // product vertices
    std::vector<Walk> product_walks_;
    SuccinctArray plain_;     // prefix then suffix, radix k
};

// Any directed graph: the walk is cut into maximal runs inside one SCC (SCCs
// are visited in topological order, so each at most once); the run starts
// and SCC ids form the switch list, and each run is a ComponentWalk.
class GeneralStore : public WalkStore {
public:
    static std::unique_ptr<GeneralStore> build(const Graph& g, std::span<const Vertex> walk,
                                               const StoreOptions& opt = {});
    static std::unique_ptr<GeneralStore> read(Reader& in);

    std::string mode() const override { return "general"; }
    const Graph& graph() const override { return *graph_; }
    std::size_t length() const override { return n_; }
    Vertex vertex_at(std::size_t i) const override;
    std::size_t payload_bits() const override;
    std::size_t header_bits() const override;
    std::map<std::string, std::string> describe() const override;
    void write(Writer& out) const override;

    struct Segment {
        std::size_t start = 0;
        std::size_t scc = 0;
        ComponentWalk walk;
    };
    const std::vector<Segment>& segments() const { return segments_; }
    std::size_t switch_bits() const;

private:
    GeneralStore() = default;
    void prepare(const Graph& g);

    std::shared_ptr<const Graph> graph_;
    StoreOptions opt_;
    std::size_t n_ = 0;
    std::vector<std::vector<Vertex>> scc_list_;
    std::vector<std::size_t> scc_of_, period_, local_id_;
    std::vector<Graph> scc_graphs_;
    std::vector<Segment> segments_;
};

} // namespace walkstore

#endif
