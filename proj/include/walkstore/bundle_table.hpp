#ifndef WALKSTORE_BUNDLE_TABLE_HPP
#define WALKSTORE_BUNDLE_TABLE_HPP

#include "walkstore/count_table.hpp"

namespace walkstore {

// g: half-blocks leaving a milestone x (x -> y, s_x groups);
// h: half-blocks entering it (y -> x, t_x groups).
enum class Side { g, h };

struct BundleCoords {
    Vertex x = 0;
    BigInt j1;  // in [1, t_x]
    BigInt j2;  // in [1, s_x]
    friend bool operator==(const BundleCoords&, const BundleCoords&) = default;
};

struct Slice {
    BigInt j;  // group, 1-based
    BigInt k;  // position inside the group, 1-based
    friend bool operator==(const Slice&, const Slice&) = default;
};

// Group slicing of fixed-endpoint codes for one half-block length L and
// walk length n. s_x = floor(rowsum_x(A^L) n^2 / 1^T A^L 1) and t_x likewise
// with column sums; the codes of walks x -> y (or y -> x) are cut into s_x
// (or t_x) near-equal slices by j = floor((K - 1) s_x / N) + 1.
class BundleTable {
public:
    // Throws ParameterError when some s_x or t_x is zero.
    BundleTable(const CountTable& counts, std::size_t n, std::size_t L);

    std::size_t n() const { return n_; }
    std::size_t half_block() const { return L_; }
    std::size_t size() const { return s_.size(); }

    const BigInt& s(Vertex x) const { return s_[x]; }
    const BigInt& t(Vertex x) const { return t_[x]; }
    const BigInt& sum_s() const { return sum_s_; }
    const BigInt& sum_t() const { return sum_t_; }
    // sum_x s_x t_x, the radix of an interior milestone
    const BigInt& bundle_radix() const { return sum_st_; }

    // number of walks of the pair (x, y) under `side`
    const BigInt& walks(Side side, Vertex x, Vertex y) const;
    const BigInt& groups(Side side, Vertex x) const { return side == Side::g ? s_[x] : t_[x]; }

    Slice bundle_of(const BigInt& code, Vertex x, Vertex y, Side side) const;
    BigInt code_of(const Slice& slice, Vertex x, Vertex y, Side side) const;
    // #{K : slice(K) = j}
    BigInt cnt(Side side, Vertex x, const BigInt& j, Vertex y) const;

    // sum_y cnt_g(x, j2, y) * cnt_h(x2, j1, y)
    BigInt triple_count(Vertex x, const BigInt& j2, Vertex x2, const BigInt& j1) const;
    // max_{x, x2} sum_y ceil(N(x, y) / s_x) * ceil(N(y, x2) / t_x2): an upper
    // bound on every triple_count, since no slice exceeds ceil(N / groups)
    BigInt triple_radix_bound() const;
    // exact maximum of triple_count over every context; only for small n
    BigInt triple_radix_exact() const;

    BigInt pack(const BundleCoords& c) const;
    BundleCoords unpack(const BigInt& index) const;
    // start slot: sum_{x' < x} s_x' + (j2 - 1)
    BigInt pack_start(Vertex x, const BigInt& j2) const;
    std::pair<Vertex, BigInt> unpack_start(const BigInt& index) const;

private:
    const CountMatrix* power_;
    std::size_t n_;
    std::size_t L_;
    std::vector<BigInt> s_, t_;
    std::vector<BigInt> s_before_, st_before_;
    BigInt sum_s_, sum_t_, sum_st_;
};

} // namespace walkstore

#endif
