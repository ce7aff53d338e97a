#ifndef WALKSTORE_COUNT_TABLE_HPP
#define WALKSTORE_COUNT_TABLE_HPP

#include "walkstore/bigint.hpp"
#include "walkstore/graph.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>

namespace walkstore {

// Dense k x k matrix of exact counts, row-major.
class CountMatrix {
public:
    CountMatrix() = default;
    explicit CountMatrix(std::size_t k) : k_(k), cells_(k * k) {}

    static CountMatrix identity(std::size_t k);
    static CountMatrix adjacency(const Graph& g);

    std::size_t size() const { return k_; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return cells_[r * k_ + c]; }
    BigInt& operator()(std::size_t r, std::size_t c) { return cells_[r * k_ + c]; }

    BigInt row_sum(std::size_t r) const;
    BigInt col_sum(std::size_t c) const;
    BigInt total() const;

    CountMatrix operator*(const CountMatrix& rhs) const;
    friend bool operator==(const CountMatrix&, const CountMatrix&) = default;

private:
    std::size_t k_ = 0;
    std::vector<BigInt> cells_;
};

// A^l by repeated squaring; for lengths beyond any memo table.
CountMatrix matrix_power(const Graph& g, std::size_t l);

// 1^T A^n 1, the number of length-n walks.
BigInt total_walks(const Graph& g, std::size_t n);

// Memoised powers of A. Lengths up to the dense window are grown one
// multiplication by A at a time while they stay within kDenseStep of the
// largest dense power; other lengths are built by squaring and cached
// sparsely. Entry (x, y) of power(l) is the number of length-l walks x -> y.
// References returned by power() stay valid for the table's lifetime.
class CountTable {
public:
    static constexpr std::size_t kDefaultMaxLength = std::size_t{1} << 24;
    static constexpr std::size_t kDenseWindow = 4096;
    static constexpr std::size_t kDenseStep = 256;

    explicit CountTable(std::shared_ptr<const Graph> g, std::size_t max_length = kDefaultMaxLength);

    // 4 * ceil(lg n) + 8, the memo window a store over a length-n walk
    // normally touches.
    static std::size_t default_max_length(std::size_t n);

    const Graph& graph() const { return *graph_; }
    std::shared_ptr<const Graph> graph_ptr() const { return graph_; }
    std::size_t max_length() const { return max_length_; }

    // Throws ResourceError when l exceeds max_length().
    const CountMatrix& power(std::size_t l) const;

    const BigInt& walks(std::size_t l, Vertex x, Vertex y) const { return power(l)(x, y); }

private:
    const CountMatrix& power_locked(std::size_t l) const;

    std::shared_ptr<const Graph> graph_;
    std::size_t max_length_;
    std::size_t dense_limit_;
    mutable std::mutex mu_;
    // capacity fixed at dense_limit + 1 so published slots never move
    mutable std::vector<std::unique_ptr<CountMatrix>> powers_;
    mutable std::atomic<std::size_t> ready_{0};
    mutable std::map<std::size_t, std::unique_ptr<CountMatrix>> sparse_;
};

// count_walks(g, l) == A^l through a throwaway table.
CountMatrix count_walks(const Graph& g, std::size_t l);

} // namespace walkstore

#endif
