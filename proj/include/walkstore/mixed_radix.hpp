#ifndef WALKSTORE_MIXED_RADIX_HPP
#define WALKSTORE_MIXED_RADIX_HPP

#include "walkstore/bigint.hpp"

#include <vector>

namespace walkstore {

// Per-position radices M_0..M_{t-1}, kept as runs of equal radix so that
// million-position uniform specs stay small.
class RadixSpec {
public:
    struct Run {
        BigInt radix;
        std::size_t count;
        friend bool operator==(const Run&, const Run&) = default;
    };

    RadixSpec() = default;
    explicit RadixSpec(const std::vector<BigInt>& radices);
    static RadixSpec uniform(const BigInt& radix, std::size_t count);

    // Appends `count` positions of the given radix (radix >= 1).
    void push(const BigInt& radix, std::size_t count = 1);

    std::size_t size() const { return size_; }
    const BigInt& radix(std::size_t i) const { return runs_[run_of(i)].radix; }
    const std::vector<Run>& runs() const { return runs_; }
    std::size_t run_start(std::size_t r) const { return starts_[r]; }
    // index of the run holding position i
    std::size_t run_of(std::size_t i) const;
    bool is_uniform() const { return runs_.size() <= 1; }

    // product of M_i over [lo, hi)
    BigInt product(std::size_t lo, std::size_t hi) const;
    BigInt product() const { return product(0, size_); }
    // ceil(sum lg M_i), the information content of the spec
    std::size_t payload_bits() const;
    double log2_product() const;

    friend bool operator==(const RadixSpec& a, const RadixSpec& b) { return a.runs_ == b.runs_; }

private:
    std::vector<Run> runs_;
    std::vector<std::size_t> starts_;
    std::size_t size_ = 0;
};

// sum values[i] * prod_{j>i} M_j, most significant position first.
BigInt mixed_radix_rank(const std::vector<BigInt>& values, const RadixSpec& spec);
std::vector<BigInt> mixed_radix_unrank(const BigInt& value, const RadixSpec& spec);

} // namespace walkstore

#endif
