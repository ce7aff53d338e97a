#ifndef WALKSTORE_BITVEC_HPP
#define WALKSTORE_BITVEC_HPP

#include "walkstore/bigint.hpp"

#include <cstdint>
#include <vector>

namespace walkstore {

// Per-thread count of 64-bit payload words read through BitVec. Used to
// instrument queries; reset() before, words() after.
namespace probes {
void reset();
std::uint64_t words();
void add(std::uint64_t n);
// succinct-array element reads, counted alongside the words
std::uint64_t reads();
void add_read();
} // namespace probes

// Growable bit sequence; bit i lives at word i / 64, bit i % 64
// (least-significant first within a word).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t len) : words_((len + 63) / 64, 0), len_(len) {}

    std::size_t size() const { return len_; }
    void resize(std::size_t len);

    // width <= 64; value must fit in width bits.
    void write(std::size_t pos, unsigned width, std::uint64_t value);
    std::uint64_t read(std::size_t pos, unsigned width) const;

    // Arbitrary width, value in [0, 2^width).
    void write_big(std::size_t pos, std::size_t width, const BigInt& value);
    BigInt read_big(std::size_t pos, std::size_t width) const;

    void append(unsigned width, std::uint64_t value);
    void append_big(std::size_t width, const BigInt& value);

    const std::vector<std::uint64_t>& words() const { return words_; }

    // Byte form: ceil(len / 8) bytes, little-endian bit order.
    std::vector<std::uint8_t> to_bytes() const;
    static BitVec from_bytes(const std::uint8_t* data, std::size_t len_bits);

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    void check(std::size_t pos, std::size_t width) const;
    std::uint64_t raw_read(std::size_t pos, unsigned width) const;

    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

} // namespace walkstore

#endif
