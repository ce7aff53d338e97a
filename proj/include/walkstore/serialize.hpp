#ifndef WALKSTORE_SERIALIZE_HPP
#define WALKSTORE_SERIALIZE_HPP

#include "walkstore/bigint.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace walkstore {

// Little-endian binary writer used by every on-disk format.
class Writer {
public:
    void magic(std::string_view tag);
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f64(double v);
    // u32 byte count, then little-endian magnitude bytes.
    void big(const BigInt& v);
    void bytes(std::span<const std::uint8_t> data);
    void str(std::string_view s);

    const std::vector<std::uint8_t>& data() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

// Bounds-checked reader; truncation or bad tags throw ParseError.
class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    void expect_magic(std::string_view tag);
    std::string peek_magic() const;
    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    double f64();
    BigInt big();
    std::span<const std::uint8_t> bytes(std::size_t n);
    std::string str();

    std::size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const;

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> data);

} // namespace walkstore

#endif
