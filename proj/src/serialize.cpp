#include "walkstore/serialize.hpp"

#include "walkstore/errors.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

namespace walkstore {

void Writer::magic(std::string_view tag) {
    buf_.insert(buf_.end(), tag.begin(), tag.end());
}

void Writer::u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) {
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

void Writer::u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

void Writer::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

void Writer::f64(double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
}

void Writer::big(const BigInt& v) {
    auto b = to_bytes(v);
    u32(static_cast<std::uint32_t>(b.size()));
    bytes(b);
}

void Writer::bytes(std::span<const std::uint8_t> data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
}

void Writer::str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
}

void Reader::need(std::size_t n) const {
    if (remaining() < n) {
        throw ParseError("truncated input");
    }
}

void Reader::expect_magic(std::string_view tag) {
    need(tag.size());
    if (std::memcmp(data_.data() + pos_, tag.data(), tag.size()) != 0) {
        throw ParseError("bad magic, expected " + std::string(tag));
    }
    pos_ += tag.size();
}

std::string Reader::peek_magic() const {
    if (remaining() < 4) {
        return {};
    }
    return std::string(reinterpret_cast<const char*>(data_.data() + pos_), 4);
}

std::uint8_t Reader::u8() {
    need(1);
    return data_[pos_++];
}

std::uint16_t Reader::u16() {
    need(2);
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) {
        v |= static_cast<std::uint16_t>(data_[pos_++]) << (8 * i);
    }
    return v;
}

std::uint32_t Reader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
    }
    return v;
}

std::uint64_t Reader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    }
    return v;
}

double Reader::f64() {
    std::uint64_t bits = u64();
    double v = 0;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

BigInt Reader::big() {
    std::uint32_t n = u32();
    auto b = bytes(n);
    return from_bytes(b.data(), b.size());
}

std::span<const std::uint8_t> Reader::bytes(std::size_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
}

std::string Reader::str() {
    std::uint32_t n = u32();
    auto b = bytes(n);
    return std::string(b.begin(), b.end());
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

} // namespace walkstore
