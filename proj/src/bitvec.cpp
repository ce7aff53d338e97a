#include "walkstore/bitvec.hpp"

#include "walkstore/errors.hpp"

#include <algorithm>

namespace walkstore {

namespace probes {
namespace {
thread_local std::uint64_t counter = 0;
thread_local std::uint64_t read_counter = 0;
}
void reset() {
    counter = 0;
    read_counter = 0;
}
std::uint64_t reads() { return read_counter; }
void add_read() { ++read_counter; }
std::uint64_t words() { return counter; }
void add(std::uint64_t n) { counter += n; }
} // namespace probes

namespace {

std::uint64_t low_mask(unsigned width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

} // namespace

void BitVec::resize(std::size_t len) {
    words_.resize((len + 63) / 64, 0);
    if (len < len_ && len % 64 != 0) {
        words_.back() &= low_mask(len % 64);
    }
    len_ = len;
}

void BitVec::check(std::size_t pos, std::size_t width) const {
    if (pos > len_ || width > len_ - pos) {
        throw RangeError("bit range [" + std::to_string(pos) + ", +" + std::to_string(width) +
                         ") outside bit vector of length " + std::to_string(len_));
    }
}

void BitVec::write(std::size_t pos, unsigned width, std::uint64_t value) {
    if (width > 64) {
        throw RangeError("bit field wider than 64");
    }
    check(pos, width);
    if (width == 0) {
        return;
    }
    if ((value & ~low_mask(width)) != 0) {
        throw RangeError("value does not fit bit field");
    }
    std::size_t w = pos / 64;
    unsigned off = pos % 64;
    words_[w] = (words_[w] & ~(low_mask(width) << off)) | (value << off);
    if (off + width > 64) {
        unsigned hi = off + width - 64;
        words_[w + 1] = (words_[w + 1] & ~low_mask(hi)) | (value >> (64 - off));
    }
}

std::uint64_t BitVec::read(std::size_t pos, unsigned width) const {
    if (width > 64) {
        throw RangeError("bit field wider than 64");
    }
    check(pos, width);
    if (width == 0) {
        return 0;
    }
    probes::add((pos + width - 1) / 64 - pos / 64 + 1);
    return raw_read(pos, width);
}

std::uint64_t BitVec::raw_read(std::size_t pos, unsigned width) const {
    std::size_t w = pos / 64;
    unsigned off = pos % 64;
    std::uint64_t v = words_[w] >> off;
    if (off + width > 64) {
        v |= words_[w + 1] << (64 - off);
    }
    return v & low_mask(width);
}

void BitVec::write_big(std::size_t pos, std::size_t width, const BigInt& value) {
    check(pos, width);
    if (sgn(value) < 0 || bit_length(value) > width) {
        throw RangeError("value does not fit bit field");
    }
    std::size_t nwords = (width + 63) / 64;
    std::vector<std::uint64_t> limbs(nwords, 0);
    if (sgn(value) != 0) {
        mpz_export(limbs.data(), nullptr, -1, sizeof(std::uint64_t), 0, 0, value.get_mpz_t());
    }
    for (std::size_t i = 0; i < nwords; ++i) {
        unsigned w = static_cast<unsigned>(std::min<std::size_t>(64, width - 64 * i));
        write(pos + 64 * i, w, limbs[i]);
    }
}

BigInt BitVec::read_big(std::size_t pos, std::size_t width) const {
    check(pos, width);
    if (width <= 64) {
        return big(read(pos, static_cast<unsigned>(width)));
    }
    std::size_t nwords = (width + 63) / 64;
    std::vector<std::uint64_t> limbs(nwords, 0);
    for (std::size_t i = 0; i < nwords; ++i) {
        unsigned w = static_cast<unsigned>(std::min<std::size_t>(64, width - 64 * i));
        limbs[i] = raw_read(pos + 64 * i, w);
    }
    probes::add((pos + width - 1) / 64 - pos / 64 + 1);
    BigInt out;
    mpz_import(out.get_mpz_t(), nwords, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
    return out;
}

void BitVec::append(unsigned width, std::uint64_t value) {
    std::size_t pos = len_;
    resize(len_ + width);
    write(pos, width, value);
}

void BitVec::append_big(std::size_t width, const BigInt& value) {
    std::size_t pos = len_;
    resize(len_ + width);
    write_big(pos, width, value);
}

std::vector<std::uint8_t> BitVec::to_bytes() const {
    std::vector<std::uint8_t> out((len_ + 7) / 8, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

BitVec BitVec::from_bytes(const std::uint8_t* data, std::size_t len_bits) {
    BitVec v(len_bits);
    for (std::size_t i = 0; i < (len_bits + 7) / 8; ++i) {
        v.words_[i / 8] |= std::uint64_t{data[i]} << (8 * (i % 8));
    }
    if (len_bits % 64 != 0 && !v.words_.empty()) {
        v.words_.back() &= low_mask(len_bits % 64);
    }
    return v;
}

} // namespace walkstore
