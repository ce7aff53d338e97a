#ifndef WALKSTORE_BIGINT_HPP
#define WALKSTORE_BIGINT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace walkstore {

// Every binding count in the library is an exact integer.
using BigInt = mpz_class;

inline BigInt big(std::uint64_t v) {
    return BigInt(static_cast<unsigned long>(v));
}

// Number of bits in the binary representation of x >= 0 (0 for x == 0).
std::size_t bit_length(const BigInt& x);

// ceil(lg2 x) for x >= 1, i.e. the bits needed to store a value in [0, x).
std::size_t ceil_log2(const BigInt& x);

// floor(lg2 x) for x >= 1.
std::size_t floor_log2(const BigInt& x);

// lg2 x as a double, accurate to ~1e-15 relative for any x >= 1.
double log2(const BigInt& x);

bool fits_u64(const BigInt& x);
std::uint64_t to_u64(const BigInt& x);

BigInt pow(const BigInt& base, unsigned long exp);

// ceil(a / b) for a >= 0, b > 0.
BigInt ceil_div(const BigInt& a, const BigInt& b);

// Little-endian magnitude bytes (empty for zero).
std::vector<std::uint8_t> to_bytes(const BigInt& x);
BigInt from_bytes(const std::uint8_t* data, std::size_t len);

std::string to_string(const BigInt& x);

// Uniform integer in [0, bound) for bound >= 1, by rejection over
// bit_length(bound - 1) random bits.
BigInt random_below(std::mt19937_64& rng, const BigInt& bound);

} // namespace walkstore

#endif
