#include "walkstore/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace walkstore {

std::size_t bit_length(const BigInt& x) {
    if (sgn(x) == 0) {
        return 0;
    }
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::size_t ceil_log2(const BigInt& x) {
    if (sgn(x) <= 0) {
        throw std::domain_error("ceil_log2 of non-positive value");
    }
    BigInt y = x - 1;
    return bit_length(y);
}

std::size_t floor_log2(const BigInt& x) {
    if (sgn(x) <= 0) {
        throw std::domain_error("floor_log2 of non-positive value");
    }
    return bit_length(x) - 1;
}

double log2(const BigInt& x) {
    if (sgn(x) <= 0) {
        throw std::domain_error("log2 of non-positive value");
    }
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return static_cast<double>(exp) + std::log2(mant);
}

bool fits_u64(const BigInt& x) {
    return sgn(x) >= 0 && bit_length(x) <= 64;
}

std::uint64_t to_u64(const BigInt& x) {
    if (!fits_u64(x)) {
        throw std::overflow_error("value does not fit in 64 bits");
    }
    static_assert(sizeof(unsigned long) == 8, "unsigned long must be 64-bit");
    return mpz_get_ui(x.get_mpz_t());
}

BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

std::vector<std::uint8_t> to_bytes(const BigInt& x) {
    if (sgn(x) < 0) {
        throw std::domain_error("negative value cannot be serialized");
    }
    std::size_t n = (bit_length(x) + 7) / 8;
    std::vector<std::uint8_t> out(n);
    if (n > 0) {
        std::size_t written = 0;
        mpz_export(out.data(), &written, -1, 1, 0, 0, x.get_mpz_t());
        out.resize(written);
    }
    return out;
}

BigInt from_bytes(const std::uint8_t* data, std::size_t len) {
    BigInt r;
    if (len > 0) {
        mpz_import(r.get_mpz_t(), len, -1, 1, 0, 0, data);
    }
    return r;
}

std::string to_string(const BigInt& x) {
    return x.get_str();
}

BigInt random_below(std::mt19937_64& rng, const BigInt& bound) {
    if (bound <= 1) {
        return 0;
    }
    const std::size_t bits = bit_length(bound - 1);
    const std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> limbs(words);
    BigInt v;
    do {
        for (auto& w : limbs) {
            w = rng();
        }
        if (bits % 64 != 0) {
            limbs.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
        }
        mpz_import(v.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
    } while (v >= bound);
    return v;
}

} // namespace walkstore
