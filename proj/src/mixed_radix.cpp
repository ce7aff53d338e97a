#include "walkstore/mixed_radix.hpp"

#include "walkstore/errors.hpp"

#include <algorithm>
#include <cmath>

namespace walkstore {

RadixSpec::RadixSpec(const std::vector<BigInt>& radices) {
    for (const auto& m : radices) {
        push(m);
    }
}

RadixSpec RadixSpec::uniform(const BigInt& radix, std::size_t count) {
    RadixSpec s;
    s.push(radix, count);
    return s;
}

void RadixSpec::push(const BigInt& radix, std::size_t count) {
    if (radix < 1) {
        throw ParameterError("radix must be at least 1");
    }
    if (count == 0) {
        return;
    }
    if (!runs_.empty() && runs_.back().radix == radix) {
        runs_.back().count += count;
    } else {
        starts_.push_back(size_);
        runs_.push_back({radix, count});
    }
    size_ += count;
}

std::size_t RadixSpec::run_of(std::size_t i) const {
    if (i >= size_) {
        throw RangeError("radix position " + std::to_string(i) + " out of range");
    }
    auto it = std::upper_bound(starts_.begin(), starts_.end(), i);
    return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

BigInt RadixSpec::product(std::size_t lo, std::size_t hi) const {
    BigInt p = 1;
    if (lo >= hi) {
        return p;
    }
    for (std::size_t r = run_of(lo); r < runs_.size() && starts_[r] < hi; ++r) {
        std::size_t a = std::max(lo, starts_[r]);
        std::size_t b = std::min(hi, starts_[r] + runs_[r].count);
        p *= pow(runs_[r].radix, static_cast<unsigned long>(b - a));
    }
    return p;
}

std::size_t RadixSpec::payload_bits() const {
    return ceil_log2(product());
}

double RadixSpec::log2_product() const {
    double s = 0;
    for (const auto& r : runs_) {
        s += static_cast<double>(r.count) * log2(r.radix);
    }
    return s;
}

BigInt mixed_radix_rank(const std::vector<BigInt>& values, const RadixSpec& spec) {
    if (values.size() != spec.size()) {
        throw RangeError("value count does not match radix spec");
    }
    BigInt v = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const BigInt& m = spec.radix(i);
        if (values[i] < 0 || values[i] >= m) {
            throw RangeError("value " + to_string(values[i]) + " at position " + std::to_string(i) +
                             " outside radix " + to_string(m));
        }
        v *= m;
        v += values[i];
    }
    return v;
}

std::vector<BigInt> mixed_radix_unrank(const BigInt& value, const RadixSpec& spec) {
    if (value < 0 || value >= spec.product()) {
        throw RangeError("mixed-radix value out of range");
    }
    std::vector<BigInt> out(spec.size());
    BigInt v = value;
    for (std::size_t i = spec.size(); i-- > 0;) {
        const BigInt& m = spec.radix(i);
        mpz_fdiv_qr(v.get_mpz_t(), out[i].get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
    return out;
}

} // namespace walkstore
