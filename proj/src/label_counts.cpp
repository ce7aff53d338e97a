#include "walkstore/label_counts.hpp"

#include "walkstore/errors.hpp"

#include <algorithm>
#include <mutex>
#include <bit>
#include <numeric>

namespace walkstore {

static_assert(GMP_NUMB_BITS == 64, "Kronecker packing assumes 64-bit limbs");

namespace {

constexpr std::size_t kSchoolbookLimit = 16;

std::size_t max_bits(const std::vector<BigInt>& c) {
    std::size_t b = 0;
    for (const auto& v : c) {
        b = std::max<std::size_t>(b, sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2));
    }
    return b;
}

// sum c[i] 2^(i * slot); every c[i] < 2^slot
BigInt pack(const std::vector<BigInt>& c, std::size_t slot) {
    const std::size_t words = (c.size() * slot) / 64 + 2;
    std::vector<mp_limb_t> buf(words, 0);
    std::vector<mp_limb_t> tmp;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::size_t sz = mpz_size(c[i].get_mpz_t());
        if (sz == 0) {
            continue;
        }
        const mp_limb_t* src = mpz_limbs_read(c[i].get_mpz_t());
        std::size_t off = i * slot, word = off / 64;
        unsigned sh = off % 64;
        if (sh == 0) {
            for (std::size_t j = 0; j < sz; ++j) {
                buf[word + j] |= src[j];
            }
        } else {
            tmp.resize(sz);
            mp_limb_t carry = mpn_lshift(tmp.data(), src, static_cast<mp_size_t>(sz), sh);
            for (std::size_t j = 0; j < sz; ++j) {
                buf[word + j] |= tmp[j];
            }
            buf[word + sz] |= carry;
        }
    }
    BigInt out;
    mp_limb_t* dst = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(words));
    std::copy(buf.begin(), buf.end(), dst);
    mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(words));
    return out;
}

std::vector<BigInt> unpack(const BigInt& z, std::size_t count, std::size_t slot) {
    std::vector<BigInt> out(count);
    const mp_limb_t* src = mpz_limbs_read(z.get_mpz_t());
    const std::size_t sz = mpz_size(z.get_mpz_t());
    const std::size_t keep = (slot + 63) / 64;
    std::vector<mp_limb_t> tmp;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t off = i * slot, word = off / 64;
        unsigned sh = off % 64;
        if (word >= sz) {
            break;
        }
        std::size_t nwords = (sh + slot + 63) / 64;
        tmp.assign(nwords, 0);
        for (std::size_t j = 0; j < nwords && word + j < sz; ++j) {
            tmp[j] = src[word + j];
        }
        if (sh != 0) {
            mpn_rshift(tmp.data(), tmp.data(), static_cast<mp_size_t>(nwords), sh);
        }
        if (slot % 64 != 0) {
            tmp[keep - 1] &= (mp_limb_t{1} << (slot % 64)) - 1;
        }
        mp_limb_t* dst = mpz_limbs_write(out[i].get_mpz_t(), static_cast<mp_size_t>(keep));
        std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(keep), dst);
        mpz_limbs_finish(out[i].get_mpz_t(), static_cast<mp_size_t>(keep));
    }
    return out;
}

Poly trim(Poly p) {
    auto first = std::find_if(p.c.begin(), p.c.end(), [](const BigInt& v) { return sgn(v) != 0; });
    if (first == p.c.end()) {
        return {};
    }
    auto last = std::find_if(p.c.rbegin(), p.c.rend(), [](const BigInt& v) { return sgn(v) != 0; });
    p.lo += static_cast<std::uint64_t>(first - p.c.begin());
    p.c.erase(last.base(), p.c.end());
    p.c.erase(p.c.begin(), first);
    return p;
}

} // namespace

BigInt Poly::at(std::uint64_t e) const {
    if (zero() || e < lo || e > hi()) {
        return 0;
    }
    return c[e - lo];
}

BigInt Poly::total() const {
    BigInt s = 0;
    for (const auto& v : c) {
        s += v;
    }
    return s;
}

Poly poly_add(const Poly& a, const Poly& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    Poly out;
    out.lo = std::min(a.lo, b.lo);
    out.c.assign(std::max(a.hi(), b.hi()) - out.lo + 1, BigInt(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) out.c[a.lo - out.lo + i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) out.c[b.lo - out.lo + i] += b.c[i];
    return out;
}

Poly poly_shift(Poly a, std::uint64_t by) {
    if (!a.zero()) {
        a.lo += by;
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) {
        return {};
    }
    Poly out;
    out.lo = a.lo + b.lo;
    const std::size_t len = a.c.size() + b.c.size() - 1;
    if (std::min(a.c.size(), b.c.size()) <= kSchoolbookLimit) {
        out.c.assign(len, BigInt(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (sgn(a.c[i]) == 0) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) {
                mpz_addmul(out.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
            }
        }
        return trim(std::move(out));
    }
    const std::size_t shorter = std::min(a.c.size(), b.c.size());
    const std::size_t slot = max_bits(a.c) + max_bits(b.c) + static_cast<std::size_t>(std::bit_width(shorter)) + 1;
    BigInt z = pack(a.c, slot) * pack(b.c, slot);
    out.c = unpack(z, len, slot);
    return trim(std::move(out));
}

BigInt product_coefficient(const Poly& a, const Poly& b, std::uint64_t e) {
    BigInt s = 0;
    if (a.zero() || b.zero() || e < a.lo + b.lo || e > a.hi() + b.hi()) {
        return s;
    }
    // i ranges over a's exponents with e - i inside b's range
    std::uint64_t from = std::max(a.lo, e > b.hi() ? e - b.hi() : 0);
    std::uint64_t to = std::min(a.hi(), e - b.lo);
    for (std::uint64_t i = from; i <= to; ++i) {
        mpz_addmul(s.get_mpz_t(), a.c[i - a.lo].get_mpz_t(), b.c[e - i - b.lo].get_mpz_t());
    }
    return s;
}

std::uint64_t label_weight(std::size_t degree, std::uint64_t precision) {
    if (degree <= 1 || precision == 0) {
        return 0;
    }
    BigInt p = pow(big(degree), static_cast<unsigned long>(precision)) - 1;
    return mpz_sizeinbase(p.get_mpz_t(), 2);
}

NodeLabel label_of(const Graph& g, std::span<const Vertex> segment, std::uint64_t precision) {
    if (segment.empty()) {
        throw InvalidWalk("empty segment has no label");
    }
    NodeLabel phi{segment.front(), segment.back(), 0};
    std::map<std::size_t, std::uint64_t> memo;
    for (std::size_t i = 0; i + 1 < segment.size(); ++i) {
        std::size_t d = g.out_degree(segment[i]);
        auto it = memo.find(d);
        if (it == memo.end()) {
            it = memo.emplace(d, label_weight(d, precision)).first;
        }
        phi.S += it->second;
    }
    return phi;
}

LabelCountTable::LabelCountTable(std::shared_ptr<const Graph> g, std::uint64_t precision, std::uint64_t max_terms)
    : graph_(std::move(g)), precision_(precision), max_terms_(max_terms) {
    std::map<std::size_t, std::uint64_t> memo;
    std::uint64_t unit = 0;
    for (Vertex v = 0; v < graph_->size(); ++v) {
        std::size_t d = graph_->out_degree(v);
        auto it = memo.find(d);
        if (it == memo.end()) {
            it = memo.emplace(d, label_weight(d, precision_)).first;
        }
        weight_.push_back(it->second);
        unit = std::gcd(unit, it->second);
    }
    unit_ = unit == 0 ? 1 : unit;
}

const std::vector<Poly>& LabelCountTable::level(std::size_t s) const {
    {
        std::shared_lock lock(mu_);
        auto it = levels_.find(s);
        if (it != levels_.end()) {
            return *it->second;
        }
    }
    std::vector<Poly> built;
    if (s == 1) {
        const std::size_t k = graph_->size();
        built.resize(k * k);
        for (std::size_t a = 0; a < k; ++a) {
            built[a * k + a] = Poly{0, {BigInt(1)}};
        }
    } else {
        built = combine(s);
    }
    std::unique_lock lock(mu_);
    auto [it, inserted] = levels_.emplace(s, nullptr);
    if (inserted) {
        it->second = std::make_unique<std::vector<Poly>>(std::move(built));
    }
    return *it->second;
}

std::vector<Poly> LabelCountTable::combine(std::size_t s) const {
    const Graph& g = *graph_;
    const std::size_t k = g.size();
    const std::size_t s1 = left_size(s);
    const std::vector<Poly>& left = level(s1);
    const std::vector<Poly>& right = level(s - s1);
    // Q(c, b) = sum over edges c -> d of right(d, b)
    std::vector<Poly> q(k * k);
    for (Vertex c = 0; c < k; ++c) {
        for (Vertex d : g.out_neighbors(c)) {
            for (std::size_t b = 0; b < k; ++b) {
                q[c * k + b] = poly_add(q[c * k + b], right[d * k + b]);
            }
        }
    }
    std::vector<Poly> out(k * k);
    for (std::size_t a = 0; a < k; ++a) {
        for (Vertex c = 0; c < k; ++c) {
            const Poly& l = left[a * k + c];
            if (l.zero()) {
                continue;
            }
            Poly shifted = poly_shift(l, weight_[c] / unit_);
            for (std::size_t b = 0; b < k; ++b) {
                const Poly& r = q[c * k + b];
                if (r.zero()) {
                    continue;
                }
                if (shifted.c.size() + r.c.size() > max_terms_) {
                    throw ResourceError("label polynomial exceeds " + std::to_string(max_terms_) + " terms");
                }
                out[a * k + b] = poly_add(out[a * k + b], poly_mul(shifted, r));
            }
        }
    }
    return out;
}

const Poly& LabelCountTable::poly(std::size_t s, Vertex a, Vertex b) const {
    if (s == 0) {
        throw ParameterError("subtree size must be at least 1");
    }
    return level(s)[a * graph_->size() + b];
}

BigInt LabelCountTable::count(std::size_t s, const NodeLabel& phi) const {
    if (phi.S % unit_ != 0) {
        return 0;
    }
    return poly(s, phi.vl, phi.vr).at(phi.S / unit_);
}

} // namespace walkstore
