#include "walkstore/bundle_table.hpp"

#include "walkstore/errors.hpp"

#include <algorithm>

namespace walkstore {

BundleTable::BundleTable(const CountTable& counts, std::size_t n, std::size_t L)
    : power_(&counts.power(L)), n_(n), L_(L) {
    const std::size_t k = counts.graph().size();
    const CountMatrix& a = *power_;
    const BigInt total = a.total();
    const BigInt n2 = big(n) * big(n);
    s_.resize(k);
    t_.resize(k);
    s_before_.resize(k);
    st_before_.resize(k);
    for (std::size_t x = 0; x < k; ++x) {
        s_[x] = sgn(total) == 0 ? BigInt(0) : BigInt(a.row_sum(x) * n2 / total);
        t_[x] = sgn(total) == 0 ? BigInt(0) : BigInt(a.col_sum(x) * n2 / total);
        if (s_[x] < 1 || t_[x] < 1) {
            throw ParameterError("bundle group count is zero for vertex " + std::to_string(x) +
                                 "; walk too short for half-block " + std::to_string(L));
        }
        s_before_[x] = sum_s_;
        st_before_[x] = sum_st_;
        sum_s_ += s_[x];
        sum_t_ += t_[x];
        sum_st_ += s_[x] * t_[x];
    }
}

const BigInt& BundleTable::walks(Side side, Vertex x, Vertex y) const {
    return side == Side::g ? (*power_)(x, y) : (*power_)(y, x);
}

Slice BundleTable::bundle_of(const BigInt& code, Vertex x, Vertex y, Side side) const {
    const BigInt& n = walks(side, x, y);
    const BigInt& s = groups(side, x);
    if (code < 1 || code > n) {
        throw RangeError("walk code " + to_string(code) + " outside [1, " + to_string(n) + "]");
    }
    Slice out;
    out.j = (code - 1) * s / n + 1;
    out.k = code - ceil_div((out.j - 1) * n, s);
    return out;
}

BigInt BundleTable::code_of(const Slice& slice, Vertex x, Vertex y, Side side) const {
    const BigInt& n = walks(side, x, y);
    const BigInt& s = groups(side, x);
    BigInt c = cnt(side, x, slice.j, y);
    if (slice.j < 1 || slice.j > s || slice.k < 1 || slice.k > c) {
        throw RangeError("slice outside its group");
    }
    return ceil_div((slice.j - 1) * n, s) + slice.k;
}

BigInt BundleTable::cnt(Side side, Vertex x, const BigInt& j, Vertex y) const {
    const BigInt& n = walks(side, x, y);
    const BigInt& s = groups(side, x);
    return ceil_div(j * n, s) - ceil_div((j - 1) * n, s);
}

BigInt BundleTable::triple_count(Vertex x, const BigInt& j2, Vertex x2, const BigInt& j1) const {
    BigInt sum = 0;
    for (Vertex y = 0; y < size(); ++y) {
        sum += cnt(Side::g, x, j2, y) * cnt(Side::h, x2, j1, y);
    }
    return sum;
}

BigInt BundleTable::triple_radix_bound() const {
    BigInt best = 1;
    const std::size_t k = size();
    std::vector<BigInt> up_g(k * k), up_h(k * k);
    for (Vertex x = 0; x < k; ++x) {
        for (Vertex y = 0; y < k; ++y) {
            up_g[x * k + y] = ceil_div(walks(Side::g, x, y), s_[x]);
            up_h[x * k + y] = ceil_div(walks(Side::h, x, y), t_[x]);
        }
    }
    for (Vertex x = 0; x < k; ++x) {
        for (Vertex x2 = 0; x2 < k; ++x2) {
            BigInt sum = 0;
            for (Vertex y = 0; y < k; ++y) {
                sum += up_g[x * k + y] * up_h[x2 * k + y];
            }
            best = std::max(best, sum);
        }
    }
    return best;
}

BigInt BundleTable::triple_radix_exact() const {
    BigInt best = 1;
    const std::size_t k = size();
    for (Vertex x = 0; x < k; ++x) {
        for (BigInt j2 = 1; j2 <= s_[x]; ++j2) {
            for (Vertex x2 = 0; x2 < k; ++x2) {
                for (BigInt j1 = 1; j1 <= t_[x2]; ++j1) {
                    best = std::max(best, triple_count(x, j2, x2, j1));
                }
            }
        }
    }
    return best;
}

BigInt BundleTable::pack(const BundleCoords& c) const {
    if (c.x >= size() || c.j1 < 1 || c.j1 > t_[c.x] || c.j2 < 1 || c.j2 > s_[c.x]) {
        throw RangeError("bundle coordinates out of range");
    }
    return st_before_[c.x] + (c.j1 - 1) * s_[c.x] + (c.j2 - 1);
}

BundleCoords BundleTable::unpack(const BigInt& index) const {
    if (index < 0 || index >= sum_st_) {
        throw RangeError("bundle index out of range");
    }
    auto it = std::upper_bound(st_before_.begin(), st_before_.end(), index);
    Vertex x = static_cast<Vertex>(it - st_before_.begin() - 1);
    BigInt rest = index - st_before_[x];
    BundleCoords c;
    c.x = x;
    mpz_fdiv_qr(c.j1.get_mpz_t(), c.j2.get_mpz_t(), rest.get_mpz_t(), s_[x].get_mpz_t());
    c.j1 += 1;
    c.j2 += 1;
    return c;
}

BigInt BundleTable::pack_start(Vertex x, const BigInt& j2) const {
    if (x >= size() || j2 < 1 || j2 > s_[x]) {
        throw RangeError("start bundle out of range");
    }
    return s_before_[x] + (j2 - 1);
}

std::pair<Vertex, BigInt> BundleTable::unpack_start(const BigInt& index) const {
    if (index < 0 || index >= sum_s_) {
        throw RangeError("start bundle index out of range");
    }
    auto it = std::upper_bound(s_before_.begin(), s_before_.end(), index);
    Vertex x = static_cast<Vertex>(it - s_before_.begin() - 1);
    return {x, index - s_before_[x] + 1};
}

} // namespace walkstore
