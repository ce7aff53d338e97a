#include "walkstore/count_table.hpp"

#include "walkstore/errors.hpp"

#include <algorithm>
#include <bit>

namespace walkstore {

CountMatrix CountMatrix::identity(std::size_t k) {
    CountMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        m(i, i) = 1;
    }
    return m;
}

CountMatrix CountMatrix::adjacency(const Graph& g) {
    CountMatrix m(g.size());
    for (std::size_t u = 0; u < g.size(); ++u) {
        for (Vertex v : g.out_neighbors(static_cast<Vertex>(u))) {
            m(u, v) = 1;
        }
    }
    return m;
}

BigInt CountMatrix::row_sum(std::size_t r) const {
    BigInt s = 0;
    for (std::size_t c = 0; c < k_; ++c) {
        s += (*this)(r, c);
    }
    return s;
}

BigInt CountMatrix::col_sum(std::size_t c) const {
    BigInt s = 0;
    for (std::size_t r = 0; r < k_; ++r) {
        s += (*this)(r, c);
    }
    return s;
}

BigInt CountMatrix::total() const {
    BigInt s = 0;
    for (const auto& v : cells_) {
        s += v;
    }
    return s;
}

CountMatrix CountMatrix::operator*(const CountMatrix& rhs) const {
    CountMatrix out(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t t = 0; t < k_; ++t) {
            const BigInt& a = (*this)(i, t);
            if (sgn(a) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < k_; ++j) {
                const BigInt& b = rhs(t, j);
                if (sgn(b) != 0) {
                    mpz_addmul(out(i, j).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                }
            }
        }
    }
    return out;
}

CountMatrix matrix_power(const Graph& g, std::size_t l) {
    CountMatrix result = CountMatrix::identity(g.size());
    CountMatrix base = CountMatrix::adjacency(g);
    while (l > 0) {
        if (l & 1) {
            result = result * base;
        }
        l >>= 1;
        if (l > 0) {
            base = base * base;
        }
    }
    return result;
}

BigInt total_walks(const Graph& g, std::size_t n) {
    return matrix_power(g, n).total();
}

CountTable::CountTable(std::shared_ptr<const Graph> g, std::size_t max_length)
    : graph_(std::move(g)), max_length_(max_length), dense_limit_(std::min(max_length, kDenseWindow)) {
    powers_.reserve(dense_limit_ + 1);
    powers_.push_back(std::make_unique<CountMatrix>(CountMatrix::identity(graph_->size())));
    ready_.store(1, std::memory_order_release);
}

std::size_t CountTable::default_max_length(std::size_t n) {
    std::size_t lg = n <= 1 ? 0 : std::bit_width(n - 1);
    return 4 * lg + 8;
}

const CountMatrix& CountTable::power(std::size_t l) const {
    if (l > max_length_) {
        throw ResourceError("walk length " + std::to_string(l) + " exceeds count table cap " +
                            std::to_string(max_length_));
    }
    if (l < ready_.load(std::memory_order_acquire)) {
        return *powers_[l];
    }
    std::lock_guard lock(mu_);
    return power_locked(l);
}

const CountMatrix& CountTable::power_locked(std::size_t l) const {
    // grow the dense prefix only for lengths close to its end; a far length
    // inside the window would otherwise materialise every power below it
    if (l <= dense_limit_ && l < powers_.size() + kDenseStep) {
        const Graph& g = *graph_;
        const std::size_t k = g.size();
        while (powers_.size() <= l) {
            const CountMatrix& prev = *powers_.back();
            // A^{l+1}(x, y) = sum over in-neighbours z of y of A^l(x, z)
            CountMatrix next(k);
            for (std::size_t x = 0; x < k; ++x) {
                for (std::size_t y = 0; y < k; ++y) {
                    BigInt& cell = next(x, y);
                    for (Vertex z : g.in_neighbors(static_cast<Vertex>(y))) {
                        cell += prev(x, z);
                    }
                }
            }
            powers_.push_back(std::make_unique<CountMatrix>(std::move(next)));
            ready_.store(powers_.size(), std::memory_order_release);
        }
        return *powers_[l];
    }
    auto it = sparse_.find(l);
    if (it != sparse_.end()) {
        return *it->second;
    }
    const CountMatrix& lo = power_locked(l / 2);
    const CountMatrix& hi = power_locked(l - l / 2);
    auto m = std::make_unique<CountMatrix>(lo * hi);
    return *sparse_.emplace(l, std::move(m)).first->second;
}

CountMatrix count_walks(const Graph& g, std::size_t l) {
    CountTable t(std::make_shared<const Graph>(g), std::max<std::size_t>(l, 1));
    return t.power(l);
}

} // namespace walkstore
