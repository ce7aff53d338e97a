#include "walkstore/walk_codec.hpp"

#include "walkstore/errors.hpp"

#include <algorithm>
#include <mutex>

namespace walkstore {

namespace {

// bottom tables are only materialised when they stay this small
constexpr std::size_t kMaxTableCells = std::size_t{1} << 16;

} // namespace

std::size_t predecessor_monotone(std::span<const BigInt> seq, const BigInt& key) {
    if (seq.empty() || key < 1 || key > seq.back()) {
        throw RangeError("predecessor key " + to_string(key) + " out of range");
    }
    // first index with seq[i] >= key, then step back
    auto it = std::lower_bound(seq.begin(), seq.end(), key);
    auto idx = static_cast<std::size_t>(it - seq.begin());
    return idx == 0 ? 0 : idx - 1;
}

WalkCodec::WalkCodec(std::shared_ptr<const CountTable> counts, unsigned branching, std::size_t table_max_len)
    : counts_(std::move(counts)), branching_(branching), table_max_len_(table_max_len) {
    if (branching_ < 2) {
        throw ParameterError("codec branching must be at least 2");
    }
}

std::vector<std::size_t> WalkCodec::splits(std::size_t l) const {
    std::vector<std::size_t> cut(branching_ + 1);
    for (std::size_t i = 0; i <= branching_; ++i) {
        cut[i] = i * l / branching_;
    }
    return cut;
}

std::vector<const BigInt*> WalkCodec::segment_counts(const std::vector<std::size_t>& cut, Vertex x, Vertex y,
                                                     const Vertex* tuple) const {
    std::vector<const BigInt*> n(branching_);
    for (std::size_t i = 0; i < branching_; ++i) {
        Vertex a = i == 0 ? x : tuple[i - 1];
        Vertex b = i + 1 == branching_ ? y : tuple[i];
        n[i] = &counts_->walks(cut[i + 1] - cut[i], a, b);
    }
    return n;
}

const WalkCodec::Directory& WalkCodec::directory(std::size_t l, Vertex x, Vertex y) const {
    const std::size_t k = graph().size();
    const std::uint64_t key = (static_cast<std::uint64_t>(l) * k + x) * k + y;
    {
        std::shared_lock lock(mu_);
        if (auto it = dirs_.find(key); it != dirs_.end()) {
            return *it->second;
        }
    }

    auto dir = std::make_unique<Directory>();
    const std::size_t len = branching_ - 1;
    dir->tuple_len = len;
    auto cut = splits(l);
    std::vector<const CountMatrix*> seg(branching_);
    for (std::size_t i = 0; i < branching_; ++i) {
        seg[i] = &counts_->power(cut[i + 1] - cut[i]);
    }

    struct Entry {
        BigInt count;
        std::vector<Vertex> tuple;
    };
    std::vector<Entry> entries;
    std::vector<Vertex> tuple(len);
    // depth-first over tuples, pruning as soon as a partial product is zero
    auto rec = [&](auto&& self, std::size_t pos, Vertex prev, const BigInt& acc) -> void {
        if (pos == len) {
            const BigInt& last = (*seg[len])(prev, y);
            if (sgn(last) != 0) {
                entries.push_back({acc * last, tuple});
            }
            return;
        }
        for (Vertex z = 0; z < k; ++z) {
            const BigInt& c = (*seg[pos])(prev, z);
            if (sgn(c) == 0) {
                continue;
            }
            tuple[pos] = z;
            self(self, pos + 1, z, acc * c);
        }
    };
    rec(rec, 0, x, BigInt(1));
    // ascending count, ties by tuple
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        int c = cmp(a.count, b.count);
        return c != 0 ? c < 0 : a.tuple < b.tuple;
    });
    dir->prefix.reserve(entries.size() + 1);
    dir->prefix.emplace_back(0);
    dir->tuples.reserve(entries.size() * len);
    for (const auto& e : entries) {
        dir->prefix.push_back(dir->prefix.back() + e.count);
        dir->tuples.insert(dir->tuples.end(), e.tuple.begin(), e.tuple.end());
    }

    std::unique_lock lock(mu_);
    auto [it, inserted] = dirs_.emplace(key, std::move(dir));
    return *it->second;
}

WalkCode WalkCodec::encode(std::span<const Vertex> segment) const {
    validate_walk(graph(), segment);
    WalkCode code;
    code.x = segment.front();
    code.y = segment.back();
    code.l = segment.size() - 1;
    code.value = encode_rec(segment);
    return code;
}

BigInt WalkCodec::encode_rec(std::span<const Vertex> seg) const {
    const std::size_t l = seg.size() - 1;
    if (l <= 1) {
        return 1;
    }
    const Vertex x = seg.front();
    const Vertex y = seg.back();
    auto cut = splits(l);
    const Directory& dir = directory(l, x, y);
    const std::size_t len = dir.tuple_len;
    std::vector<Vertex> tuple(len);
    for (std::size_t i = 0; i < len; ++i) {
        tuple[i] = seg[cut[i + 1]];
    }
    // the directory is count-sorted, so locate the tuple by scanning
    std::size_t z = 0;
    const std::size_t entries = dir.prefix.size() - 1;
    while (z < entries && !std::equal(tuple.begin(), tuple.end(), dir.tuples.begin() + static_cast<std::ptrdiff_t>(z * len))) {
        ++z;
    }
    if (z == entries) {
        throw InvalidWalk("walk segment not found in directory");
    }
    auto n = segment_counts(cut, x, y, tuple.data());
    BigInt acc = 0;
    for (std::size_t i = 0; i < branching_; ++i) {
        BigInt ki = encode_rec(seg.subspan(cut[i], cut[i + 1] - cut[i] + 1));
        acc *= *n[i];
        acc += ki - 1;
    }
    return dir.prefix[z] + acc + 1;
}

const std::vector<Vertex>* WalkCodec::bottom_table(std::size_t l, Vertex x, Vertex y) const {
    const BigInt& total = counts_->walks(l, x, y);
    if (!fits_u64(total) || to_u64(total) * (l + 1) > kMaxTableCells) {
        return nullptr;
    }
    const std::size_t k = graph().size();
    const std::uint64_t key = (static_cast<std::uint64_t>(l) * k + x) * k + y;
    {
        std::shared_lock lock(mu_);
        if (auto it = tables_.find(key); it != tables_.end()) {
            return it->second.get();
        }
    }
    auto table = std::make_unique<std::vector<Vertex>>();
    const std::uint64_t count = to_u64(total);
    table->resize(count * (l + 1));
    for (std::uint64_t c = 0; c < count; ++c) {
        decode_rec(x, y, l, big(c + 1), table->data() + c * (l + 1));
    }
    std::unique_lock lock(mu_);
    auto [it, inserted] = tables_.emplace(key, std::move(table));
    return it->second.get();
}

Vertex WalkCodec::decode_vertex(const WalkCode& code, std::size_t q, std::size_t* depth) const {
    if (q > code.l) {
        throw RangeError("position " + std::to_string(q) + " beyond walk length " + std::to_string(code.l));
    }
    const BigInt& total = counts_->walks(code.l, code.x, code.y);
    if (code.value < 1 || code.value > total) {
        throw RangeError("walk code " + to_string(code.value) + " outside [1, " + to_string(total) + "]");
    }
    Vertex x = code.x;
    Vertex y = code.y;
    std::size_t l = code.l;
    BigInt k = code.value;
    BigInt rest;
    std::size_t levels = 0;
    for (;;) {
        if (q == 0 || q == l) {
            break;
        }
        if (table_max_len_ != 0 && l <= table_max_len_) {
            if (const auto* table = bottom_table(l, x, y)) {
                if (depth) {
                    *depth = levels;
                }
                return (*table)[(to_u64(k) - 1) * (l + 1) + q];
            }
        }
        ++levels;
        const Directory& dir = directory(l, x, y);
        std::size_t z = predecessor_monotone(dir.prefix, k);
        const Vertex* tuple = dir.tuples.data() + z * dir.tuple_len;
        auto cut = splits(l);
        std::size_t seg = static_cast<std::size_t>(std::upper_bound(cut.begin(), cut.end(), q) - cut.begin()) - 1;
        if (cut[seg] == q) {
            if (depth) {
                *depth = levels;
            }
            return tuple[seg - 1];
        }
        auto n = segment_counts(cut, x, y, tuple);
        // K_i = floor((K' - 1) / prod_{j > i} N_j) mod N_i + 1
        rest = k - dir.prefix[z] - 1;
        BigInt suffix = 1;
        for (std::size_t j = seg + 1; j < branching_; ++j) {
            suffix *= *n[j];
        }
        rest /= suffix;
        k = rest % *n[seg];
        k += 1;
        Vertex nx = seg == 0 ? x : tuple[seg - 1];
        Vertex ny = seg + 1 == branching_ ? y : tuple[seg];
        x = nx;
        y = ny;
        q -= cut[seg];
        l = cut[seg + 1] - cut[seg];
    }
    if (depth) {
        *depth = levels;
    }
    return q == 0 ? x : y;
}

void WalkCodec::decode_rec(Vertex x, Vertex y, std::size_t l, const BigInt& code, Vertex* out) const {
    out[0] = x;
    out[l] = y;
    if (l <= 1) {
        return;
    }
    const Directory& dir = directory(l, x, y);
    std::size_t z = predecessor_monotone(dir.prefix, code);
    const Vertex* tuple = dir.tuples.data() + z * dir.tuple_len;
    auto cut = splits(l);
    auto n = segment_counts(cut, x, y, tuple);
    BigInt rest = code - dir.prefix[z] - 1;
    std::vector<BigInt> ks(branching_);
    for (std::size_t i = branching_; i-- > 0;) {
        mpz_fdiv_qr(rest.get_mpz_t(), ks[i].get_mpz_t(), rest.get_mpz_t(), n[i]->get_mpz_t());
        ks[i] += 1;
    }
    for (std::size_t i = 0; i < branching_; ++i) {
        Vertex a = i == 0 ? x : tuple[i - 1];
        Vertex b = i + 1 == branching_ ? y : tuple[i];
        decode_rec(a, b, cut[i + 1] - cut[i], ks[i], out + cut[i]);
    }
}

Walk WalkCodec::decode_full(const WalkCode& code) const {
    const BigInt& total = counts_->walks(code.l, code.x, code.y);
    if (code.value < 1 || code.value > total) {
        throw RangeError("walk code " + to_string(code.value) + " outside [1, " + to_string(total) + "]");
    }
    Walk w(code.l + 1);
    decode_rec(code.x, code.y, code.l, code.value, w.data());
    return w;
}

BigInt global_rank(const WalkCodec& codec, std::span<const Vertex> walk) {
    WalkCode c = codec.encode(walk);
    const std::size_t k = codec.graph().size();
    const CountMatrix& m = codec.counts().power(c.l);
    BigInt before = 0;
    for (std::size_t cell = 0; cell < c.x * k + c.y; ++cell) {
        before += m(cell / k, cell % k);
    }
    return before + c.value;
}

Walk global_unrank(const WalkCodec& codec, std::size_t n, const BigInt& rank) {
    const std::size_t k = codec.graph().size();
    const CountMatrix& m = codec.counts().power(n);
    if (rank < 1) {
        throw RangeError("walk rank must be at least 1");
    }
    BigInt r = rank;
    for (std::size_t cell = 0; cell < k * k; ++cell) {
        const BigInt& c = m(cell / k, cell % k);
        if (r <= c) {
            WalkCode code{r, static_cast<Vertex>(cell / k), static_cast<Vertex>(cell % k), n};
            return codec.decode_full(code);
        }
        r -= c;
    }
    throw RangeError("walk rank exceeds the number of walks");
}

} // namespace walkstore
