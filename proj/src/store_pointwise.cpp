#include "walkstore/store_pointwise.hpp"

#include "walkstore/bitvec.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"

#include <algorithm>
#include <mutex>

namespace walkstore {

namespace {

std::size_t gamma_bits(std::uint64_t x) {
    return 2 * static_cast<std::size_t>(std::bit_width(x)) - 1;
}

// x >= 1: bit_width(x) - 1 zeros, a one, then the bits of x below its top
void gamma_put(BitVec& bv, std::uint64_t x) {
    unsigned w = static_cast<unsigned>(std::bit_width(x));
    bv.append(w - 1, 0);
    bv.append(1, 1);
    bv.append(w - 1, w == 1 ? 0 : x & ((std::uint64_t{1} << (w - 1)) - 1));
}

std::uint64_t gamma_get(const BitVec& bv, std::size_t& pos) {
    unsigned zeros = 0;
    while (true) {
        if (pos >= bv.size() || zeros > 63) {
            throw ParseError("bad gamma code in pointwise header");
        }
        if (bv.read(pos++, 1)) {
            break;
        }
        ++zeros;
    }
    if (pos + zeros > bv.size()) {
        throw ParseError("truncated gamma code in pointwise header");
    }
    std::uint64_t low = zeros == 0 ? 0 : bv.read(pos, zeros);
    pos += zeros;
    return (std::uint64_t{1} << zeros) | low;
}

std::size_t vertex_bits(std::size_t k) {
    return static_cast<std::size_t>(ceil_log2(big(k)));
}

} // namespace

BigInt PointwiseStore::rank_node(std::span<const Vertex> seg, NodeLabel& phi) const {
    const LabelCountTable& t = *table_;
    const std::size_t s = seg.size();
    if (s == 1) {
        phi = {seg[0], seg[0], 0};
        return 0;
    }
    const std::size_t s1 = LabelCountTable::left_size(s);
    NodeLabel lphi, rphi;
    BigInt lr = rank_node(seg.first(s1), lphi);
    BigInt rr = rank_node(seg.subspan(s1), rphi);
    const Vertex a = lphi.vl, b = rphi.vr, c = lphi.vr, d = rphi.vl;
    const std::uint64_t u = t.unit();
    phi = {a, b, lphi.S + t.weight(c) + rphi.S};
    const std::uint64_t e = phi.S / u;

    BigInt offset = 0;
    const Graph& g = t.graph();
    for (Vertex c2 = 0; c2 <= c; ++c2) {
        const std::uint64_t wc = t.weight(c2) / u;
        if (wc > e) {
            continue;
        }
        const Poly& pl = t.poly(s1, a, c2);
        for (Vertex d2 : g.out_neighbors(c2)) {
            if (c2 == c && d2 == d) {
                break;
            }
            offset += product_coefficient(pl, t.poly(s - s1, d2, b), e - wc);
        }
    }
    const std::uint64_t wc = t.weight(c) / u;
    const Poly& pl = t.poly(s1, a, c);
    const Poly& pr = t.poly(s - s1, d, b);
    const std::uint64_t e1 = lphi.S / u;
    for (std::uint64_t x = pl.lo; x < e1; ++x) {
        offset += pl.at(x) * pr.at(e - wc - x);
    }
    return offset + lr * pr.at(e - wc - e1) + rr;
}

std::unique_ptr<PointwiseStore> PointwiseStore::build(const Graph& g, std::span<const Vertex> walk,
                                                      const StoreOptions& opt) {
    if (opt.branching != 2) {
        throw UnsupportedOperation("pointwise store supports branching 2 only");
    }
    validate_walk(g, walk);
    std::unique_ptr<PointwiseStore> s(new PointwiseStore());
    s->n_ = walk.size() - 1;
    std::uint64_t p = opt.precision != 0 ? opt.precision : std::max<std::uint64_t>(s->n_, 1);
    s->table_ = std::make_shared<LabelCountTable>(std::make_shared<const Graph>(g), p);
    s->rank_ = s->rank_node(walk, s->root_);
    s->count_ = s->table_->count(s->n_ + 1, s->root_);
    if (s->rank_ >= s->count_) {
        throw Error("pointwise rank exceeds its label count");
    }
    return s;
}

PointwiseStore::Split PointwiseStore::split(std::size_t s, const NodeLabel& phi, BigInt rank) const {
    const LabelCountTable& t = *table_;
    const Graph& g = t.graph();
    const std::size_t s1 = LabelCountTable::left_size(s);
    const std::uint64_t u = t.unit();
    const std::uint64_t e = phi.S / u;
    for (Vertex c = 0; c < g.size(); ++c) {
        const std::uint64_t wc = t.weight(c) / u;
        if (wc > e) {
            continue;
        }
        const Poly& pl = t.poly(s1, phi.vl, c);
        if (pl.zero()) {
            continue;
        }
        for (Vertex d : g.out_neighbors(c)) {
            const Poly& pr = t.poly(s - s1, d, phi.vr);
            BigInt block = product_coefficient(pl, pr, e - wc);
            if (rank >= block) {
                rank -= block;
                continue;
            }
            for (std::uint64_t x = pl.lo; x <= pl.hi() && x <= e - wc; ++x) {
                BigInt nr = pr.at(e - wc - x);
                BigInt here = pl.at(x) * nr;
                if (rank >= here) {
                    rank -= here;
                    continue;
                }
                Split out;
                out.left = {phi.vl, c, x * u};
                out.right = {d, phi.vr, (e - wc - x) * u};
                mpz_fdiv_qr(out.left_rank.get_mpz_t(), out.right_rank.get_mpz_t(), rank.get_mpz_t(),
                            nr.get_mpz_t());
                return out;
            }
            throw Error("pointwise block total disagrees with its terms");
        }
    }
    throw RangeError("pointwise rank exceeds its label count");
}

Vertex PointwiseStore::vertex_at(std::size_t i) const {
    check_index(i);
    std::size_t lo = 0, s = n_ + 1, depth = 0;
    NodeLabel phi = root_;
    BigInt rank = rank_;
    while (true) {
        // words of the rank operand at this node, counted with or without the cache
        probes::add(std::max<std::size_t>(1, mpz_size(rank.get_mpz_t())));
        if (i == lo) {
            return phi.vl;
        }
        if (i == lo + s - 1) {
            return phi.vr;
        }
        const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 6) | depth;
        Split sp;
        bool cached = false;
        if (s >= kCacheMinSize) {
            std::shared_lock lock(cache_mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                sp = it->second;
                cached = true;
            }
        }
        if (!cached) {
            sp = split(s, phi, rank);
            if (s >= kCacheMinSize) {
                std::unique_lock lock(cache_mu_);
                cache_.emplace(key, sp);
            }
        }
        const std::size_t s1 = LabelCountTable::left_size(s);
        ++depth;
        if (i < lo + s1) {
            phi = sp.left;
            rank = std::move(sp.left_rank);
            s = s1;
        } else {
            phi = sp.right;
            rank = std::move(sp.right_rank);
            lo += s1;
            s -= s1;
        }
    }
}

std::size_t PointwiseStore::payload_bits() const {
    return static_cast<std::size_t>(ceil_log2(count_));
}

std::size_t PointwiseStore::header_bits() const {
    return gamma_bits(n_ + 1) + gamma_bits(precision()) + gamma_bits(2) + gamma_bits(root_.S + 1) +
           2 * vertex_bits(graph().size());
}

std::map<std::string, std::string> PointwiseStore::describe() const {
    return {
        {"n", std::to_string(n_)},
        {"precision", std::to_string(precision())},
        {"branching", "2"},
        {"root_S", std::to_string(root_.S)},
        {"v0", std::to_string(root_.vl)},
        {"vn", std::to_string(root_.vr)},
        {"label_count_bits", std::to_string(log2(count_))},
    };
}

BitVec PointwiseStore::body() const {
    BitVec bv;
    gamma_put(bv, n_ + 1);
    gamma_put(bv, precision());
    gamma_put(bv, 2);
    gamma_put(bv, root_.S + 1);
    const unsigned vb = static_cast<unsigned>(vertex_bits(graph().size()));
    bv.append(vb, root_.vl);
    bv.append(vb, root_.vr);
    bv.append_big(payload_bits(), rank_);
    return bv;
}

void PointwiseStore::write(Writer& out) const {
    out.magic("RWP1");
    out.u16(kFormatVersion);
    out.u64(graph().hash());
    graph().write(out);
    BitVec bv = body();
    out.u64(bv.size());
    out.bytes(bv.to_bytes());
}

std::unique_ptr<PointwiseStore> PointwiseStore::read(Reader& in) {
    in.expect_magic("RWP1");
    auto version = in.u16();
    if (version != kFormatVersion) {
        throw ParseError("unsupported pointwise store version " + std::to_string(version));
    }
    std::uint64_t hash = in.u64();
    Graph g = Graph::read(in);
    if (g.hash() != hash) {
        throw ParseError("embedded graph does not match its hash");
    }
    std::uint64_t len = in.u64();
    if (len > in.remaining() * 8) {
        throw ParseError("pointwise body truncated");
    }
    auto bytes = in.bytes((len + 7) / 8);
    BitVec bv = BitVec::from_bytes(bytes.data(), len);
    std::size_t pos = 0;
    std::unique_ptr<PointwiseStore> s(new PointwiseStore());
    s->n_ = gamma_get(bv, pos) - 1;
    std::uint64_t p = gamma_get(bv, pos);
    if (gamma_get(bv, pos) != 2) {
        throw ParseError("pointwise store branching must be 2");
    }
    s->root_.S = gamma_get(bv, pos) - 1;
    const unsigned vb = static_cast<unsigned>(vertex_bits(g.size()));
    if (pos + 2 * vb > len) {
        throw ParseError("pointwise header truncated");
    }
    s->root_.vl = static_cast<Vertex>(vb == 0 ? 0 : bv.read(pos, vb));
    s->root_.vr = static_cast<Vertex>(vb == 0 ? 0 : bv.read(pos + vb, vb));
    pos += 2 * vb;
    if (s->root_.vl >= g.size() || s->root_.vr >= g.size()) {
        throw ParseError("pointwise end vertex out of range");
    }
    s->table_ = std::make_shared<LabelCountTable>(std::make_shared<const Graph>(g), p);
    s->count_ = s->table_->count(s->n_ + 1, s->root_);
    if (sgn(s->count_) == 0) {
        throw ParseError("pointwise root label admits no walk");
    }
    const std::size_t pb = s->payload_bits();
    if (pos + pb != len) {
        throw ParseError("pointwise payload length does not match its label");
    }
    s->rank_ = bv.read_big(pos, pb);
    if (s->rank_ >= s->count_) {
        throw ParseError("pointwise rank exceeds its label count");
    }
    return s;
}

} // namespace walkstore
