#include "walkstore/store_regular.hpp"

#include "walkstore/analysis.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"

#include <algorithm>

namespace walkstore {

namespace {

void require_regular_shape(const Graph& g) {
    auto a = analyze(g);
    if (!a.is_regular || !a.is_strongly_connected || (a.is_bipartite && g.size() > 1) || !a.is_aperiodic) {
        throw UnsupportedGraph("regular store needs a connected, non-bipartite, regular graph");
    }
}

bool admissible(const CountMatrix& counts, const BigInt& lhs_scale, const BigInt& rhs) {
    for (std::size_t x = 0; x < counts.size(); ++x) {
        for (std::size_t y = 0; y < counts.size(); ++y) {
            if (counts(x, y) * lhs_scale > rhs) {
                return false;
            }
        }
    }
    return true;
}

std::size_t choose_l_with(const CountTable& counts, std::size_t n) {
    const Graph& g = counts.graph();
    const BigInt k = big(g.size());
    const BigInt d = big(g.out_degree(0));
    const BigInt n2 = big(n) * big(n);
    const BigInt lhs_scale = k * n2;
    BigInt dl = 1;
    for (std::size_t l = 1;; ++l) {
        dl *= d;
        if (2 * l > n) {
            return l;
        }
        if (admissible(counts.power(l), lhs_scale, (n2 + k) * dl)) {
            return l;
        }
    }
}

StoreOptions normalise(StoreOptions opt) {
    if (opt.branching < 2) {
        throw ParameterError("codec branching must be at least 2");
    }
    return opt;
}

} // namespace

std::size_t choose_l(const Graph& g, std::size_t n) {
    require_regular_shape(g);
    if (n == 0) {
        throw ParameterError("walk length must be at least 1");
    }
    CountTable counts(std::make_shared<const Graph>(g));
    return choose_l_with(counts, n);
}

RegularLayout regular_layout(const CountTable& counts, std::size_t n) {
    const Graph& g = counts.graph();
    RegularLayout lay;
    lay.n = n;
    if (n == 0) {
        lay.l = 1;
        lay.plain = true;
        lay.block_radix = 1;
        lay.rem_radix = 1;
        return lay;
    }
    lay.l = choose_l_with(counts, n);
    lay.plain = n < 2 * lay.l;
    lay.m = n / lay.l;
    lay.rem = n % lay.l;
    const BigInt k = big(g.size());
    const BigInt n2 = big(n) * big(n);
    // floor((n^2 + |G|) d^l / (|G| n^2))
    lay.block_radix = (n2 + k) * pow(big(g.out_degree(0)), static_cast<unsigned long>(lay.l)) / (k * n2);
    lay.rem_radix = 1;
    if (lay.rem > 0) {
        const CountMatrix& r = counts.power(lay.rem);
        for (std::size_t x = 0; x < g.size(); ++x) {
            for (std::size_t y = 0; y < g.size(); ++y) {
                lay.rem_radix = std::max(lay.rem_radix, r(x, y));
            }
        }
    }
    if (!lay.plain) {
        const CountMatrix& c = counts.power(lay.l);
        for (std::size_t x = 0; x < g.size(); ++x) {
            for (std::size_t y = 0; y < g.size(); ++y) {
                if (c(x, y) > lay.block_radix) {
                    throw Error("block radix below a block count; admissibility check is broken");
                }
            }
        }
    }
    return lay;
}

RegularStore::RegularStore(std::shared_ptr<CountTable> counts, const StoreOptions& opt)
    : counts_(std::move(counts)),
      codec_(std::make_unique<WalkCodec>(counts_, opt.branching, opt.table_max_len)),
      opt_(opt) {}

std::unique_ptr<RegularStore> RegularStore::build(const Graph& g, std::span<const Vertex> walk,
                                                  const StoreOptions& options) {
    StoreOptions opt = normalise(options);
    require_regular_shape(g);
    validate_walk(g, walk);
    auto counts = std::make_shared<CountTable>(std::make_shared<const Graph>(g));
    std::unique_ptr<RegularStore> s(new RegularStore(counts, opt));
    const std::size_t n = walk.size() - 1;
    s->layout_ = regular_layout(*counts, n);
    const RegularLayout& lay = s->layout_;
    const BigInt k = big(g.size());

    if (lay.plain) {
        std::vector<BigInt> vals(walk.begin(), walk.end());
        std::transform(walk.begin(), walk.end(), vals.begin(), [](Vertex v) { return big(v); });
        s->milestones_ = SuccinctArray::build(RadixSpec::uniform(k, n + 1), vals, Strategy::packed());
        return s;
    }

    std::vector<BigInt> ms;
    std::vector<BigInt> codes;
    RadixSpec ms_spec = RadixSpec::uniform(k, lay.milestone_count());
    RadixSpec block_spec = RadixSpec::uniform(lay.block_radix, lay.m);
    for (std::size_t j = 0; j <= lay.m; ++j) {
        ms.push_back(big(walk[j * lay.l]));
    }
    for (std::size_t j = 0; j < lay.m; ++j) {
        codes.push_back(s->codec_->encode(walk.subspan(j * lay.l, lay.l + 1)).value - 1);
    }
    if (lay.rem > 0) {
        ms.push_back(big(walk[n]));
        codes.push_back(s->codec_->encode(walk.subspan(lay.m * lay.l, lay.rem + 1)).value - 1);
        block_spec.push(lay.rem_radix);
    }
    s->milestones_ = SuccinctArray::build(ms_spec, ms, resolve_strategy(opt.strategy, k));
    s->blocks_ = SuccinctArray::build(block_spec, codes, resolve_strategy(opt.strategy, lay.block_radix));
    return s;
}

std::unique_ptr<RegularStore> RegularStore::online(const Graph& g, std::size_t planned_n, const StoreOptions& options) {
    StoreOptions opt = normalise(options);
    if (opt.strategy.kind == Strategy::Kind::spill_tree) {
        throw UnsupportedOperation("online mode needs the packed or blocked strategy");
    }
    require_regular_shape(g);
    auto counts = std::make_shared<CountTable>(std::make_shared<const Graph>(g));
    std::unique_ptr<RegularStore> s(new RegularStore(counts, opt));
    s->layout_ = regular_layout(*counts, planned_n);
    s->online_ = true;
    s->finished_ = false;
    const BigInt k = big(g.size());
    if (s->layout_.plain) {
        s->milestones_ = SuccinctArray::appendable(Strategy::packed());
    } else {
        s->milestones_ = SuccinctArray::appendable(resolve_strategy(opt.strategy, k));
        s->blocks_ = SuccinctArray::appendable(resolve_strategy(opt.strategy, s->layout_.block_radix));
    }
    return s;
}

void RegularStore::flush_block(std::size_t len, const BigInt& radix) {
    BigInt code = codec_->encode(std::span<const Vertex>(buffer_).first(len + 1)).value;
    blocks_.append(code - 1, radix);
    milestones_.append(big(buffer_[len]), big(graph().size()));
    Vertex last = buffer_[len];
    buffer_.assign(1, last);
}

void RegularStore::append_vertex(Vertex v) {
    if (!online_ || finished_) {
        throw UnsupportedOperation("store is not open for appends");
    }
    const RegularLayout& lay = layout_;
    if (appended_ > lay.n) {
        throw ParameterError("walk already holds the planned " + std::to_string(lay.n) + " steps");
    }
    if (v >= graph().size()) {
        throw InvalidWalk("vertex " + std::to_string(v) + " out of range");
    }
    if (appended_ > 0) {
        Vertex last = lay.plain ? static_cast<Vertex>(milestones_.get_u64(appended_ - 1)) : buffer_.back();
        if (!graph().has_edge(last, v)) {
            throw InvalidWalk("no edge " + std::to_string(last) + "->" + std::to_string(v));
        }
    }
    ++appended_;
    const BigInt k = big(graph().size());
    if (lay.plain) {
        milestones_.append(big(v), k);
        return;
    }
    if (appended_ == 1) {
        milestones_.append(big(v), k);
        buffer_.assign(1, v);
        return;
    }
    buffer_.push_back(v);
    std::size_t flushed = blocks_.size();
    if (flushed < lay.m && buffer_.size() == lay.l + 1) {
        flush_block(lay.l, lay.block_radix);
    } else if (flushed == lay.m && lay.rem > 0 && buffer_.size() == lay.rem + 1) {
        flush_block(lay.rem, lay.rem_radix);
    }
}

void RegularStore::finish() {
    if (!online_ || finished_) {
        throw UnsupportedOperation("store is not open for appends");
    }
    if (appended_ != layout_.n + 1) {
        throw ParameterError("online store finished after " + std::to_string(appended_) + " vertices, planned " +
                             std::to_string(layout_.n + 1));
    }
    finished_ = true;
    buffer_.clear();
}

Vertex RegularStore::vertex_at(std::size_t i) const {
    check_index(i);
    const RegularLayout& lay = layout_;
    if (!finished_) {
        if (i >= appended_) {
            throw RangeError("index " + std::to_string(i) + " not appended yet");
        }
        if (!lay.plain && i >= blocks_.size() * lay.l) {
            return buffer_[i - blocks_.size() * lay.l];
        }
    }
    if (lay.plain) {
        return static_cast<Vertex>(milestones_.get_u64(i));
    }
    std::size_t j = std::min(i / lay.l, lay.m);
    std::size_t off = i - j * lay.l;
    if (off == 0) {
        return static_cast<Vertex>(milestones_.get_u64(j));
    }
    WalkCode code;
    code.x = static_cast<Vertex>(milestones_.get_u64(j));
    code.y = static_cast<Vertex>(milestones_.get_u64(j + 1));
    code.l = j < lay.m ? lay.l : lay.rem;
    code.value = blocks_.get(j) + 1;
    return codec_->decode_vertex(code, off);
}

std::size_t RegularStore::payload_bits() const {
    return milestones_.data_bits() + blocks_.data_bits();
}

std::size_t RegularStore::header_bits() const {
    // n, l, B, flags, plus the two array headers without their root spills
    return 64 + 32 + 8 + 8 + 32;
}

std::map<std::string, std::string> RegularStore::describe() const {
    const RegularLayout& lay = layout_;
    return {
        {"n", std::to_string(lay.n)},
        {"l", std::to_string(lay.l)},
        {"m", std::to_string(lay.m)},
        {"rem", std::to_string(lay.rem)},
        {"block_radix", to_string(lay.block_radix)},
        {"rem_radix", to_string(lay.rem_radix)},
        {"plain", lay.plain ? "true" : "false"},
        {"strategy", milestones_.strategy().name() + "," + blocks_.strategy().name()},
        {"branching", std::to_string(opt_.branching)},
    };
}

void RegularStore::write(Writer& out) const {
    if (!finished_) {
        throw UnsupportedOperation("finish() the online store before writing it");
    }
    out.magic("RWR1");
    out.u16(kFormatVersion);
    out.u64(graph().hash());
    graph().write(out);
    out.u64(layout_.n);
    out.u64(layout_.l);
    out.u8(static_cast<std::uint8_t>(opt_.branching));
    out.u32(static_cast<std::uint32_t>(opt_.table_max_len));
    out.u8(layout_.plain ? 1 : 0);
    out.str(opt_.strategy.name());
    milestones_.write(out);
    if (!layout_.plain) {
        blocks_.write(out);
    }
}

std::unique_ptr<RegularStore> RegularStore::read(Reader& in) {
    in.expect_magic("RWR1");
    auto version = in.u16();
    if (version != kFormatVersion) {
        throw ParseError("unsupported regular store version " + std::to_string(version));
    }
    std::uint64_t hash = in.u64();
    Graph g = Graph::read(in);
    if (g.hash() != hash) {
        throw ParseError("embedded graph does not match its hash");
    }
    try {
        require_regular_shape(g);
    } catch (const UnsupportedGraph& e) {
        throw ParseError(std::string("regular store over unsupported graph: ") + e.what());
    }
    std::size_t n = in.u64();
    std::size_t l = in.u64();
    StoreOptions opt;
    opt.branching = in.u8();
    opt.table_max_len = in.u32();
    bool plain = in.u8() != 0;
    opt.strategy = Strategy::parse(in.str());
    if (opt.branching < 2) {
        throw ParseError("codec branching below 2");
    }
    auto counts = std::make_shared<CountTable>(std::make_shared<const Graph>(g));
    std::unique_ptr<RegularStore> s(new RegularStore(counts, opt));
    s->layout_ = regular_layout(*counts, n);
    if (s->layout_.l != l || s->layout_.plain != plain) {
        throw ParseError("regular store layout does not match its parameters");
    }
    s->milestones_ = SuccinctArray::read(in);
    if (!plain) {
        s->blocks_ = SuccinctArray::read(in);
    }
    const RegularLayout& lay = s->layout_;
    const BigInt k = big(g.size());
    RadixSpec ms_spec = RadixSpec::uniform(k, plain ? n + 1 : lay.milestone_count());
    RadixSpec block_spec = RadixSpec::uniform(lay.block_radix, plain ? 0 : lay.m);
    if (!plain && lay.rem > 0) {
        block_spec.push(lay.rem_radix);
    }
    if (!(s->milestones_.spec() == ms_spec) || !(s->blocks_.spec() == block_spec)) {
        throw ParseError("regular store arrays do not match the layout");
    }
    return s;
}

} // namespace walkstore
