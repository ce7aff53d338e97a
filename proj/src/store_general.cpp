#include "walkstore/store_general.hpp"

#include "walkstore/analysis.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace walkstore {

namespace {

CoreLayout direct_layout(const CountTable& counts, std::size_t n) {
    CoreLayout lay;
    lay.n = n;
    lay.direct = true;
    BigInt total = counts.power(n).total();
    lay.start_radix = std::max(total, BigInt(1));
    lay.predicted_redundancy = static_cast<double>(ceil_log2(lay.start_radix)) - log2(lay.start_radix);
    return lay;
}

std::optional<CoreLayout> evaluate(const CountTable& counts, std::size_t n, std::size_t half, double lg_total) {
    if (half == 0 || 2 * half > n) {
        return std::nullopt;
    }
    std::optional<BundleTable> table;
    try {
        table.emplace(counts, n, half);
    } catch (const ParameterError&) {
        return std::nullopt;
    }
    CoreLayout lay;
    lay.n = n;
    lay.half = half;
    lay.m = n / (2 * half);
    lay.r = n - 2 * half * lay.m;
    lay.start_radix = table->sum_s();
    lay.bundle_radix = table->bundle_radix();
    const CountMatrix& tail = counts.power(lay.r);
    lay.end_radix = 0;
    for (Vertex x = 0; x < table->size(); ++x) {
        lay.end_radix += table->t(x) * tail.row_sum(x);
    }
    lay.triple_radix = table->triple_radix_bound();
    double bits = log2(lay.start_radix) + static_cast<double>(lay.m - 1) * log2(lay.bundle_radix) +
                  log2(lay.end_radix) + static_cast<double>(lay.m) * log2(lay.triple_radix);
    lay.predicted_redundancy = bits - lg_total;
    return lay;
}

// codec rank in [0, 1^T A^l 1) -> vertex at position q
Vertex decode_ranked(const WalkCodec& codec, std::size_t l, BigInt rank, std::size_t q) {
    const std::size_t k = codec.graph().size();
    const CountMatrix& m = codec.counts().power(l);
    for (std::size_t cell = 0; cell < k * k; ++cell) {
        const BigInt& c = m(cell / k, cell % k);
        if (rank < c) {
            WalkCode code{rank + 1, static_cast<Vertex>(cell / k), static_cast<Vertex>(cell % k), l};
            return codec.decode_vertex(code, q);
        }
        rank -= c;
    }
    throw RangeError("walk rank exceeds the number of walks");
}

void check_spec(const SuccinctArray& a, const RadixSpec& spec, const char* what) {
    if (!(a.spec() == spec)) {
        throw ParseError(std::string(what) + " array does not match the layout");
    }
}

} // namespace

std::optional<CoreLayout> core_layout_for(const CountTable& counts, std::size_t n, std::size_t half) {
    if (half == 0 || 2 * half > n) {
        return std::nullopt;
    }
    return evaluate(counts, n, half, log2(counts.power(n).total()));
}

CoreLayout core_layout(const CountTable& counts, std::size_t n) {
    if (n < 2 || counts.graph().size() == 1) {
        return direct_layout(counts, n);
    }
    const double lg_total = log2(counts.power(n).total());
    const std::size_t cap = std::min<std::size_t>(n / 2, 64 * static_cast<std::size_t>(ceil_log2(big(n))));
    std::optional<CoreLayout> best;
    auto consider = [&](std::size_t half) -> bool {
        auto lay = evaluate(counts, n, half, lg_total);
        if (!lay) {
            return false;
        }
        if (!best || lay->predicted_redundancy < best->predicted_redundancy) {
            best = lay;
        }
        return lay->predicted_redundancy <= kCoreTargetBits;
    };
    std::size_t prev = 0;
    for (std::size_t half = 1; half <= cap; prev = half, half *= 2) {
        if (consider(half)) {
            // smallest passing H in (prev, half], assuming the prediction
            // falls with H over this range
            std::size_t lo = prev + 1, hi = half;
            auto found = evaluate(counts, n, half, lg_total);
            while (lo < hi) {
                std::size_t mid = lo + (hi - lo) / 2;
                auto lay = evaluate(counts, n, mid, lg_total);
                if (lay && lay->predicted_redundancy <= kCoreTargetBits) {
                    hi = mid;
                    found = lay;
                } else {
                    lo = mid + 1;
                }
            }
            return *found;
        }
    }
    if (!best || n <= kDirectMaxLength) {
        return direct_layout(counts, n);
    }
    return *best;
}

void AperiodicCore::init(std::shared_ptr<CountTable> counts, const StoreOptions& opt) {
    counts_ = std::move(counts);
    codec_ = std::make_shared<WalkCodec>(counts_, opt.branching, opt.table_max_len);
    if (lay_.direct) {
        return;
    }
    table_ = std::make_shared<BundleTable>(*counts_, lay_.n, lay_.half);
    const CountMatrix& tail = counts_->power(lay_.r);
    BigInt acc = 0;
    end_before_.clear();
    for (Vertex x = 0; x < table_->size(); ++x) {
        end_before_.push_back(acc);
        acc += table_->t(x) * tail.row_sum(x);
    }
}

RadixSpec AperiodicCore::bundle_spec() const {
    RadixSpec spec;
    if (lay_.direct) {
        spec.push(lay_.start_radix);
        return spec;
    }
    spec.push(lay_.start_radix);
    if (lay_.m > 1) {
        spec.push(lay_.bundle_radix, lay_.m - 1);
    }
    spec.push(lay_.end_radix);
    return spec;
}

BigInt AperiodicCore::triple_rank(Vertex x, const BigInt& j2, Vertex y, const BigInt& k2, Vertex x2,
                                  const BigInt& j1, const BigInt& k1) const {
    const BundleTable& t = *table_;
    BigInt rank = 0;
    for (Vertex z = 0; z < y; ++z) {
        rank += t.cnt(Side::g, x, j2, z) * t.cnt(Side::h, x2, j1, z);
    }
    return rank + (k2 - 1) * t.cnt(Side::h, x2, j1, y) + (k1 - 1);
}

AperiodicCore AperiodicCore::build(std::shared_ptr<CountTable> counts, std::span<const Vertex> walk,
                                   const StoreOptions& opt) {
    AperiodicCore c;
    const std::size_t n = walk.size() - 1;
    c.lay_ = core_layout(*counts, n);
    c.init(std::move(counts), opt);
    const CoreLayout& lay = c.lay_;
    if (lay.direct) {
        BigInt rank = global_rank(*c.codec_, walk) - 1;
        c.bundles_ = SuccinctArray::build(c.bundle_spec(), {rank}, Strategy::packed());
        return c;
    }
    const BundleTable& t = *c.table_;
    const std::size_t H = lay.half;
    const std::size_t m = lay.m;
    std::vector<BigInt> bundles(m + 1), triples(m);
    std::vector<Slice> out_slice(m), in_slice(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        Vertex x = walk[2 * i * H];
        Vertex y = walk[(2 * i + 1) * H];
        Vertex x2 = walk[(2 * i + 2) * H];
        BigInt k_out = c.codec_->encode(walk.subspan(2 * i * H, H + 1)).value;
        BigInt k_in = c.codec_->encode(walk.subspan((2 * i + 1) * H, H + 1)).value;
        out_slice[i] = t.bundle_of(k_out, x, y, Side::g);
        in_slice[i + 1] = t.bundle_of(k_in, x2, y, Side::h);
        triples[i] = c.triple_rank(x, out_slice[i].j, y, out_slice[i].k, x2, in_slice[i + 1].j, in_slice[i + 1].k);
        if (triples[i] >= lay.triple_radix) {
            throw Error("triple rank exceeds its radix bound");
        }
    }
    bundles[0] = t.pack_start(walk[0], out_slice[0].j);
    for (std::size_t i = 1; i < m; ++i) {
        bundles[i] = t.pack({walk[2 * i * H], in_slice[i].j, out_slice[i].j});
    }
    // end slot: incoming group at milestone m, then the tail rank
    Vertex xm = walk[2 * m * H];
    const CountMatrix& tail = c.counts_->power(lay.r);
    BigInt tail_rank = 0;
    Vertex last = walk[lay.n];
    for (Vertex y = 0; y < last; ++y) {
        tail_rank += tail(xm, y);
    }
    tail_rank += c.codec_->encode(walk.subspan(2 * m * H, lay.r + 1)).value - 1;
    bundles[m] = c.end_before_[xm] + (in_slice[m].j - 1) * tail.row_sum(xm) + tail_rank;

    BigInt max_bundle = std::max({lay.start_radix, lay.end_radix, lay.bundle_radix});
    c.bundles_ = SuccinctArray::build(c.bundle_spec(), bundles, resolve_strategy(opt.strategy, max_bundle));
    c.triples_ = SuccinctArray::build(RadixSpec::uniform(lay.triple_radix, m), triples,
                                      resolve_strategy(opt.strategy, lay.triple_radix));
    return c;
}

AperiodicCore::Milestone AperiodicCore::milestone(std::size_t i) const {
    const BundleTable& t = *table_;
    BigInt v = bundles_.get(i);
    Milestone ms;
    if (i == 0) {
        auto [x, j2] = t.unpack_start(v);
        ms.x = x;
        ms.j2 = j2;
    } else if (i < lay_.m) {
        BundleCoords c = t.unpack(v);
        ms.x = c.x;
        ms.j1 = c.j1;
        ms.j2 = c.j2;
    } else {
        auto it = std::upper_bound(end_before_.begin(), end_before_.end(), v);
        ms.x = static_cast<Vertex>(it - end_before_.begin() - 1);
        BigInt rest = v - end_before_[ms.x];
        BigInt rows = counts_->power(lay_.r).row_sum(ms.x);
        ms.j1 = rest / rows + 1;
        ms.tail = rest % rows;
    }
    return ms;
}

Vertex AperiodicCore::vertex_at(std::size_t i) const {
    if (lay_.direct) {
        return decode_ranked(*codec_, lay_.n, bundles_.get(0), i);
    }
    const std::size_t H = lay_.half;
    const std::size_t blk = i / (2 * H);
    if (blk >= lay_.m) {
        Milestone end = milestone(lay_.m);
        std::size_t off = i - 2 * H * lay_.m;
        if (off == 0) {
            return end.x;
        }
        const CountMatrix& tail = counts_->power(lay_.r);
        BigInt rest = end.tail;
        for (Vertex y = 0; y < counts_->graph().size(); ++y) {
            if (rest < tail(end.x, y)) {
                return codec_->decode_vertex({rest + 1, end.x, y, lay_.r}, off);
            }
            rest -= tail(end.x, y);
        }
        throw Error("tail rank exceeds its row");
    }
    std::size_t off = i - 2 * H * blk;
    Milestone a = milestone(blk);
    if (off == 0) {
        return a.x;
    }
    Milestone b = milestone(blk + 1);
    BigInt rank = triples_.get(blk);
    const BundleTable& t = *table_;
    for (Vertex y = 0; y < t.size(); ++y) {
        BigInt in_cnt = t.cnt(Side::h, b.x, b.j1, y);
        BigInt here = t.cnt(Side::g, a.x, a.j2, y) * in_cnt;
        if (rank >= here) {
            rank -= here;
            continue;
        }
        if (off == H) {
            return y;
        }
        if (off < H) {
            BigInt k2 = rank / in_cnt + 1;
            BigInt code = t.code_of({a.j2, k2}, a.x, y, Side::g);
            return codec_->decode_vertex({code, a.x, y, H}, off);
        }
        BigInt k1 = rank % in_cnt + 1;
        BigInt code = t.code_of({b.j1, k1}, b.x, y, Side::h);
        return codec_->decode_vertex({code, y, b.x, H}, off - H);
    }
    throw Error("triple rank exceeds its context");
}

void AperiodicCore::write(Writer& out) const {
    out.u8(lay_.direct ? 1 : 0);
    out.u64(lay_.half);
    bundles_.write(out);
    if (!lay_.direct) {
        triples_.write(out);
    }
}

AperiodicCore AperiodicCore::read(Reader& in, std::shared_ptr<CountTable> counts, std::size_t n,
                                  const StoreOptions& opt) {
    AperiodicCore c;
    bool direct = in.u8() != 0;
    std::size_t half = in.u64();
    if (direct) {
        c.lay_ = direct_layout(*counts, n);
    } else {
        auto lay = core_layout_for(*counts, n, half);
        if (!lay) {
            throw ParseError("half-block length " + std::to_string(half) + " is invalid for this walk");
        }
        c.lay_ = *lay;
    }
    c.init(std::move(counts), opt);
    c.bundles_ = SuccinctArray::read(in);
    check_spec(c.bundles_, c.bundle_spec(), "bundle");
    if (!direct) {
        c.triples_ = SuccinctArray::read(in);
        check_spec(c.triples_, RadixSpec::uniform(c.lay_.triple_radix, c.lay_.m), "triple");
    }
    return c;
}

void ComponentWalk::init_product(const Graph& g) {
    auto layer = period_layers(g, period_);
    product_walks_.clear();
    Walk cur;
    std::function<void(Vertex)> extend = [&](Vertex v) {
        cur.push_back(v);
        if (cur.size() == period_ + 1) {
            product_walks_.push_back(cur);
        } else {
            for (Vertex w : g.out_neighbors(v)) {
                extend(w);
            }
        }
        cur.pop_back();
    };
    for (Vertex v = 0; v < g.size(); ++v) {
        if (layer[v] == 0) {
            extend(v);
        }
    }
    if (product_walks_.size() > max_vertices()) {
        throw UnsupportedGraph("period-" + std::to_string(period_) + " component needs " +
                               std::to_string(product_walks_.size()) + " product vertices, cap is " +
                               std::to_string(max_vertices()));
    }
}

namespace {

std::shared_ptr<CountTable> product_counts(const std::vector<Walk>& walks) {
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < walks.size(); ++a) {
        for (std::size_t b = 0; b < walks.size(); ++b) {
            if (walks[a].back() == walks[b].front()) {
                edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
            }
        }
    }
    return std::make_shared<CountTable>(std::make_shared<const Graph>(walks.size(), true, edges));
}

} // namespace

ComponentWalk ComponentWalk::build(const Graph& g, std::size_t period, std::span<const Vertex> walk,
                                   const StoreOptions& opt) {
    ComponentWalk c;
    c.n_ = walk.size() - 1;
    c.period_ = period;
    if (period == 0) {
        if (c.n_ != 0) {
            throw InvalidWalk("walk stays on a vertex without a loop");
        }
        c.kind_ = Kind::single;
        c.single_ = walk[0];
        return c;
    }
    if (period == 1) {
        c.kind_ = Kind::core;
        c.core_ = AperiodicCore::build(std::make_shared<CountTable>(std::make_shared<const Graph>(g)), walk, opt);
        return c;
    }
    c.kind_ = Kind::periodic;
    c.init_product(g);
    auto layer = period_layers(g, period);
    const std::size_t p = period;
    c.offset_ = (p - layer[walk[0]]) % p;
    c.steps_ = c.n_ >= c.offset_ ? (c.n_ - c.offset_) / p : 0;
    std::vector<BigInt> plain;
    auto keep = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            plain.push_back(big(walk[i]));
        }
    };
    if (c.steps_ == 0) {
        keep(0, c.n_ + 1);
    } else {
        keep(0, c.offset_);
        keep(c.offset_ + c.steps_ * p + 1, c.n_ + 1);
        std::map<Walk, Vertex> id;
        for (std::size_t i = 0; i < c.product_walks_.size(); ++i) {
            id.emplace(c.product_walks_[i], static_cast<Vertex>(i));
        }
        Walk lifted(c.steps_);
        for (std::size_t j = 0; j < c.steps_; ++j) {
            auto seg = walk.subspan(c.offset_ + j * p, p + 1);
            lifted[j] = id.at(Walk(seg.begin(), seg.end()));
        }
        c.core_ = AperiodicCore::build(product_counts(c.product_walks_), lifted, opt);
    }
    c.plain_ = SuccinctArray::build(RadixSpec::uniform(big(g.size()), plain.size()), plain, Strategy::packed());
    return c;
}

Vertex ComponentWalk::vertex_at(std::size_t i) const {
    switch (kind_) {
    case Kind::single:
        return single_;
    case Kind::core:
        return core_.vertex_at(i);
    case Kind::periodic:
        break;
    }
    if (steps_ == 0 || i < offset_) {
        return static_cast<Vertex>(plain_.get_u64(i));
    }
    const std::size_t end = offset_ + steps_ * period_;
    if (i > end) {
        return static_cast<Vertex>(plain_.get_u64(offset_ + (i - end - 1)));
    }
    std::size_t j = (i - offset_) / period_;
    std::size_t o = (i - offset_) % period_;
    if (j == steps_) {
        --j;
        o = period_;
    }
    return product_walks_[core_.vertex_at(j)][o];
}

std::size_t ComponentWalk::payload_bits() const {
    switch (kind_) {
    case Kind::single:
        return 0;
    case Kind::core:
        return core_.payload_bits();
    case Kind::periodic:
        break;
    }
    std::size_t bits = plain_.data_bits() + static_cast<std::size_t>(ceil_log2(big(period_)));
    return steps_ > 0 ? bits + core_.payload_bits() : bits;
}

void ComponentWalk::write(Writer& out) const {
    out.u8(static_cast<std::uint8_t>(kind_));
    switch (kind_) {
    case Kind::single:
        out.u32(single_);
        return;
    case Kind::core:
        core_.write(out);
        return;
    case Kind::periodic:
        out.u32(static_cast<std::uint32_t>(offset_));
        plain_.write(out);
        if (steps_ > 0) {
            core_.write(out);
        }
        return;
    }
}

ComponentWalk ComponentWalk::read(Reader& in, const Graph& g, std::size_t period, std::size_t n,
                                  const StoreOptions& opt) {
    ComponentWalk c;
    c.n_ = n;
    c.period_ = period;
    auto kind = in.u8();
    Kind expect = period == 0 ? Kind::single : period == 1 ? Kind::core : Kind::periodic;
    if (kind != static_cast<std::uint8_t>(expect)) {
        throw ParseError("component kind does not match the component's period");
    }
    c.kind_ = expect;
    if (expect == Kind::single) {
        c.single_ = in.u32();
        if (n != 0 || c.single_ >= g.size()) {
            throw ParseError("bad single-vertex component");
        }
        return c;
    }
    if (expect == Kind::core) {
        c.core_ = AperiodicCore::read(in, std::make_shared<CountTable>(std::make_shared<const Graph>(g)), n, opt);
        return c;
    }
    c.init_product(g);
    c.offset_ = in.u32();
    if (c.offset_ >= period) {
        throw ParseError("periodic offset exceeds the period");
    }
    c.steps_ = n >= c.offset_ ? (n - c.offset_) / period : 0;
    c.plain_ = SuccinctArray::read(in);
    std::size_t plain_len = c.steps_ == 0 ? n + 1 : n - c.steps_ * period;
    check_spec(c.plain_, RadixSpec::uniform(big(g.size()), plain_len), "plain");
    if (c.steps_ > 0) {
        c.core_ = AperiodicCore::read(in, product_counts(c.product_walks_), c.steps_ - 1, opt);
    }
    return c;
}

void GeneralStore::prepare(const Graph& g) {
    graph_ = std::make_shared<const Graph>(g);
    auto a = analyze(g);
    scc_list_ = a.scc_list;
    scc_of_ = a.scc_of;
    period_ = a.period;
    local_id_.assign(g.size(), 0);
    scc_graphs_.clear();
    for (const auto& comp : scc_list_) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
            local_id_[comp[i]] = i;
        }
        scc_graphs_.push_back(g.induced(comp));
    }
}

std::unique_ptr<GeneralStore> GeneralStore::build(const Graph& g, std::span<const Vertex> walk,
                                                  const StoreOptions& opt) {
    if (opt.branching < 2) {
        throw ParameterError("codec branching must be at least 2");
    }
    validate_walk(g, walk);
    std::unique_ptr<GeneralStore> s(new GeneralStore());
    s->prepare(g);
    s->opt_ = opt;
    s->n_ = walk.size() - 1;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= walk.size(); ++i) {
        if (i < walk.size() && s->scc_of_[walk[i]] == s->scc_of_[walk[start]]) {
            continue;
        }
        std::size_t c = s->scc_of_[walk[start]];
        Walk local(i - start);
        for (std::size_t j = start; j < i; ++j) {
            local[j - start] = static_cast<Vertex>(s->local_id_[walk[j]]);
        }
        s->segments_.push_back({start, c, ComponentWalk::build(s->scc_graphs_[c], s->period_[c], local, opt)});
        start = i;
    }
    return s;
}

Vertex GeneralStore::vertex_at(std::size_t i) const {
    check_index(i);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), i,
                               [](std::size_t v, const Segment& seg) { return v < seg.start; });
    const Segment& seg = *(it - 1);
    return scc_list_[seg.scc][seg.walk.vertex_at(i - seg.start)];
}

std::size_t GeneralStore::switch_bits() const {
    if (scc_list_.size() == 1) {
        return 0;
    }
    // segment count, then (start, SCC id) per segment
    const std::size_t count_bits = static_cast<std::size_t>(ceil_log2(big(scc_list_.size() + 1)));
    const std::size_t per = static_cast<std::size_t>(ceil_log2(big(n_ + 1)) + ceil_log2(big(scc_list_.size())));
    return count_bits + segments_.size() * per;
}

std::size_t GeneralStore::payload_bits() const {
    std::size_t bits = switch_bits();
    for (const auto& seg : segments_) {
        bits += seg.walk.payload_bits();
    }
    return bits;
}

std::size_t GeneralStore::header_bits() const {
    // n, B, table length, strategy tag, then kind, H and two array headers
    // per segment
    return 64 + 8 + 32 + 16 + segments_.size() * (8 + 64 + 32);
}

std::map<std::string, std::string> GeneralStore::describe() const {
    std::string comps;
    for (const auto& seg : segments_) {
        if (!comps.empty()) {
            comps += "; ";
        }
        comps += "scc " + std::to_string(seg.scc) + " @" + std::to_string(seg.start) + ": ";
        const ComponentWalk& w = seg.walk;
        switch (w.kind()) {
        case ComponentWalk::Kind::single:
            comps += "single";
            continue;
        case ComponentWalk::Kind::periodic:
            comps += "period " + std::to_string(w.period()) + " ";
            break;
        case ComponentWalk::Kind::core:
            break;
        }
        const CoreLayout& lay = w.core().layout();
        if (lay.direct) {
            comps += "direct";
        } else {
            comps += "H=" + std::to_string(lay.half) + " m=" + std::to_string(lay.m) + " r=" + std::to_string(lay.r);
        }
    }
    return {
        {"n", std::to_string(n_)},
        {"sccs", std::to_string(scc_list_.size())},
        {"segments", std::to_string(segments_.size())},
        {"switch_bits", std::to_string(switch_bits())},
        {"components", comps},
        {"strategy", opt_.strategy.name()},
        {"branching", std::to_string(opt_.branching)},
    };
}

void GeneralStore::write(Writer& out) const {
    out.magic("RWG1");
    out.u16(kFormatVersion);
    out.u64(graph().hash());
    graph().write(out);
    out.u64(n_);
    out.u8(static_cast<std::uint8_t>(opt_.branching));
    out.u32(static_cast<std::uint32_t>(opt_.table_max_len));
    out.str(opt_.strategy.name());
    out.u32(static_cast<std::uint32_t>(segments_.size()));
    for (const auto& seg : segments_) {
        out.u64(seg.start);
        out.u32(static_cast<std::uint32_t>(seg.scc));
    }
    for (const auto& seg : segments_) {
        seg.walk.write(out);
    }
}

std::unique_ptr<GeneralStore> GeneralStore::read(Reader& in) {
    in.expect_magic("RWG1");
    auto version = in.u16();
    if (version != kFormatVersion) {
        throw ParseError("unsupported general store version " + std::to_string(version));
    }
    std::uint64_t hash = in.u64();
    Graph g = Graph::read(in);
    if (g.hash() != hash) {
        throw ParseError("embedded graph does not match its hash");
    }
    std::unique_ptr<GeneralStore> s(new GeneralStore());
    s->prepare(g);
    s->n_ = in.u64();
    s->opt_.branching = in.u8();
    s->opt_.table_max_len = in.u32();
    s->opt_.strategy = Strategy::parse(in.str());
    if (s->opt_.branching < 2) {
        throw ParseError("codec branching below 2");
    }
    std::size_t count = in.u32();
    if (count == 0 || count > s->scc_list_.size()) {
        throw ParseError("bad segment count");
    }
    std::vector<std::pair<std::size_t, std::size_t>> heads;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t start = in.u64();
        std::size_t scc = in.u32();
        bool ordered = i == 0 ? start == 0 : (start > heads.back().first && scc > heads.back().second);
        if (!ordered || start > s->n_ || scc >= s->scc_list_.size()) {
            throw ParseError("segment list is not increasing");
        }
        heads.emplace_back(start, scc);
    }
    for (std::size_t i = 0; i < count; ++i) {
        auto [start, scc] = heads[i];
        std::size_t end = i + 1 < count ? heads[i + 1].first - 1 : s->n_;
        s->segments_.push_back(
            {start, scc, ComponentWalk::read(in, s->scc_graphs_[scc], s->period_[scc], end - start, s->opt_)});
    }
    return s;
}

} // namespace walkstore
