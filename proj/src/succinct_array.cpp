#include "walkstore/succinct_array.hpp"

#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"

#include <algorithm>

namespace walkstore {

namespace {

constexpr std::uint64_t kDefaultGroup = 8;
// auto-sized groups keep the group rank below 2^126 so a read spans at
// most three words
constexpr std::size_t kAutoGroupBits = 126;

} // namespace

std::uint64_t auto_group_length(const BigInt& max_radix) {
    std::size_t w = ceil_log2(max_radix);
    if (w == 0) {
        return 64;
    }
    return std::max<std::uint64_t>(1, kAutoGroupBits / w);
}

namespace {

std::uint64_t parse_u64(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::logic_error&) {
        throw ParseError("bad strategy parameter '" + s + "'");
    }
    if (pos != s.size()) {
        throw ParseError("bad strategy parameter '" + s + "'");
    }
    return v;
}

} // namespace

Strategy Strategy::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "packed" && arg.empty()) {
        return packed();
    }
    if (head == "blocked") {
        auto b = arg.empty() ? 0 : parse_u64(arg);
        if (!arg.empty() && b == 0) {
            throw ParameterError("blocked group length must be positive");
        }
        return blocked(b);
    }
    if (head == "spill_tree") {
        auto k = arg.empty() ? 0 : parse_u64(arg);
        if (!arg.empty() && k < 2) {
            throw ParameterError("spill_tree K_min must be at least 2");
        }
        return spill_tree(k);
    }
    throw ParseError("unknown strategy '" + text + "'");
}

std::string Strategy::name() const {
    switch (kind) {
    case Kind::packed:
        return "packed";
    case Kind::blocked:
        return param == 0 ? "blocked" : "blocked:" + std::to_string(param);
    case Kind::spill_tree:
        return param == 0 ? "spill_tree" : "spill_tree:" + std::to_string(param);
    }
    return "?";
}

SuccinctArray SuccinctArray::build(const RadixSpec& spec, const std::vector<BigInt>& values, Strategy strategy) {
    if (values.size() != spec.size()) {
        throw RangeError("value count does not match radix spec");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] >= spec.radix(i)) {
            throw RangeError("value " + to_string(values[i]) + " at position " + std::to_string(i) +
                             " outside radix " + to_string(spec.radix(i)));
        }
    }
    SuccinctArray a;
    a.spec_ = spec;
    a.strategy_ = strategy;
    const std::size_t t = spec.size();
    switch (strategy.kind) {
    case Strategy::Kind::packed: {
        a.init_layout();
        for (std::size_t i = 0; i < t; ++i) {
            a.payload_.append_big(a.run_width_[spec.run_of(i)], values[i]);
        }
        break;
    }
    case Strategy::Kind::blocked: {
        if (a.strategy_.param == 0) {
            BigInt mx = 1;
            for (const auto& r : spec.runs()) {
                mx = std::max(mx, r.radix);
            }
            a.strategy_.param = auto_group_length(mx);
        }
        const std::size_t b = a.strategy_.param;
        a.group_off_.push_back(0);
        for (std::size_t lo = 0; lo < t; lo += b) {
            std::size_t hi = std::min(t, lo + b);
            std::vector<BigInt> group(values.begin() + static_cast<std::ptrdiff_t>(lo),
                                      values.begin() + static_cast<std::ptrdiff_t>(hi));
            a.flush_group(a.payload_, a.group_off_, group, lo);
        }
        break;
    }
    case Strategy::Kind::spill_tree: {
        if (strategy.param == 1) {
            throw ParameterError("spill_tree K_min must be at least 2");
        }
        a.init_layout();
        if (t > 0) {
            a.payload_ = BitVec(a.meta(0, t).total);
            a.root_spill_ = a.encode_node(0, t, 0, values);
        }
        break;
    }
    }
    return a;
}

SuccinctArray SuccinctArray::appendable(Strategy strategy) {
    if (strategy.kind == Strategy::Kind::spill_tree) {
        throw UnsupportedOperation("append is not supported by the spill_tree strategy");
    }
    SuccinctArray a;
    a.strategy_ = strategy;
    if (strategy.kind == Strategy::Kind::blocked) {
        a.group_off_.push_back(0);
    }
    return a;
}

void SuccinctArray::init_layout() {
    switch (strategy_.kind) {
    case Strategy::Kind::packed: {
        run_bit_start_.clear();
        run_width_.clear();
        std::size_t off = 0;
        for (const auto& r : spec_.runs()) {
            run_bit_start_.push_back(off);
            run_width_.push_back(ceil_log2(r.radix));
            off += run_width_.back() * r.count;
        }
        break;
    }
    case Strategy::Kind::blocked: {
        const std::size_t b = strategy_.param;
        group_off_.assign(1, 0);
        for (std::size_t lo = 0; lo < spec_.size(); lo += b) {
            std::size_t hi = std::min(spec_.size(), lo + b);
            group_off_.push_back(group_off_.back() + ceil_log2(spec_.product(lo, hi)));
        }
        break;
    }
    case Strategy::Kind::spill_tree: {
        const std::size_t t = spec_.size();
        k_min_ = strategy_.param != 0 ? strategy_.param : std::max<std::uint64_t>(2, std::uint64_t{t} * t);
        strategy_.param = k_min_;
        uniform_meta_.clear();
        mixed_meta_.clear();
        if (t > 0) {
            root_range_ = compute_meta(0, t).range;
        } else {
            root_range_ = 1;
        }
        break;
    }
    }
}

const SuccinctArray::NodeMeta& SuccinctArray::meta(std::size_t lo, std::size_t hi) const {
    std::size_t r = spec_.run_of(lo);
    if (spec_.run_of(hi - 1) == r) {
        return uniform_meta_.at((std::uint64_t{r} << 40) | (hi - lo));
    }
    return mixed_meta_.at({lo, hi});
}

const SuccinctArray::NodeMeta& SuccinctArray::compute_meta(std::size_t lo, std::size_t hi) {
    std::size_t r = spec_.run_of(lo);
    bool uniform = spec_.run_of(hi - 1) == r;
    std::uint64_t ukey = (std::uint64_t{r} << 40) | (hi - lo);
    if (uniform) {
        if (auto it = uniform_meta_.find(ukey); it != uniform_meta_.end()) {
            return it->second;
        }
    } else if (auto it = mixed_meta_.find({lo, hi}); it != mixed_meta_.end()) {
        return it->second;
    }
    NodeMeta m;
    if (hi - lo == 1) {
        m = {spec_.radix(lo), 0, 0};
    } else {
        std::size_t mid = lo + (hi - lo + 1) / 2;
        const NodeMeta& left = compute_meta(lo, mid);
        const NodeMeta& right = compute_meta(mid, hi);
        BigInt prod = left.range * right.range;
        BigInt kmin = big(k_min_);
        std::uint32_t b = 0;
        if (prod >= kmin) {
            BigInt q = prod / kmin;
            b = static_cast<std::uint32_t>(floor_log2(q));
        }
        BigInt scale = BigInt(1);
        mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), b);
        m = {ceil_div(prod, scale), b, left.total + right.total + b};
    }
    if (uniform) {
        return uniform_meta_.emplace(ukey, std::move(m)).first->second;
    }
    return mixed_meta_.emplace(std::make_pair(lo, hi), std::move(m)).first->second;
}

// Pre-order layout: this node's bits, then the left subtree, then the right.
BigInt SuccinctArray::encode_node(std::size_t lo, std::size_t hi, std::size_t off,
                                  const std::vector<BigInt>& values) {
    if (hi - lo == 1) {
        return values[lo];
    }
    std::size_t mid = lo + (hi - lo + 1) / 2;
    const NodeMeta& self = meta(lo, hi);
    const NodeMeta& left = meta(lo, mid);
    const NodeMeta& right = meta(mid, hi);
    BigInt sl = encode_node(lo, mid, off + self.bits, values);
    BigInt sr = encode_node(mid, hi, off + self.bits + left.total, values);
    BigInt v = sl * right.range + sr;
    BigInt low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), self.bits);
    payload_.write_big(off, self.bits, low);
    mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), self.bits);
    return v;
}

BigInt SuccinctArray::get(std::size_t i) const {
    if (i >= size()) {
        throw RangeError("index " + std::to_string(i) + " out of range for array of size " +
                         std::to_string(size()));
    }
    probes::add_read();
    switch (strategy_.kind) {
    case Strategy::Kind::packed:
        return get_packed(i);
    case Strategy::Kind::blocked:
        return get_blocked(i);
    case Strategy::Kind::spill_tree:
        return get_spill(i);
    }
    return 0;
}

BigInt SuccinctArray::get_packed(std::size_t i) const {
    std::size_t r = spec_.run_of(i);
    std::size_t w = run_width_[r];
    return payload_.read_big(run_bit_start_[r] + (i - spec_.run_start(r)) * w, w);
}

BigInt SuccinctArray::get_blocked(std::size_t i) const {
    const std::size_t b = strategy_.param;
    std::size_t g = i / b;
    std::size_t lo = g * b;
    if (g + 1 >= group_off_.size()) {
        return pending_[i - lo];
    }
    std::size_t hi = std::min(size(), lo + b);
    BigInt rank = payload_.read_big(group_off_[g], group_off_[g + 1] - group_off_[g]);
    BigInt q = rank / spec_.product(i + 1, hi);
    return q % spec_.radix(i);
}

BigInt SuccinctArray::get_spill(std::size_t i) const {
    std::size_t lo = 0;
    std::size_t hi = size();
    std::size_t off = 0;
    BigInt s = root_spill_;
    BigInt v;
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo + 1) / 2;
        const NodeMeta& self = meta(lo, hi);
        const NodeMeta& right = meta(mid, hi);
        v = s;
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), self.bits);
        v += payload_.read_big(off, self.bits);
        if (i < mid) {
            mpz_fdiv_q(s.get_mpz_t(), v.get_mpz_t(), right.range.get_mpz_t());
            off += self.bits;
            hi = mid;
        } else {
            mpz_fdiv_r(s.get_mpz_t(), v.get_mpz_t(), right.range.get_mpz_t());
            off += self.bits + meta(lo, mid).total;
            lo = mid;
        }
    }
    return s;
}

void SuccinctArray::flush_group(BitVec& into, std::vector<std::size_t>& offs, const std::vector<BigInt>& group,
                                std::size_t lo) const {
    std::size_t hi = lo + group.size();
    BigInt rank = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        rank *= spec_.radix(i);
        rank += group[i - lo];
    }
    std::size_t width = ceil_log2(spec_.product(lo, hi));
    into.append_big(width, rank);
    offs.push_back(offs.back() + width);
}

void SuccinctArray::append(const BigInt& value, const BigInt& radix) {
    if (strategy_.kind == Strategy::Kind::spill_tree) {
        throw UnsupportedOperation("append is not supported by the spill_tree strategy");
    }
    if (radix < 1 || value < 0 || value >= radix) {
        throw RangeError("appended value " + to_string(value) + " outside radix " + to_string(radix));
    }
    spec_.push(radix);
    if (strategy_.kind == Strategy::Kind::packed) {
        run_bit_start_.resize(spec_.runs().size(), 0);
        run_width_.resize(spec_.runs().size(), 0);
        std::size_t r = spec_.runs().size() - 1;
        if (spec_.runs()[r].count == 1) {
            run_width_[r] = ceil_log2(radix);
            run_bit_start_[r] = payload_.size();
        }
        payload_.append_big(run_width_[r], value);
        return;
    }
    if (strategy_.param == 0) {
        strategy_.param = auto_group_length(radix);
    }
    if (group_off_.empty()) {
        group_off_.push_back(0);
    }
    pending_.push_back(value);
    if (pending_.size() == strategy_.param) {
        flush_group(payload_, group_off_, pending_, size() - pending_.size());
        pending_.clear();
    }
}

std::size_t SuccinctArray::payload_bits() const {
    std::size_t bits = payload_.size();
    if (!pending_.empty()) {
        bits += ceil_log2(spec_.product(size() - pending_.size(), size()));
    }
    return bits;
}

std::size_t SuccinctArray::root_spill_bits() const {
    return strategy_.kind == Strategy::Kind::spill_tree && size() > 0 ? ceil_log2(root_range_) : 0;
}

void SuccinctArray::write(Writer& out) const {
    out.magic("SAR1");
    out.u8(static_cast<std::uint8_t>(strategy_.kind));
    out.u64(strategy_.kind == Strategy::Kind::spill_tree ? k_min_ : strategy_.param);
    out.u64(size());
    out.u32(static_cast<std::uint32_t>(spec_.runs().size()));
    for (const auto& r : spec_.runs()) {
        out.big(r.radix);
        out.u64(r.count);
    }
    BitVec bits = payload_;
    if (!pending_.empty()) {
        // an unfinished group is written at its actual width, exactly as a
        // batch build over the same values lays it out
        std::vector<std::size_t> offs{0};
        flush_group(bits, offs, pending_, size() - pending_.size());
    }
    out.u64(bits.size());
    if (strategy_.kind == Strategy::Kind::spill_tree) {
        out.big(root_spill_);
    }
    out.bytes(bits.to_bytes());
}

SuccinctArray SuccinctArray::read(Reader& in) {
    in.expect_magic("SAR1");
    auto kind = in.u8();
    if (kind > 2) {
        throw ParseError("unknown succinct array strategy tag " + std::to_string(kind));
    }
    SuccinctArray a;
    a.strategy_ = {static_cast<Strategy::Kind>(kind), in.u64()};
    if (a.strategy_.kind == Strategy::Kind::blocked && a.strategy_.param == 0) {
        throw ParseError("blocked array with zero group length");
    }
    if (a.strategy_.kind == Strategy::Kind::spill_tree && a.strategy_.param < 2) {
        throw ParseError("spill_tree array with K_min below 2");
    }
    std::uint64_t t = in.u64();
    std::uint32_t runs = in.u32();
    for (std::uint32_t r = 0; r < runs; ++r) {
        BigInt radix = in.big();
        std::uint64_t count = in.u64();
        if (radix < 1) {
            throw ParseError("radix below 1 in array header");
        }
        a.spec_.push(radix, count);
    }
    if (a.spec_.size() != t) {
        throw ParseError("array header position count mismatch");
    }
    std::uint64_t nbits = in.u64();
    if (a.strategy_.kind == Strategy::Kind::spill_tree) {
        a.root_spill_ = in.big();
    }
    if ((nbits + 7) / 8 > in.remaining()) {
        throw ParseError("array payload truncated");
    }
    auto bytes = in.bytes((nbits + 7) / 8);
    a.payload_ = BitVec::from_bytes(bytes.data(), nbits);
    a.init_layout();
    std::size_t expect = 0;
    switch (a.strategy_.kind) {
    case Strategy::Kind::packed:
        for (std::size_t r = 0; r < a.run_width_.size(); ++r) {
            expect += a.run_width_[r] * a.spec_.runs()[r].count;
        }
        break;
    case Strategy::Kind::blocked:
        expect = a.group_off_.back();
        break;
    case Strategy::Kind::spill_tree:
        expect = t > 0 ? a.meta(0, t).total : 0;
        if (a.root_spill_ < 0 || a.root_spill_ >= a.root_range_) {
            throw ParseError("root spill out of range");
        }
        break;
    }
    if (expect != nbits) {
        throw ParseError("array payload length does not match its radix spec");
    }
    return a;
}

} // namespace walkstore
