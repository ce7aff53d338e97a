#include "walkstore/walk_tools.hpp"

#include "walkstore/count_table.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/walk_codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace walkstore {

GenMode parse_gen_mode(const std::string& s) {
    if (s == "markov") return GenMode::markov;
    if (s == "uniform") return GenMode::uniform;
    throw ParseError("unknown generation mode '" + s + "'");
}

Walk gen_walk(const Graph& g, std::size_t n, GenMode mode, std::uint64_t seed) {
    if (mode == GenMode::markov) {
        std::mt19937_64 rng(seed);
        Walk w;
        w.reserve(n + 1);
        w.push_back(static_cast<Vertex>(rng() % g.size()));
        for (std::size_t i = 0; i < n; ++i) {
            auto nb = g.out_neighbors(w.back());
            if (nb.empty()) {
                throw GenerationError("walk reached dead-end vertex " + std::to_string(w.back()) + " at step " +
                                      std::to_string(i));
            }
            w.push_back(nb[rng() % nb.size()]);
        }
        return w;
    }
    auto counts = std::make_shared<CountTable>(std::make_shared<const Graph>(g));
    WalkCodec codec(counts, 2);
    BigInt total = counts->power(n).total();
    if (sgn(total) == 0) {
        throw GenerationError("graph has no walks of length " + std::to_string(n));
    }
    std::mt19937_64 rng(seed);
    BigInt r = random_below(rng, total) + 1;
    return global_unrank(codec, n, r);
}

double benchmark_worstcase_bits(const Graph& g, std::size_t n) {
    BigInt total = total_walks(g, n);
    if (sgn(total) == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    return log2(total);
}

double benchmark_pointwise_bits(const Graph& g, std::span<const Vertex> walk) {
    validate_walk(g, walk);
    double bits = std::log2(static_cast<double>(g.size()));
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        bits += std::log2(static_cast<double>(g.out_degree(walk[i])));
    }
    return bits;
}

WalkFormat parse_walk_format(const std::string& s) {
    if (s == "auto") return WalkFormat::automatic;
    if (s == "binary") return WalkFormat::binary;
    if (s == "text") return WalkFormat::text;
    throw ParseError("unknown walk format '" + s + "'");
}

Walk read_walk(const std::string& path, WalkFormat format) {
    auto data = read_file(path);
    bool binary = format == WalkFormat::binary ||
                  (format == WalkFormat::automatic && data.size() >= 4 && std::equal(data.begin(), data.begin() + 4, "WLK1"));
    Walk w;
    if (binary) {
        Reader in(data);
        in.expect_magic("WLK1");
        if (in.remaining() % 4 != 0) {
            throw ParseError("walk file length is not a whole number of vertex ids");
        }
        w.reserve(in.remaining() / 4);
        while (!in.at_end()) {
            w.push_back(in.u32());
        }
    } else {
        std::istringstream ss(std::string(data.begin(), data.end()));
        std::string line;
        while (std::getline(ss, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) {
                continue;
            }
            auto last = line.find_last_not_of(" \t\r");
            std::string tok = line.substr(first, last - first + 1);
            std::size_t pos = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(tok, &pos);
            } catch (const std::logic_error&) {
                throw ParseError("bad vertex id '" + tok + "' in walk file");
            }
            if (pos != tok.size() || v > std::numeric_limits<Vertex>::max()) {
                throw ParseError("bad vertex id '" + tok + "' in walk file");
            }
            w.push_back(static_cast<Vertex>(v));
        }
    }
    if (w.empty()) {
        throw ParseError("walk file holds no vertices");
    }
    return w;
}

void write_walk(const std::string& path, std::span<const Vertex> walk, WalkFormat format) {
    if (format == WalkFormat::text) {
        std::string s;
        for (Vertex v : walk) {
            s += std::to_string(v);
            s += '\n';
        }
        write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        return;
    }
    Writer out;
    out.magic("WLK1");
    for (Vertex v : walk) {
        out.u32(v);
    }
    write_file(path, out.data());
}

} // namespace walkstore
