#include "walkstore/dict_bridge.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/report.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/store_file.hpp"
#include "walkstore/walk_tools.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace walkstore;

namespace {

enum Exit {
    exit_ok = 0,
    exit_generic = 1,
    exit_parse = 2,
    exit_unsupported = 3,
    exit_invalid_walk = 4,
    exit_range = 5,
    exit_parameter = 6,
    exit_resource = 7,
    exit_mismatch = 8,
};

// a store answered differently from the walk it was built from
class Mismatch : public Error {
public:
    using Error::Error;
};

// --graph takes a JSON file or one of the built-in names (C3, K4, F, ...)
Graph load_graph(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        return Graph::load_json(arg);
    }
    return graphs::by_name(arg);
}

double round6(double v) {
    return std::round(v * 1e6) / 1e6;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

// "12:17" -> 2^12 .. 2^17, otherwise a comma list of lengths
std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    auto colon = s.find(':');
    try {
        if (colon != std::string::npos) {
            unsigned lo = static_cast<unsigned>(std::stoul(s.substr(0, colon)));
            unsigned hi = static_cast<unsigned>(std::stoul(s.substr(colon + 1)));
            if (hi >= 48 || lo > hi) {
                throw ParameterError("bad size range " + s);
            }
            for (unsigned e = lo; e <= hi; ++e) {
                out.push_back(std::size_t{1} << e);
            }
        } else {
            for (const auto& item : split_list(s)) {
                out.push_back(std::stoull(item));
            }
        }
    } catch (const std::logic_error&) {
        throw ParameterError("bad size list " + s);
    }
    return out;
}

std::vector<std::size_t> read_indices(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::vector<std::size_t> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        try {
            out.push_back(std::stoull(line));
        } catch (const std::logic_error&) {
            throw ParseError("bad index '" + line + "' in " + path);
        }
    }
    return out;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string x = ss.str();
    // one trailing line break is not part of the string
    if (!x.empty() && x.back() == '\n') {
        x.pop_back();
        if (!x.empty() && x.back() == '\r') {
            x.pop_back();
        }
    }
    return x;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write " + path);
    }
}

struct EncodeArgs {
    std::string graph;
    std::string walk;
    std::string walk_format = "auto";
    std::string mode = "auto";
    std::string strategy = "spill_tree";
    unsigned branching = 2;
    std::uint64_t precision = 0;
    std::string out;
    std::size_t queries = 1000;
    std::uint64_t seed = 1;
    bool no_timings = false;
};

StoreOptions options_from(const EncodeArgs& a) {
    StoreOptions opt;
    opt.strategy = Strategy::parse(a.strategy);
    opt.branching = a.branching;
    opt.precision = a.precision;
    return opt;
}

int cmd_encode(const EncodeArgs& a) {
    Graph g = load_graph(a.graph);
    Walk w = read_walk(a.walk, parse_walk_format(a.walk_format));
    validate_walk(g, w);
    auto t0 = std::chrono::steady_clock::now();
    auto store = build_store(g, w, parse_store_mode(a.mode), options_from(a));
    double build = seconds_since(t0);
    if (!a.out.empty()) {
        save_store(a.out, *store);
    }
    SpaceReport r = make_report(*store, &w);
    r.build_seconds = build;
    if (a.queries > 0) {
        r.probes = measure_probes(*store, a.queries, a.seed, &w);
    }
    std::cout << r.to_json(!a.no_timings).dump(2) << '\n';
    return exit_ok;
}

struct QueryArgs {
    std::string store;
    std::vector<std::size_t> indices;
    std::string index_file;
    std::string graph;
    bool probe_stats = false;
};

int cmd_query(const QueryArgs& a) {
    auto store = load_store(a.store);
    if (!a.graph.empty()) {
        check_store_graph(*store, load_graph(a.graph));
    }
    std::vector<std::size_t> idx = a.indices;
    if (!a.index_file.empty()) {
        auto more = read_indices(a.index_file);
        idx.insert(idx.end(), more.begin(), more.end());
    }
    std::ostringstream out;
    for (std::size_t i : idx) {
        probes::reset();
        Vertex v = store->vertex_at(i);
        out << v;
        if (a.probe_stats) {
            out << '\t' << probes::words() << '\t' << probes::reads();
        }
        out << '\n';
    }
    std::cout << out.str();
    return exit_ok;
}

struct StatsArgs {
    std::string store;
    std::string walk;
    std::string walk_format = "auto";
    std::size_t queries = 1000;
    std::uint64_t seed = 1;
    bool no_timings = false;
};

int cmd_stats(const StatsArgs& a) {
    auto store = load_store(a.store);
    Walk w;
    if (!a.walk.empty()) {
        w = read_walk(a.walk, parse_walk_format(a.walk_format));
    } else {
        w = store->decode_all();
    }
    SpaceReport r = make_report(*store, &w);
    if (a.queries > 0) {
        r.probes = measure_probes(*store, a.queries, a.seed, &w);
    }
    auto j = r.to_json(!a.no_timings);
    j.erase("build_seconds");
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

struct BenchArgs {
    std::string graphs = "C3,K4,F";
    std::string sizes = "10:14";
    std::string modes = "auto";
    std::string strategies = "spill_tree,blocked";
    std::string gen = "markov";
    std::size_t queries = 10000;
    std::uint64_t seed = 1;
    std::string csv;
    std::string md;
};

int cmd_bench(const BenchArgs& a) {
    std::vector<BenchRow> rows;
    for (const auto& name : split_list(a.graphs)) {
        Graph g = load_graph(name);
        for (std::size_t n : parse_sizes(a.sizes)) {
            Walk w = gen_walk(g, n, parse_gen_mode(a.gen), a.seed + n);
            for (const auto& mode_name : split_list(a.modes)) {
                StoreMode mode = parse_store_mode(mode_name);
                if (mode == StoreMode::automatic) {
                    mode = auto_mode(g);
                }
                auto strategies = split_list(a.strategies);
                if (mode == StoreMode::pointwise) {
                    strategies.resize(1);  // the point-wise store has no array strategy
                }
                for (const auto& strat : strategies) {
                    StoreOptions opt;
                    opt.strategy = Strategy::parse(strat);
                    std::unique_ptr<WalkStore> store;
                    auto t0 = std::chrono::steady_clock::now();
                    try {
                        store = build_store(g, w, mode, opt);
                    } catch (const UnsupportedGraph& e) {
                        std::cerr << "skip " << name << " n=" << n << " " << store_mode_name(mode) << ": "
                                  << e.what() << '\n';
                        continue;
                    }
                    BenchRow row{name, make_report(*store, &w)};
                    row.report.build_seconds = seconds_since(t0);
                    row.report.probes = measure_probes(*store, a.queries, a.seed, &w);
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    if (!a.csv.empty()) {
        write_text_file(a.csv, bench_csv(rows));
    }
    if (!a.md.empty()) {
        write_text_file(a.md, bench_markdown(rows));
    }
    if (a.csv.empty() && a.md.empty()) {
        std::cout << bench_markdown(rows);
    }
    return exit_ok;
}

struct DictArgs {
    std::string dist;
    std::string text;
    std::string out;
};

int cmd_dict(const DictArgs& a) {
    auto dist = DyadicDist::load_json(a.dist);
    std::string x = read_text(a.text);
    auto d = SuccinctDictionary::build(dist, x);
    Writer w;
    d.write(w);
    write_file(a.out, w.data());
    nlohmann::json j;
    j["length"] = x.size();
    j["graph_size"] = d.huffman().graph.size();
    j["payload_bits"] = d.payload_bits();
    j["header_bits"] = d.header_bits();
    j["empirical_entropy_bits"] = round6(empirical_entropy(x));
    j["benchmark_pointwise_bits"] =
        round6(benchmark_pointwise_bits(d.huffman().graph, string_to_walk(d.huffman(), x)));
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

struct DictGetArgs {
    std::string file;
    std::vector<std::size_t> indices;
};

int cmd_dict_get(const DictGetArgs& a) {
    auto bytes = read_file(a.file);
    Reader in(bytes);
    auto d = SuccinctDictionary::read(in);
    std::string out;
    for (std::size_t i : a.indices) {
        out.push_back(d.get(i));
        out.push_back('\n');
    }
    std::cout << out;
    return exit_ok;
}

struct GenArgs {
    std::string graph;
    std::size_t n = 0;
    std::string mode = "markov";
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "binary";
};

int cmd_gen(const GenArgs& a) {
    Graph g = load_graph(a.graph);
    Walk w = gen_walk(g, a.n, parse_gen_mode(a.mode), a.seed);
    write_walk(a.out, w, parse_walk_format(a.format));
    return exit_ok;
}

struct VerifyArgs {
    std::string graph;
    std::string walk;
    std::string walk_format = "auto";
    std::string store;
};

// Builds or loads the store, checks every position, and checks that the
// file written back is byte-identical.
nlohmann::json audit(const WalkStore& store, const Walk& w, const std::vector<std::uint8_t>* file) {
    measure_probes(store, 0, 0, &w);
    auto bytes = store_bytes(store);
    if (file && bytes != *file) {
        throw Mismatch("store re-serializes to different bytes");
    }
    Reader in(bytes);
    auto back = read_store(in);
    if (store_bytes(*back) != bytes) {
        throw Mismatch("store file does not round-trip byte for byte");
    }
    if (back->decode_all() != w) {
        throw Mismatch("reloaded store decodes to a different walk");
    }
    nlohmann::json j;
    j["mode"] = store.mode();
    j["params"] = store.describe();
    j["payload_bits"] = store.payload_bits();
    j["status"] = "ok";
    return j;
}

int cmd_verify(const VerifyArgs& a) {
    Graph g = load_graph(a.graph);
    Walk w = read_walk(a.walk, parse_walk_format(a.walk_format));
    validate_walk(g, w);
    nlohmann::json cases = nlohmann::json::array();
    if (!a.store.empty()) {
        auto file = read_file(a.store);
        Reader in(file);
        auto store = read_store(in);
        check_store_graph(*store, g);
        if (store->length() + 1 != w.size()) {
            throw Mismatch("store length differs from the walk");
        }
        cases.push_back(audit(*store, w, &file));
    } else {
        for (StoreMode mode : {StoreMode::regular, StoreMode::general, StoreMode::pointwise}) {
            std::vector<Strategy> strategies{Strategy::packed(), Strategy::blocked(0), Strategy::spill_tree()};
            if (mode == StoreMode::pointwise) {
                strategies.resize(1);
            }
            for (Strategy s : strategies) {
                StoreOptions opt;
                opt.strategy = s;
                try {
                    auto store = build_store(g, w, mode, opt);
                    cases.push_back(audit(*store, w, nullptr));
                } catch (const UnsupportedGraph& e) {
                    cases.push_back({{"mode", store_mode_name(mode)}, {"status", "skipped"}, {"reason", e.what()}});
                    break;
                }
            }
        }
    }
    std::cout << nlohmann::json{{"n", w.size() - 1}, {"cases", cases}}.dump(2) << '\n';
    return exit_ok;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) {
        return exit_parse;
    }
    if (dynamic_cast<const UnsupportedGraph*>(&e) || dynamic_cast<const UnsupportedOperation*>(&e)) {
        return exit_unsupported;
    }
    if (dynamic_cast<const InvalidWalk*>(&e)) {
        return exit_invalid_walk;
    }
    if (dynamic_cast<const RangeError*>(&e)) {
        return exit_range;
    }
    if (dynamic_cast<const ParameterError*>(&e)) {
        return exit_parameter;
    }
    if (dynamic_cast<const ResourceError*>(&e)) {
        return exit_resource;
    }
    if (dynamic_cast<const Mismatch*>(&e)) {
        return exit_mismatch;
    }
    return exit_generic;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Succinct walk stores with positional queries"};
    app.require_subcommand(1);

    EncodeArgs enc;
    auto* encode = app.add_subcommand("encode", "encode a walk into a store file and print its space report");
    encode->add_option("--graph", enc.graph, "graph JSON file or built-in name")->required();
    encode->add_option("--walk", enc.walk, "walk file")->required();
    encode->add_option("--walk-format", enc.walk_format, "auto, binary or text");
    encode->add_option("--mode", enc.mode, "auto, regular, general or pointwise");
    encode->add_option("--strategy", enc.strategy, "packed, blocked[:b] or spill_tree[:K]");
    encode->add_option("--branching", enc.branching, "walk codec branching factor");
    encode->add_option("--precision", enc.precision, "point-wise label precision, 0 = n");
    encode->add_option("--out", enc.out, "store file to write");
    encode->add_option("--queries", enc.queries, "random queries for probe statistics");
    encode->add_option("--seed", enc.seed, "query seed");
    encode->add_flag("--no-timings", enc.no_timings, "leave wall times out of the report");

    QueryArgs qa;
    auto* query = app.add_subcommand("query", "print the vertex at each index");
    query->add_option("store", qa.store, "store file")->required();
    query->add_option("--index", qa.indices, "walk position (repeatable)");
    query->add_option("--index-file", qa.index_file, "file with one position per line");
    query->add_option("--graph", qa.graph, "refuse the store unless it was built over this graph");
    query->add_flag("--probe-stats", qa.probe_stats, "append payload words and array reads per query");

    StatsArgs sa;
    auto* stats = app.add_subcommand("stats", "print the space report of a store file");
    stats->add_option("store", sa.store, "store file")->required();
    stats->add_option("--walk", sa.walk, "walk file to check answers against");
    stats->add_option("--walk-format", sa.walk_format, "auto, binary or text");
    stats->add_option("--queries", sa.queries, "random queries for probe statistics");
    stats->add_option("--seed", sa.seed, "query seed");
    stats->add_flag("--no-timings", sa.no_timings, "leave wall times out of the report");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "space and probe grid over graphs, lengths, modes and strategies");
    bench->add_option("--graphs", ba.graphs, "comma list of graph names or files");
    bench->add_option("--sizes", ba.sizes, "lo:hi for 2^lo..2^hi, or a comma list");
    bench->add_option("--modes", ba.modes, "comma list of auto, regular, general, pointwise");
    bench->add_option("--strategies", ba.strategies, "comma list of array strategies");
    bench->add_option("--gen", ba.gen, "walk generator: markov or uniform");
    bench->add_option("--queries", ba.queries, "random queries per cell");
    bench->add_option("--seed", ba.seed, "walk and query seed");
    bench->add_option("--csv", ba.csv, "CSV output file");
    bench->add_option("--md", ba.md, "markdown output file");

    DictArgs da;
    auto* dict = app.add_subcommand("dict", "build a string dictionary over a dyadic distribution");
    dict->add_option("--dist", da.dist, "distribution JSON")->required();
    dict->add_option("--text", da.text, "text file holding the string")->required();
    dict->add_option("--out", da.out, "dictionary file to write")->required();

    DictGetArgs dg;
    auto* dict_get = app.add_subcommand("dict-get", "print the symbol at each index");
    dict_get->add_option("file", dg.file, "dictionary file")->required();
    dict_get->add_option("--index", dg.indices, "string position (repeatable)")->required();

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate a random walk");
    gen->add_option("--graph", ga.graph, "graph JSON file or built-in name")->required();
    gen->add_option("--n", ga.n, "walk length")->required();
    gen->add_option("--mode", ga.mode, "markov or uniform");
    gen->add_option("--seed", ga.seed, "seed");
    gen->add_option("--out", ga.out, "walk file to write")->required();
    gen->add_option("--format", ga.format, "binary or text");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check a store file, or every applicable store, against a walk");
    verify->add_option("--graph", va.graph, "graph JSON file or built-in name")->required();
    verify->add_option("--walk", va.walk, "walk file")->required();
    verify->add_option("--walk-format", va.walk_format, "auto, binary or text");
    verify->add_option("--store", va.store, "store file to audit; all modes are built when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        std::cerr << "walkstore: " << e.what() << '\n';
        return exit_parse;
    }

    try {
        if (*encode) {
            return cmd_encode(enc);
        }
        if (*query) {
            return cmd_query(qa);
        }
        if (*stats) {
            return cmd_stats(sa);
        }
        if (*bench) {
            return cmd_bench(ba);
        }
        if (*dict) {
            return cmd_dict(da);
        }
        if (*dict_get) {
            return cmd_dict_get(dg);
        }
        if (*gen) {
            return cmd_gen(ga);
        }
        if (*verify) {
            return cmd_verify(va);
        }
    } catch (const std::exception& e) {
        std::cerr << "walkstore: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return exit_generic;
}
