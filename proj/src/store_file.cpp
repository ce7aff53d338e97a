#include "walkstore/store_file.hpp"

#include "walkstore/analysis.hpp"
#include "walkstore/errors.hpp"
#include "walkstore/serialize.hpp"
#include "walkstore/store_general.hpp"
#include "walkstore/store_pointwise.hpp"
#include "walkstore/store_regular.hpp"

namespace walkstore {

StoreMode parse_store_mode(const std::string& s) {
    if (s == "auto") {
        return StoreMode::automatic;
    }
    if (s == "regular") {
        return StoreMode::regular;
    }
    if (s == "general") {
        return StoreMode::general;
    }
    if (s == "pointwise") {
        return StoreMode::pointwise;
    }
    throw ParameterError("unknown store mode '" + s + "'");
}

std::string store_mode_name(StoreMode m) {
    switch (m) {
    case StoreMode::automatic:
        return "auto";
    case StoreMode::regular:
        return "regular";
    case StoreMode::general:
        return "general";
    case StoreMode::pointwise:
        return "pointwise";
    }
    return "?";
}

StoreMode auto_mode(const Graph& g) {
    auto a = analyze(g);
    // the same shape test as the regular store itself
    if (a.is_regular && a.is_strongly_connected && (!a.is_bipartite || g.size() == 1) && a.is_aperiodic) {
        return StoreMode::regular;
    }
    return StoreMode::general;
}

std::unique_ptr<WalkStore> build_store(const Graph& g, std::span<const Vertex> walk, StoreMode mode,
                                       const StoreOptions& opt) {
    if (mode == StoreMode::automatic) {
        mode = auto_mode(g);
    }
    switch (mode) {
    case StoreMode::regular:
        return RegularStore::build(g, walk, opt);
    case StoreMode::general:
        return GeneralStore::build(g, walk, opt);
    case StoreMode::pointwise:
        return PointwiseStore::build(g, walk, opt);
    case StoreMode::automatic:
        break;
    }
    throw ParameterError("unresolved store mode");
}

std::unique_ptr<WalkStore> read_store(Reader& in) {
    std::string tag = in.peek_magic();
    if (tag == "RWR1") {
        return RegularStore::read(in);
    }
    if (tag == "RWG1") {
        return GeneralStore::read(in);
    }
    if (tag == "RWP1") {
        return PointwiseStore::read(in);
    }
    if (tag == "RWD1") {
        throw ParseError("file is a string dictionary, not a walk store");
    }
    throw ParseError("unknown store magic");
}

std::unique_ptr<WalkStore> load_store(const std::string& path) {
    auto bytes = read_file(path);
    Reader in(bytes);
    auto s = read_store(in);
    if (!in.at_end()) {
        throw ParseError("trailing bytes after store in " + path);
    }
    return s;
}

std::vector<std::uint8_t> store_bytes(const WalkStore& store) {
    Writer w;
    store.write(w);
    return w.take();
}

void save_store(const std::string& path, const WalkStore& store) {
    write_file(path, store_bytes(store));
}

void check_store_graph(const WalkStore& store, const Graph& g) {
    if (store.graph().hash() != g.hash()) {
        throw ParseError("store was built over a different graph");
    }
}

} // namespace walkstore
