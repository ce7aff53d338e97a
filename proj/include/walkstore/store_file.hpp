#ifndef WALKSTORE_STORE_FILE_HPP
#define WALKSTORE_STORE_FILE_HPP

#include "walkstore/store.hpp"

#include <memory>
#include <string>

namespace walkstore {

class Reader;

enum class StoreMode { automatic, regular, general, pointwise };

StoreMode parse_store_mode(const std::string& s);
std::string store_mode_name(StoreMode m);

// regular for connected non-bipartite aperiodic regular graphs, general
// otherwise
StoreMode auto_mode(const Graph& g);

std::unique_ptr<WalkStore> build_store(const Graph& g, std::span<const Vertex> walk, StoreMode mode,
                                       const StoreOptions& opt = {});

// Dispatches on the magic; RWD1 dictionaries are not walk stores and are
// rejected here.
std::unique_ptr<WalkStore> read_store(Reader& in);
std::unique_ptr<WalkStore> load_store(const std::string& path);
void save_store(const std::string& path, const WalkStore& store);
std::vector<std::uint8_t> store_bytes(const WalkStore& store);

// Throws ParseError when the store was built over a different graph.
void check_store_graph(const WalkStore& store, const Graph& g);

} // namespace walkstore

#endif
