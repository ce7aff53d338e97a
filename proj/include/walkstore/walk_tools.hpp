#ifndef WALKSTORE_WALK_TOOLS_HPP
#define WALKSTORE_WALK_TOOLS_HPP

#include "walkstore/graph.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace walkstore {

enum class GenMode { markov, uniform };

GenMode parse_gen_mode(const std::string& s);

// markov: uniform start, uniform out-neighbour steps. uniform: a uniformly
// random integer in [1, 1^T A^n 1] unranked through the walk codec.
// Deterministic in the seed.
Walk gen_walk(const Graph& g, std::size_t n, GenMode mode, std::uint64_t seed);

// lg(1^T A^n 1); -infinity when there are no length-n walks.
double benchmark_worstcase_bits(const Graph& g, std::size_t n);

// lg|G| + sum_{i<n} lg outdeg(v_i)
double benchmark_pointwise_bits(const Graph& g, std::span<const Vertex> walk);

enum class WalkFormat { automatic, binary, text };

WalkFormat parse_walk_format(const std::string& s);
Walk read_walk(const std::string& path, WalkFormat format = WalkFormat::automatic);
void write_walk(const std::string& path, std::span<const Vertex> walk, WalkFormat format = WalkFormat::binary);

} // namespace walkstore

#endif
