#ifndef WALKSTORE_LABEL_COUNTS_HPP
#define WALKSTORE_LABEL_COUNTS_HPP

#include "walkstore/bigint.hpp"
#include "walkstore/graph.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <span>

namespace walkstore {

// Generating polynomial sum_e c[e - lo] z^e with non-negative coefficients,
// stored densely from its lowest exponent. An empty c is the zero
// polynomial.
struct Poly {
    std::uint64_t lo = 0;
    std::vector<BigInt> c;

    bool zero() const { return c.empty(); }
    std::uint64_t hi() const { return lo + c.size() - 1; }
    // coefficient of z^e (0 outside the stored range)
    BigInt at(std::uint64_t e) const;
    BigInt total() const;

    friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_shift(Poly a, std::uint64_t by);
// schoolbook for short factors, Kronecker substitution into one GMP
// product otherwise
Poly poly_mul(const Poly& a, const Poly& b);
// [z^e] (a * b) without forming the product
BigInt product_coefficient(const Poly& a, const Poly& b, std::uint64_t e);

// Label of a contiguous run v_l..v_r of walk positions: its end vertices and
// S = sum_{i=l}^{r-1} ceil(P lg deg(v_i)). A single position has S = 0.
struct NodeLabel {
    Vertex vl = 0;
    Vertex vr = 0;
    std::uint64_t S = 0;
    friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
};

// ceil(P lg d) for an out-degree d >= 1, computed exactly as the bit
// length of d^P - 1.
std::uint64_t label_weight(std::size_t degree, std::uint64_t precision);

NodeLabel label_of(const Graph& g, std::span<const Vertex> segment, std::uint64_t precision);

// N(s, phi): the number of s-vertex walks with label phi, for the subtree
// sizes of one tree shape. Counts are kept per size as a k x k matrix of
// polynomials in z^S (exponents divided by the gcd of the vertex weights)
// and built lazily: size s combines sizes ceil(s/2) and floor(s/2) across
// every edge c -> d.
class LabelCountTable {
public:
    // Throws ResourceError when a polynomial would exceed max_terms
    // coefficients.
    static constexpr std::uint64_t kDefaultMaxTerms = std::uint64_t{1} << 22;

    LabelCountTable(std::shared_ptr<const Graph> g, std::uint64_t precision,
                    std::uint64_t max_terms = kDefaultMaxTerms);

    const Graph& graph() const { return *graph_; }
    std::uint64_t precision() const { return precision_; }
    std::uint64_t weight(Vertex v) const { return weight_[v]; }
    // gcd of the non-zero weights (1 when every weight is zero)
    std::uint64_t unit() const { return unit_; }

    // polynomial over S / unit for s-vertex walks a -> b
    const Poly& poly(std::size_t s, Vertex a, Vertex b) const;
    BigInt count(std::size_t s, const NodeLabel& phi) const;

    // left child size of a node of size s (s >= 2)
    static std::size_t left_size(std::size_t s) { return s - s / 2; }

private:
    const std::vector<Poly>& level(std::size_t s) const;
    std::vector<Poly> combine(std::size_t s) const;

    std::shared_ptr<const Graph> graph_;
    std::uint64_t precision_;
    std::uint64_t max_terms_;
    std::vector<std::uint64_t> weight_;
    std::uint64_t unit_ = 1;
    mutable std::shared_mutex mu_;
    mutable std::map<std::size_t, std::unique_ptr<std::vector<Poly>>> levels_;
};

} // namespace walkstore

#endif
