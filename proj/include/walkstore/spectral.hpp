#ifndef WALKSTORE_SPECTRAL_HPP
#define WALKSTORE_SPECTRAL_HPP

#include "walkstore/graph.hpp"

#include <vector>

namespace walkstore {

// Floating-point Perron-Frobenius data. Reported only; no store reads it.
struct SpectralData {
    double lambda = 0;          // leading eigenvalue of A
    std::vector<double> pi;     // left eigenvector, sums to 1
    std::vector<double> sigma;  // right eigenvector, sums to 1
    std::vector<double> nu;     // stationary distribution of P = D^-1 A
    double gap = 0;             // 1 - |lambda_2| / lambda
    std::size_t iterations = 0;
};

// Throws UnsupportedGraph unless g is strongly connected.
SpectralData spectral(const Graph& g);

} // namespace walkstore

#endif
