#include "walkstore/spectral.hpp"

#include "walkstore/analysis.hpp"
#include "walkstore/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace walkstore {

namespace {

constexpr double kTol = 1e-12;
constexpr std::size_t kMaxIter = 200000;

// Power iteration on M + I. The shift keeps periodic graphs from
// oscillating without moving the eigenvectors.
Eigen::VectorXd perron_vector(const Eigen::MatrixXd& m, std::size_t& iters) {
    const auto k = m.rows();
    Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd v = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
    for (std::size_t it = 0; it < kMaxIter; ++it) {
        Eigen::VectorXd next = shifted * v;
        next /= next.sum();
        double diff = (next - v).lpNorm<Eigen::Infinity>();
        v = next;
        ++iters;
        if (diff < kTol) {
            break;
        }
    }
    return v;
}

} // namespace

SpectralData spectral(const Graph& g) {
    if (!analyze(g).is_strongly_connected) {
        throw UnsupportedGraph("spectral data needs a strongly connected graph");
    }
    const auto k = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k, k);
    for (Vertex u = 0; u < g.size(); ++u) {
        double deg = static_cast<double>(g.out_degree(u));
        for (Vertex v : g.out_neighbors(u)) {
            a(u, v) = 1.0;
            p(u, v) = 1.0 / deg;
        }
    }

    SpectralData s;
    Eigen::VectorXd sigma = perron_vector(a, s.iterations);
    Eigen::VectorXd pi = perron_vector(a.transpose(), s.iterations);
    Eigen::VectorXd nu = perron_vector(p.transpose(), s.iterations);
    s.lambda = (a * sigma).sum() / sigma.sum();
    s.sigma.assign(sigma.data(), sigma.data() + k);
    s.pi.assign(pi.data(), pi.data() + k);
    s.nu.assign(nu.data(), nu.data() + k);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    std::vector<double> mags;
    for (Eigen::Index i = 0; i < k; ++i) {
        mags.push_back(std::abs(solver.eigenvalues()[i]));
    }
    std::sort(mags.rbegin(), mags.rend());
    double second = mags.size() > 1 ? mags[1] : 0.0;
    s.gap = s.lambda > 0 ? 1.0 - second / s.lambda : 0.0;
    return s;
}

} // namespace walkstore
