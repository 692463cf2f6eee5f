#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "taulab/taulab.hpp"

namespace taulab::testing {

/// Splits a permutation of the labels into cycles, scanning 1, -1, 2, -2, ...
inline std::vector<HalfEdgeCycle> cycles_of_permutation(int n, const std::vector<int>& image) {
    std::vector<HalfEdgeCycle> out;
    std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
    for (int i = 1; i <= n; ++i)
        for (int h : {i, -i}) {
            if (seen[RibbonGraph::slot(h)]) continue;
            HalfEdgeCycle c;
            for (int x = h; !seen[RibbonGraph::slot(x)]; x = image[RibbonGraph::slot(x)]) {
                seen[RibbonGraph::slot(x)] = true;
                c.push_back(x);
            }
            out.push_back(std::move(c));
        }
    return out;
}

inline std::vector<int> labels(int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i) {
        out.push_back(i);
        out.push_back(-i);
    }
    return out;
}

/// Every rotation system on n labelled edges, one graph per permutation alpha.
inline std::vector<RibbonGraph> all_graphs(int n, bool connected_only) {
    std::vector<RibbonGraph> out;
    const auto l = labels(n);
    std::vector<int> perm = l;
    std::sort(perm.begin(), perm.end());
    do {
        std::vector<int> image(l.size());
        for (std::size_t k = 0; k < l.size(); ++k) image[RibbonGraph::slot(l[k])] = perm[k];
        RibbonGraph g(n, cycles_of_permutation(n, image));
        if (!connected_only || g.connected()) out.push_back(std::move(g));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline RibbonGraph random_graph(std::mt19937_64& rng, int n, bool connected = true) {
    while (true) {
        std::vector<int> perm = labels(n);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto l = labels(n);
        std::vector<int> image(l.size());
        for (std::size_t k = 0; k < l.size(); ++k) image[RibbonGraph::slot(l[k])] = perm[k];
        RibbonGraph g(n, cycles_of_permutation(n, image));
        if (!connected || g.connected()) return g;
    }
}

inline Rational random_rational(std::mt19937_64& rng, int num_range = 5, int den_max = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_max);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline PowerSumValues<Rational> random_times(std::mt19937_64& rng, int degree) {
    PowerSumValues<Rational> v;
    for (int k = 0; k < degree; ++k) v.values.push_back(random_rational(rng));
    return v;
}

/// Diagonal rational sources with small non-zero entries on every half-edge.
inline SourceAssignment<Rational> random_diagonal_sources(std::mt19937_64& rng, int n, int size) {
    SourceAssignment<Rational> src{size, {}};
    std::uniform_int_distribution<int> num(1, 4);
    std::uniform_int_distribution<int> den(1, 3);
    for (int h : labels(n)) {
        std::vector<Rational> diag;
        for (int k = 0; k < size; ++k) {
            Rational q(num(rng), den(rng));
            q.canonicalize();
            diag.push_back(q);
        }
        src.sources.emplace(h, Matrix<Rational>::diagonal(diag));
    }
    return src;
}

inline Matrix<std::complex<double>> random_complex_matrix(std::mt19937_64& rng, int size) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix<std::complex<double>> m(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

/// Projector diag(1^level, 0^(size-level)).
inline Matrix<Rational> projector(int level, int size) {
    std::vector<Rational> diag;
    for (int k = 0; k < size; ++k) diag.emplace_back(k < level ? 1 : 0);
    return Matrix<Rational>::diagonal(diag);
}

/// The one-edge sphere with two univalent vertices.
inline RibbonGraph segment() { return RibbonGraph(1, {{1}, {-1}}); }
/// The one-edge sphere with a single bivalent vertex.
inline RibbonGraph loop() { return RibbonGraph(1, {{1, -1}}); }
/// The one-vertex torus.
inline RibbonGraph torus() { return RibbonGraph(2, {{1, 2, -1, -2}}); }

}  // namespace taulab::testing
