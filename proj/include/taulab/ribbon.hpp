#pragma once

// Ribbon graphs (maps) as permutations of the signed half-edges +-1..+-n.
//
//   sigma(h) = -h          the edge involution
//   alpha                  vertex rotation: its cycles list the half-edges met
//                          clockwise around each vertex
//   phi = sigma o alpha    faces: phi(h) = -alpha(h)
//
// A vertex cycle (h_1, ..., h_k) carries the monodromy Z_{h_1} C_{h_1} ... Z_{h_k} C_{h_k},
// with Z_{-i} = Z_i^dagger. A face cycle (h, phi(h), ...) carries C_h C_{phi(h)} ...,
// dressed as Z_h C_h Z_{phi(h)} C_{phi(h)} ...

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taulab/matrix.hpp"
#include "taulab/rational.hpp"

namespace taulab {

using HalfEdgeCycle = std::vector<int>;

class RibbonGraph {
public:
    /// Validates that the cycles partition {+-1, ..., +-n}.
    RibbonGraph(int n, std::vector<HalfEdgeCycle> vertices) : n_(n), vertices_(std::move(vertices)) {
        if (n < 1) throw std::invalid_argument("ribbon graph needs at least one edge");
        alpha_.assign(static_cast<std::size_t>(2 * n), 0);
        std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
        for (const auto& cycle : vertices_) {
            if (cycle.empty()) throw std::invalid_argument("empty vertex cycle");
            for (std::size_t k = 0; k < cycle.size(); ++k) {
                const int h = cycle[k];
                if (h == 0 || std::abs(h) > n)
                    throw std::invalid_argument("half-edge label " + std::to_string(h) + " outside +-1..+-" + std::to_string(n));
                if (seen[slot(h)]) throw std::invalid_argument("half-edge label " + std::to_string(h) + " repeated");
                seen[slot(h)] = true;
                alpha_[slot(h)] = cycle[(k + 1) % cycle.size()];
            }
        }
        for (int i = 1; i <= n; ++i)
            if (!seen[slot(i)] || !seen[slot(-i)])
                throw std::invalid_argument("edge " + std::to_string(i) + " is missing a half-edge");
        faces_ = cycles_of([this](int h) { return phi(h); });
    }

    [[nodiscard]] int edges() const { return n_; }
    [[nodiscard]] int num_vertices() const { return static_cast<int>(vertices_.size()); }
    [[nodiscard]] int num_faces() const { return static_cast<int>(faces_.size()); }
    [[nodiscard]] const std::vector<HalfEdgeCycle>& vertices() const { return vertices_; }
    /// Face cycles, each listed in phi order, discovered by scanning 1, -1, 2, -2, ...
    [[nodiscard]] const std::vector<HalfEdgeCycle>& faces() const { return faces_; }

    [[nodiscard]] int alpha(int h) const { return alpha_[slot(h)]; }
    [[nodiscard]] static int sigma(int h) { return -h; }
    [[nodiscard]] int phi(int h) const { return sigma(alpha(h)); }

    [[nodiscard]] int euler() const { return num_faces() - n_ + num_vertices(); }

    [[nodiscard]] bool connected() const {
        std::vector<int> parent(vertices_.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        std::vector<int> owner(static_cast<std::size_t>(2 * n_));
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            for (int h : vertices_[v]) owner[slot(h)] = static_cast<int>(v);
        for (int i = 1; i <= n_; ++i) parent[static_cast<std::size_t>(find(owner[slot(i)]))] = find(owner[slot(-i)]);
        int roots = 0;
        for (std::size_t v = 0; v < vertices_.size(); ++v) roots += find(static_cast<int>(v)) == static_cast<int>(v) ? 1 : 0;
        return roots == 1;
    }

    /// Vertex index holding half-edge h.
    [[nodiscard]] int vertex_of(int h) const {
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (std::find(vertices_[v].begin(), vertices_[v].end(), h) != vertices_[v].end()) return static_cast<int>(v);
        throw std::invalid_argument("unknown half-edge");
    }

    /// Same rotation system, i.e. the same cycles up to rotation and order.
    [[nodiscard]] bool equivalent(const RibbonGraph& o) const { return n_ == o.n_ && alpha_ == o.alpha_; }

    friend bool operator==(const RibbonGraph& a, const RibbonGraph& b) { return a.equivalent(b); }

    static std::size_t slot(int h) { return static_cast<std::size_t>(h > 0 ? 2 * (h - 1) : 2 * (-h - 1) + 1); }

private:
    template <typename F>
    std::vector<HalfEdgeCycle> cycles_of(F&& perm) const {
        std::vector<HalfEdgeCycle> out;
        std::vector<bool> seen(static_cast<std::size_t>(2 * n_), false);
        for (int i = 1; i <= n_; ++i)
            for (int h : {i, -i}) {
                if (seen[slot(h)]) continue;
                HalfEdgeCycle c;
                for (int x = h; !seen[slot(x)]; x = perm(x)) {
                    seen[slot(x)] = true;
                    c.push_back(x);
                }
                out.push_back(std::move(c));
            }
        return out;
    }

    int n_;
    std::vector<HalfEdgeCycle> vertices_;
    std::vector<int> alpha_;
    std::vector<HalfEdgeCycle> faces_;
};

inline std::vector<HalfEdgeCycle> faces(const RibbonGraph& g) { return g.faces(); }
inline int euler(const RibbonGraph& g) { return g.euler(); }

/// Faces become vertices. dual(dual(g)) has the rotation system of g.
inline RibbonGraph dual(const RibbonGraph& g) { return RibbonGraph(g.edges(), g.faces()); }

/// True when b is a cyclic rotation of a.
inline bool cyclically_equivalent(const HalfEdgeCycle& a, const HalfEdgeCycle& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t shift = 0; shift < a.size(); ++shift) {
        bool same = true;
        for (std::size_t k = 0; k < a.size() && same; ++k) same = a[k] == b[(k + shift) % b.size()];
        if (same) return true;
    }
    return false;
}

/// Source matrices C_h for every half-edge, all N x N.
template <typename T>
struct SourceAssignment {
    int size = 0;
    std::map<int, Matrix<T>> sources;

    static SourceAssignment identity(int n_edges, int size) {
        SourceAssignment s{size, {}};
        for (int i = 1; i <= n_edges; ++i) {
            s.sources.emplace(i, Matrix<T>::identity(static_cast<std::size_t>(size)));
            s.sources.emplace(-i, Matrix<T>::identity(static_cast<std::size_t>(size)));
        }
        return s;
    }

    [[nodiscard]] const Matrix<T>& at(int h) const {
        auto it = sources.find(h);
        if (it == sources.end()) throw std::invalid_argument("missing source matrix for half-edge " + std::to_string(h));
        return it->second;
    }

    void validate(const RibbonGraph& g) const {
        if (size < 1) throw std::invalid_argument("source matrix size must be positive");
        for (int i = 1; i <= g.edges(); ++i)
            for (int h : {i, -i}) {
                const auto& m = at(h);
                if (m.rows() != static_cast<std::size_t>(size) || m.cols() != static_cast<std::size_t>(size))
                    throw std::invalid_argument("source matrix for half-edge " + std::to_string(h) + " is not " +
                                                std::to_string(size) + "x" + std::to_string(size));
            }
        for (const auto& [h, m] : sources)
            if (h == 0 || std::abs(h) > g.edges())
                throw std::invalid_argument("source matrix given for unknown half-edge " + std::to_string(h));
    }

    /// Entrywise conversion of every source matrix.
    template <typename U, typename F>
    [[nodiscard]] SourceAssignment<U> map(F&& f) const {
        SourceAssignment<U> out{size, {}};
        for (const auto& [h, m] : sources) out.sources.emplace(h, m.template map<U>(f));
        return out;
    }
};

/// A word of half-edge labels, defined up to rotation, and its evaluated product.
template <typename T>
struct Monodromy {
    HalfEdgeCycle word;
    Matrix<T> matrix;

    [[nodiscard]] bool same_word(const Monodromy& o) const { return cyclically_equivalent(word, o.word); }
};

/// Random matrices Z_1..Z_n; Z_{-i} is taken as Z_i^dagger.
template <typename T>
using Dressing = std::vector<Matrix<T>>;

namespace detail {

template <typename T>
Monodromy<T> evaluate_word(const HalfEdgeCycle& word, const SourceAssignment<T>& src, const Dressing<T>* z) {
    Matrix<T> m = Matrix<T>::identity(static_cast<std::size_t>(src.size));
    for (int h : word) {
        if (z) {
            const auto idx = static_cast<std::size_t>(std::abs(h) - 1);
            if (idx >= z->size()) throw std::invalid_argument("no random matrix for half-edge " + std::to_string(h));
            m = m * (h > 0 ? (*z)[idx] : (*z)[idx].adjoint());
        }
        m = m * src.at(h);
    }
    return {word, std::move(m)};
}

}  // namespace detail

/// W_a(I) or, with z, the dressed W_a(Z).
template <typename T>
Monodromy<T> vertex_monodromy(const RibbonGraph& g, const SourceAssignment<T>& src, int a,
                              const Dressing<T>* z = nullptr) {
    if (a < 0 || a >= g.num_vertices()) throw std::out_of_range("vertex index out of range");
    return detail::evaluate_word(g.vertices()[static_cast<std::size_t>(a)], src, z);
}

/// W*_b(I) or, with z, the dressed W*_b(Z).
template <typename T>
Monodromy<T> face_monodromy(const RibbonGraph& g, const SourceAssignment<T>& src, int b,
                            const Dressing<T>* z = nullptr) {
    if (b < 0 || b >= g.num_faces()) throw std::out_of_range("face index out of range");
    return detail::evaluate_word(g.faces()[static_cast<std::size_t>(b)], src, z);
}

}  // namespace taulab
