#pragma once

// Integer partitions, Young diagram data and Frobenius coordinates.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "taulab/rational.hpp"

namespace taulab {

/// A weakly decreasing list of positive parts. The empty list is the unique
/// partition of zero.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
        weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    /// Sorts and drops zeros instead of rejecting.
    static Partition from_unsorted(std::vector<int> parts) {
        std::erase_if(parts, [](int p) { return p == 0; });
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    /// (1^d)
    static Partition column(int d) { return Partition(std::vector<int>(static_cast<std::size_t>(d), 1)); }

    [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
    [[nodiscard]] int weight() const { return weight_; }
    [[nodiscard]] int length() const { return static_cast<int>(parts_.size()); }
    [[nodiscard]] bool empty() const { return parts_.empty(); }
    /// 1-based row length; zero past the last row.
    [[nodiscard]] int row(int i) const { return i >= 1 && i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0; }

    /// m_i: how many parts equal i, indexed 0..largest part.
    [[nodiscard]] std::vector<int> multiplicities() const {
        std::vector<int> m(static_cast<std::size_t>(parts_.empty() ? 1 : parts_.front() + 1), 0);
        for (int p : parts_) ++m[static_cast<std::size_t>(p)];
        return m;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    /// Reverse-lexicographic: (3) < (2,1) < (1,1,1). Weight is compared first.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        if (a.weight_ != b.weight_) return a.weight_ <=> b.weight_;
        for (std::size_t i = 0; i < std::min(a.parts_.size(), b.parts_.size()); ++i)
            if (a.parts_[i] != b.parts_[i]) return b.parts_[i] <=> a.parts_[i];
        return a.parts_.size() <=> b.parts_.size();
    }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

inline std::string to_string(const Partition& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.parts().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.parts()[i]);
    }
    return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << to_string(p); }

struct FrobeniusCoords {
    std::vector<int> alpha;
    std::vector<int> beta;

    [[nodiscard]] int rank() const { return static_cast<int>(alpha.size()); }
    [[nodiscard]] int weight() const {
        return std::accumulate(alpha.begin(), alpha.end(), 0) + std::accumulate(beta.begin(), beta.end(), 0) + rank();
    }
    friend bool operator==(const FrobeniusCoords&, const FrobeniusCoords&) = default;
};

struct Cell {
    int row;  // 1-based
    int col;  // 1-based
    [[nodiscard]] int content() const { return col - row; }
};

inline Partition conjugate(const Partition& lambda) {
    std::vector<int> cols(static_cast<std::size_t>(lambda.row(1)), 0);
    for (int p : lambda.parts())
        for (int j = 0; j < p; ++j) ++cols[static_cast<std::size_t>(j)];
    return Partition(std::move(cols));
}

inline FrobeniusCoords to_frobenius(const Partition& lambda) {
    const Partition lc = conjugate(lambda);
    FrobeniusCoords fc;
    for (int i = 1; lambda.row(i) >= i; ++i) {
        fc.alpha.push_back(lambda.row(i) - i);
        fc.beta.push_back(lc.row(i) - i);
    }
    return fc;
}

inline Partition from_frobenius(const FrobeniusCoords& fc) {
    if (fc.alpha.size() != fc.beta.size())
        throw std::invalid_argument("Frobenius coordinates: alpha and beta lengths differ");
    auto check = [](const std::vector<int>& v, const char* name) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0) throw std::invalid_argument(std::string("Frobenius coordinates: negative ") + name);
            if (i > 0 && v[i] >= v[i - 1])
                throw std::invalid_argument(std::string("Frobenius coordinates: ") + name + " not strictly decreasing");
        }
    };
    check(fc.alpha, "alpha");
    check(fc.beta, "beta");
    const int k = fc.rank();
    std::vector<int> rows;
    for (int i = 1; i <= k; ++i) rows.push_back(fc.alpha[static_cast<std::size_t>(i - 1)] + i);
    // Below the diagonal block, row i has one box per diagonal column whose leg reaches it.
    for (int i = k + 1;; ++i) {
        int len = 0;
        for (int j = 1; j <= k; ++j)
            if (fc.beta[static_cast<std::size_t>(j - 1)] + j >= i) ++len;
        if (len == 0) break;
        rows.push_back(len);
    }
    return Partition(std::move(rows));
}

inline std::vector<Cell> cells(const Partition& lambda) {
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(lambda.weight()));
    for (int i = 1; i <= lambda.length(); ++i)
        for (int j = 1; j <= lambda.row(i); ++j) out.push_back({i, j});
    return out;
}

/// Contents j - i of every cell, sorted ascending.
inline std::vector<int> content_multiset(const Partition& lambda) {
    std::vector<int> c;
    for (const Cell& cell : cells(lambda)) c.push_back(cell.content());
    std::sort(c.begin(), c.end());
    return c;
}

/// Number of standard Young tableaux, by the hook length formula.
inline Integer dim_sym(const Partition& lambda) {
    const Partition lc = conjugate(lambda);
    Integer hooks = 1;
    for (const Cell& c : cells(lambda)) hooks *= lambda.row(c.row) - c.col + lc.row(c.col) - c.row + 1;
    return factorial(static_cast<unsigned long>(lambda.weight())) / hooks;
}

/// The Vandermonde-ratio form: prod_{i<j}(l_i - l_j - i + j) / prod_i (l_i - i + len)!.
/// This ratio is dim(lambda) / |lambda|!, not dim(lambda) itself.
inline Rational dim_ratio(const Partition& lambda) {
    const int len = lambda.length();
    Integer num = 1;
    Integer den = 1;
    for (int i = 1; i <= len; ++i) {
        for (int j = i + 1; j <= len; ++j) num *= lambda.row(i) - lambda.row(j) - i + j;
        den *= factorial(static_cast<unsigned long>(lambda.row(i) - i + len));
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// dim(lambda) / |lambda|! as an exact rational.
inline Rational dim_over_factorial(const Partition& lambda) {
    Rational r(dim_sym(lambda), factorial(static_cast<unsigned long>(lambda.weight())));
    r.canonicalize();
    return r;
}

/// All partitions of d in reverse-lexicographic order: (d), (d-1,1), ..., (1^d).
inline std::vector<Partition> partitions_of(int d) {
    if (d < 0) throw std::invalid_argument("partitions_of: negative weight");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

/// All partitions of weight 0..max_weight, grouped by weight.
inline std::vector<Partition> partitions_up_to(int max_weight) {
    std::vector<Partition> out;
    for (int d = 0; d <= max_weight; ++d) {
        auto p = partitions_of(d);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

}  // namespace taulab
