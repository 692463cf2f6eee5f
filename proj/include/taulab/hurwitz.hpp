#pragma once

// Hurwitz numbers: the character formula, and a counting oracle that
// enumerates tuples of permutations in S_d directly.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "taulab/characters.hpp"
#include "taulab/parallel.hpp"
#include "taulab/partitions.hpp"
#include "taulab/rational.hpp"

namespace taulab {

struct HurwitzInstance {
    int euler = 2;  // e = 2 - 2g of the base surface
    std::vector<Partition> profiles;

    [[nodiscard]] int degree() const { return profiles.empty() ? 0 : profiles.front().weight(); }
    [[nodiscard]] int genus() const { return (2 - euler) / 2; }

    void validate() const {
        if (profiles.empty()) throw std::invalid_argument("Hurwitz instance needs at least one profile");
        if (euler > 2 || euler % 2 != 0)
            throw std::invalid_argument("Euler characteristic must be even and at most 2, got " + std::to_string(euler));
        const int d = degree();
        if (d < 1) throw std::invalid_argument("ramification profiles must have positive weight");
        for (const auto& p : profiles)
            if (p.weight() != d)
                throw std::invalid_argument("mixed profile weights: " + to_string(profiles.front()) + " vs " + to_string(p));
    }
};

/// sum_lambda (dim lambda/d!)^e prod_j phi_lambda(Delta^j)
inline Rational hurwitz_frobenius(const HurwitzInstance& inst) {
    inst.validate();
    const int d = inst.degree();
    if (d > 10) throw std::invalid_argument("hurwitz_frobenius: degree above 10 is not supported");
    const auto table = character_table(d);
    std::vector<std::size_t> cols;
    for (const auto& p : inst.profiles) cols.push_back(table->index(p));
    Rational total = 0;
    for (std::size_t l = 0; l < table->partitions().size(); ++l) {
        Rational term = pow(dim_over_factorial(table->partitions()[l]), inst.euler);
        for (std::size_t c : cols) term *= table->at(l, c);
        total += term;
    }
    total.canonicalize();
    return total;
}

/// The symmetric group S_d with permutations ranked in lexicographic order
/// and a full multiplication table. Practical for d <= 6.
class SymmetricGroup {
public:
    using Perm = std::vector<std::uint8_t>;

    explicit SymmetricGroup(int d) : d_(d) {
        if (d < 1 || d > 7) throw std::invalid_argument("SymmetricGroup: degree out of range");
        Perm p(static_cast<std::size_t>(d));
        std::iota(p.begin(), p.end(), 0);
        do {
            elements_.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        const std::size_t n = elements_.size();
        product_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Perm c(static_cast<std::size_t>(d));
                // (a b)(x) = a(b(x)): b acts first.
                for (int x = 0; x < d; ++x) c[static_cast<std::size_t>(x)] = elements_[a][elements_[b][static_cast<std::size_t>(x)]];
                product_[a * n + b] = static_cast<std::uint32_t>(rank(c));
            }
        inverse_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            Perm inv(static_cast<std::size_t>(d));
            for (int x = 0; x < d; ++x) inv[elements_[a][static_cast<std::size_t>(x)]] = static_cast<std::uint8_t>(x);
            inverse_[a] = static_cast<std::uint32_t>(rank(inv));
        }
        for (std::size_t a = 0; a < n; ++a) cycle_types_.push_back(compute_cycle_type(elements_[a]));
    }

    [[nodiscard]] int degree() const { return d_; }
    [[nodiscard]] std::size_t order() const { return elements_.size(); }
    [[nodiscard]] std::size_t identity() const { return 0; }
    [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const { return product_[a * order() + b]; }
    [[nodiscard]] std::size_t inv(std::size_t a) const { return inverse_[a]; }
    [[nodiscard]] const Partition& cycle_type(std::size_t a) const { return cycle_types_[a]; }
    [[nodiscard]] const Perm& element(std::size_t a) const { return elements_[a]; }

    [[nodiscard]] std::vector<std::size_t> conjugacy_class(const Partition& type) const {
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < order(); ++a)
            if (cycle_types_[a] == type) out.push_back(a);
        return out;
    }

    [[nodiscard]] std::size_t rank(const Perm& p) const {
        // Lehmer code gives the lexicographic index.
        std::size_t r = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::size_t smaller = 0;
            for (std::size_t j = i + 1; j < p.size(); ++j) smaller += p[j] < p[i] ? 1 : 0;
            r = r * (p.size() - i) + smaller;
        }
        return r;
    }

private:
    static Partition compute_cycle_type(const Perm& p) {
        std::vector<bool> seen(p.size(), false);
        std::vector<int> lens;
        for (std::size_t s = 0; s < p.size(); ++s) {
            if (seen[s]) continue;
            int len = 0;
            for (std::size_t x = s; !seen[x]; x = p[x]) {
                seen[x] = true;
                ++len;
            }
            lens.push_back(len);
        }
        return Partition::from_unsorted(std::move(lens));
    }

    int d_;
    std::vector<Perm> elements_;
    std::vector<std::uint32_t> product_;
    std::vector<std::uint32_t> inverse_;
    std::vector<Partition> cycle_types_;
};

namespace detail {

/// Number of ways to write each group element as prod_{i<=g} [a_i, b_i].
inline std::vector<std::uint64_t> commutator_distribution(const SymmetricGroup& group, int genus) {
    const std::size_t n = group.order();
    std::vector<std::uint64_t> dist(n, 0);
    dist[group.identity()] = 1;
    if (genus == 0) return dist;
    std::vector<std::uint64_t> single(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            ++single[group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)))];
    for (int g = 0; g < genus; ++g) {
        std::vector<std::uint64_t> next(n, 0);
        for (std::size_t x = 0; x < n; ++x) {
            if (dist[x] == 0) continue;
            for (std::size_t c = 0; c < n; ++c)
                if (single[c]) next[group.mul(x, c)] += dist[x] * single[c];
        }
        dist = std::move(next);
    }
    return dist;
}

inline const SymmetricGroup& symmetric_group(int d) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<SymmetricGroup>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[d];
    if (!slot) slot = std::make_unique<SymmetricGroup>(d);
    return *slot;
}

}  // namespace detail

/// (1/d!) #{(a_1,b_1,...,a_g,b_g,g_1,...,g_m) : g_j of cycle type Delta^j,
///          prod [a_i,b_i] * g_1 ... g_m = 1}.
///
/// g_1 is pinned to one representative of its class and the count scaled by
/// the class size; the remaining factors are accumulated element by element.
inline Rational hurwitz_bruteforce(const HurwitzInstance& inst) {
    inst.validate();
    const int d = inst.degree();
    if (d > 6 || inst.genus() > 1)
        throw std::invalid_argument("hurwitz_bruteforce: instance too large (need d <= 6 and genus <= 1)");
    const SymmetricGroup& group = detail::symmetric_group(d);
    const std::size_t n = group.order();
    const std::vector<std::uint64_t> comm = detail::commutator_distribution(group, inst.genus());

    std::vector<std::vector<std::size_t>> classes;
    for (const auto& p : inst.profiles) classes.push_back(group.conjugacy_class(p));
    const std::size_t rep = classes.front().front();

    // dist[x]: number of ways prod[a,b] * g_1 * ... * g_j equals x.
    std::vector<std::uint64_t> dist(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        if (comm[x] != 0) dist[group.mul(x, rep)] += comm[x];
    for (std::size_t j = 1; j < classes.size(); ++j) {
        const auto& cls = classes[j];
        std::vector<std::vector<std::uint64_t>> partial(cls.size());
        parallel_for(cls.size(), [&](std::size_t k) {
            std::vector<std::uint64_t> out(n, 0);
            for (std::size_t x = 0; x < n; ++x)
                if (dist[x] != 0) out[group.mul(x, cls[k])] += dist[x];
            partial[k] = std::move(out);
        });
        std::vector<std::uint64_t> next(n, 0);
        for (const auto& v : partial)
            for (std::size_t x = 0; x < n; ++x) next[x] += v[x];
        dist = std::move(next);
    }
    const Integer count = Integer(static_cast<unsigned long>(dist[group.identity()])) *
                          Integer(static_cast<unsigned long>(classes.front().size()));
    Rational h(count, factorial(static_cast<unsigned long>(d)));
    h.canonicalize();
    return h;
}

/// Plain nested scan over S_d^(2g+m) with no class tricks. Only for d <= 4.
inline Rational hurwitz_raw_scan(const HurwitzInstance& inst) {
    inst.validate();
    const int d = inst.degree();
    if (d > 4 || inst.genus() > 1) throw std::invalid_argument("hurwitz_raw_scan: instance too large");
    const SymmetricGroup& group = detail::symmetric_group(d);
    const std::size_t n = group.order();
    const int slots = 2 * inst.genus() + static_cast<int>(inst.profiles.size());
    std::vector<std::size_t> idx(static_cast<std::size_t>(slots), 0);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        std::size_t prod = group.identity();
        int s = 0;
        for (int g = 0; g < inst.genus(); ++g, s += 2) {
            const std::size_t a = idx[static_cast<std::size_t>(s)];
            const std::size_t b = idx[static_cast<std::size_t>(s + 1)];
            prod = group.mul(prod, group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b))));
        }
        for (std::size_t j = 0; j < inst.profiles.size(); ++j, ++s) {
            const std::size_t x = idx[static_cast<std::size_t>(s)];
            if (group.cycle_type(x) != inst.profiles[j]) {
                ok = false;
                break;
            }
            prod = group.mul(prod, x);
        }
        if (ok && prod == group.identity()) ++count;
        int k = slots - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == n) idx[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) break;
    }
    Rational h(Integer(static_cast<unsigned long>(count)), factorial(static_cast<unsigned long>(d)));
    h.canonicalize();
    return h;
}

}  // namespace taulab
