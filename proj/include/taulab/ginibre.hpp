#pragma once

// n independent complex Ginibre matrices with <|Z_ab|^2> = 1/N: sampling,
// Monte Carlo expectations, and the Gaussian integrals of Schur functions
// and power sums over the vertex and face monodromies of a ribbon graph.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "taulab/characters.hpp"
#include "taulab/hurwitz.hpp"
#include "taulab/matrix.hpp"
#include "taulab/parallel.hpp"
#include "taulab/partitions.hpp"
#include "taulab/rational.hpp"
#include "taulab/ribbon.hpp"
#include "taulab/symfunc.hpp"
#include "taulab/wick.hpp"

namespace taulab {

struct EnsembleSpec {
    int matrices = 1;  // n
    int size = 1;      // N

    void validate() const {
        if (matrices < 1 || size < 1) throw std::invalid_argument("ensemble needs n >= 1 matrices of size N >= 1");
    }
};

using ComplexMatrix = Matrix<std::complex<double>>;

/// Draws consecutive samples of one matrix from a stream seeded by (seed, batch, matrix).
class GinibreStream {
public:
    GinibreStream(std::uint64_t seed, std::uint64_t batch, std::uint64_t matrix, int size)
        : size_(size), normal_(0.0, std::sqrt(0.5 / size)) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32),
                          static_cast<std::uint32_t>(matrix)};
        engine_.seed(seq);
    }

    ComplexMatrix next() {
        const auto n = static_cast<std::size_t>(size_);
        ComplexMatrix z(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double re = normal_(engine_);
                const double im = normal_(engine_);
                z(i, j) = {re, im};
            }
        return z;
    }

private:
    int size_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// One draw of Z_1..Z_n; deterministic in the seed.
inline std::vector<ComplexMatrix> sample(const EnsembleSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::vector<ComplexMatrix> out;
    for (int m = 0; m < spec.matrices; ++m)
        out.push_back(GinibreStream(seed, 0, static_cast<std::uint64_t>(m), spec.size).next());
    return out;
}

struct McEstimate {
    std::complex<double> mean;
    double standard_error = 0.0;  // sqrt((Var Re + Var Im) / samples)
    std::size_t samples = 0;

    /// |mean - exact| <= k * stderr
    [[nodiscard]] bool agrees_with(std::complex<double> exact, double k) const {
        return std::abs(mean - exact) <= k * standard_error;
    }
};

/// Sample mean of any function of (Z_1..Z_n). Samples are split into fixed
/// batches of `batch_size`; each batch owns one stream per matrix and the
/// batch statistics are merged in batch order, so the result does not depend
/// on the number of worker threads.
template <typename F>
McEstimate mc_expect_fn(F&& f, const EnsembleSpec& spec, std::size_t samples, std::uint64_t seed,
                        std::size_t batch_size = 500) {
    spec.validate();
    if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
    struct Moments {
        std::size_t count = 0;
        std::complex<double> mean{};
        double m2 = 0.0;  // sum |x - mean|^2
    };
    const std::size_t batches = (samples + batch_size - 1) / batch_size;
    std::vector<Moments> partial(batches);
    parallel_for(batches, [&](std::size_t b) {
        const std::size_t count = std::min(batch_size, samples - b * batch_size);
        std::vector<GinibreStream> streams;
        for (int m = 0; m < spec.matrices; ++m) streams.emplace_back(seed, b, static_cast<std::uint64_t>(m), spec.size);
        Moments mo;
        std::vector<ComplexMatrix> z(static_cast<std::size_t>(spec.matrices));
        for (std::size_t s = 0; s < count; ++s) {
            for (int m = 0; m < spec.matrices; ++m) z[static_cast<std::size_t>(m)] = streams[static_cast<std::size_t>(m)].next();
            const std::complex<double> x = f(z);
            ++mo.count;
            const std::complex<double> delta = x - mo.mean;
            mo.mean += delta / static_cast<double>(mo.count);
            mo.m2 += std::real(std::conj(delta) * (x - mo.mean));
        }
        partial[b] = mo;
    });
    Moments total;
    for (const auto& p : partial) {
        if (p.count == 0) continue;
        const double na = static_cast<double>(total.count);
        const double nb = static_cast<double>(p.count);
        const std::complex<double> delta = p.mean - total.mean;
        total.mean += delta * (nb / (na + nb));
        total.m2 += p.m2 + std::norm(delta) * na * nb / (na + nb);
        total.count += p.count;
    }
    const double var = total.m2 / static_cast<double>(total.count - 1);
    return {total.mean, std::sqrt(var / static_cast<double>(total.count)), total.count};
}

template <typename T>
McEstimate mc_expect(const Observable<T>& obs, const EnsembleSpec& spec, std::size_t samples, std::uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("mc_expect needs at least 100 samples");
    if (obs.ensemble_size() > spec.matrices)
        throw std::invalid_argument("observable uses Z_" + std::to_string(obs.ensemble_size()) + " but the ensemble has " +
                                    std::to_string(spec.matrices) + " matrices");
    std::vector<ComplexMatrix> constants;
    for (const auto& c : obs.constants())
        constants.push_back(c.template map<std::complex<double>>([](const T& x) { return ScalarTraits<T>::to_complex(x); }));
    const auto size = static_cast<std::size_t>(spec.size);
    return mc_expect_fn([&](const std::vector<ComplexMatrix>& z) { return evaluate_observable(obs, z, constants, size); },
                        spec, samples, seed);
}

/// (dim lambda / |lambda|!)^{-n} N^{-n |lambda|}
inline Rational schur_integral_constant(const Partition& lambda, int edges, int size) {
    Rational c = pow(dim_over_factorial(lambda), -edges) * pow(Rational(size), -static_cast<long>(edges) * lambda.weight());
    c.canonicalize();
    return c;
}

template <typename T>
struct IdentitySides {
    T lhs;
    T rhs;
    bool within_stability = true;  // weights <= N, the regime where the identity is asserted
    [[nodiscard]] bool holds() const { return lhs == rhs; }
};

namespace detail {

template <typename T>
T schur_of_matrix(const Partition& lambda, const Matrix<T>& m) {
    return eval_schur(lambda, powersums_of_matrix(m, lambda.weight()));
}

template <typename T>
Observable<T> product_of_schur(const std::vector<HalfEdgeCycle>& cycles, const std::vector<Partition>& lambdas,
                               const SourceAssignment<T>& src) {
    Observable<T> obs = Observable<T>::one();
    for (std::size_t k = 0; k < cycles.size(); ++k) obs = obs * schur_observable(lambdas[k], cycles[k], src);
    return obs;
}

template <typename T>
IdentitySides<T> schur_integral(const RibbonGraph& g, const SourceAssignment<T>& src,
                                const std::vector<HalfEdgeCycle>& dressed, const std::vector<HalfEdgeCycle>& bare,
                                const std::vector<Partition>& lambdas, const WickLimits& limits) {
    src.validate(g);
    if (lambdas.size() != dressed.size())
        throw std::invalid_argument("expected " + std::to_string(dressed.size()) + " partitions, got " +
                                    std::to_string(lambdas.size()));
    IdentitySides<T> out{wick_exact(product_of_schur(dressed, lambdas, src), src.size, limits).value,
                         ScalarTraits<T>::zero(), true};
    bool all_equal = true;
    for (const auto& l : lambdas) {
        all_equal = all_equal && l == lambdas.front();
        out.within_stability = out.within_stability && l.weight() <= src.size;
    }
    if (all_equal) {
        const Partition& lambda = lambdas.front();
        T rhs = ScalarTraits<T>::from_rational(schur_integral_constant(lambda, g.edges(), src.size));
        for (const auto& cycle : bare) rhs *= schur_of_matrix(lambda, detail::evaluate_word<T>(cycle, src, nullptr).matrix);
        out.rhs = rhs;
    }
    return out;
}

}  // namespace detail

/// < prod_a s_{lambda^a}(W_a(Z)) >  versus  c delta_lambda prod_b s_lambda(W*_b(I)).
template <typename T>
IdentitySides<T> schur_integral_vertex(const RibbonGraph& g, const SourceAssignment<T>& src,
                                       const std::vector<Partition>& lambdas, const WickLimits& limits = {}) {
    return detail::schur_integral(g, src, g.vertices(), g.faces(), lambdas, limits);
}

/// < prod_b s_{lambda^b}(W*_b(Z)) >  versus  c delta_lambda prod_a s_lambda(W_a(I)).
template <typename T>
IdentitySides<T> schur_integral_face(const RibbonGraph& g, const SourceAssignment<T>& src,
                                     const std::vector<Partition>& lambdas, const WickLimits& limits = {}) {
    return detail::schur_integral(g, src, g.faces(), g.vertices(), lambdas, limits);
}

template <typename T>
struct PolygonSides {
    T lhs;
    T rhs_hurwitz;     // N^{-nd} sum_nu H(mu, nu) prod_a p_{nu^a}(W_a(I))
    T rhs_characters;  // character expansion of the face integral
    bool within_stability = true;
    [[nodiscard]] bool holds() const { return lhs == rhs_hurwitz && rhs_hurwitz == rhs_characters; }
};

/// < prod_b p_{mu^b}(W*_b(Z)) / zeta_{mu^b} >, with both right-hand sides.
template <typename T>
PolygonSides<T> polygon_gluing_identity(const RibbonGraph& g, const SourceAssignment<T>& src,
                                        const std::vector<Partition>& mus, const WickLimits& limits = {}) {
    src.validate(g);
    if (static_cast<int>(mus.size()) != g.num_faces())
        throw std::invalid_argument("expected one partition per face (" + std::to_string(g.num_faces()) + ")");
    const int d = mus.front().weight();
    for (const auto& mu : mus)
        if (mu.weight() != d || d < 1) throw std::invalid_argument("face profiles must share one positive weight");

    PolygonSides<T> out{ScalarTraits<T>::zero(), ScalarTraits<T>::zero(), ScalarTraits<T>::zero(), d <= src.size};

    Observable<T> obs = Observable<T>::one();
    for (std::size_t b = 0; b < mus.size(); ++b) {
        Rational inv_zeta(1, zeta(mus[b]));
        obs = obs * power_sum_observable(mus[b], g.faces()[b], src, ScalarTraits<T>::from_rational(inv_zeta));
    }
    out.lhs = wick_exact(obs, src.size, limits).value;

    std::vector<Matrix<T>> vertex_mats;
    for (int a = 0; a < g.num_vertices(); ++a) vertex_mats.push_back(vertex_monodromy(g, src, a).matrix);

    const auto parts = partitions_of(d);
    const Rational n_power = pow(Rational(src.size), -static_cast<long>(g.edges()) * d);
    std::vector<std::size_t> choice(vertex_mats.size(), 0);
    T hurwitz_sum = ScalarTraits<T>::zero();
    while (true) {
        HurwitzInstance inst{g.euler(), mus};
        T prod = ScalarTraits<T>::one();
        for (std::size_t a = 0; a < choice.size(); ++a) {
            inst.profiles.push_back(parts[choice[a]]);
            prod *= p_mu_of_matrix(parts[choice[a]], vertex_mats[a]);
        }
        hurwitz_sum += ScalarTraits<T>::from_rational(hurwitz_frobenius(inst)) * prod;
        std::size_t k = 0;
        for (; k < choice.size(); ++k) {
            if (++choice[k] < parts.size()) break;
            choice[k] = 0;
        }
        if (k == choice.size()) break;
    }
    out.rhs_hurwitz = ScalarTraits<T>::from_rational(n_power) * hurwitz_sum;

    const auto table = character_table(d);
    T char_sum = ScalarTraits<T>::zero();
    for (const auto& lambda : parts) {
        Rational w = pow(dim_over_factorial(lambda), g.num_faces()) * schur_integral_constant(lambda, g.edges(), src.size);
        for (const auto& mu : mus) w *= (*table)(lambda, mu);
        T term = ScalarTraits<T>::from_rational(w);
        for (const auto& m : vertex_mats) term *= detail::schur_of_matrix(lambda, m);
        char_sum += term;
    }
    out.rhs_characters = char_sum;
    return out;
}

}  // namespace taulab
