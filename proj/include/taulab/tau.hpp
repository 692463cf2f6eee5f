#pragma once

// Truncated Schur-series tau functions: the Cauchy-Littlewood pairing, the
// cyclic multi-component ("round dance") series, its Gaussian average over
// the vertex monodromies of a ribbon graph, and the content-product
// (hypergeometric) series that the average collapses to on the sphere.

#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "taulab/ginibre.hpp"
#include "taulab/partitions.hpp"
#include "taulab/rational.hpp"
#include "taulab/ribbon.hpp"
#include "taulab/symfunc.hpp"
#include "taulab/wick.hpp"

namespace taulab {

/// Exact polynomial in two power-sum alphabets p, p~. Each alphabet is
/// truncated at weight `degree`.
class BiPowerSumPolynomial {
public:
    using Key = std::pair<Partition, Partition>;

    explicit BiPowerSumPolynomial(int degree) : degree_(degree) {}

    static BiPowerSumPolynomial constant(const Rational& c, int degree) {
        BiPowerSumPolynomial p(degree);
        p.add_term({}, {}, c);
        return p;
    }

    static BiPowerSumPolynomial outer(const PowerSumPolynomial& a, const PowerSumPolynomial& b, int degree) {
        BiPowerSumPolynomial p(degree);
        for (const auto& [mu, c] : a.terms())
            for (const auto& [nu, e] : b.terms())
                if (mu.weight() <= degree && nu.weight() <= degree) p.add_term(mu, nu, c * e);
        return p;
    }

    void add_term(const Partition& mu, const Partition& nu, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(Key{mu, nu}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const std::map<Key, Rational>& terms() const { return terms_; }
    [[nodiscard]] Rational coeff(const Partition& mu, const Partition& nu) const {
        auto it = terms_.find(Key{mu, nu});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    BiPowerSumPolynomial& operator+=(const BiPowerSumPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }

    friend BiPowerSumPolynomial operator*(const BiPowerSumPolynomial& a, const BiPowerSumPolynomial& b) {
        BiPowerSumPolynomial r(a.degree_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                if (ka.first.weight() + kb.first.weight() > a.degree_ ||
                    ka.second.weight() + kb.second.weight() > a.degree_)
                    continue;
                auto join = [](const Partition& x, const Partition& y) {
                    std::vector<int> parts = x.parts();
                    parts.insert(parts.end(), y.parts().begin(), y.parts().end());
                    return Partition::from_unsorted(std::move(parts));
                };
                r.add_term(join(ka.first, kb.first), join(ka.second, kb.second), ca * cb);
            }
        return r;
    }

    friend BiPowerSumPolynomial operator*(const Rational& s, BiPowerSumPolynomial p) {
        for (auto& [k, c] : p.terms_) c *= s;
        if (s == 0) p.terms_.clear();
        return p;
    }

    friend bool operator==(const BiPowerSumPolynomial&, const BiPowerSumPolynomial&) = default;

private:
    int degree_;
    std::map<Key, Rational> terms_;
};

/// Second alphabet printed as q_k, e.g. "1 + p1 q1 - 1/2 p2 q2".
inline std::string to_string(const BiPowerSumPolynomial& poly) {
    if (poly.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : poly.terms()) {
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono = monomial_string(key.first);
        const std::string right = monomial_string(key.second, "q");
        if (!right.empty()) mono += (mono.empty() ? "" : " ") + right;
        const Rational mag = abs(c);
        if (mono.empty()) out += to_string(mag);
        else out += (mag != 1 ? to_string(mag) + " " : std::string()) + mono;
    }
    return out;
}

/// Sign conventions for pairing exp(+-sum p_m p~_m / m) with the Schur sum
/// sum_{(a|b)} s_{(a|b)}(p) s_{(b|a)}(p~).
enum class CauchySign {
    /// exp(sum (-1)^{m+1} p_m p~_m / m)  ==  1 + sum s_{(a|b)}(p) s_{(b|a)}(p~)
    Alternating,
    /// exp(-sum p_m p~_m / m)  ==  1 + sum (-1)^{|lambda|} s_{(a|b)}(p) s_{(b|a)}(p~)
    ParityWeighted,
    /// exp(-sum p_m p~_m / m) against the unsigned Schur sum; these differ.
    Unreconciled,
};

/// Strictly decreasing sequences of non-negative integers of length k with sum <= budget.
inline std::vector<std::vector<int>> strict_sequences(int k, int budget) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int below, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        // The remaining left-1 entries are at least 0..left-2.
        const int floor_rest = (left - 1) * (left - 2) / 2;
        for (int x = std::min(below - 1, remaining - floor_rest); x >= left - 1; --x) {
            cur.push_back(x);
            self(self, remaining - x, x, left - 1);
            cur.pop_back();
        }
    };
    if (k >= 1) rec(rec, budget, budget + 1, k);
    return out;
}

inline int frobenius_weight(const std::vector<int>& a, const std::vector<int>& b) {
    return std::accumulate(a.begin(), a.end(), 0) + std::accumulate(b.begin(), b.end(), 0) + static_cast<int>(a.size());
}

struct CauchyLittlewoodSides {
    BiPowerSumPolynomial lhs;
    BiPowerSumPolynomial rhs;
    [[nodiscard]] bool holds() const { return lhs == rhs; }
};

/// Both sides truncated so that each alphabet has weight <= degree.
inline CauchyLittlewoodSides cauchy_littlewood(int degree, CauchySign sign = CauchySign::Alternating) {
    if (degree < 0 || degree > 8) throw std::invalid_argument("cauchy_littlewood: degree must be in 0..8");
    // Exponent X = sum_m eps_m p_m p~_m / m, exponentiated as sum_k X^k / k!.
    BiPowerSumPolynomial x(degree);
    for (int m = 1; m <= degree; ++m) {
        const int eps = sign == CauchySign::Alternating ? (m % 2 ? 1 : -1) : -1;
        x.add_term(Partition{m}, Partition{m}, Rational(eps, m));
    }
    BiPowerSumPolynomial lhs = BiPowerSumPolynomial::constant(1, degree);
    BiPowerSumPolynomial power = BiPowerSumPolynomial::constant(1, degree);
    for (int k = 1; k <= degree; ++k) {
        power = Rational(1, k) * (power * x);
        lhs += power;
    }

    BiPowerSumPolynomial rhs = BiPowerSumPolynomial::constant(1, degree);
    for (int kappa = 1; kappa * kappa <= degree; ++kappa) {
        const auto seqs = strict_sequences(kappa, degree - kappa);
        for (const auto& alpha : seqs)
            for (const auto& beta : seqs) {
                if (frobenius_weight(alpha, beta) > degree) continue;
                const Partition lam = from_frobenius({alpha, beta});
                const Partition lam_t = from_frobenius({beta, alpha});
                Rational s = (sign == CauchySign::ParityWeighted && lam.weight() % 2) ? -1 : 1;
                rhs += s * BiPowerSumPolynomial::outer(schur_in_powersums(lam, degree), schur_in_powersums(lam_t, degree), degree);
            }
    }
    return {std::move(lhs), std::move(rhs)};
}

/// Calls visit(lambdas, mus) for every term of the cyclic series with
/// components i = 0..c-1, where lambdas[i] = (alpha^i | beta^i) and
/// mus[i] = (beta^i | alpha^{i+1}) with alpha^c = alpha^0. Only terms whose
/// partitions all have weight <= degree and rank <= kappa_max are visited.
inline void for_each_round_dance_term(
    int components, int degree, int kappa_max,
    const std::function<void(const std::vector<Partition>&, const std::vector<Partition>&)>& visit) {
    if (components < 1) throw std::invalid_argument("round dance needs at least one component");
    if (degree < 0 || kappa_max < 0) throw std::invalid_argument("round dance truncation must be non-negative");
    const auto c = static_cast<std::size_t>(components);
    for (int kappa = 1; kappa <= kappa_max && kappa * kappa <= degree; ++kappa) {
        const auto seqs = strict_sequences(kappa, degree - kappa);
        std::vector<const std::vector<int>*> alpha(c), beta(c);
        std::vector<Partition> lambdas(c), mus(c);
        // Chain alpha^0, beta^0, alpha^1, beta^1, ..., beta^{c-1}, closing on alpha^0.
        auto rec = [&](auto&& self, std::size_t i, bool choosing_beta) -> void {
            for (const auto& s : seqs) {
                if (!choosing_beta) {
                    if (i > 0 && frobenius_weight(*beta[i - 1], s) > degree) continue;
                    alpha[i] = &s;
                    if (i > 0) mus[i - 1] = from_frobenius({*beta[i - 1], s});
                    self(self, i, true);
                } else {
                    if (frobenius_weight(*alpha[i], s) > degree) continue;
                    if (i + 1 == c && frobenius_weight(s, *alpha[0]) > degree) continue;
                    beta[i] = &s;
                    lambdas[i] = from_frobenius({*alpha[i], s});
                    if (i + 1 == c) {
                        mus[i] = from_frobenius({s, *alpha[0]});
                        visit(lambdas, mus);
                    } else {
                        self(self, i + 1, false);
                    }
                }
            }
        };
        rec(rec, 0, false);
    }
}

/// Default rank cutoff: large enough that truncation is controlled by weight alone.
inline int default_kappa_max(int degree) {
    int k = 0;
    while ((k + 1) * (k + 1) <= degree) ++k;
    return std::max(k, 1);
}

/// 1 + sum prod_i s_{(alpha^i|beta^i)}(p^i) s_{(beta^i|alpha^{i+1})}(p~^i), truncated.
template <typename T>
T round_dance(const std::vector<PowerSumValues<T>>& p, const std::vector<PowerSumValues<T>>& ptilde, int degree,
              std::optional<int> kappa_max = std::nullopt) {
    if (p.size() != ptilde.size() || p.empty())
        throw std::invalid_argument("round dance needs matching, non-empty lists of times");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].degree() < degree || ptilde[i].degree() < degree)
            throw std::invalid_argument("time vector shorter than truncation degree " + std::to_string(degree));
    std::vector<std::map<Partition, T>> cache_p(p.size()), cache_t(p.size());
    auto value = [](std::map<Partition, T>& cache, const Partition& lam, const PowerSumValues<T>& v) -> const T& {
        auto it = cache.find(lam);
        if (it == cache.end()) it = cache.emplace(lam, eval_schur(lam, v)).first;
        return it->second;
    };
    T total = ScalarTraits<T>::one();
    for_each_round_dance_term(static_cast<int>(p.size()), degree, kappa_max.value_or(default_kappa_max(degree)),
                              [&](const std::vector<Partition>& lambdas, const std::vector<Partition>& mus) {
                                  T term = ScalarTraits<T>::one();
                                  for (std::size_t i = 0; i < p.size(); ++i) {
                                      term *= value(cache_p[i], lambdas[i], p[i]);
                                      term *= value(cache_t[i], mus[i], ptilde[i]);
                                  }
                                  total += term;
                              });
    return total;
}

template <typename T>
struct GeneratingSides {
    T schur_sum;      // sum_lambda c(lambda) prod_a s_lambda(p^a) prod_b s_lambda(W*_b(I))
    T wick_average;   // < round dance at p~^a = p(W_a(Z)) >, exact
    bool within_stability = true;  // degree <= N
    [[nodiscard]] bool holds() const { return schur_sum == wick_average; }
};

/// sum_{|lambda| <= degree} c(lambda) prod_a s_lambda(p^a) prod_b s_lambda(W*_b(I))
template <typename T>
T generating_schur_sum(const RibbonGraph& g, const SourceAssignment<T>& src, const std::vector<PowerSumValues<T>>& p,
                       int degree) {
    src.validate(g);
    if (static_cast<int>(p.size()) != g.num_vertices())
        throw std::invalid_argument("expected one time vector per vertex (" + std::to_string(g.num_vertices()) + ")");
    std::vector<Matrix<T>> face_mats;
    for (int b = 0; b < g.num_faces(); ++b) face_mats.push_back(face_monodromy(g, src, b).matrix);
    std::vector<PowerSumValues<T>> face_ps;
    for (const auto& m : face_mats) face_ps.push_back(powersums_of_matrix(m, degree));
    T total = ScalarTraits<T>::zero();
    for (const auto& lambda : partitions_up_to(degree)) {
        T term = ScalarTraits<T>::from_rational(schur_integral_constant(lambda, g.edges(), src.size));
        for (const auto& pa : p) term *= eval_schur(lambda, pa);
        for (const auto& fb : face_ps) term *= eval_schur(lambda, fb);
        total += term;
    }
    return total;
}

/// Gaussian average of the cyclic series with p~^a_k = tr(W_a(Z)^k), each
/// term integrated exactly by Wick contraction. The vertex times enter as
/// omega(p^a), p_k -> (-1)^{k-1} p_k, which matches the Schur-sum form.
template <typename T>
T generating_wick_average(const RibbonGraph& g, const SourceAssignment<T>& src, const std::vector<PowerSumValues<T>>& p,
                          int degree, const WickLimits& limits = {}) {
    src.validate(g);
    if (static_cast<int>(p.size()) != g.num_vertices())
        throw std::invalid_argument("expected one time vector per vertex (" + std::to_string(g.num_vertices()) + ")");
    std::vector<PowerSumValues<T>> q;
    for (const auto& pa : p) q.push_back(omega(pa));
    std::vector<std::map<Partition, T>> cache(q.size());
    T total = ScalarTraits<T>::one();
    for_each_round_dance_term(g.num_vertices(), degree, default_kappa_max(degree),
                              [&](const std::vector<Partition>& lambdas, const std::vector<Partition>& mus) {
                                  T coeff = ScalarTraits<T>::one();
                                  for (std::size_t a = 0; a < q.size(); ++a) {
                                      auto it = cache[a].find(lambdas[a]);
                                      if (it == cache[a].end()) it = cache[a].emplace(lambdas[a], eval_schur(lambdas[a], q[a])).first;
                                      coeff *= it->second;
                                  }
                                  if (coeff == ScalarTraits<T>::zero()) return;
                                  total += coeff * wick_exact(detail::product_of_schur(g.vertices(), mus, src), src.size, limits).value;
                              });
    return total;
}

template <typename T>
GeneratingSides<T> generating_expectation(const RibbonGraph& g, const SourceAssignment<T>& src,
                                          const std::vector<PowerSumValues<T>>& p, int degree,
                                          const WickLimits& limits = {}) {
    return {generating_schur_sum(g, src, p, degree), generating_wick_average(g, src, p, degree, limits),
            degree <= src.size};
}

/// Linear factors (a_c + j - i) and (N_b + j - i) per cell, and the weight
/// N^{-n |lambda|}.
template <typename T>
struct ContentFactorList {
    std::vector<T> shifts;    // a_c
    std::vector<int> levels;  // N_b
    int edges = 0;            // n
    int size = 1;             // N

    [[nodiscard]] T cell_weight(int content) const {
        T w = ScalarTraits<T>::one();
        const T c = ScalarTraits<T>::from_rational(Rational(content));
        for (const auto& a : shifts) w *= a + c;
        for (int nb : levels) w *= ScalarTraits<T>::from_rational(Rational(nb + content));
        return w;
    }
};

/// sum_{|lambda| <= degree} N^{-n|lambda|} s_lambda(p1) s_lambda(p2) prod_cells r(content)
template <typename T>
T hyp_tau(const PowerSumValues<T>& p1, const PowerSumValues<T>& p2, const ContentFactorList<T>& factors, int degree) {
    if (degree < 0) throw std::invalid_argument("hyp_tau: negative degree");
    if (factors.size < 1) throw std::invalid_argument("hyp_tau: matrix size must be positive");
    T total = ScalarTraits<T>::zero();
    for (const auto& lambda : partitions_up_to(degree)) {
        T term = ScalarTraits<T>::from_rational(pow(Rational(factors.size), -static_cast<long>(factors.edges) * lambda.weight()));
        for (const Cell& cell : cells(lambda)) {
            term *= factors.cell_weight(cell.content());
            if (term == ScalarTraits<T>::zero()) break;
        }
        if (term == ScalarTraits<T>::zero()) continue;
        term *= eval_schur(lambda, p1);
        term *= eval_schur(lambda, p2);
        total += term;
    }
    return total;
}

struct FreeSlot {
    enum class Kind { VertexTimes, FaceMonodromy };
    Kind kind;
    int index;
    friend bool operator==(const FreeSlot&, const FreeSlot&) = default;
};

template <typename T>
struct Reduction {
    int case_id = 0;  // 1: two free time sets, 2: one set and one monodromy, 3: two monodromies; 0: fewer than two free
    ContentFactorList<T> factors;
    std::vector<FreeSlot> free_slots;
};

/// Classifies p as p_infinity = (1,0,...) or p(a) = (a,a,...); nullopt when neither.
template <typename T>
std::optional<std::optional<T>> classify_times(const PowerSumValues<T>& p) {
    if (p.values.empty()) return std::nullopt;
    bool infty = p.values[0] == ScalarTraits<T>::one();
    for (std::size_t k = 1; k < p.values.size() && infty; ++k) infty = p.values[k] == ScalarTraits<T>::zero();
    if (infty) return std::optional<T>{};
    for (const auto& x : p.values)
        if (x != p.values[0]) return std::nullopt;
    return std::optional<T>{p.values[0]};
}

/// N_b when W has the spectrum (1^{N_b}, 0^{N - N_b}); tr(W^k) for k <= N fixes the spectrum.
template <typename T>
std::optional<int> projector_level(const Matrix<T>& w) {
    const auto ps = powersums_of_matrix(w, static_cast<int>(w.rows()));
    const T& first = ps.values[0];
    for (const auto& x : ps.values)
        if (x != first) return std::nullopt;
    for (int level = 0; level <= static_cast<int>(w.rows()); ++level)
        if (first == ScalarTraits<T>::from_rational(Rational(level))) return level;
    return std::nullopt;
}

/// Reads off which vertex times and face monodromies are specialised and
/// which stay free, and builds the induced content factors. Requires a
/// sphere and at most two free slots.
template <typename T>
Reduction<T> specialization_reducer(const RibbonGraph& g, const SourceAssignment<T>& src,
                                    const std::vector<PowerSumValues<T>>& p) {
    src.validate(g);
    if (g.euler() != 2)
        throw std::invalid_argument("specialization needs a graph on the sphere (Euler characteristic " +
                                    std::to_string(g.euler()) + ")");
    if (static_cast<int>(p.size()) != g.num_vertices())
        throw std::invalid_argument("expected one time vector per vertex");
    Reduction<T> r;
    r.factors.edges = g.edges();
    r.factors.size = src.size;
    int free_times = 0;
    int free_faces = 0;
    for (int a = 0; a < g.num_vertices(); ++a) {
        const auto kind = classify_times(p[static_cast<std::size_t>(a)]);
        if (!kind) {
            r.free_slots.push_back({FreeSlot::Kind::VertexTimes, a});
            ++free_times;
        } else if (kind->has_value()) {
            r.factors.shifts.push_back(**kind);
        }
    }
    for (int b = 0; b < g.num_faces(); ++b) {
        const auto level = projector_level(face_monodromy(g, src, b).matrix);
        if (level) {
            r.factors.levels.push_back(*level);
        } else {
            r.free_slots.push_back({FreeSlot::Kind::FaceMonodromy, b});
            ++free_faces;
        }
    }
    if (r.free_slots.size() > 2)
        throw std::invalid_argument("more than two free slots (" + std::to_string(free_times) + " time sets not of the form p(a) or p_inf, " +
                                    std::to_string(free_faces) + " face monodromies without a 0/1 spectrum)");
    if (r.free_slots.size() == 2) r.case_id = free_faces + 1;
    return r;
}

/// hyp_tau at the free slots of a reduction; missing slots are filled with p_infinity.
template <typename T>
T evaluate_reduction(const Reduction<T>& r, const RibbonGraph& g, const SourceAssignment<T>& src,
                     const std::vector<PowerSumValues<T>>& p, int degree) {
    std::vector<PowerSumValues<T>> args;
    for (const auto& slot : r.free_slots) {
        if (slot.kind == FreeSlot::Kind::VertexTimes) {
            args.push_back(p.at(static_cast<std::size_t>(slot.index)));
        } else {
            args.push_back(powersums_of_matrix(face_monodromy(g, src, slot.index).matrix, degree));
        }
    }
    while (args.size() < 2) args.push_back(specialize_infty<T>(std::max(degree, 1)));
    return hyp_tau(args[0], args[1], r.factors, degree);
}

}  // namespace taulab
