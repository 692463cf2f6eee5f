#pragma once

// Schur functions as exact polynomials in the power sums p_1, p_2, ...

#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "taulab/matrix.hpp"
#include "taulab/partitions.hpp"
#include "taulab/rational.hpp"

namespace taulab {

/// Exact polynomial in p_1..p_D. Monomials p_mu are keyed by the partition mu.
/// Every retained key has weight <= degree(); products drop heavier terms.
class PowerSumPolynomial {
public:
    using Terms = std::map<Partition, Rational>;

    explicit PowerSumPolynomial(int degree) : degree_(degree) {
        if (degree < 0) throw std::invalid_argument("truncation degree must be non-negative");
    }

    static PowerSumPolynomial constant(const Rational& c, int degree) {
        PowerSumPolynomial p(degree);
        p.add_term(Partition{}, c);
        return p;
    }

    /// The single monomial coeff * p_mu.
    static PowerSumPolynomial monomial(const Partition& mu, const Rational& coeff, int degree) {
        PowerSumPolynomial p(degree);
        p.add_term(mu, coeff);
        return p;
    }

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    [[nodiscard]] Rational coeff(const Partition& mu) const {
        auto it = terms_.find(mu);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Partition& mu, const Rational& c) {
        if (mu.weight() > degree_)
            throw std::invalid_argument("monomial p" + to_string(mu) + " exceeds truncation degree " + std::to_string(degree_));
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(mu, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Same polynomial re-tagged with another truncation degree. Terms heavier
    /// than the new degree are dropped.
    [[nodiscard]] PowerSumPolynomial truncated(int degree) const {
        PowerSumPolynomial p(degree);
        for (const auto& [mu, c] : terms_)
            if (mu.weight() <= degree) p.terms_.emplace(mu, c);
        return p;
    }

    PowerSumPolynomial& operator+=(const PowerSumPolynomial& o) {
        check_degree(o);
        for (const auto& [mu, c] : o.terms_) add_term(mu, c);
        return *this;
    }
    PowerSumPolynomial& operator-=(const PowerSumPolynomial& o) {
        check_degree(o);
        for (const auto& [mu, c] : o.terms_) add_term(mu, -c);
        return *this;
    }
    friend PowerSumPolynomial operator+(PowerSumPolynomial a, const PowerSumPolynomial& b) { return a += b; }
    friend PowerSumPolynomial operator-(PowerSumPolynomial a, const PowerSumPolynomial& b) { return a -= b; }

    friend PowerSumPolynomial operator*(const Rational& s, const PowerSumPolynomial& a) {
        PowerSumPolynomial r(a.degree_);
        if (s == 0) return r;
        for (const auto& [mu, c] : a.terms_) r.terms_.emplace(mu, s * c);
        return r;
    }

    friend PowerSumPolynomial operator*(const PowerSumPolynomial& a, const PowerSumPolynomial& b) {
        a.check_degree(b);
        PowerSumPolynomial r(a.degree_);
        for (const auto& [mu, c] : a.terms_)
            for (const auto& [nu, e] : b.terms_) {
                if (mu.weight() + nu.weight() > a.degree_) continue;
                std::vector<int> parts = mu.parts();
                parts.insert(parts.end(), nu.parts().begin(), nu.parts().end());
                r.add_term(Partition::from_unsorted(std::move(parts)), c * e);
            }
        return r;
    }

    friend bool operator==(const PowerSumPolynomial&, const PowerSumPolynomial&) = default;

private:
    void check_degree(const PowerSumPolynomial& o) const {
        if (o.degree_ != degree_) throw std::invalid_argument("truncation degree mismatch");
    }

    int degree_;
    Terms terms_;
};

/// "p3 p1^2" for mu = (3,1,1); empty for the empty partition.
inline std::string monomial_string(const Partition& mu, const std::string& var = "p") {
    std::string mono;
    const auto mult = mu.multiplicities();
    for (std::size_t k = mult.size(); k-- > 1;) {
        if (mult[k] == 0) continue;
        if (!mono.empty()) mono += " ";
        mono += var + std::to_string(k);
        if (mult[k] > 1) mono += "^" + std::to_string(mult[k]);
    }
    return mono;
}

/// Human-readable form, e.g. "1/3 p1^3 - 1/3 p3".
inline std::string to_string(const PowerSumPolynomial& poly) {
    if (poly.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mu, c] : poly.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        const std::string mono = monomial_string(mu);
        if (mono.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + " ";
            out += mono;
        }
    }
    return out;
}

/// h_k = s_(k): the degree-k coefficient of exp(sum_j p_j x^j / j), via
/// k h_k = sum_{j=1..k} p_j h_{k-j} (the derivative of the exponential).
inline PowerSumPolynomial complete_homogeneous(int k, int degree) {
    if (k < 0) return PowerSumPolynomial(degree);
    if (k > degree) throw std::invalid_argument("complete_homogeneous: k exceeds truncation degree");
    std::vector<PowerSumPolynomial> h;
    h.push_back(PowerSumPolynomial::constant(1, degree));
    for (int m = 1; m <= k; ++m) {
        PowerSumPolynomial acc(degree);
        for (int j = 1; j <= m; ++j)
            acc += PowerSumPolynomial::monomial(Partition{j}, 1, degree) * h[static_cast<std::size_t>(m - j)];
        h.push_back(Rational(1, m) * acc);
    }
    return h.back();
}

namespace detail {

inline PowerSumPolynomial jacobi_trudi(const Partition& lambda) {
    const int d = lambda.weight();
    const int len = lambda.length();
    if (len == 0) return PowerSumPolynomial::constant(1, 0);
    std::vector<PowerSumPolynomial> h;
    for (int k = 0; k <= d; ++k) h.push_back(complete_homogeneous(k, d));
    auto entry = [&](int i, int j) -> const PowerSumPolynomial* {
        const int k = lambda.row(i + 1) - (i + 1) + (j + 1);
        return k < 0 ? nullptr : &h[static_cast<std::size_t>(k)];
    };
    // Determinant by expansion along rows, memoised over the set of used columns.
    const std::size_t full = std::size_t{1} << len;
    std::vector<PowerSumPolynomial> dp(full, PowerSumPolynomial(d));
    std::vector<bool> reached(full, false);
    dp[0] = PowerSumPolynomial::constant(1, d);
    reached[0] = true;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (!reached[mask] || dp[mask].is_zero()) continue;
        const int r = __builtin_popcountll(mask);
        if (r == len) continue;
        for (int c = 0; c < len; ++c) {
            if (mask & (std::size_t{1} << c)) continue;
            const PowerSumPolynomial* e = entry(r, c);
            if (!e || e->is_zero()) continue;
            const int above = __builtin_popcountll(mask >> (c + 1));
            PowerSumPolynomial term = dp[mask] * *e;
            const std::size_t next = mask | (std::size_t{1} << c);
            if (above % 2) dp[next] -= term;
            else dp[next] += term;
            reached[next] = true;
        }
    }
    return dp[full - 1];
}

}  // namespace detail

/// s_lambda as det[h_{lambda_i - i + j}]. Memoised per partition.
inline PowerSumPolynomial schur_in_powersums(const Partition& lambda, int degree) {
    if (lambda.weight() > degree)
        throw std::invalid_argument("schur_in_powersums: |lambda| exceeds truncation degree");
    static std::mutex mutex;
    static std::map<Partition, PowerSumPolynomial> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(lambda); it != cache.end()) return it->second.truncated(degree);
    }
    PowerSumPolynomial s = detail::jacobi_trudi(lambda);
    std::lock_guard lock(mutex);
    auto it = cache.emplace(lambda, std::move(s)).first;
    return it->second.truncated(degree);
}

/// Values (p_1, ..., p_D) of the power-sum variables.
template <typename T>
struct PowerSumValues {
    std::vector<T> values;

    [[nodiscard]] int degree() const { return static_cast<int>(values.size()); }
    /// p_k, 1-based.
    [[nodiscard]] const T& operator[](int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
    friend bool operator==(const PowerSumValues&, const PowerSumValues&) = default;
};

/// p_mu = prod_i p_{mu_i} at the given values.
template <typename T>
T eval_monomial(const Partition& mu, const PowerSumValues<T>& v) {
    T acc = ScalarTraits<T>::one();
    for (int part : mu.parts()) acc *= v[part];
    return acc;
}

template <typename T>
T eval_polynomial(const PowerSumPolynomial& poly, const PowerSumValues<T>& v) {
    T acc = ScalarTraits<T>::zero();
    for (const auto& [mu, c] : poly.terms()) {
        if (mu.weight() > v.degree()) throw std::invalid_argument("power-sum values shorter than polynomial weight");
        acc += ScalarTraits<T>::from_rational(c) * eval_monomial(mu, v);
    }
    return acc;
}

template <typename T>
T eval_schur(const Partition& lambda, const PowerSumValues<T>& v) {
    if (lambda.weight() > v.degree())
        throw std::invalid_argument("eval_schur: |lambda| = " + std::to_string(lambda.weight()) +
                                    " exceeds the " + std::to_string(v.degree()) + " supplied power sums");
    return eval_polynomial(schur_in_powersums(lambda, lambda.weight()), v);
}

/// Miwa specialisation p_k = tr(X^k), k = 1..D.
template <typename T>
PowerSumValues<T> powersums_of_matrix(const Matrix<T>& x, int degree) {
    if (!x.square()) throw std::invalid_argument("powersums_of_matrix: matrix is not square");
    PowerSumValues<T> v;
    Matrix<T> power = x;
    for (int k = 1; k <= degree; ++k) {
        if (k > 1) power = power * x;
        v.values.push_back(power.trace());
    }
    return v;
}

/// prod_i tr(X^{mu_i}).
template <typename T>
T p_mu_of_matrix(const Partition& mu, const Matrix<T>& x) {
    if (!x.square()) throw std::invalid_argument("p_mu_of_matrix: matrix is not square");
    return eval_monomial(mu, powersums_of_matrix(x, mu.empty() ? 0 : mu.row(1)));
}

/// p(a) = (a, a, ..., a).
template <typename T>
PowerSumValues<T> specialize_const(const T& a, int degree) {
    return {std::vector<T>(static_cast<std::size_t>(degree), a)};
}

/// p_infinity = (1, 0, ..., 0).
template <typename T>
PowerSumValues<T> specialize_infty(int degree) {
    if (degree < 1) throw std::invalid_argument("specialize_infty: degree must be at least 1");
    PowerSumValues<T> v{std::vector<T>(static_cast<std::size_t>(degree), ScalarTraits<T>::zero())};
    v.values[0] = ScalarTraits<T>::one();
    return v;
}

/// (dim lambda / |lambda|!) * prod over cells of (a + content).
template <typename T>
T content_product_eval(const Partition& lambda, const T& a) {
    T acc = ScalarTraits<T>::from_rational(dim_over_factorial(lambda));
    for (const Cell& c : cells(lambda)) acc *= a + ScalarTraits<T>::from_rational(Rational(c.content()));
    return acc;
}

/// omega: p_k -> (-1)^{k-1} p_k, which sends s_lambda to s_{lambda'}.
template <typename T>
PowerSumValues<T> omega(const PowerSumValues<T>& v) {
    PowerSumValues<T> w = v;
    for (std::size_t k = 1; k < w.values.size(); k += 2) w.values[k] = ScalarTraits<T>::zero() - w.values[k];
    return w;
}

}  // namespace taulab
