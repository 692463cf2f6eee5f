#pragma once

// Normalised symmetric-group characters phi_lambda(mu), defined through
//   s_lambda = (dim lambda / d!) * sum_mu phi_lambda(mu) p_mu,
// and the centraliser orders zeta_mu.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "taulab/partitions.hpp"
#include "taulab/rational.hpp"
#include "taulab/symfunc.hpp"

namespace taulab {

/// prod_i m_i! i^{m_i}; also the automorphism count of the polygon collection mu.
inline Integer zeta(const Partition& mu) {
    Integer z = 1;
    const auto m = mu.multiplicities();
    for (std::size_t i = 1; i < m.size(); ++i) {
        z *= factorial(static_cast<unsigned long>(m[i]));
        Integer ip;
        mpz_ui_pow_ui(ip.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(m[i]));
        z *= ip;
    }
    return z;
}

/// Extracted from the Schur polynomial: (d! / dim lambda) * [p_mu] s_lambda.
inline Rational phi(const Partition& lambda, const Partition& mu) {
    if (lambda.weight() != mu.weight())
        throw std::invalid_argument("phi: weight mismatch between " + to_string(lambda) + " and " + to_string(mu));
    const PowerSumPolynomial s = schur_in_powersums(lambda, lambda.weight());
    Rational r = s.coeff(mu) / dim_over_factorial(lambda);
    r.canonicalize();
    return r;
}

/// Ordinary irreducible character chi_lambda(mu) by the Murnaghan-Nakayama rule,
/// removing border strips of length mu_1, mu_2, ... on the beta-set of lambda.
inline Integer murnaghan_nakayama(const Partition& lambda, const Partition& mu) {
    if (lambda.weight() != mu.weight()) throw std::invalid_argument("murnaghan_nakayama: weight mismatch");
    const int len = lambda.length();
    std::vector<bool> beads(static_cast<std::size_t>(lambda.weight() + len + 1), false);
    for (int i = 1; i <= len; ++i) beads[static_cast<std::size_t>(lambda.row(i) + len - i)] = true;
    auto rec = [&](auto&& self, std::size_t k) -> Integer {
        if (k == mu.parts().size()) return 1;
        const int r = mu.parts()[k];
        Integer total = 0;
        for (int b = r; b < static_cast<int>(beads.size()); ++b) {
            if (!beads[static_cast<std::size_t>(b)] || beads[static_cast<std::size_t>(b - r)]) continue;
            int between = 0;
            for (int x = b - r + 1; x < b; ++x) between += beads[static_cast<std::size_t>(x)] ? 1 : 0;
            beads[static_cast<std::size_t>(b)] = false;
            beads[static_cast<std::size_t>(b - r)] = true;
            Integer sub = self(self, k + 1);
            beads[static_cast<std::size_t>(b - r)] = false;
            beads[static_cast<std::size_t>(b)] = true;
            if (between % 2) total -= sub;
            else total += sub;
        }
        return total;
    };
    return rec(rec, 0);
}

/// phi via Murnaghan-Nakayama: d! chi / (dim * zeta).
inline Rational phi_murnaghan_nakayama(const Partition& lambda, const Partition& mu) {
    Rational r(murnaghan_nakayama(lambda, mu) * factorial(static_cast<unsigned long>(lambda.weight())),
               dim_sym(lambda) * zeta(mu));
    r.canonicalize();
    return r;
}

/// Full table of phi_lambda(mu) for one weight, both indices in partitions_of order.
class NormalizedCharacterTable {
public:
    explicit NormalizedCharacterTable(int d) : d_(d), parts_(partitions_of(d)) {
        if (d < 1) throw std::invalid_argument("character_table: weight must be at least 1");
        for (const Partition& lambda : parts_) {
            const PowerSumPolynomial s = schur_in_powersums(lambda, d);
            const Rational norm = dim_over_factorial(lambda);
            std::vector<Rational> row;
            row.reserve(parts_.size());
            for (const Partition& mu : parts_) {
                Rational v = s.coeff(mu) / norm;
                v.canonicalize();
                row.push_back(std::move(v));
            }
            table_.push_back(std::move(row));
            index_.emplace(lambda, table_.size() - 1);
        }
    }

    [[nodiscard]] int weight() const { return d_; }
    [[nodiscard]] const std::vector<Partition>& partitions() const { return parts_; }
    [[nodiscard]] std::size_t index(const Partition& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw std::invalid_argument("partition " + to_string(p) + " not of weight " + std::to_string(d_));
        return it->second;
    }
    [[nodiscard]] const Rational& at(std::size_t lambda, std::size_t mu) const { return table_[lambda][mu]; }
    [[nodiscard]] const Rational& operator()(const Partition& lambda, const Partition& mu) const {
        return table_[index(lambda)][index(mu)];
    }

private:
    int d_;
    std::vector<Partition> parts_;
    std::map<Partition, std::size_t> index_;
    std::vector<std::vector<Rational>> table_;
};

/// Memoised, immutable tables shared between callers.
inline std::shared_ptr<const NormalizedCharacterTable> character_table(int d) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const NormalizedCharacterTable>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(d); it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const NormalizedCharacterTable>(d);
    std::lock_guard lock(mutex);
    return cache.emplace(d, std::move(table)).first->second;
}

/// Row orthogonality residual check:
///   zeta_Delta * sum_lambda (dim/d!)^2 phi_lambda(mu) phi_lambda(Delta) == delta_{Delta,mu}.
inline bool check_orthogonality_first(const NormalizedCharacterTable& t) {
    const auto& ps = t.partitions();
    std::vector<Rational> w;
    for (const auto& lambda : ps) w.push_back(pow(dim_over_factorial(lambda), 2));
    for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = 0; b < ps.size(); ++b) {
            Rational sum = 0;
            for (std::size_t l = 0; l < ps.size(); ++l) sum += w[l] * t.at(l, a) * t.at(l, b);
            sum *= Rational(zeta(ps[b]));
            if (sum != (a == b ? 1 : 0)) return false;
        }
    return true;
}

///   (dim lambda/d!)^2 * sum_Delta zeta_Delta phi_lambda(Delta) phi_mu(Delta) == delta_{lambda,mu}.
inline bool check_orthogonality_second(const NormalizedCharacterTable& t) {
    const auto& ps = t.partitions();
    std::vector<Rational> z;
    for (const auto& delta : ps) z.push_back(Rational(zeta(delta)));
    for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = 0; b < ps.size(); ++b) {
            Rational sum = 0;
            for (std::size_t k = 0; k < ps.size(); ++k) sum += z[k] * t.at(a, k) * t.at(b, k);
            sum *= pow(dim_over_factorial(ps[a]), 2);
            if (sum != (a == b ? 1 : 0)) return false;
        }
    return true;
}

}  // namespace taulab
