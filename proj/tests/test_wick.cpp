#include <gtest/gtest.h>

#include <map>
#include <random>
#include <tuple>

#include "support.hpp"
#include "taulab/wick.hpp"

using namespace taulab;
using namespace taulab::testing;

namespace {

// Independent oracle: expand every trace into explicit matrix entries and
// take the Gaussian moment of each monomial. A monomial prod z_k prod conj(z_l)
// has moment N^{-#z} * prod_key count(key)! when every key (a, i, j) occurs as
// often conjugated as not, and 0 otherwise.
Rational entrywise_expectation(const Observable<Rational>& obs, int size) {
    using Key = std::tuple<int, int, int>;
    Rational total = 0;
    const auto n = static_cast<std::size_t>(size);
    for (const auto& term : obs.terms()) {
        std::vector<Letter> letters;
        std::vector<std::size_t> starts;
        for (const auto& w : term.traces) {
            starts.push_back(letters.size());
            letters.insert(letters.end(), w.begin(), w.end());
        }
        starts.push_back(letters.size());
        const std::size_t L = letters.size();
        // idx[k] is the row index entering letter k; its column is idx[next(k)].
        std::vector<std::size_t> next(L);
        for (std::size_t t = 0; t + 1 < starts.size(); ++t)
            for (std::size_t k = starts[t]; k < starts[t + 1]; ++k) next[k] = k + 1 < starts[t + 1] ? k + 1 : starts[t];
        std::vector<std::size_t> idx(L, 0);
        Rational term_sum = 0;
        while (true) {
            Rational coeff = term.coeff;
            std::map<Key, std::pair<int, int>> counts;
            for (std::size_t k = 0; k < L && coeff != 0; ++k) {
                const auto i = idx[k];
                const auto j = idx[next[k]];
                const Letter& l = letters[k];
                if (l.kind == Letter::Kind::Constant) {
                    coeff *= obs.constants()[static_cast<std::size_t>(l.index)](i, j);
                } else if (l.kind == Letter::Kind::Z) {
                    ++counts[{l.index, static_cast<int>(i), static_cast<int>(j)}].first;
                } else {
                    ++counts[{l.index, static_cast<int>(j), static_cast<int>(i)}].second;  // (Z^dagger)_{ij} = conj Z_{ji}
                }
            }
            if (coeff != 0) {
                Rational moment = 1;
                int pairs = 0;
                for (const auto& [key, c] : counts) {
                    if (c.first != c.second) {
                        moment = 0;
                        break;
                    }
                    moment *= Rational(factorial(static_cast<unsigned long>(c.first)));
                    pairs += c.first;
                }
                if (moment != 0) term_sum += coeff * moment * pow(Rational(size), -pairs);
            }
            std::size_t k = 0;
            for (; k < L; ++k) {
                if (++idx[k] < n) break;
                idx[k] = 0;
            }
            if (k == L) break;
        }
        // Traces without letters contribute tr(I) = N.
        for (const auto& w : term.traces)
            if (w.empty()) term_sum *= size;
        total += term_sum;
    }
    return total;
}

SourceAssignment<Rational> random_sources(std::mt19937_64& rng, int edges, int size) {
    SourceAssignment<Rational> src{size, {}};
    for (int h : labels(edges)) {
        Matrix<Rational> m(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = random_rational(rng, 3, 2);
        src.sources.emplace(h, m);
    }
    return src;
}

}  // namespace

TEST(Wick, GoldenValues) {
    const auto src = SourceAssignment<Rational>::identity(2, 3);
    EXPECT_EQ(wick_exact(parse_observable("tr(Z1) tr(Zd1)", src), 3).value, 1);
    EXPECT_EQ(wick_exact(parse_observable("tr(Z1 Zd1)", src), 3).value, 3);
    EXPECT_EQ(wick_exact(parse_observable("tr(Z1 Zd1 Z1 Zd1)", src), 3).value, 6);
    EXPECT_EQ(wick_exact(parse_observable("tr(Z1 Z1) tr(Zd1 Zd1)", src), 3).value, 2);
    EXPECT_EQ(wick_exact(parse_observable("tr(Z1) tr(Z1) tr(Zd1) tr(Zd1)", src), 3).value, 2);
    EXPECT_EQ(wick_exact(parse_observable("tr(Z1) tr(Zd2)", src), 3).value, 0);
    EXPECT_EQ(wick_exact(Observable<Rational>::one(), 3).value, 1);
}

TEST(Wick, OddMomentVanishesAndIsFlagged) {
    const auto src = SourceAssignment<Rational>::identity(1, 2);
    const auto r = wick_exact(parse_observable("tr(Z1)", src), 2);
    EXPECT_EQ(r.value, 0);
    EXPECT_FALSE(r.balanced);
    const auto r2 = wick_exact(parse_observable("tr(Z1 Z1 Zd1)", src), 2);
    EXPECT_EQ(r2.value, 0);
    EXPECT_FALSE(r2.balanced);
}

TEST(Wick, SingleContractionWithSources) {
    std::mt19937_64 rng(5);
    for (int size = 1; size <= 3; ++size) {
        const auto src = random_sources(rng, 1, size);
        const Rational expected = src.at(1).trace() * src.at(-1).trace() / size;
        EXPECT_EQ(wick_exact(parse_observable("tr(Z1 C1 Zd1 C-1)", src), size).value, expected);
    }
}

TEST(Wick, AgreesWithEntrywiseOracle) {
    std::mt19937_64 rng(21);
    const std::vector<std::string> queries{
        "tr(Z1 C1 Zd1 C-1)",
        "tr(Z1 C1) tr(Zd1 C-1)",
        "tr(Z1 C1 Z1 C-1) tr(Zd1 C1 Zd1)",
        "tr(Z1 C1 Zd1 C-1 Z1 Zd1)",
        "tr(Z1 C1 Zd2 C-2) tr(Z2 C2 Zd1 C-1)",
        "tr(Z1 Z2 C1 Zd1 Zd2 C-1)",
        "2 tr(Z1 C2 Zd1) + -1/3 tr(Z1 C1) tr(Zd1 C-2)",
        "tr(Z1 C1 Z1 Zd1 C-1 Zd1)",
    };
    for (int size = 1; size <= 2; ++size)
        for (const auto& q : queries) {
            const auto src = random_sources(rng, 2, size);
            const auto obs = parse_observable(q, src);
            EXPECT_EQ(wick_exact(obs, size).value, entrywise_expectation(obs, size)) << q << " N=" << size;
        }
}

TEST(Wick, DegreeBalance) {
    std::mt19937_64 rng(2);
    const auto src = random_sources(rng, 2, 2);
    for (const char* q : {"tr(Z1 C1 Z1 Zd1)", "tr(Z1 Zd2)", "tr(Z2 C1) tr(Z2 Zd2 C-1)", "tr(Zd1 Zd1 Z1)"}) {
        const auto r = wick_exact(parse_observable(q, src), 2);
        EXPECT_EQ(r.value, 0) << q;
        EXPECT_FALSE(r.balanced) << q;
    }
}

TEST(Wick, EnforcesPerLabelCap) {
    const auto src = SourceAssignment<Rational>::identity(1, 2);
    const auto obs = parse_observable("tr(Z1 Z1 Z1 Z1 Z1) tr(Zd1 Zd1 Zd1 Zd1 Zd1)", src);
    EXPECT_THROW(wick_exact(obs, 2), std::invalid_argument);
    WickLimits wide;
    wide.max_label_degree = 5;
    EXPECT_NO_THROW(wick_exact(obs, 2, wide));
}

TEST(Wick, ComplexSources) {
    SourceAssignment<ComplexRational> src{2, {}};
    Matrix<ComplexRational> a(2, 2), b(2, 2);
    a(0, 0) = ComplexRational(Rational(1), Rational(2));
    a(1, 1) = ComplexRational(Rational(3));
    a(0, 1) = ComplexRational(Rational(0), Rational(-1));
    b(0, 0) = ComplexRational(Rational(1, 2));
    b(1, 0) = ComplexRational(Rational(2), Rational(1));
    b(1, 1) = ComplexRational(Rational(0), Rational(1));
    src.sources.emplace(1, a);
    src.sources.emplace(-1, b);
    const auto r = wick_exact(parse_observable("tr(Z1 C1 Zd1 C-1)", src), 2);
    EXPECT_EQ(r.value, a.trace() * b.trace() / ComplexRational(Rational(2)));
}

TEST(Observable, ProductShiftsConstants) {
    std::mt19937_64 rng(9);
    const auto src = random_sources(rng, 1, 2);
    const auto x = parse_observable("tr(Z1 C1)", src);
    const auto y = parse_observable("tr(Zd1 C-1)", src);
    EXPECT_EQ(wick_exact(x * y, 2).value, wick_exact(parse_observable("tr(Z1 C1) tr(Zd1 C-1)", src), 2).value);
    EXPECT_EQ((x * y).constants().size(), 2u);
    const auto sum = parse_observable("tr(Z1 Zd1)", src) + x * y;
    EXPECT_EQ(wick_exact(sum, 2).value, Rational(2 + wick_exact(x * y, 2).value));
}

TEST(Observable, ParserErrors) {
    const auto src = SourceAssignment<Rational>::identity(1, 2);
    EXPECT_THROW(parse_observable("", src), std::invalid_argument);
    EXPECT_THROW(parse_observable("tr(Z1", src), std::invalid_argument);
    EXPECT_THROW(parse_observable("tr(Q1)", src), std::invalid_argument);
    EXPECT_THROW(parse_observable("tr(C5)", src), std::invalid_argument);
    EXPECT_THROW(parse_observable("tr(Z0)", src), std::invalid_argument);
    EXPECT_THROW(parse_observable("x tr(Z1)", src), std::invalid_argument);
    EXPECT_NO_THROW(parse_observable("1/2 tr(Z1 Zd1) + tr(C1 C-1)", src));
}

TEST(Observable, SchurObservableMatchesNumericEvaluation) {
    std::mt19937_64 rng(4);
    SourceAssignment<Rational> src = random_sources(rng, 1, 2);
    const auto obs = schur_observable(Partition{2, 1}, HalfEdgeCycle{1, -1}, src);
    std::vector<Matrix<std::complex<double>>> consts;
    for (const auto& c : obs.constants())
        consts.push_back(c.map<std::complex<double>>([](const Rational& q) { return std::complex<double>(q.get_d(), 0); }));
    const auto z = random_complex_matrix(rng, 2);
    const auto value = evaluate_observable(obs, {z}, consts, 2);
    // Direct: s_(2,1)(W) with W = Z C1 Z^dagger C-1.
    const auto c1 = src.at(1).map<std::complex<double>>([](const Rational& q) { return std::complex<double>(q.get_d(), 0); });
    const auto cm1 = src.at(-1).map<std::complex<double>>([](const Rational& q) { return std::complex<double>(q.get_d(), 0); });
    const auto w = z * c1 * z.adjoint() * cm1;
    const auto expected = eval_schur(Partition{2, 1}, powersums_of_matrix(w, 3));
    EXPECT_NEAR(std::abs(value - expected), 0.0, 1e-9 * std::max(1.0, std::abs(expected)));
}
