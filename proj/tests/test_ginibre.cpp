#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "taulab/ginibre.hpp"

using namespace taulab;
using namespace taulab::testing;

TEST(Sampler, IsDeterministicInSeed) {
    const EnsembleSpec spec{2, 3};
    const auto a = sample(spec, 42);
    const auto b = sample(spec, 42);
    const auto c = sample(spec, 43);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_TRUE(a[0] == b[0] && a[1] == b[1]);
    EXPECT_FALSE(a[0] == c[0]);
    EXPECT_FALSE(a[0] == a[1]);
    EXPECT_THROW(sample({0, 3}, 1), std::invalid_argument);
}

TEST(Sampler, EntryMoments) {
    const int size = 4;
    const EnsembleSpec spec{1, size};
    auto entry = [](const std::vector<ComplexMatrix>& z) { return z[0](1, 2); };
    auto abs2 = [](const std::vector<ComplexMatrix>& z) { return std::complex<double>(std::norm(z[0](1, 2)), 0.0); };
    auto holo = [](const std::vector<ComplexMatrix>& z) { return z[0](1, 2) * z[0](3, 0); };
    auto square = [](const std::vector<ComplexMatrix>& z) { return z[0](2, 2) * z[0](2, 2); };
    const std::size_t samples = 100000;
    const auto m1 = mc_expect_fn(entry, spec, samples, 1);
    EXPECT_TRUE(m1.agrees_with(0.0, 4.0)) << m1.mean;
    const auto m2 = mc_expect_fn(abs2, spec, samples, 2);
    EXPECT_TRUE(m2.agrees_with(1.0 / size, 4.0)) << m2.mean << " +- " << m2.standard_error;
    const auto m3 = mc_expect_fn(holo, spec, samples, 3);
    EXPECT_TRUE(m3.agrees_with(0.0, 4.0)) << m3.mean;
    const auto m4 = mc_expect_fn(square, spec, samples, 4);
    EXPECT_TRUE(m4.agrees_with(0.0, 4.0)) << m4.mean;
}

TEST(MonteCarlo, ReproducibleAcrossThreadCounts) {
    const auto src = SourceAssignment<Rational>::identity(1, 3);
    const auto obs = parse_observable("tr(Z1 Zd1 Z1 Zd1)", src);
    setenv("TAULAB_THREADS", "1", 1);
    const auto a = mc_expect(obs, {1, 3}, 2000, 9);
    setenv("TAULAB_THREADS", "4", 1);
    const auto b = mc_expect(obs, {1, 3}, 2000, 9);
    unsetenv("TAULAB_THREADS");
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.standard_error, b.standard_error);
    EXPECT_EQ(a.samples, 2000u);
}

TEST(MonteCarlo, AgreesWithWick) {
    std::mt19937_64 rng(12);
    const auto src = random_diagonal_sources(rng, 2, 4);
    for (const char* q : {"tr(Z1) tr(Zd1)", "tr(Z1)", "tr(Z1 C1 Zd1 C-1)", "tr(Z1 Zd1 Z2 Zd2)"}) {
        const auto obs = parse_observable(q, src);
        const auto exact = wick_exact(obs, 4).value;
        const auto mc = mc_expect(obs, {2, 4}, 10000, 77);
        EXPECT_TRUE(mc.agrees_with({exact.get_d(), 0.0}, 5.0)) << q << " mc=" << mc.mean << " exact=" << exact;
    }
    EXPECT_THROW(mc_expect(parse_observable("tr(Z1)", src), {1, 4}, 99, 1), std::invalid_argument);
    EXPECT_THROW(mc_expect(parse_observable("tr(Z2)", src), {1, 4}, 100, 1), std::invalid_argument);
}

TEST(SchurIntegral, ConstantMatchesDefinition) {
    EXPECT_EQ(schur_integral_constant(Partition{1}, 1, 2), Rational(1, 2));
    // (dim/d!)^{-n} N^{-n|lambda|}: (2,1) has dim/3! = 1/3.
    EXPECT_EQ(schur_integral_constant(Partition{2, 1}, 2, 3), Rational(1, 81));
}

TEST(SchurIntegral, OneEdgeExamples) {
    const auto g = segment();
    const auto id = SourceAssignment<Rational>::identity(1, 2);
    const auto s = schur_integral_vertex(g, id, {{1}, {1}});
    EXPECT_EQ(s.lhs, 1);
    EXPECT_EQ(s.rhs, 1);
    EXPECT_TRUE(s.within_stability);

    const auto mismatch = schur_integral_vertex(g, id, {{1}, {2}});
    EXPECT_EQ(mismatch.lhs, 0);
    EXPECT_EQ(mismatch.rhs, 0);

    SourceAssignment<Rational> diag{3, {}};
    diag.sources.emplace(1, Matrix<Rational>::diagonal({Rational(1, 2), Rational(2), Rational(-3)}));
    diag.sources.emplace(-1, Matrix<Rational>::diagonal({Rational(5), Rational(1, 3), Rational(1)}));
    const auto two = schur_integral_vertex(g, diag, {{2}, {2}});
    EXPECT_TRUE(two.holds()) << two.lhs << " vs " << two.rhs;
    EXPECT_NE(two.lhs, 0);
}

TEST(SchurIntegral, FaceExamples) {
    const auto id = SourceAssignment<Rational>::identity(1, 3);
    const auto f = schur_integral_face(loop(), id, {{1}, {1}});
    EXPECT_TRUE(f.holds());
    const auto v = schur_integral_vertex(dual(loop()), id, {{1}, {1}});
    EXPECT_EQ(f.lhs, v.lhs);
    EXPECT_EQ(f.rhs, v.rhs);
    const auto m = schur_integral_face(loop(), id, {{1}, {1, 1}});
    EXPECT_EQ(m.lhs, 0);
    EXPECT_EQ(m.rhs, 0);
}

TEST(SchurIntegral, StabilityFlag) {
    const auto id = SourceAssignment<Rational>::identity(1, 1);
    const auto s = schur_integral_vertex(segment(), id, {{1, 1}, {1, 1}});
    EXPECT_FALSE(s.within_stability);
    EXPECT_THROW(schur_integral_vertex(segment(), id, {{1}}), std::invalid_argument);
}

TEST(SchurIntegral, HoldsOnSmallConnectedGraphs) {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 2; ++n)
        for (const auto& g : all_graphs(n, true)) {
            const auto src = random_diagonal_sources(rng, n, 3);
            for (const auto& lam : partitions_up_to(2)) {
                if (lam.empty()) continue;
                std::vector<Partition> same(static_cast<std::size_t>(g.num_vertices()), lam);
                const auto s = schur_integral_vertex(g, src, same);
                EXPECT_TRUE(s.holds()) << "n=" << n << " v=" << g.num_vertices() << " lambda=" << lam;
                std::vector<Partition> faces(static_cast<std::size_t>(g.num_faces()), lam);
                const auto f = schur_integral_face(g, src, faces);
                EXPECT_TRUE(f.holds());
            }
        }
}

TEST(SchurIntegral, GeneralSourcesOnTorus) {
    std::mt19937_64 rng(8);
    SourceAssignment<Rational> src{3, {}};
    for (int h : labels(2)) {
        Matrix<Rational> m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = random_rational(rng, 2, 2);
        src.sources.emplace(h, m);
    }
    for (const auto& lam : {Partition{1}, Partition{2}, Partition{1, 1}}) {
        const auto s = schur_integral_vertex(torus(), src, {lam});
        EXPECT_TRUE(s.holds()) << lam << ": " << s.lhs << " vs " << s.rhs;
    }
}

TEST(Polygons, OneEdgeExamples) {
    const auto g = segment();
    SourceAssignment<Rational> src{3, {}};
    src.sources.emplace(1, Matrix<Rational>::diagonal({Rational(1), Rational(2), Rational(1, 2)}));
    src.sources.emplace(-1, Matrix<Rational>::diagonal({Rational(3), Rational(-1), Rational(1)}));
    const auto d1 = polygon_gluing_identity(g, src, {{1}});
    EXPECT_EQ(d1.lhs, src.at(1).trace() * src.at(-1).trace() / 3);
    EXPECT_TRUE(d1.holds());
    for (const auto& mu : partitions_of(2)) {
        const auto d2 = polygon_gluing_identity(g, src, {mu});
        EXPECT_TRUE(d2.holds()) << mu << ": " << d2.lhs << " " << d2.rhs_hurwitz << " " << d2.rhs_characters;
    }
}

TEST(Polygons, IdentitySourcesGiveRationalEquality) {
    for (const auto& g : all_graphs(2, true)) {
        const auto id = SourceAssignment<Rational>::identity(2, 3);
        for (const auto& mu : partitions_of(2)) {
            std::vector<Partition> mus(static_cast<std::size_t>(g.num_faces()), mu);
            EXPECT_TRUE(polygon_gluing_identity(g, id, mus).holds());
        }
    }
}

TEST(Polygons, Validation) {
    const auto id = SourceAssignment<Rational>::identity(1, 2);
    EXPECT_THROW(polygon_gluing_identity(loop(), id, {{1}}), std::invalid_argument);
    EXPECT_THROW(polygon_gluing_identity(loop(), id, {{1}, {2}}), std::invalid_argument);
    EXPECT_FALSE(polygon_gluing_identity(segment(), SourceAssignment<Rational>::identity(1, 1), {{2}}).within_stability);
}
