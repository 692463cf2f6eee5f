#include <gtest/gtest.h>

#include "taulab/characters.hpp"

using namespace taulab;

TEST(Zeta, Examples) {
    EXPECT_EQ(zeta(Partition{1, 1}), 2);
    EXPECT_EQ(zeta(Partition{2}), 2);
    EXPECT_EQ(zeta(Partition{3, 1, 1}), 6);
    EXPECT_EQ(zeta(Partition{}), 1);
}

TEST(Zeta, ClassSizesSumToFactorial) {
    for (int d = 1; d <= 9; ++d) {
        const Integer fact = factorial(static_cast<unsigned long>(d));
        Rational total = 0;
        for (const auto& mu : partitions_of(d)) {
            EXPECT_EQ(fact % zeta(mu), 0);
            total += Rational(fact) / Rational(zeta(mu));
        }
        EXPECT_EQ(total, Rational(fact));
    }
}

TEST(Phi, Examples) {
    EXPECT_EQ(phi(Partition{2}, Partition{2}), 1);
    EXPECT_EQ(phi(Partition{1, 1}, Partition{2}), -1);
    EXPECT_EQ(phi(Partition{2, 1}, Partition{3}), -1);
    EXPECT_THROW(phi(Partition{2}, Partition{1}), std::invalid_argument);
}

TEST(Phi, TrivialClassIsOne) {
    for (int d = 1; d <= 6; ++d)
        for (const auto& lam : partitions_of(d)) EXPECT_EQ(phi(lam, Partition::column(d)), 1) << lam;
}

TEST(Phi, MurnaghanNakayamaAgreesWithExtraction) {
    for (int d = 1; d <= 8; ++d) {
        const auto table = character_table(d);
        for (const auto& lam : partitions_of(d))
            for (const auto& mu : partitions_of(d)) EXPECT_EQ(phi_murnaghan_nakayama(lam, mu), (*table)(lam, mu)) << lam << mu;
    }
}

TEST(Phi, OrdinaryCharacterIsIntegral) {
    for (int d = 1; d <= 8; ++d) {
        const auto table = character_table(d);
        const Integer fact = factorial(static_cast<unsigned long>(d));
        for (const auto& lam : partitions_of(d))
            for (const auto& mu : partitions_of(d)) {
                Rational chi = Rational(dim_sym(lam)) * (*table)(lam, mu) / (Rational(fact) / Rational(zeta(mu)));
                chi.canonicalize();
                EXPECT_EQ(chi.get_den(), 1) << lam << mu;
                EXPECT_EQ(chi, Rational(murnaghan_nakayama(lam, mu)));
            }
    }
}

TEST(CharacterTable, SmallExamples) {
    const auto t1 = character_table(1);
    EXPECT_EQ((*t1)(Partition{1}, Partition{1}), 1);
    const auto t2 = character_table(2);
    EXPECT_EQ((*t2)(Partition{2}, Partition{2}), 1);
    EXPECT_EQ((*t2)(Partition{2}, Partition{1, 1}), 1);
    EXPECT_EQ((*t2)(Partition{1, 1}, Partition{2}), -1);
    EXPECT_EQ((*t2)(Partition{1, 1}, Partition{1, 1}), 1);
    EXPECT_EQ(character_table(2).get(), t2.get());
    EXPECT_THROW(static_cast<void>(t2->index(Partition{3})), std::invalid_argument);
}

TEST(CharacterTable, OrthogonalityUpToEight) {
    for (int d = 1; d <= 8; ++d) {
        const auto t = character_table(d);
        EXPECT_TRUE(check_orthogonality_first(*t)) << "d=" << d;
        EXPECT_TRUE(check_orthogonality_second(*t)) << "d=" << d;
    }
}

TEST(CharacterTable, InverseExpansionRoundTrip) {
    // p_mu == zeta_mu * sum_lambda (dim/d!) phi_lambda(mu) s_lambda
    for (int d = 1; d <= 6; ++d) {
        const auto t = character_table(d);
        for (const auto& mu : partitions_of(d)) {
            PowerSumPolynomial acc(d);
            for (const auto& lam : partitions_of(d))
                acc += (Rational(zeta(mu)) * dim_over_factorial(lam) * (*t)(lam, mu)) * schur_in_powersums(lam, d);
            EXPECT_EQ(acc, PowerSumPolynomial::monomial(mu, 1, d)) << mu;
        }
    }
}

TEST(CharacterTable, RejectsZeroWeight) { EXPECT_THROW(NormalizedCharacterTable(0), std::invalid_argument); }
