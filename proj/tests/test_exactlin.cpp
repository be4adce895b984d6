#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "segid/exactlin.hpp"

namespace {

using namespace segid;

const PrimeField F(default_primes[0]);

FieldMatrix random_matrix(Rng& rng, const PrimeField& f, std::size_t rows, std::size_t cols) {
    FieldMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.any_residue(f);
    return m;
}

/// Random matrix of rank at most `rank`, with some rows/cols zeroed for variety.
FieldMatrix random_low_rank(Rng& rng, const PrimeField& f, std::size_t rows, std::size_t cols, std::size_t rank) {
    return random_matrix(rng, f, rows, rank) * random_matrix(rng, f, rank, cols);
}

TEST(PrimeField, RejectsNonPrimeAndOversizedModuli) {
    EXPECT_THROW(PrimeField(15), std::invalid_argument);
    EXPECT_THROW(PrimeField(1ULL << 31), std::invalid_argument);
    EXPECT_THROW(PrimeField(4294967291ULL), std::invalid_argument);  // prime, but >= 2^31
    EXPECT_NO_THROW(PrimeField(7));
}

TEST(PrimeField, DefaultPrimesArePrimeAndBelow2To31) {
    for (auto p : default_primes) {
        EXPECT_TRUE(is_prime(p));
        EXPECT_LT(p, 1ULL << 31);
        EXPECT_GT(p, 1ULL << 30);
    }
}

TEST(PrimeField, ArithmeticStaysReduced) {
    const auto p = F.modulus();
    EXPECT_EQ(F.add(p - 1, 1), 0u);
    EXPECT_EQ(F.sub(0, 1), p - 1);
    EXPECT_EQ(F.mul(p - 1, p - 1), 1u);
    EXPECT_EQ(F.from_signed(-1), p - 1);
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto a = rng.nonzero_residue(F);
        EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
    }
    EXPECT_THROW((void)F.inv(0), std::domain_error);
}

TEST(FfRank, Identity) { EXPECT_EQ(ff_rank(FieldMatrix::identity(F, 3)), 3u); }

TEST(FfRank, ProportionalRows) {
    const PrimeField f(7);
    EXPECT_EQ(ff_rank(FieldMatrix(f, 2, 2, {1, 2, 2, 4})), 1u);
}

TEST(FfRank, PlantedRankFiveFactorization) {
    // A (8x5) and B (5x8) are drawn until both have full rank 5; then rank(AB) = 5.
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        FieldMatrix a = random_matrix(rng, F, 8, 5), b = random_matrix(rng, F, 5, 8);
        while (ff_rank(a) != 5) a = random_matrix(rng, F, 8, 5);
        while (ff_rank(b) != 5) b = random_matrix(rng, F, 5, 8);
        EXPECT_EQ(ff_rank(a * b), 5u);
    }
}

TEST(FfRank, EmptyAndZeroMatrices) {
    EXPECT_EQ(ff_rank(FieldMatrix(F, 0, 4)), 0u);
    EXPECT_EQ(ff_rank(FieldMatrix(F, 3, 5)), 0u);
}

TEST(FfKernel, IdentityHasTrivialKernel) { EXPECT_TRUE(ff_kernel(FieldMatrix::identity(F, 3)).empty()); }

TEST(FfKernel, ZeroMatrixKernelIsEverything) {
    const auto ker = ff_kernel(FieldMatrix(F, 2, 3));
    ASSERT_EQ(ker.size(), 3u);
    EXPECT_EQ(ff_rank(FieldMatrix(F, 3, 3, {ker[0][0], ker[0][1], ker[0][2], ker[1][0], ker[1][1], ker[1][2],
                                            ker[2][0], ker[2][1], ker[2][2]})),
              3u);
}

TEST(FfKernel, PropertyRankNullityAndExactAnnihilation) {
    Rng rng(12345);
    for (int t = 0; t < 150; ++t) {
        const std::size_t rows = 1 + rng.uniform_below(12), cols = 1 + rng.uniform_below(12);
        const std::size_t rank = rng.uniform_below(std::min(rows, cols) + 1);
        const auto m = rank == 0 ? FieldMatrix(F, rows, cols) : random_low_rank(rng, F, rows, cols, rank);
        const auto ker = ff_kernel(m);
        const auto r = ff_rank(m);
        EXPECT_LE(r, rank);
        EXPECT_EQ(cols, r + ker.size());
        for (const auto& v : ker) {
            for (auto x : segid::apply(m, v)) EXPECT_EQ(x, 0u);
        }
        // Kernel vectors are independent.
        if (!ker.empty()) {
            FieldMatrix kb(F, ker.size(), cols);
            for (std::size_t i = 0; i < ker.size(); ++i) kb.set_row(i, ker[i]);
            EXPECT_EQ(ff_rank(kb), ker.size());
        }
    }
}

TEST(FfRank, PropertyTransposeInvariance) {
    Rng rng(99);
    for (int t = 0; t < 120; ++t) {
        const std::size_t rows = 1 + rng.uniform_below(10), cols = 1 + rng.uniform_below(10);
        const auto m = random_low_rank(rng, F, rows, cols, 1 + rng.uniform_below(std::min(rows, cols)));
        EXPECT_EQ(ff_rank(m), ff_rank(m.transpose()));
    }
}

TEST(FfRank, PropertyInvariantUnderInvertibleChangeOfBasis) {
    Rng rng(2024);
    for (int t = 0; t < 100; ++t) {
        const std::size_t rows = 1 + rng.uniform_below(9), cols = 1 + rng.uniform_below(9);
        const auto m = random_low_rank(rng, F, rows, cols, 1 + rng.uniform_below(std::min(rows, cols)));
        const auto p = random_invertible(rng, F, rows);
        const auto q = random_invertible(rng, F, cols);
        EXPECT_EQ(ff_rank(p * m * q), ff_rank(m));
    }
}

TEST(Rng, IdenticalSeedsGiveIdenticalStreams) {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, Mt19937_64ReferenceValue) {
    // The 10000th output of a default-seeded mt19937_64 is fixed by the C++ standard.
    Rng rng(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = rng.next_u64();
    EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(Rng, UniformBelowStaysInRange) {
    Rng rng(1);
    for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 1000ULL, (1ULL << 63) + 5}) {
        for (int i = 0; i < 200; ++i) EXPECT_LT(rng.uniform_below(bound), bound);
    }
    EXPECT_THROW(rng.uniform_below(0), std::invalid_argument);
}

TEST(RandomUnitVector, DeterministicAndNonzero) {
    Rng a(7), b(7);
    const auto va = random_unit_vector(a, F, 2);
    const auto vb = random_unit_vector(b, F, 2);
    EXPECT_EQ(va, vb);
    ASSERT_EQ(va.size(), 2u);
    for (auto x : va) {
        EXPECT_NE(x, 0u);
        EXPECT_LT(x, F.modulus());
    }
}

TEST(RandomUnitVector, DistinctSeedsAreEachDeterministic) {
    Rng a1(1), a2(1), b1(2), b2(2);
    EXPECT_EQ(random_unit_vector(a1, F, 16), random_unit_vector(a2, F, 16));
    EXPECT_EQ(random_unit_vector(b1, F, 16), random_unit_vector(b2, F, 16));
}

TEST(RandomUnitVector, ZeroLengthIsAnError) {
    Rng rng(1);
    EXPECT_THROW(random_unit_vector(rng, F, 0), std::invalid_argument);
}

TEST(RandomUnitVector, SmallFieldNeverYieldsZero) {
    const PrimeField f(3);
    Rng rng(5);
    for (auto x : random_unit_vector(rng, f, 500)) EXPECT_TRUE(x == 1 || x == 2);
}

TEST(DeriveSeed, DependsOnEveryKey) {
    const auto base = derive_seed(1, {2, 3, 4});
    EXPECT_EQ(base, derive_seed(1, {2, 3, 4}));
    EXPECT_NE(base, derive_seed(2, {2, 3, 4}));
    EXPECT_NE(base, derive_seed(1, {2, 3, 5}));
    EXPECT_NE(base, derive_seed(1, {3, 2, 4}));
}

}  // namespace
