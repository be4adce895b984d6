#include <gtest/gtest.h>

#include <vector>

#include "segid/segre.hpp"
#include "segid/terracini.hpp"

namespace {

using namespace segid;

const PrimeField F(default_primes[1]);

ProductShape random_shape(Rng& rng) {
    const std::size_t m = 2 + rng.uniform_below(3);
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < m; ++i) dims.push_back(1 + rng.uniform_below(3));
    return ProductShape(dims);
}

/// Kronecker product of the factor matrices, leftmost factor slowest.
FieldMatrix kron_matrices(const PrimeField& f, const std::vector<FieldMatrix>& gs) {
    FieldMatrix out = FieldMatrix::identity(f, 1);
    for (const auto& g : gs) {
        FieldMatrix next(f, out.rows() * g.rows(), out.cols() * g.cols());
        for (std::size_t a = 0; a < out.rows(); ++a)
            for (std::size_t b = 0; b < out.cols(); ++b)
                for (std::size_t c = 0; c < g.rows(); ++c)
                    for (std::size_t d = 0; d < g.cols(); ++d)
                        next(a * g.rows() + c, b * g.cols() + d) = f.mul(out(a, b), g(c, d));
        out = std::move(next);
    }
    return out;
}

TEST(ProductShape, DerivedQuantities) {
    const auto b5 = ProductShape::binary(5);
    EXPECT_EQ(b5.ambient_dim(), 31u);
    EXPECT_EQ(b5.dim(), 5u);
    EXPECT_EQ(b5.frame_size(), 10u);
    EXPECT_TRUE(b5.is_binary());
    const ProductShape s({1, 1, 2});
    EXPECT_EQ(s.ambient_dim(), 11u);
    EXPECT_EQ(s.dim(), 4u);
    EXPECT_FALSE(s.is_binary());
    EXPECT_EQ(s.to_string(), "1,1,2");
}

TEST(ProductShape, BinaryAmbientIsTwoToTheMMinusOne) {
    for (std::size_t m = 2; m <= 16; ++m) EXPECT_EQ(ProductShape::binary(m).ambient_dim(), (1u << m) - 1);
}

TEST(ProductShape, RejectsInvalidShapes) {
    EXPECT_THROW(ProductShape({1}), std::invalid_argument);
    EXPECT_THROW(ProductShape({1, 0}), std::invalid_argument);
    EXPECT_THROW(ProductShape::binary(30), std::invalid_argument);
}

TEST(SegreEmbed, BasisPoint) {
    const PointTuple q{{{1, 0}, {1, 0}}};
    EXPECT_EQ(segre_embed(F, ProductShape::binary(2), q), (std::vector<residue>{1, 0, 0, 0}));
}

TEST(SegreEmbed, KroneckerOrderLeftmostSlowest) {
    const PointTuple q{{{1, 2}, {1, 3}}};
    EXPECT_EQ(segre_embed(F, ProductShape::binary(2), q), (std::vector<residue>{1, 3, 2, 6}));
}

TEST(SegreEmbed, ShapeMismatchThrows) {
    const auto shape = ProductShape::binary(3);
    EXPECT_THROW(segre_embed(F, shape, PointTuple{{{1, 2}, {1, 3}}}), std::invalid_argument);
    EXPECT_THROW(segre_embed(F, shape, PointTuple{{{1, 2}, {1, 3}, {1, 2, 3}}}), std::invalid_argument);
    EXPECT_THROW(segre_embed(F, shape, PointTuple{{{1, 2}, {0, 0}, {1, 1}}}), std::invalid_argument);
}

TEST(SegreEmbed, PropertyMultilinearity) {
    Rng rng(17);
    for (int t = 0; t < 120; ++t) {
        const auto shape = random_shape(rng);
        auto q = random_point(shape, rng, F);
        const auto base = segre_embed(F, shape, q);
        const std::size_t i = rng.uniform_below(shape.factors());
        const residue lambda = rng.nonzero_residue(F);
        for (auto& x : q.factors[i]) x = F.mul(x, lambda);
        const auto scaled = segre_embed(F, shape, q);
        for (std::size_t c = 0; c < base.size(); ++c) ASSERT_EQ(scaled[c], F.mul(lambda, base[c]));
    }
}

TEST(SegreEmbed, PropertyNeverZero) {
    Rng rng(18);
    for (int t = 0; t < 100; ++t) {
        const auto shape = random_shape(rng);
        const auto v = segre_embed(F, shape, random_point(shape, rng, F));
        EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](residue x) { return x != 0; }));
    }
}

TEST(TangentFrame, AtBasisPointSpansThreeCoordinates) {
    const auto shape = ProductShape::binary(2);
    const auto frame = tangent_frame(F, shape, PointTuple{{{1, 0}, {1, 0}}});
    ASSERT_EQ(frame.size(), 4u);
    // Generators: e1⊗q2 = e00, e2⊗q2 = e10, q1⊗e1 = e00, q1⊗e2 = e01.
    EXPECT_EQ(frame[0], (std::vector<residue>{1, 0, 0, 0}));
    EXPECT_EQ(frame[1], (std::vector<residue>{0, 0, 1, 0}));
    EXPECT_EQ(frame[2], (std::vector<residue>{1, 0, 0, 0}));
    EXPECT_EQ(frame[3], (std::vector<residue>{0, 1, 0, 0}));
    EXPECT_EQ(ff_rank(stack_rows(F, frame, 4)), 3u);
}

TEST(TangentFrame, PropertyRankIsOnePlusDim) {
    Rng rng(19);
    for (int t = 0; t < 120; ++t) {
        const auto shape = t < 60 ? ProductShape::binary(2 + rng.uniform_below(6)) : random_shape(rng);
        const auto frame = tangent_frame(F, shape, random_point(shape, rng, F));
        ASSERT_EQ(frame.size(), shape.frame_size());
        EXPECT_EQ(ff_rank(stack_rows(F, frame, shape.ambient_size())), shape.dim() + 1);
    }
}

TEST(TangentFrame, PropertyEulerContainment) {
    Rng rng(20);
    for (int t = 0; t < 120; ++t) {
        const auto shape = random_shape(rng);
        const auto q = random_point(shape, rng, F);
        const auto frame = tangent_frame(F, shape, q);
        const auto point = segre_embed(F, shape, q);
        // For each factor i: point = Σ_j q_i[j] · frame[(i, j)].
        std::size_t row = 0;
        for (std::size_t i = 0; i < shape.factors(); ++i) {
            std::vector<residue> acc(shape.ambient_size(), 0);
            for (std::size_t j = 0; j < shape.factor_size(i); ++j, ++row)
                for (std::size_t c = 0; c < acc.size(); ++c)
                    acc[c] = F.add(acc[c], F.mul(q.factors[i][j], frame[row][c]));
            ASSERT_EQ(acc, point);
        }
        auto with_point = frame;
        with_point.push_back(point);
        EXPECT_EQ(ff_rank(stack_rows(F, with_point, shape.ambient_size())),
                  ff_rank(stack_rows(F, frame, shape.ambient_size())));
    }
}

TEST(TangentFrame, PropertyGlEquivariance) {
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const auto shape = random_shape(rng);
        const auto q = random_point(shape, rng, F);
        std::vector<FieldMatrix> gs;
        PointTuple gq;
        for (std::size_t i = 0; i < shape.factors(); ++i) {
            gs.push_back(random_invertible(rng, F, shape.factor_size(i)));
            gq.factors.push_back(segid::apply(gs.back(), q.factors[i]));
        }
        if (std::any_of(gq.factors.begin(), gq.factors.end(), [](const auto& v) {
                return std::all_of(v.begin(), v.end(), [](residue x) { return x == 0; });
            }))
            continue;
        const auto big = kron_matrices(F, gs);
        EXPECT_EQ(segre_embed(F, shape, gq), segid::apply(big, segre_embed(F, shape, q)));

        // (⊗g)·frame(q)[(i,j)] = Σ_j' g_i[j'][j] · frame(gq)[(i,j')].
        const auto fq = tangent_frame(F, shape, q);
        const auto fgq = tangent_frame(F, shape, gq);
        std::size_t offset = 0;
        for (std::size_t i = 0; i < shape.factors(); ++i) {
            const std::size_t si = shape.factor_size(i);
            for (std::size_t j = 0; j < si; ++j) {
                std::vector<residue> rhs(shape.ambient_size(), 0);
                for (std::size_t jp = 0; jp < si; ++jp)
                    for (std::size_t c = 0; c < rhs.size(); ++c)
                        rhs[c] = F.add(rhs[c], F.mul(gs[i](jp, j), fgq[offset + jp][c]));
                ASSERT_EQ(segid::apply(big, fq[offset + j]), rhs);
            }
            offset += si;
        }
    }
}

TEST(TangentBasis, PropertySpansTheFrame) {
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        const auto shape = random_shape(rng);
        const auto q = random_point(shape, rng, F);
        auto rows = tangent_basis(F, shape, q);
        ASSERT_EQ(rows.size(), shape.dim() + 1);
        EXPECT_EQ(ff_rank(stack_rows(F, rows, shape.ambient_size())), shape.dim() + 1);
        for (auto& v : tangent_frame(F, shape, q)) rows.push_back(v);
        EXPECT_EQ(ff_rank(stack_rows(F, rows, shape.ambient_size())), shape.dim() + 1);
    }
}

TEST(ContractExcept, MatchesBruteForceSum) {
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        const auto shape = random_shape(rng);
        std::vector<residue> tensor(shape.ambient_size());
        for (auto& x : tensor) x = rng.any_residue(F);
        const auto q = random_point(shape, rng, F);
        const std::size_t keep_mode = rng.uniform_below(shape.factors());
        const std::size_t keep[] = {keep_mode};
        const auto got = contract_except(F, shape, std::span<const residue>(tensor),
                                         std::span<const std::vector<residue>>(q.factors), keep);
        ASSERT_EQ(got.size(), shape.factor_size(keep_mode));
        // Brute force: got[j] = <tensor, q with slot keep_mode replaced by e_j>.
        auto slots = q.factors;
        for (std::size_t j = 0; j < got.size(); ++j) {
            std::vector<residue> e(got.size(), 0);
            e[j] = 1;
            slots[keep_mode] = e;
            EXPECT_EQ(got[j], dot(F, tensor, kronecker(F, std::span<const std::vector<residue>>(slots))));
        }
    }
}

}  // namespace
