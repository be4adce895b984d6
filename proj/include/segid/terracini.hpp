/**
 * @file terracini.hpp
 * @brief Secant variety dimensions from ranks of Terracini matrices.
 *
 * The tangent space to S^k(X) at a general point of <P_0,...,P_k> is the
 * span of the tangent spaces T_{X,P_i}, so dim S^k(X) + 1 is the rank of
 * the matrix stacking tangent-space bases at k+1 general points. Rank only
 * drops under specialization, hence a sample over F_p reaching the expected
 * rank certifies the generic (characteristic 0) value.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "segid/exactlin.hpp"
#include "segid/segre.hpp"

namespace segid {

/// Expected dimension min(r, (k+1)(dim X + 1) - 1) of S^k(X).
inline std::size_t expected_dim(const ProductShape& shape, std::size_t k) {
    const std::size_t naive = (k + 1) * (shape.dim() + 1) - 1;
    return std::min(shape.ambient_dim(), naive);
}

/// dim X·k + dim X + k, the dimension of the abstract secant variety.
inline std::size_t abstract_secant_dim(const ProductShape& shape, std::size_t k) {
    return shape.dim() * k + shape.dim() + k;
}

/**
 * Basis of the affine tangent cone at q: the embedded point followed by the
 * slot substitutions q_1 ⊗ .. ⊗ e_j ⊗ .. ⊗ q_m for every j except the first
 * index where q_i is nonzero. That omitted substitution is a combination of
 * the point and the kept ones, so the 1 + Σ n_i rows span the same space as
 * the full tangent frame.
 */
inline std::vector<std::vector<residue>> tangent_basis(const PrimeField& f, const ProductShape& shape,
                                                       const PointTuple& q) {
    check_matches(shape, q);
    std::vector<std::vector<residue>> basis;
    basis.reserve(shape.dim() + 1);
    basis.push_back(segre_embed(f, shape, q));
    auto slots = q.factors;
    for (std::size_t i = 0; i < shape.factors(); ++i) {
        const auto saved = slots[i];
        const auto lead = static_cast<std::size_t>(
            std::find_if(saved.begin(), saved.end(), [](residue x) { return x != 0; }) - saved.begin());
        for (std::size_t j = 0; j < shape.factor_size(i); ++j) {
            if (j == lead) continue;
            std::vector<residue> e(shape.factor_size(i), 0);
            e[j] = 1;
            slots[i] = std::move(e);
            basis.push_back(kronecker(f, std::span<const std::vector<residue>>(slots)));
        }
        slots[i] = saved;
    }
    return basis;
}

/// Stacks tangent_basis of every point: (k+1)(dim X + 1) rows by r + 1 columns.
inline FieldMatrix terracini_matrix(const PrimeField& f, const ProductShape& shape,
                                    std::span<const PointTuple> points) {
    FieldMatrix m(f, points.size() * (shape.dim() + 1), shape.ambient_size());
    std::size_t row = 0;
    for (const auto& q : points) {
        for (const auto& v : tangent_basis(f, shape, q)) m.set_row(row++, v);
    }
    return m;
}

/// k+1 random points with all coordinates nonzero.
inline std::vector<PointTuple> random_points(const ProductShape& shape, std::size_t count, Rng& rng,
                                             const PrimeField& f) {
    std::vector<PointTuple> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(random_point(shape, rng, f));
    return pts;
}

struct SecantProbeResult {
    ProductShape shape;
    std::size_t k = 0;
    std::size_t observed_dim = 0;
    std::size_t expected_dim = 0;
    std::size_t defect = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;

    friend bool operator==(const SecantProbeResult&, const SecantProbeResult&) = default;
};

/**
 * observed_dim = max over `trials` samples of rank(Terracini) - 1, each
 * sample drawing k+1 fresh points from `rng`. Stops early once the expected
 * dimension is reached.
 */
inline SecantProbeResult secant_dim_probe(const ProductShape& shape, std::size_t k, std::size_t trials,
                                          Rng& rng, const PrimeField& f) {
    if (k < 1) throw std::invalid_argument("secant_dim_probe: k must be >= 1");
    if (trials < 1) throw std::invalid_argument("secant_dim_probe: trials must be >= 1");
    SecantProbeResult res{shape, k, 0, expected_dim(shape, k), 0, f.modulus(), rng.seed(), trials};
    for (std::size_t t = 0; t < trials; ++t) {
        const auto pts = random_points(shape, k + 1, rng, f);
        const std::size_t rank = ff_rank(terracini_matrix(f, shape, pts));
        res.observed_dim = std::max(res.observed_dim, rank - 1);
        if (res.observed_dim >= res.expected_dim) break;
    }
    if (res.observed_dim > res.expected_dim)
        throw std::logic_error("secant_dim_probe: observed dimension exceeds expected dimension");
    res.defect = res.expected_dim - res.observed_dim;
    return res;
}

enum class DefectStatus {
    NonDefective,            ///< some sample reached the expected dimension
    DefectCandidate,         ///< deficient, but not yet reproduced widely enough
    DefectiveEvidence,       ///< deficient on >= 3 primes and >= 3 seeds, same observed value
};

inline const char* to_string(DefectStatus s) {
    switch (s) {
        case DefectStatus::NonDefective: return "non-defective (certified)";
        case DefectStatus::DefectCandidate: return "defect candidate";
        case DefectStatus::DefectiveEvidence: return "defective (computational evidence)";
    }
    return "?";
}

inline constexpr std::size_t min_primes_for_defect_evidence = 3;
inline constexpr std::size_t min_seeds_for_defect_evidence = 3;

/// Multi-prime escalation policy over results for one (shape, k).
inline DefectStatus defect_status(std::span<const SecantProbeResult> results) {
    if (results.empty()) throw std::invalid_argument("defect_status: no results");
    std::vector<std::uint64_t> primes, seeds;
    for (const auto& r : results) {
        if (!(r.shape == results.front().shape) || r.k != results.front().k)
            throw std::invalid_argument("defect_status: results for different (shape, k)");
        if (r.defect == 0) return DefectStatus::NonDefective;
        primes.push_back(r.prime);
        seeds.push_back(r.seed);
    }
    const bool agree = std::all_of(results.begin(), results.end(), [&](const auto& r) {
        return r.observed_dim == results.front().observed_dim;
    });
    auto distinct = [](std::vector<std::uint64_t> v) {
        std::sort(v.begin(), v.end());
        return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
    };
    if (agree && distinct(primes) >= min_primes_for_defect_evidence &&
        distinct(seeds) >= min_seeds_for_defect_evidence)
        return DefectStatus::DefectiveEvidence;
    return DefectStatus::DefectCandidate;
}

}  // namespace segid
