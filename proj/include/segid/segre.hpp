/**
 * @file segre.hpp
 * @brief Product shapes, points, the Segre embedding and tangent frames.
 *
 * Ambient coordinates of P^{n_1} x ... x P^{n_m} are ordered
 * lexicographically with the leftmost factor varying slowest, so the
 * embedding of (q_1, ..., q_m) is the Kronecker product q_1 ⊗ ... ⊗ q_m.
 */
#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "segid/exactlin.hpp"

namespace segid {

/// Coordinate order tag recorded in certificates.
inline constexpr const char* coordinate_order = "lex-leftmost-slowest";

/// Largest ambient space we are willing to allocate dense vectors for.
inline constexpr std::size_t max_ambient_size = std::size_t{1} << 24;

class ProductShape {
  public:
    /// P^1 x P^1.
    ProductShape() : ProductShape(std::vector<std::size_t>{1, 1}) {}

    explicit ProductShape(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
        if (dims_.size() < 2) throw std::invalid_argument("ProductShape: need at least 2 factors");
        std::size_t size = 1;
        for (auto n : dims_) {
            if (n < 1) throw std::invalid_argument("ProductShape: factor dimensions must be >= 1");
            if (size > max_ambient_size / (n + 1))
                throw std::invalid_argument("ProductShape: ambient space too large");
            size *= n + 1;
        }
        ambient_size_ = size;
    }

    /// (P^1)^m.
    static ProductShape binary(std::size_t m) { return ProductShape(std::vector<std::size_t>(m, 1)); }

    [[nodiscard]] std::span<const std::size_t> factor_dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t factors() const noexcept { return dims_.size(); }
    [[nodiscard]] std::size_t factor_size(std::size_t i) const { return dims_.at(i) + 1; }
    /// Dimension of the variety X, Σ n_i.
    [[nodiscard]] std::size_t dim() const noexcept {
        return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
    }
    /// Number of tangent frame generators per point, Σ (n_i + 1).
    [[nodiscard]] std::size_t frame_size() const noexcept { return dim() + factors(); }
    /// r + 1 = Π (n_i + 1).
    [[nodiscard]] std::size_t ambient_size() const noexcept { return ambient_size_; }
    /// r.
    [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_size_ - 1; }
    [[nodiscard]] bool is_binary() const noexcept {
        for (auto n : dims_)
            if (n != 1) return false;
        return true;
    }

    /// "1,1,2" style rendering.
    [[nodiscard]] std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(dims_[i]);
        }
        return s;
    }

    friend bool operator==(const ProductShape&, const ProductShape&) = default;

  private:
    std::vector<std::size_t> dims_;
    std::size_t ambient_size_ = 0;
};

/// One coordinate vector per factor; entries are residues of the working field.
struct PointTuple {
    std::vector<std::vector<residue>> factors;

    friend bool operator==(const PointTuple&, const PointTuple&) = default;
};

inline void check_matches(const ProductShape& shape, const PointTuple& q) {
    if (q.factors.size() != shape.factors())
        throw std::invalid_argument("point has " + std::to_string(q.factors.size()) +
                                    " factors, shape has " + std::to_string(shape.factors()));
    for (std::size_t i = 0; i < shape.factors(); ++i) {
        if (q.factors[i].size() != shape.factor_size(i))
            throw std::invalid_argument("point factor " + std::to_string(i) + " has wrong length");
        bool nonzero = false;
        for (auto x : q.factors[i]) nonzero |= (x != 0);
        if (!nonzero)
            throw std::invalid_argument("point factor " + std::to_string(i) + " is the zero vector");
    }
}

/// Point whose coordinates are all nonzero, so every affine chart at it is valid.
inline PointTuple random_point(const ProductShape& shape, Rng& rng, const PrimeField& f) {
    PointTuple q;
    q.factors.reserve(shape.factors());
    for (std::size_t i = 0; i < shape.factors(); ++i)
        q.factors.push_back(random_unit_vector(rng, f, shape.factor_size(i)));
    return q;
}

/// Iterated Kronecker product over any commutative ring, leftmost factor slowest.
template <CommutativeRing R>
std::vector<typename R::value_type> kronecker(const R& ring,
                                              std::span<const std::vector<typename R::value_type>> vs) {
    std::vector<typename R::value_type> out{ring.one()};
    for (const auto& v : vs) {
        std::vector<typename R::value_type> next;
        next.reserve(out.size() * v.size());
        for (const auto& a : out)
            for (const auto& b : v) next.push_back(ring.mul(a, b));
        out = std::move(next);
    }
    return out;
}

inline std::vector<residue> segre_embed(const PrimeField& f, const ProductShape& shape,
                                        const PointTuple& q) {
    check_matches(shape, q);
    return kronecker(f, std::span<const std::vector<residue>>(q.factors));
}

/**
 * Redundant tangent frame at q: the Σ(n_i+1) vectors obtained by replacing
 * factor i with the j-th standard basis vector, ordered by (i, j). Spans the
 * affine cone over T_{X,q}, of dimension 1 + Σ n_i.
 */
inline std::vector<std::vector<residue>> tangent_frame(const PrimeField& f, const ProductShape& shape,
                                                       const PointTuple& q) {
    check_matches(shape, q);
    std::vector<std::vector<residue>> frame;
    frame.reserve(shape.frame_size());
    auto slots = q.factors;
    for (std::size_t i = 0; i < shape.factors(); ++i) {
        const auto saved = slots[i];
        for (std::size_t j = 0; j < shape.factor_size(i); ++j) {
            std::vector<residue> e(shape.factor_size(i), 0);
            e[j] = 1;
            slots[i] = std::move(e);
            frame.push_back(kronecker(f, std::span<const std::vector<residue>>(slots)));
        }
        slots[i] = saved;
    }
    return frame;
}

/// Stacks equal-length vectors as the rows of a matrix.
inline FieldMatrix stack_rows(const PrimeField& f, std::span<const std::vector<residue>> rows,
                              std::size_t cols) {
    FieldMatrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

/**
 * Contracts a tensor of the given mode sizes with `v` along `mode`; the
 * result has that mode removed.
 */
template <CommutativeRing R>
std::vector<typename R::value_type> contract_mode(const R& ring,
                                                  std::span<const typename R::value_type> tensor,
                                                  std::span<const std::size_t> sizes, std::size_t mode,
                                                  std::span<const typename R::value_type> v) {
    std::size_t outer = 1, inner = 1;
    for (std::size_t b = 0; b < mode; ++b) outer *= sizes[b];
    for (std::size_t b = mode + 1; b < sizes.size(); ++b) inner *= sizes[b];
    const std::size_t mid = sizes[mode];
    if (v.size() != mid || tensor.size() != outer * mid * inner)
        throw std::invalid_argument("contract_mode: size mismatch");
    std::vector<typename R::value_type> out(outer * inner, ring.zero());
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t j = 0; j < mid; ++j) {
            const auto vj = v[j];
            const auto* src = tensor.data() + (o * mid + j) * inner;
            auto* dst = out.data() + o * inner;
            for (std::size_t in = 0; in < inner; ++in) dst[in] = ring.add(dst[in], ring.mul(vj, src[in]));
        }
    return out;
}

/**
 * Contracts `tensor` (shaped like the ambient space of `shape`) with
 * vectors[i] along every mode i not listed in `keep`. `keep` must be sorted
 * ascending; the result is the remaining tensor in the same mode order.
 */
template <CommutativeRing R>
std::vector<typename R::value_type> contract_except(
    const R& ring, const ProductShape& shape, std::span<const typename R::value_type> tensor,
    std::span<const std::vector<typename R::value_type>> vectors, std::span<const std::size_t> keep) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < shape.factors(); ++i) sizes.push_back(shape.factor_size(i));
    std::vector<typename R::value_type> cur(tensor.begin(), tensor.end());
    // Contract from the last mode down so earlier mode indices stay valid.
    for (std::size_t i = shape.factors(); i-- > 0;) {
        bool kept = false;
        for (auto k : keep) kept |= (k == i);
        if (kept) continue;
        cur = contract_mode(ring, std::span<const typename R::value_type>(cur), sizes, i,
                            std::span<const typename R::value_type>(vectors[i]));
        sizes.erase(sizes.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return cur;
}

}  // namespace segid
