/**
 * @file exactlin.hpp
 * @brief Exact linear algebra over prime fields F_p with p < 2^31.
 *
 * Residues are stored as std::uint64_t in [0, p). Products of two residues
 * fit in 62 bits, so every multiplication needs a single reduction.
 */
#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace segid {

using residue = std::uint64_t;

/// Three primes just below 2^31, largest first.
inline constexpr std::array<std::uint64_t, 3> default_primes{2147483647ULL, 2147483629ULL,
                                                              2147483587ULL};

/// Deterministic trial-division primality test; adequate for moduli below 2^32.
constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/**
 * Arithmetic in F_p. The modulus is shared configuration for one computation;
 * all matrices and vectors of that computation use the same field.
 */
class PrimeField {
  public:
    using value_type = residue;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (1ULL << 31) || !is_prime(p))
            throw std::invalid_argument("PrimeField: modulus must be a prime below 2^31, got " +
                                        std::to_string(p));
    }

    [[nodiscard]] std::uint64_t modulus() const noexcept { return p_; }

    [[nodiscard]] residue zero() const noexcept { return 0; }
    [[nodiscard]] residue one() const noexcept { return 1; }
    [[nodiscard]] residue reduce(std::uint64_t x) const noexcept { return x % p_; }
    [[nodiscard]] residue from_signed(std::int64_t x) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        auto r = x % m;
        return static_cast<residue>(r < 0 ? r + m : r);
    }
    [[nodiscard]] residue add(residue a, residue b) const noexcept {
        residue s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    [[nodiscard]] residue sub(residue a, residue b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    [[nodiscard]] residue neg(residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] residue mul(residue a, residue b) const noexcept { return (a * b) % p_; }

    [[nodiscard]] residue pow(residue a, std::uint64_t e) const noexcept {
        residue r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    [[nodiscard]] residue inv(residue a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

  private:
    std::uint64_t p_;
};

/**
 * Commutative ring interface used by the multilinear contraction kernels.
 * Both PrimeField and DualRing model it.
 */
template <class R>
concept CommutativeRing = requires(const R& r, typename R::value_type a, typename R::value_type b) {
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.one() } -> std::convertible_to<typename R::value_type>;
    { r.add(a, b) } -> std::convertible_to<typename R::value_type>;
    { r.mul(a, b) } -> std::convertible_to<typename R::value_type>;
};

/// Dense row-major matrix over F_p.
class FieldMatrix {
  public:
    FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

    FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<residue> entries)
        : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw std::invalid_argument("FieldMatrix: entries length != rows * cols");
        for (auto& e : entries_) e = field_.reduce(e);
    }

    static FieldMatrix identity(PrimeField field, std::size_t n) {
        FieldMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::span<const residue> entries() const noexcept { return entries_; }

    residue& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
    residue operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[i * cols_ + j];
    }

    [[nodiscard]] std::span<residue> row(std::size_t i) noexcept {
        return {entries_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const residue> row(std::size_t i) const noexcept {
        return {entries_.data() + i * cols_, cols_};
    }

    /// Overwrites row i; values are reduced mod p.
    void set_row(std::size_t i, std::span<const residue> values) {
        if (values.size() != cols_) throw std::invalid_argument("FieldMatrix::set_row: length");
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = field_.reduce(values[j]);
    }

    [[nodiscard]] FieldMatrix transpose() const {
        FieldMatrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

  private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<residue> entries_;
};

inline FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows() || !(a.field() == b.field()))
        throw std::invalid_argument("FieldMatrix product: incompatible operands");
    const auto& f = a.field();
    FieldMatrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const residue ail = a(i, l);
            if (ail == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(ail, b(l, j)));
        }
    return c;
}

/// Matrix-vector product m·v.
inline std::vector<residue> apply(const FieldMatrix& m, std::span<const residue> v) {
    if (v.size() != m.cols()) throw std::invalid_argument("apply: vector length != cols");
    const auto& f = m.field();
    std::vector<residue> out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        residue acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

/// Dot product of two equal-length residue vectors.
inline residue dot(const PrimeField& f, std::span<const residue> a, std::span<const residue> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    residue acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

namespace detail {

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(FieldMatrix& m) {
    const auto& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
        std::size_t sel = prow;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != prow)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(prow, j));
        const residue scale = f.inv(m(prow, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(prow, j) = f.mul(m(prow, j), scale);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == prow) continue;
            const residue factor = m(i, col);
            if (factor == 0) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(prow, j)));
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

}  // namespace detail

/// Rank over F_p by Gaussian elimination (first nonzero entry as pivot).
inline std::size_t ff_rank(FieldMatrix m) {
    const auto& f = m.field();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t sel = rank;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != rank)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(sel, j), m(rank, j));
        const residue scale = f.inv(m(rank, col));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            const residue factor = f.mul(m(i, col), scale);
            if (factor == 0) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(rank, j)));
        }
        ++rank;
    }
    return rank;
}

/**
 * Basis of the right null space {v : m·v = 0}. The basis has cols − rank
 * vectors; vector t has a 1 in the t-th free column and zeros in the other
 * free columns.
 */
inline std::vector<std::vector<residue>> ff_kernel(FieldMatrix m) {
    const auto& f = m.field();
    const auto pivots = detail::rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<residue>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<residue> v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/**
 * Reproducible sample stream. The engine is std::mt19937_64, whose output
 * sequence is fixed by the C++ standard; uniform residues are drawn by
 * rejection sampling so no implementation-defined distribution is involved.
 */
class Rng {
  public:
    static constexpr const char* generator_name = "mt19937_64";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound).
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::uniform_below: bound must be positive");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % bound;
    }

    /// Uniform element of F_p \ {0}.
    residue nonzero_residue(const PrimeField& f) { return 1 + uniform_below(f.modulus() - 1); }

    /// Uniform element of F_p.
    residue any_residue(const PrimeField& f) { return uniform_below(f.modulus()); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Vector of `len` independent uniform nonzero residues.
inline std::vector<residue> random_unit_vector(Rng& rng, const PrimeField& f, std::size_t len) {
    if (len == 0) throw std::invalid_argument("random_unit_vector: len must be >= 1");
    std::vector<residue> v(len);
    for (auto& x : v) x = rng.nonzero_residue(f);
    return v;
}

/// Uniformly random matrix conditioned on being invertible.
inline FieldMatrix random_invertible(Rng& rng, const PrimeField& f, std::size_t n) {
    for (;;) {
        FieldMatrix g(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.any_residue(f);
        if (ff_rank(g) == n) return g;
    }
}

/// SplitMix64 finalizer; used to derive independent per-cell seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a sequence of keys into one seed: s = mix64(s ^ key) for each key.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t s = mix64(master);
    for (auto k : keys) s = mix64(s ^ k);
    return s;
}

}  // namespace segid
