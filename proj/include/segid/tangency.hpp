/**
 * @file tangency.hpp
 * @brief Multi-tangent hyperplanes, contact loci and identifiability verdicts.
 *
 * A hyperplane h containing the tangent spaces at P_0..P_k is tangent to X
 * at q exactly when h annihilates the tangent frame at q. Those Σ(n_i+1)
 * residuals cut out the contact scheme of h; the kernel of their Jacobian in
 * an affine chart at q is the Zariski tangent space of that scheme. A zero
 * kernel at a sample certifies a finite contact locus for the general h, so
 * X is not k-weakly defective and, when r > dim X·k + dim X + k, it is
 * k-identifiable. Positive coranks are evidence only.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "segid/exactlin.hpp"
#include "segid/segre.hpp"
#include "segid/terracini.hpp"

namespace segid {

/// a + b·ε with ε² = 0.
struct Dual {
    residue re = 0;
    residue eps = 0;
    friend bool operator==(const Dual&, const Dual&) = default;
};

/// F_p[ε]/(ε²); evaluates a polynomial map together with its directional derivative.
class DualRing {
  public:
    using value_type = Dual;
    explicit DualRing(PrimeField f) : f_(f) {}
    [[nodiscard]] Dual zero() const noexcept { return {0, 0}; }
    [[nodiscard]] Dual one() const noexcept { return {1, 0}; }
    [[nodiscard]] Dual add(Dual a, Dual b) const noexcept { return {f_.add(a.re, b.re), f_.add(a.eps, b.eps)}; }
    [[nodiscard]] Dual mul(Dual a, Dual b) const noexcept {
        return {f_.mul(a.re, b.re), f_.add(f_.mul(a.re, b.eps), f_.mul(a.eps, b.re))};
    }
    [[nodiscard]] const PrimeField& field() const noexcept { return f_; }

  private:
    PrimeField f_;
};

struct HyperplaneTensor {
    std::vector<residue> coefficients;

    [[nodiscard]] bool is_zero() const noexcept {
        return std::all_of(coefficients.begin(), coefficients.end(), [](residue x) { return x == 0; });
    }
    friend bool operator==(const HyperplaneTensor&, const HyperplaneTensor&) = default;
};

/// Basis of the hyperplanes containing every tangent space T_{X,P_i}. Empty when S^k fills P^r here.
inline std::vector<HyperplaneTensor> tangent_hyperplanes(const PrimeField& f, const ProductShape& shape,
                                                         std::span<const PointTuple> points) {
    std::vector<HyperplaneTensor> out;
    for (auto& v : ff_kernel(terracini_matrix(f, shape, points))) out.push_back({std::move(v)});
    return out;
}

/// Σ c_t · basis_t.
inline HyperplaneTensor combine(const PrimeField& f, std::span<const HyperplaneTensor> basis,
                                std::span<const residue> coeffs) {
    if (basis.empty() || basis.size() != coeffs.size())
        throw std::invalid_argument("combine: basis/coefficient length mismatch");
    HyperplaneTensor h{std::vector<residue>(basis.front().coefficients.size(), 0)};
    for (std::size_t t = 0; t < basis.size(); ++t)
        for (std::size_t i = 0; i < h.coefficients.size(); ++i)
            h.coefficients[i] = f.add(h.coefficients[i], f.mul(coeffs[t], basis[t].coefficients[i]));
    return h;
}

/**
 * Residual (i, j) = h contracted with q_1 ⊗ .. ⊗ e_j ⊗ .. ⊗ q_m (e_j in slot i),
 * flattened in (i, j) order. Works over any ring the coefficients embed in.
 */
template <CommutativeRing R>
std::vector<typename R::value_type> tangency_residuals(const R& ring, const ProductShape& shape,
                                                       std::span<const typename R::value_type> h,
                                                       std::span<const std::vector<typename R::value_type>> q) {
    if (h.size() != shape.ambient_size() || q.size() != shape.factors())
        throw std::invalid_argument("tangency_residuals: shape mismatch");
    std::vector<typename R::value_type> out;
    out.reserve(shape.frame_size());
    for (std::size_t i = 0; i < shape.factors(); ++i) {
        const std::size_t keep[] = {i};
        auto part = contract_except(ring, shape, h, q, keep);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

inline std::vector<residue> tangency_residuals(const PrimeField& f, const ProductShape& shape,
                                               const HyperplaneTensor& h, const PointTuple& q) {
    check_matches(shape, q);
    return tangency_residuals(f, shape, std::span<const residue>(h.coefficients),
                              std::span<const std::vector<residue>>(q.factors));
}

/// Per factor, the index of the coordinate held fixed; the remaining coordinates are chart variables.
using Chart = std::vector<std::size_t>;

inline Chart default_chart(const ProductShape& shape) { return Chart(shape.factors(), 0); }

inline void check_chart(const ProductShape& shape, const PointTuple& q, const Chart& chart) {
    if (chart.size() != shape.factors()) throw std::invalid_argument("chart: wrong number of factors");
    for (std::size_t l = 0; l < shape.factors(); ++l) {
        if (chart[l] >= shape.factor_size(l)) throw std::invalid_argument("chart: index out of range");
        if (q.factors[l][chart[l]] == 0)
            throw std::invalid_argument("chart: fixed coordinate of the point is zero");
    }
}

/**
 * Jacobian of the residual map in the chart variables: frame_size rows,
 * dim X columns ordered by (factor l, free coordinate c). Each residual is
 * multilinear, so entry ((i,j),(l,c)) is h contracted with q where slot i
 * holds e_j and slot l holds e_c (zero when l = i).
 */
inline FieldMatrix tangency_jacobian(const PrimeField& f, const ProductShape& shape,
                                     const HyperplaneTensor& h, const PointTuple& q, const Chart& chart) {
    check_matches(shape, q);
    check_chart(shape, q, chart);
    std::vector<std::size_t> row_offset(shape.factors()), col_offset(shape.factors());
    for (std::size_t i = 1; i < shape.factors(); ++i) {
        row_offset[i] = row_offset[i - 1] + shape.factor_size(i - 1);
        col_offset[i] = col_offset[i - 1] + shape.factor_dims()[i - 1];
    }
    FieldMatrix jac(f, shape.frame_size(), shape.dim());
    const std::span<const residue> hs(h.coefficients);
    const std::span<const std::vector<residue>> qs(q.factors);
    for (std::size_t i = 0; i < shape.factors(); ++i)
        for (std::size_t l = i + 1; l < shape.factors(); ++l) {
            // Block is (size_i x size_l), row-major in (j, c); serves both (i,l) and (l,i).
            const std::size_t keep[] = {i, l};
            const auto block = contract_except(f, shape, hs, qs, keep);
            const std::size_t si = shape.factor_size(i), sl = shape.factor_size(l);
            for (std::size_t j = 0; j < si; ++j) {
                std::size_t col = col_offset[l];
                for (std::size_t c = 0; c < sl; ++c) {
                    if (c == chart[l]) continue;
                    jac(row_offset[i] + j, col++) = block[j * sl + c];
                }
            }
            for (std::size_t c = 0; c < sl; ++c) {
                std::size_t col = col_offset[i];
                for (std::size_t j = 0; j < si; ++j) {
                    if (j == chart[i]) continue;
                    jac(row_offset[l] + c, col++) = block[j * sl + c];
                }
            }
        }
    return jac;
}

/**
 * Residuals at q + ε·v under degree-1 truncation, where v is a direction in
 * the chart variables (length dim X, same column order as tangency_jacobian).
 * The ε parts equal J·v.
 */
inline std::vector<Dual> tangency_residuals_first_order(const PrimeField& f, const ProductShape& shape,
                                                        const HyperplaneTensor& h, const PointTuple& q,
                                                        const Chart& chart, std::span<const residue> v) {
    check_matches(shape, q);
    check_chart(shape, q, chart);
    if (v.size() != shape.dim()) throw std::invalid_argument("first-order residuals: direction length");
    const DualRing ring(f);
    std::vector<std::vector<Dual>> qd(shape.factors());
    std::size_t t = 0;
    for (std::size_t l = 0; l < shape.factors(); ++l)
        for (std::size_t c = 0; c < shape.factor_size(l); ++c)
            qd[l].push_back({q.factors[l][c], c == chart[l] ? 0 : v[t++]});
    std::vector<Dual> hd;
    hd.reserve(h.coefficients.size());
    for (auto x : h.coefficients) hd.push_back({x, 0});
    return tangency_residuals(ring, shape, std::span<const Dual>(hd), std::span<const std::vector<Dual>>(qd));
}

/**
 * dim X − rank J at a contact point q of h: the Zariski tangent dimension of
 * the contact scheme at q. Zero certifies that q is isolated in it.
 */
inline std::size_t contact_corank(const PrimeField& f, const ProductShape& shape, const HyperplaneTensor& h,
                                  const PointTuple& q, const Chart& chart) {
    if (h.coefficients.size() != shape.ambient_size())
        throw std::invalid_argument("contact_corank: hyperplane length != r + 1");
    if (h.is_zero()) throw std::invalid_argument("contact_corank: zero hyperplane");
    const auto res = tangency_residuals(f, shape, h, q);
    if (std::any_of(res.begin(), res.end(), [](residue x) { return x != 0; }))
        throw std::domain_error("contact_corank: hyperplane is not tangent at the given point");
    return shape.dim() - ff_rank(tangency_jacobian(f, shape, h, q, chart));
}

inline std::size_t contact_corank(const PrimeField& f, const ProductShape& shape, const HyperplaneTensor& h,
                                  const PointTuple& q) {
    return contact_corank(f, shape, h, q, default_chart(shape));
}

enum class ContactEvidence {
    Certified,                ///< some trial had corank 0 at every point
    WeaklyDefectiveEvidence,  ///< expected dimension reached, but every probed trial had a positive corank
    DefectCandidate,          ///< expected dimension never reached; coranks not probed
    NotApplicable,            ///< dim X·k + dim X + k >= r; no tangent hyperplane through general points
};

inline const char* to_string(ContactEvidence e) {
    switch (e) {
        case ContactEvidence::Certified: return "certified-not-weakly-defective";
        case ContactEvidence::WeaklyDefectiveEvidence: return "weakly-defective-evidence";
        case ContactEvidence::DefectCandidate: return "defect-candidate";
        case ContactEvidence::NotApplicable: return "not-applicable";
    }
    return "?";
}

struct CorankResult {
    SecantProbeResult base;
    ContactEvidence evidence = ContactEvidence::NotApplicable;
    std::size_t kernel_dim = 0;
    std::vector<residue> combination;     ///< coefficients of h in the kernel basis
    std::vector<std::size_t> coranks;     ///< one per point of the last probed trial
    std::size_t probed_trial = 0;         ///< 1-based index of that trial, 0 if none

    friend bool operator==(const CorankResult&, const CorankResult&) = default;
};

/**
 * Samples `trials` point sets. For each one reaching the expected secant
 * dimension, a random nonzero combination of the tangent hyperplane basis is
 * drawn and the contact corank is computed at every point; the first trial
 * with all coranks zero certifies and ends the probe.
 */
inline CorankResult weak_defectivity_probe(const ProductShape& shape, std::size_t k, std::size_t trials, Rng& rng,
                                           const PrimeField& f) {
    if (k < 1) throw std::invalid_argument("weak_defectivity_probe: k must be >= 1");
    if (trials < 1) throw std::invalid_argument("weak_defectivity_probe: trials must be >= 1");
    if (abstract_secant_dim(shape, k) >= shape.ambient_dim())
        throw std::invalid_argument("weak_defectivity_probe: requires dim X·k + dim X + k < r");

    CorankResult out;
    out.base = {shape, k, 0, expected_dim(shape, k), 0, f.modulus(), rng.seed(), trials};
    out.evidence = ContactEvidence::DefectCandidate;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto pts = random_points(shape, k + 1, rng, f);
        const auto basis = tangent_hyperplanes(f, shape, pts);
        const std::size_t observed = shape.ambient_size() - basis.size() - 1;
        out.base.observed_dim = std::max(out.base.observed_dim, observed);
        if (observed != out.base.expected_dim) continue;

        out.kernel_dim = basis.size();
        out.combination = random_unit_vector(rng, f, basis.size());
        const auto h = combine(f, basis, out.combination);
        out.coranks.clear();
        for (const auto& q : pts) out.coranks.push_back(contact_corank(f, shape, h, q));
        out.probed_trial = t + 1;
        const bool certified =
            std::all_of(out.coranks.begin(), out.coranks.end(), [](std::size_t c) { return c == 0; });
        out.evidence = certified ? ContactEvidence::Certified : ContactEvidence::WeaklyDefectiveEvidence;
        if (certified) break;
    }
    if (out.base.observed_dim > out.base.expected_dim)
        throw std::logic_error("weak_defectivity_probe: observed dimension exceeds expected dimension");
    out.base.defect = out.base.expected_dim - out.base.observed_dim;
    return out;
}

/// Runs the contact probe when it applies, otherwise only the secant dimension probe.
inline CorankResult probe_cell(const ProductShape& shape, std::size_t k, std::size_t trials, Rng& rng,
                               const PrimeField& f) {
    if (abstract_secant_dim(shape, k) < shape.ambient_dim())
        return weak_defectivity_probe(shape, k, trials, rng, f);
    CorankResult out;
    out.base = secant_dim_probe(shape, k, trials, rng, f);
    out.evidence = out.base.defect > 0 ? ContactEvidence::DefectCandidate : ContactEvidence::NotApplicable;
    return out;
}

enum class VerdictStatus {
    IdentifiableCertified,
    NotIdentifiableDimensionCount,
    KnownExceptionSecantOrder2,
    DefectCandidate,
    WeaklyDefectiveEvidence,
    Undetermined,
};

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::IdentifiableCertified: return "IdentifiableCertified";
        case VerdictStatus::NotIdentifiableDimensionCount: return "NotIdentifiableDimensionCount";
        case VerdictStatus::KnownExceptionSecantOrder2: return "KnownExceptionSecantOrder2";
        case VerdictStatus::DefectCandidate: return "DefectCandidate";
        case VerdictStatus::WeaklyDefectiveEvidence: return "WeaklyDefectiveEvidence";
        case VerdictStatus::Undetermined: return "Undetermined";
    }
    return "?";
}

inline std::optional<VerdictStatus> verdict_status_from_string(const std::string& s) {
    for (auto v : {VerdictStatus::IdentifiableCertified, VerdictStatus::NotIdentifiableDimensionCount,
                   VerdictStatus::KnownExceptionSecantOrder2, VerdictStatus::DefectCandidate,
                   VerdictStatus::WeaklyDefectiveEvidence, VerdictStatus::Undetermined})
        if (s == to_string(v)) return v;
    return std::nullopt;
}

struct Verdict {
    VerdictStatus status = VerdictStatus::Undetermined;
    ProductShape shape;
    std::size_t k = 0;
    std::optional<std::size_t> certified_at_k;  ///< k' of the corank-0 probe used, if any
    std::vector<std::string> citations;
    std::string note;
};

namespace cite {
inline constexpr const char* terracini = "Terracini lemma: tangent space of S^k is the span of tangent spaces";
inline constexpr const char* semicontinuity = "rank semicontinuity: an F_p sample reaching the generic bound certifies it";
inline constexpr const char* dimension_count =
    "abstract secant variety has dimension dimX*k+dimX+k; identifiability needs r >= that";
inline constexpr const char* not_weakly_defective_identifiable =
    "not k-weakly defective and r > dimX*k+dimX+k implies k-identifiable";
inline constexpr const char* finite_contact_locus =
    "finite contact locus of a general k-tangent hyperplane implies not k-weakly defective";
inline constexpr const char* downward_monotone = "not k-weakly defective implies not (k-1)-weakly defective";
inline constexpr const char* binary5_order2 =
    "(P1)^5: two 5-secant 4-spaces through a general point of S^4 (secant order 2)";
}  // namespace cite

/**
 * Folds probe results into a verdict for (shape, k). Rules in order:
 * dimension count, the (P^1)^5, k=4 exception, a corank-0 certificate at
 * some k' >= k (propagated downward), then whatever evidence exists at k.
 */
inline Verdict identifiability_verdict(const ProductShape& shape, std::size_t k,
                                       std::span<const CorankResult> probes) {
    Verdict v{VerdictStatus::Undetermined, shape, k, std::nullopt, {}, {}};
    const std::size_t abs_dim = abstract_secant_dim(shape, k);
    if (abs_dim > shape.ambient_dim()) {
        v.status = VerdictStatus::NotIdentifiableDimensionCount;
        v.citations = {cite::dimension_count};
        return v;
    }
    if (shape.is_binary() && shape.factors() == 5 && k == 4) {
        v.status = VerdictStatus::KnownExceptionSecantOrder2;
        v.citations = {cite::binary5_order2};
        return v;
    }
    for (const auto& p : probes) {
        if (!(p.base.shape == shape) || p.base.k < k) continue;
        if (p.evidence != ContactEvidence::Certified) continue;
        if (abstract_secant_dim(shape, p.base.k) >= shape.ambient_dim()) continue;
        if (!v.certified_at_k || p.base.k < *v.certified_at_k) v.certified_at_k = p.base.k;
    }
    if (v.certified_at_k) {
        v.status = VerdictStatus::IdentifiableCertified;
        v.citations = {cite::terracini, cite::semicontinuity, cite::finite_contact_locus,
                       cite::not_weakly_defective_identifiable};
        if (*v.certified_at_k > k) v.citations.emplace_back(cite::downward_monotone);
        return v;
    }

    bool any = false, reached = false, weak = false;
    for (const auto& p : probes) {
        if (!(p.base.shape == shape) || p.base.k != k) continue;
        any = true;
        reached |= p.base.defect == 0;
        weak |= p.evidence == ContactEvidence::WeaklyDefectiveEvidence;
    }
    if (abs_dim == shape.ambient_dim())
        v.note = "dimX*k+dimX+k = r: the contact-locus criterion does not apply";
    if (!any) {
        if (v.note.empty()) v.note = "no probe results";
        return v;
    }
    if (!reached) {
        v.status = VerdictStatus::DefectCandidate;
        v.citations = {cite::terracini};
    } else if (weak) {
        v.status = VerdictStatus::WeaklyDefectiveEvidence;
        v.citations = {cite::terracini, cite::finite_contact_locus};
    }
    return v;
}

}  // namespace segid
