/**
 * @file bounds.hpp
 * @brief Closed-form identifiability ranges for binary products (P^1)^m.
 *
 * All arithmetic is exact on unsigned 128-bit integers, which holds 2^m for
 * every supported m.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace segid::bounds {

using wide = unsigned __int128;

inline constexpr std::size_t max_supported_m = 120;

inline void check_m(std::size_t m) {
    if (m < 2 || m > max_supported_m)
        throw std::invalid_argument("bounds: m must be in [2, " + std::to_string(max_supported_m) + "]");
}

inline wide pow2(std::size_t e) { return wide{1} << e; }

/// ⌊sqrt(n)⌋ by Newton iteration on integers.
inline wide isqrt(wide n) {
    if (n < 2) return n;
    wide x = n, y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

/// ⌈log2(n)⌉ for n >= 1.
inline std::size_t ceil_log2(wide n) {
    std::size_t c = 0;
    while ((wide{1} << c) < n) ++c;
    return c;
}

inline std::string to_string(wide v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

/// Largest k for which identifiability can hold at all: ⌊2^m/(m+1)⌋ − 1.
inline wide k_max(std::size_t m) {
    check_m(m);
    const wide q = pow2(m) / (m + 1);
    return q - 1;
}

/// (k+1)·m ≤ 2^(m−1).
inline bool paper_bound_holds(std::size_t m, wide k) {
    check_m(m);
    if (k < 1) throw std::invalid_argument("bounds: k must be >= 1");
    return (k + 1) * m <= pow2(m - 1);
}

/// Largest k with (k+1)·m ≤ 2^(m−1); 0 when no k >= 1 qualifies.
inline wide paper_bound_max_k(std::size_t m) {
    check_m(m);
    const wide q = pow2(m - 1) / m;
    return q >= 2 ? q - 1 : 0;
}

struct AmrEvaluation {
    bool canonical = false;  ///< m > 2⌈log2(k+1)⌉ + 1
    bool rewritten = false;  ///< k + 1 ≤ 2^((m−1)/2)
};

/// k + 1 ≤ 2^((m−1)/2), decided as (k+1)^2 ≤ 2^(m−1).
inline bool amr_rewritten_holds(std::size_t m, wide k) { return (k + 1) * (k + 1) <= pow2(m - 1); }

inline AmrEvaluation amr_bound_holds(std::size_t m, wide k) {
    check_m(m);
    if (k < 1) throw std::invalid_argument("bounds: k must be >= 1");
    return {m > 2 * ceil_log2(k + 1) + 1, amr_rewritten_holds(m, k)};
}

/// Canonical form: ⌈log2(k+1)⌉ ≤ ⌊(m−2)/2⌋, so max k = 2^⌊(m−2)/2⌋ − 1 (0 if none).
inline wide amr_canonical_max_k(std::size_t m) {
    check_m(m);
    return pow2((m - 2) / 2) - 1;
}

/// ⌊2^((m−1)/2)⌋, the cap on k+1 in the rewritten form.
inline wide amr_rewritten_cap(std::size_t m) {
    check_m(m);
    return isqrt(pow2(m - 1));
}

/// Rewritten form as a bound on k: cap − 1 (0 if none).
inline wide amr_rewritten_max_k(std::size_t m) {
    const wide cap = amr_rewritten_cap(m);
    return cap >= 2 ? cap - 1 : 0;
}

enum class Regime {
    TheoremIdentifiable,
    KnownException,
    BeyondKmax,
    ConjecturedIdentifiable,
    SmallM,
};

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::TheoremIdentifiable: return "TheoremIdentifiable";
        case Regime::KnownException: return "KnownException";
        case Regime::BeyondKmax: return "BeyondKmax";
        case Regime::ConjecturedIdentifiable: return "ConjecturedIdentifiable";
        case Regime::SmallM: return "SmallM";
    }
    return "?";
}

struct RegimeReport {
    std::size_t m = 0;
    wide k = 0;
    wide k_max = 0;
    wide paper_bound_max_k = 0;
    wide amr_canonical_max_k = 0;
    wide amr_rewritten_cap = 0;
    wide amr_rewritten_max_k = 0;
    Regime regime = Regime::SmallM;
    std::vector<std::string> citations;
};

inline RegimeReport classify(std::size_t m, wide k) {
    check_m(m);
    if (k < 1) throw std::invalid_argument("bounds: k must be >= 1");
    RegimeReport rep{m,
                     k,
                     k_max(m),
                     paper_bound_max_k(m),
                     amr_canonical_max_k(m),
                     amr_rewritten_cap(m),
                     amr_rewritten_max_k(m),
                     Regime::SmallM,
                     {}};
    if (m == 5 && k == 4) {
        rep.regime = Regime::KnownException;
        rep.citations = {"(P1)^5 has 4th secant order 2"};
    } else if (k > rep.k_max) {
        rep.regime = Regime::BeyondKmax;
        rep.citations = {"dimension count: (m+1)(k+1) > 2^m"};
    } else if (m <= 5) {
        rep.regime = Regime::SmallM;
        rep.citations = {"m <= 5: decide by computational probes"};
    } else if (paper_bound_holds(m, k)) {
        rep.regime = Regime::TheoremIdentifiable;
        rep.citations = {"(P1)^m, m > 5, is k-identifiable when (k+1)m <= 2^(m-1)"};
    } else {
        rep.regime = Regime::ConjecturedIdentifiable;
        rep.citations = {"conjectured k-identifiable for m > 5 and k <= k_max"};
    }
    return rep;
}

/// Discrepancy notes attached to tables.
inline constexpr const char* amr_form_note =
    "AMR canonical form m > 2*ceil(log2(k+1))+1 drives classification; the rewritten form "
    "k+1 <= 2^((m-1)/2) is looser and is reported as its cap on k+1";
inline constexpr const char* m6_prose_note =
    "m=6: k_max = 8 and the (k+1)m <= 2^(m-1) bound gives k <= 4; the values k_max = 9 and k <= 5 "
    "that appear in the literature are off by one (k = 9 violates the dimension count, 69 > 63)";

}  // namespace segid::bounds
