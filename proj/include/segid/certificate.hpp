/**
 * @file certificate.hpp
 * @brief Replayable probe certificates: JSON encoding, schema checks, replay and storage.
 *
 * A certificate is keyed by (shape, k, prime, seed, generator, trials).
 * Replaying it reruns the probe from those fields and must reproduce every
 * numeric field exactly; only wall_time_ms is exempt.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <iomanip>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "segid/exactlin.hpp"
#include "segid/segre.hpp"
#include "segid/tangency.hpp"
#include "segid/terracini.hpp"

namespace segid {

inline constexpr int schema_version = 1;

struct Certificate {
    CorankResult probe;
    Verdict verdict;
    std::string generator = Rng::generator_name;
    double wall_time_ms = 0.0;
};

/// Runs one probe cell and wraps it with its single-probe verdict.
inline Certificate make_certificate(const ProductShape& shape, std::size_t k, std::size_t trials,
                                    std::uint64_t prime, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const PrimeField f(prime);
    Rng rng(seed);
    Certificate c;
    c.probe = probe_cell(shape, k, trials, rng, f);
    const CorankResult probes[] = {c.probe};
    c.verdict = identifiability_verdict(shape, k, probes);
    c.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return c;
}

inline nlohmann::json to_json(const Certificate& c) {
    const auto& p = c.probe;
    nlohmann::json j;
    j["kind"] = "certificate";
    j["schema_version"] = schema_version;
    j["shape"] = std::vector<std::size_t>(p.base.shape.factor_dims().begin(), p.base.shape.factor_dims().end());
    j["k"] = p.base.k;
    j["prime"] = p.base.prime;
    j["seed"] = p.base.seed;
    j["generator"] = c.generator;
    j["trials"] = p.base.trials;
    j["coordinate_order"] = coordinate_order;
    j["observed_dim"] = p.base.observed_dim;
    j["expected_dim"] = p.base.expected_dim;
    j["defect"] = p.base.defect;
    j["kernel_dim"] = p.kernel_dim;
    j["hyperplane_coefficients"] = p.combination;
    j["coranks"] = p.coranks;
    j["probed_trial"] = p.probed_trial;
    j["evidence"] = to_string(p.evidence);
    j["verdict"] = to_string(c.verdict.status);
    j["certified_at_k"] = c.verdict.certified_at_k ? nlohmann::json(*c.verdict.certified_at_k) : nlohmann::json();
    j["citations"] = c.verdict.citations;
    j["note"] = c.verdict.note;
    j["wall_time_ms"] = c.wall_time_ms;
    return j;
}

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("certificate schema: " + what);
}

inline void require_uint(const nlohmann::json& j, const char* key) {
    require(j.contains(key) && j[key].is_number_unsigned(), std::string(key) + " must be a non-negative integer");
}

inline void require_uint_array(const nlohmann::json& j, const char* key) {
    require(j.contains(key) && j[key].is_array(), std::string(key) + " must be an array");
    for (const auto& x : j[key]) require(x.is_number_unsigned(), std::string(key) + " entries must be integers");
}

inline void require_string(const nlohmann::json& j, const char* key) {
    require(j.contains(key) && j[key].is_string(), std::string(key) + " must be a string");
}

inline ContactEvidence evidence_from_string(const std::string& s) {
    for (auto e : {ContactEvidence::Certified, ContactEvidence::WeaklyDefectiveEvidence,
                   ContactEvidence::DefectCandidate, ContactEvidence::NotApplicable})
        if (s == to_string(e)) return e;
    throw std::invalid_argument("certificate schema: unknown evidence '" + s + "'");
}

}  // namespace detail

/// Throws std::invalid_argument describing the first violation.
inline void validate_certificate_json(const nlohmann::json& j) {
    using namespace detail;
    require(j.is_object(), "must be an object");
    require(j.value("kind", "") == "certificate", "kind must be \"certificate\"");
    require(j.contains("schema_version") && j["schema_version"] == schema_version, "unsupported schema_version");
    require_uint_array(j, "shape");
    require(j["shape"].size() >= 2, "shape needs at least 2 factors");
    for (const char* key : {"k", "prime", "seed", "trials", "observed_dim", "expected_dim", "defect", "kernel_dim",
                            "probed_trial"})
        require_uint(j, key);
    require_uint_array(j, "hyperplane_coefficients");
    require_uint_array(j, "coranks");
    for (const char* key : {"generator", "coordinate_order", "evidence", "verdict", "note"}) require_string(j, key);
    require(j["generator"] == Rng::generator_name, "unknown generator");
    require(j["coordinate_order"] == coordinate_order, "unknown coordinate order");
    require(verdict_status_from_string(j["verdict"].get<std::string>()).has_value(), "unknown verdict");
    (void)evidence_from_string(j["evidence"].get<std::string>());
    require(j.contains("certified_at_k") && (j["certified_at_k"].is_null() || j["certified_at_k"].is_number_unsigned()),
            "certified_at_k must be null or an integer");
    require(j.contains("citations") && j["citations"].is_array(), "citations must be an array");
    for (const auto& c : j["citations"]) require(c.is_string(), "citations entries must be strings");
    require(j.contains("wall_time_ms") && j["wall_time_ms"].is_number(), "wall_time_ms must be a number");
    require(j["expected_dim"].get<std::size_t>() >= j["observed_dim"].get<std::size_t>(),
            "observed_dim exceeds expected_dim");
    require(j["defect"].get<std::size_t>() ==
                j["expected_dim"].get<std::size_t>() - j["observed_dim"].get<std::size_t>(),
            "defect != expected_dim - observed_dim");
}

/// Parses and validates; the verdict is taken as recorded (see verdict_is_consistent).
inline Certificate certificate_from_json(const nlohmann::json& j) {
    validate_certificate_json(j);
    ProductShape shape(j["shape"].get<std::vector<std::size_t>>());
    Certificate c;
    auto& p = c.probe;
    p.base = {shape,
              j["k"].get<std::size_t>(),
              j["observed_dim"].get<std::size_t>(),
              j["expected_dim"].get<std::size_t>(),
              j["defect"].get<std::size_t>(),
              j["prime"].get<std::uint64_t>(),
              j["seed"].get<std::uint64_t>(),
              j["trials"].get<std::size_t>()};
    p.kernel_dim = j["kernel_dim"].get<std::size_t>();
    p.combination = j["hyperplane_coefficients"].get<std::vector<residue>>();
    p.coranks = j["coranks"].get<std::vector<std::size_t>>();
    p.probed_trial = j["probed_trial"].get<std::size_t>();
    p.evidence = detail::evidence_from_string(j["evidence"].get<std::string>());
    c.verdict.status = *verdict_status_from_string(j["verdict"].get<std::string>());
    c.verdict.shape = shape;
    c.verdict.k = p.base.k;
    if (!j["certified_at_k"].is_null()) c.verdict.certified_at_k = j["certified_at_k"].get<std::size_t>();
    c.verdict.citations = j["citations"].get<std::vector<std::string>>();
    c.verdict.note = j["note"].get<std::string>();
    c.generator = j["generator"].get<std::string>();
    c.wall_time_ms = j["wall_time_ms"].get<double>();
    return c;
}

/// The recorded verdict equals the verdict recomputed from the numeric fields.
inline bool verdict_is_consistent(const Certificate& c) {
    const CorankResult probes[] = {c.probe};
    const auto v = identifiability_verdict(c.probe.base.shape, c.probe.base.k, probes);
    return v.status == c.verdict.status && v.certified_at_k == c.verdict.certified_at_k &&
           v.citations == c.verdict.citations && v.note == c.verdict.note;
}

/// Field-by-field equality ignoring wall time.
inline bool same_numeric_fields(const Certificate& a, const Certificate& b) {
    return a.probe == b.probe && a.generator == b.generator && a.verdict.status == b.verdict.status &&
           a.verdict.certified_at_k == b.verdict.certified_at_k;
}

/// Reruns the probe from the certificate's recorded key.
inline Certificate replay(const Certificate& c) {
    if (c.generator != Rng::generator_name)
        throw std::invalid_argument("replay: unsupported generator '" + c.generator + "'");
    const auto& b = c.probe.base;
    return make_certificate(b.shape, b.k, b.trials, b.prime, b.seed);
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Hash of the canonical JSON without wall time; used as the store file name.
inline std::string content_address(const Certificate& c) {
    auto j = to_json(c);
    j.erase("wall_time_ms");
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(j.dump());
    return os.str();
}

/// Writes `<dir>/<content address>.json`, creating dir if needed; returns the path.
inline std::filesystem::path store_certificate(const std::filesystem::path& dir, const Certificate& c) {
    std::filesystem::create_directories(dir);
    const auto path = dir / (content_address(c) + ".json");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write certificate to " + path.string());
    out << to_json(c).dump(2) << '\n';
    return path;
}

inline Certificate load_certificate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read certificate " + path.string());
    return certificate_from_json(nlohmann::json::parse(in));
}

}  // namespace segid
