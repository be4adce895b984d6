/**
 * @file commands.hpp
 * @brief The `segid` command line: bounds, probe, sweep and reproduce.
 *
 * Exit codes: 0 certified or consistent, 1 counter-evidence found (or a
 * sweep cell failed), 2 usage error.
 *
 * Per-sample seeds are derived from the master seed as
 * derive_seed(master, {fnv1a(shape string), k, prime, replicate}).
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segid/bounds.hpp"
#include "segid/certificate.hpp"
#include "segid/exactlin.hpp"
#include "segid/segre.hpp"
#include "segid/tangency.hpp"
#include "segid/terracini.hpp"

namespace segid::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_counter_evidence = 1;
inline constexpr int exit_usage = 2;

/// Environment variable naming the default certificate store directory.
inline constexpr const char* store_env_var = "SEGID_STORE";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

/// Parses "A..B" (or a single "A"); B < A is an empty range and a usage error.
inline Range parse_range(const std::string& s) {
    Range r;
    try {
        const auto dots = s.find("..");
        std::size_t used = 0;
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoul(s, &used);
            if (used != s.size()) throw UsageError("bad range");
        } else {
            const auto a = s.substr(0, dots), b = s.substr(dots + 2);
            r.lo = std::stoul(a, &used);
            if (used != a.size()) throw UsageError("bad range");
            r.hi = std::stoul(b, &used);
            if (used != b.size()) throw UsageError("bad range");
        }
    } catch (const std::logic_error&) {
        throw UsageError("malformed range '" + s + "', expected A..B");
    }
    if (r.hi < r.lo) throw UsageError("empty range '" + s + "'");
    return r;
}

inline std::vector<std::size_t> parse_dims(const std::string& s) {
    std::vector<std::size_t> dims;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            dims.push_back(std::stoul(item, &used));
            if (used != item.size()) throw UsageError("bad shape");
        } catch (const std::logic_error&) {
            throw UsageError("malformed shape '" + s + "', expected n1,n2,...");
        }
    }
    return dims;
}

inline std::uint64_t sample_seed(std::uint64_t master, const ProductShape& shape, std::size_t k,
                                 std::uint64_t prime, std::size_t replicate) {
    return derive_seed(master, {fnv1a(shape.to_string()), k, prime, replicate});
}

/// Largest k >= 0 with (dim X + 1)(k + 1) <= r + 1, i.e. expected_dim(k) <= r without filling early.
inline std::size_t sweep_k_limit(const ProductShape& shape) {
    return shape.ambient_size() / (shape.dim() + 1) - 1;
}

// ---------------------------------------------------------------- summaries

struct CellSummary {
    ProductShape shape;
    std::size_t k = 0;
    std::vector<Certificate> certificates;
    DefectStatus defect = DefectStatus::NonDefective;
    Verdict verdict;
    std::string error;  ///< non-empty when the cell failed

    [[nodiscard]] bool counter_evidence() const {
        if (!error.empty()) return false;
        return std::any_of(certificates.begin(), certificates.end(), [](const Certificate& c) {
            return c.probe.base.defect > 0 || c.probe.evidence == ContactEvidence::WeaklyDefectiveEvidence;
        });
    }
};

inline std::vector<std::size_t> observed_dims(const CellSummary& cell) {
    std::vector<std::size_t> v;
    for (const auto& c : cell.certificates) v.push_back(c.probe.base.observed_dim);
    return v;
}

inline nlohmann::json to_json(const CellSummary& cell) {
    nlohmann::json j;
    j["kind"] = "summary";
    j["schema_version"] = schema_version;
    j["shape"] = std::vector<std::size_t>(cell.shape.factor_dims().begin(), cell.shape.factor_dims().end());
    j["k"] = cell.k;
    j["samples"] = cell.certificates.size();
    j["observed_dims"] = observed_dims(cell);
    j["expected_dim"] = expected_dim(cell.shape, cell.k);
    j["defect_status"] = cell.error.empty() ? to_string(cell.defect) : "";
    j["verdict"] = to_string(cell.verdict.status);
    j["certified_at_k"] =
        cell.verdict.certified_at_k ? nlohmann::json(*cell.verdict.certified_at_k) : nlohmann::json();
    j["citations"] = cell.verdict.citations;
    j["note"] = cell.verdict.note;
    j["counter_evidence"] = cell.counter_evidence();
    j["error"] = cell.error;
    return j;
}

inline void validate_summary_json(const nlohmann::json& j) {
    using detail::require;
    require(j.is_object() && j.value("kind", "") == "summary", "kind must be \"summary\"");
    require(j.contains("schema_version") && j["schema_version"] == schema_version, "unsupported schema_version");
    detail::require_uint_array(j, "shape");
    detail::require_uint(j, "k");
    detail::require_uint(j, "samples");
    detail::require_uint_array(j, "observed_dims");
    detail::require_uint(j, "expected_dim");
    for (const char* key : {"defect_status", "verdict", "note", "error"}) detail::require_string(j, key);
    require(verdict_status_from_string(j["verdict"].get<std::string>()).has_value(), "unknown verdict");
    require(j["certified_at_k"].is_null() || j["certified_at_k"].is_number_unsigned(), "certified_at_k type");
    require(j["counter_evidence"].is_boolean(), "counter_evidence must be boolean");
}

/// Emits one validated JSON line.
inline void emit_line(std::ostream& out, const nlohmann::json& j) {
    if (j.value("kind", "") == "certificate")
        validate_certificate_json(j);
    else if (j.value("kind", "") == "summary")
        validate_summary_json(j);
    out << j.dump() << '\n';
}

struct SampleConfig {
    std::size_t trials = 3;
    std::vector<std::uint64_t> primes{default_primes.begin(), default_primes.end()};
    std::size_t replicates = 3;
    std::uint64_t seed = 1;
};

/// All (prime, replicate) samples for one cell, in prime-major order.
inline std::vector<Certificate> run_samples(const ProductShape& shape, std::size_t k, const SampleConfig& cfg) {
    std::vector<Certificate> certs;
    for (auto p : cfg.primes)
        for (std::size_t rep = 0; rep < cfg.replicates; ++rep)
            certs.push_back(make_certificate(shape, k, cfg.trials, p, sample_seed(cfg.seed, shape, k, p, rep)));
    return certs;
}

inline std::vector<CorankResult> probes_of(std::span<const CellSummary> cells) {
    std::vector<CorankResult> probes;
    for (const auto& cell : cells)
        for (const auto& c : cell.certificates) probes.push_back(c.probe);
    return probes;
}

/// Fills defect status and verdict from the probes of `cell` plus `context` (for downward propagation).
inline void conclude(CellSummary& cell, std::span<const CorankResult> context) {
    std::vector<SecantProbeResult> bases;
    for (const auto& c : cell.certificates) bases.push_back(c.probe.base);
    if (!bases.empty()) cell.defect = defect_status(bases);
    cell.verdict = identifiability_verdict(cell.shape, cell.k, context);
}

inline void store_all(const std::optional<std::filesystem::path>& store, std::span<const Certificate> certs) {
    if (!store) return;
    for (const auto& c : certs) store_certificate(*store, c);
}

// ---------------------------------------------------------------- bounds

inline nlohmann::json bounds_row(std::size_t m) {
    using namespace bounds;
    nlohmann::json j;
    j["m"] = m;
    // Values beyond 64 bits are emitted as decimal strings.
    auto num = [](wide v) -> nlohmann::json {
        if (v <= static_cast<wide>(~std::uint64_t{0})) return static_cast<std::uint64_t>(v);
        return to_string(v);
    };
    j["k_max"] = num(k_max(m));
    j["paper_bound_max_k"] = num(paper_bound_max_k(m));
    j["amr_canonical_max_k"] = num(amr_canonical_max_k(m));
    j["amr_rewritten_cap"] = num(amr_rewritten_cap(m));
    j["amr_rewritten_max_k"] = num(amr_rewritten_max_k(m));
    std::vector<std::string> notes{amr_form_note};
    if (m == 6) notes.emplace_back(m6_prose_note);
    j["notes"] = notes;
    return j;
}

inline std::string csv_cell(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline void write_bounds(std::ostream& out, Range r, const std::string& format) {
    if (r.lo < 2 || r.hi > bounds::max_supported_m)
        throw UsageError("bounds: m must lie in [2, " + std::to_string(bounds::max_supported_m) + "]");
    static const char* cols[] = {"m", "k_max", "paper_bound_max_k", "amr_canonical_max_k", "amr_rewritten_cap",
                                 "amr_rewritten_max_k"};
    if (format == "csv") {
        out << "m,k_max,paper_bound_max_k,amr_canonical_max_k,amr_rewritten_cap,amr_rewritten_max_k,notes\n";
    }
    for (std::size_t m = r.lo; m <= r.hi; ++m) {
        const auto row = bounds_row(m);
        if (format == "json") {
            out << row.dump() << '\n';
            continue;
        }
        for (const char* c : cols) out << csv_cell(row[c]) << ',';
        std::string notes;
        for (const auto& n : row["notes"]) notes += (notes.empty() ? "" : " | ") + n.get<std::string>();
        out << '"' << notes << "\"\n";
    }
}

inline int cmd_bounds(std::ostream& out, const std::string& range, const std::string& format) {
    write_bounds(out, parse_range(range), format);
    return exit_ok;
}

// ---------------------------------------------------------------- probe

struct ProbeOptions {
    std::vector<std::size_t> dims;
    std::size_t k = 0;
    SampleConfig samples;
    std::optional<std::filesystem::path> store;
};

inline CellSummary run_probe(const ProbeOptions& opt) {
    CellSummary cell{ProductShape(opt.dims), opt.k, {}, DefectStatus::NonDefective, {}, {}};
    cell.certificates = run_samples(cell.shape, opt.k, opt.samples);
    const auto probes = probes_of(std::span<const CellSummary>(&cell, 1));
    conclude(cell, probes);
    return cell;
}

inline int cmd_probe(std::ostream& out, const ProbeOptions& opt) {
    if (opt.k < 1) throw UsageError("probe: k must be >= 1");
    if (opt.samples.trials < 1 || opt.samples.replicates < 1 || opt.samples.primes.empty())
        throw UsageError("probe: trials, replicates and primes must be non-empty");
    const auto cell = run_probe(opt);
    for (const auto& c : cell.certificates) emit_line(out, to_json(c));
    emit_line(out, to_json(cell));
    store_all(opt.store, cell.certificates);
    return cell.counter_evidence() ? exit_counter_evidence : exit_ok;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
    Range m;
    SampleConfig samples;
    std::size_t jobs = 1;
    std::string format = "csv";
    std::optional<std::filesystem::path> store;
};

/// Cells for every m in range and every 1 <= k <= sweep_k_limit, probed in parallel.
inline std::vector<CellSummary> run_sweep(const SweepOptions& opt) {
    std::vector<CellSummary> cells;
    for (std::size_t m = opt.m.lo; m <= opt.m.hi; ++m) {
        const auto shape = ProductShape::binary(m);
        for (std::size_t k = 1; k <= sweep_k_limit(shape); ++k)
            cells.push_back({shape, k, {}, DefectStatus::NonDefective, {}, {}});
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                cells[i].certificates = run_samples(cells[i].shape, cells[i].k, opt.samples);
            } catch (const std::exception& e) {
                cells[i].error = e.what();
            }
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(opt.jobs, 1, std::max<std::size_t>(1, cells.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Verdicts see every probe of the same shape, so certificates propagate downward in k.
    const auto all = probes_of(cells);
    for (auto& cell : cells) {
        if (cell.error.empty()) conclude(cell, all);
    }
    return cells;
}

inline void write_sweep_csv(std::ostream& out, std::span<const CellSummary> cells) {
    out << "m,k,expected_dim,observed_dims,defect,defect_status,coranks,verdict,certified_at_k,error\n";
    for (const auto& cell : cells) {
        const auto obs = observed_dims(cell);
        std::string obs_s, coranks_s;
        for (std::size_t i = 0; i < obs.size(); ++i) obs_s += (i ? " " : "") + std::to_string(obs[i]);
        std::size_t defect = 0;
        for (const auto& c : cell.certificates) {
            defect = std::max(defect, c.probe.base.defect);
            if (coranks_s.empty() && !c.probe.coranks.empty())
                for (std::size_t i = 0; i < c.probe.coranks.size(); ++i)
                    coranks_s += (i ? " " : "") + std::to_string(c.probe.coranks[i]);
        }
        out << cell.shape.factors() << ',' << cell.k << ',' << expected_dim(cell.shape, cell.k) << ',' << obs_s << ','
            << defect << ',' << (cell.error.empty() ? to_string(cell.defect) : "") << ',' << coranks_s << ','
            << to_string(cell.verdict.status) << ','
            << (cell.verdict.certified_at_k ? std::to_string(*cell.verdict.certified_at_k) : "") << ",\""
            << cell.error << "\"\n";
    }
}

inline int cmd_sweep(std::ostream& out, std::ostream& err, const SweepOptions& opt) {
    if (opt.m.lo < 2 || opt.m.hi > 12) throw UsageError("sweep: m must lie in [2, 12]");
    const auto cells = run_sweep(opt);
    bool failed = false, counter = false;
    for (const auto& cell : cells) {
        if (!cell.error.empty()) {
            failed = true;
            err << "cell m=" << cell.shape.factors() << " k=" << cell.k << " failed: " << cell.error << '\n';
        }
        counter |= cell.counter_evidence();
        store_all(opt.store, cell.certificates);
    }
    if (opt.format == "json") {
        for (const auto& cell : cells) {
            for (const auto& c : cell.certificates) {
                auto j = to_json(c);
                j["wall_time_ms"] = 0.0;  // keeps sweep output byte-identical across runs
                emit_line(out, j);
            }
            emit_line(out, to_json(cell));
        }
    } else {
        write_sweep_csv(out, cells);
    }
    return (failed || counter) ? exit_counter_evidence : exit_ok;
}

// ---------------------------------------------------------------- reproduce

inline constexpr const char* m6_k9_note =
    "k=9 is not certifiable: dimX*k+dimX+k = 69 > 63 = r, so the dimension count rules it out; "
    "the largest meaningful k at m=6 is 8";

/// (P^1)^5, k = 4: kernel dimension 2, contact corank 1 at each point, known exception.
inline int reproduce_m5k4(std::ostream& out, std::uint64_t seed) {
    const auto shape = ProductShape::binary(5);
    const std::size_t k = 4;
    bool ok = true;
    for (auto p : default_primes) {
        const PrimeField f(p);
        Rng rng(sample_seed(seed, shape, k, p, 0));
        const auto pts = random_points(shape, k + 1, rng, f);
        const auto tm = terracini_matrix(f, shape, pts);
        const std::size_t rank = ff_rank(tm);
        const auto basis = tangent_hyperplanes(f, shape, pts);
        const auto coeffs = random_unit_vector(rng, f, basis.size());
        const auto h = combine(f, basis, coeffs);
        std::vector<std::size_t> coranks;
        for (const auto& q : pts) coranks.push_back(contact_corank(f, shape, h, q));
        CorankResult probe;
        probe.base = {shape, k, rank - 1, expected_dim(shape, k), 0, p, rng.seed(), 1};
        probe.base.defect = probe.base.expected_dim - probe.base.observed_dim;
        probe.kernel_dim = basis.size();
        probe.coranks = coranks;
        probe.evidence = ContactEvidence::WeaklyDefectiveEvidence;
        const CorankResult probes[] = {probe};
        const auto verdict = identifiability_verdict(shape, k, probes);
        const bool match = tm.rows() == 30 && tm.cols() == 32 && rank == 30 && basis.size() == 2 &&
                           coranks == std::vector<std::size_t>(5, 1) &&
                           verdict.status == VerdictStatus::KnownExceptionSecantOrder2;
        ok &= match;
        nlohmann::json j{{"case", "m5k4"},
                         {"prime", p},
                         {"seed", rng.seed()},
                         {"terracini_rows", tm.rows()},
                         {"terracini_cols", tm.cols()},
                         {"rank", rank},
                         {"kernel_dim", basis.size()},
                         {"hyperplane_coefficients", coeffs},
                         {"coranks", coranks},
                         {"verdict", to_string(verdict.status)},
                         {"citations", verdict.citations},
                         {"matches_expected", match}};
        out << j.dump() << '\n';
    }
    return ok ? exit_ok : exit_counter_evidence;
}

struct M6Row {
    std::size_t k = 0;
    VerdictStatus status = VerdictStatus::Undetermined;
    VerdictStatus dimension_verdict = VerdictStatus::Undetermined;
    std::optional<std::size_t> certified_at_k;
    std::string note;
};

/// Certifies k = 8 at m = 6 and propagates down; k = 9 is reported Undetermined.
inline std::vector<M6Row> m6_table(std::uint64_t seed, std::vector<Certificate>* certs_out = nullptr) {
    const auto shape = ProductShape::binary(6);
    SampleConfig cfg;
    cfg.seed = seed;
    cfg.replicates = 1;
    const auto certs = run_samples(shape, 8, cfg);
    std::vector<CorankResult> probes;
    for (const auto& c : certs) probes.push_back(c.probe);
    if (certs_out) *certs_out = certs;

    std::vector<M6Row> rows;
    for (std::size_t k = 1; k <= 9; ++k) {
        const auto v = identifiability_verdict(shape, k, probes);
        M6Row row{k, v.status, v.status, v.certified_at_k, v.note};
        if (k == 9) {
            row.status = VerdictStatus::Undetermined;
            row.note = m6_k9_note;
        }
        rows.push_back(row);
    }
    return rows;
}

inline int reproduce_m6table(std::ostream& out, std::uint64_t seed) {
    std::vector<Certificate> certs;
    const auto rows = m6_table(seed, &certs);
    for (const auto& c : certs) {
        auto j = to_json(c);
        j["wall_time_ms"] = 0.0;
        emit_line(out, j);
    }
    bool ok = true;
    for (const auto& r : rows) {
        const bool expect_certified = r.k <= 8;
        const bool match = expect_certified ? r.status == VerdictStatus::IdentifiableCertified
                                            : r.status == VerdictStatus::Undetermined;
        ok &= match;
        nlohmann::json j{{"case", "m6table"},
                         {"k", r.k},
                         {"status", to_string(r.status)},
                         {"dimension_count_verdict", to_string(r.dimension_verdict)},
                         {"certified_at_k", r.certified_at_k ? nlohmann::json(*r.certified_at_k) : nlohmann::json()},
                         {"note", r.note},
                         {"matches_expected", match}};
        out << j.dump() << '\n';
    }
    return ok ? exit_ok : exit_counter_evidence;
}

inline int reproduce_bounds_table(std::ostream& out) {
    write_bounds(out, Range{5, 12}, "csv");
    const auto row = bounds_row(10);
    const bool ok = row["k_max"] == 92 && row["paper_bound_max_k"] == 50 && row["amr_canonical_max_k"] == 15 &&
                    row["amr_rewritten_cap"] == 22;
    return ok ? exit_ok : exit_counter_evidence;
}

inline int cmd_reproduce(std::ostream& out, const std::string& which, std::uint64_t seed) {
    if (which == "m5k4") return reproduce_m5k4(out, seed);
    if (which == "m6table") return reproduce_m6table(out, seed);
    if (which == "bounds-table") return reproduce_bounds_table(out);
    throw UsageError("reproduce: unknown case '" + which + "' (expected m5k4, m6table or bounds-table)");
}

// ---------------------------------------------------------------- entry point

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact F_p certificates for secant dimensions and identifiability of Segre products"};
    app.require_subcommand(1);

    std::string bounds_range, bounds_format = "csv";
    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form ranges for (P^1)^m");
    bounds_cmd->add_option("-m", bounds_range, "range A..B of m")->required();
    bounds_cmd->add_option("--format", bounds_format)->check(CLI::IsMember({"csv", "json"}));

    ProbeOptions probe;
    std::optional<std::size_t> binary_m;
    std::string shape_str, primes_str, probe_store;
    auto* probe_cmd = app.add_subcommand("probe", "Probe secant dimension and contact loci for one (shape, k)");
    auto* bin_opt = probe_cmd->add_option("--binary", binary_m, "number m of P^1 factors");
    auto* shape_opt = probe_cmd->add_option("--shape", shape_str, "factor dimensions n1,n2,...");
    bin_opt->excludes(shape_opt);
    probe_cmd->add_option("-k", probe.k, "secant index")->required();
    probe_cmd->add_option("--trials", probe.samples.trials);
    probe_cmd->add_option("--replicates", probe.samples.replicates, "seeds per prime");
    probe_cmd->add_option("--primes", primes_str, "comma-separated primes below 2^31");
    probe_cmd->add_option("--seed", probe.samples.seed, "master seed");
    probe_cmd->add_option("--store", probe_store, "certificate store directory (default $SEGID_STORE)");

    SweepOptions sweep;
    std::string sweep_range, sweep_primes, sweep_store;
    auto* sweep_cmd = app.add_subcommand("sweep", "Probe every k for (P^1)^m over a range of m");
    sweep_cmd->add_option("-m", sweep_range, "range A..B of m")->required();
    sweep_cmd->add_option("--seed", sweep.samples.seed, "master seed");
    sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads");
    sweep_cmd->add_option("--trials", sweep.samples.trials);
    sweep_cmd->add_option("--replicates", sweep.samples.replicates, "seeds per prime");
    sweep_cmd->add_option("--primes", sweep_primes, "comma-separated primes below 2^31");
    sweep_cmd->add_option("--format", sweep.format)->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--store", sweep_store, "certificate store directory (default $SEGID_STORE)");

    std::string case_id;
    std::uint64_t reproduce_seed = 1;
    auto* reproduce_cmd = app.add_subcommand("reproduce", "Reproduce a reference computation");
    reproduce_cmd->add_option("case", case_id, "m5k4 | m6table | bounds-table")->required();
    reproduce_cmd->add_option("--seed", reproduce_seed, "master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_usage;
    }

    auto parse_primes = [](const std::string& s) {
        std::vector<std::uint64_t> ps;
        for (auto d : parse_dims(s)) {
            if (d >= (1ULL << 31) || !is_prime(d)) throw UsageError("not a prime below 2^31: " + std::to_string(d));
            ps.push_back(d);
        }
        if (ps.empty()) throw UsageError("empty prime list");
        return ps;
    };
    auto resolve_store = [](const std::string& flag) -> std::optional<std::filesystem::path> {
        if (!flag.empty()) return std::filesystem::path(flag);
        if (const char* env = std::getenv(store_env_var); env && *env) return std::filesystem::path(env);
        return std::nullopt;
    };

    try {
        if (*bounds_cmd) return cmd_bounds(out, bounds_range, bounds_format);
        if (*probe_cmd) {
            if (binary_m) {
                probe.dims.assign(*binary_m, 1);
            } else if (!shape_str.empty()) {
                probe.dims = parse_dims(shape_str);
            } else {
                throw UsageError("probe: one of --binary or --shape is required");
            }
            try {
                (void)ProductShape(probe.dims);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (!primes_str.empty()) probe.samples.primes = parse_primes(primes_str);
            probe.store = resolve_store(probe_store);
            return cmd_probe(out, probe);
        }
        if (*sweep_cmd) {
            sweep.m = parse_range(sweep_range);
            if (!sweep_primes.empty()) sweep.samples.primes = parse_primes(sweep_primes);
            sweep.store = resolve_store(sweep_store);
            return cmd_sweep(out, err, sweep);
        }
        if (*reproduce_cmd) return cmd_reproduce(out, case_id, reproduce_seed);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace segid::cli
