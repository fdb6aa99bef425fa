#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qsteer/ensembles.hpp"
#include "qsteer/io.hpp"
#include "qsteer/tradeoff.hpp"

namespace qsteer {

struct RunConfig {
    double tolerance = 1e-9;
    int restarts = 20;       // settings-optimizer restarts
    int oracle_budget = 10000;
    int workers = 0;         // 0 = hardware concurrency
    bool no_timestamp = false;
};

/// One row of a Monte Carlo verification scan.
struct ScanRecord {
    std::uint64_t sample_index = 0;
    std::uint64_t seed = 0;
    std::string ensemble;
    std::array<double, 3> f2_sq{};  // by Pair
    std::array<double, 3> f3_sq{};
    double sum_f2_sq = 0;
    double sum_f3_sq = 0;
    double bell_sq_sum = 0;
    std::optional<double> tangle;
    std::optional<double> conj_lhs;
    bool t1_pass = false;
    bool t2_pass = false;
    bool bell_pass = false;
    std::optional<bool> conj_pass;
    bool exclusivity_ok = false;

    bool all_pass() const {
        return t1_pass && t2_pass && bell_pass && conj_pass.value_or(true) && exclusivity_ok;
    }
};

inline const char* scan_csv_header() {
    return "sample_index,seed,ensemble,f2_ab,f2_ac,f2_bc,f3_ab,f3_ac,f3_bc,"
           "sum_f2,sum_f3,bell_sq_sum,tangle,conj_lhs,t1_pass,t2_pass,bell_pass,conj_pass";
}

inline std::string scan_csv_row(const ScanRecord& r) {
    std::ostringstream os;
    os << r.sample_index << ',' << r.seed << ',' << r.ensemble;
    for (int p = 0; p < 3; ++p) os << ',' << format_g17(r.f2_sq[static_cast<std::size_t>(p)]);
    for (int p = 0; p < 3; ++p) os << ',' << format_g17(r.f3_sq[static_cast<std::size_t>(p)]);
    os << ',' << format_g17(r.sum_f2_sq) << ',' << format_g17(r.sum_f3_sq) << ','
       << format_g17(r.bell_sq_sum);
    os << ',' << (r.tangle ? format_g17(*r.tangle) : std::string());
    os << ',' << (r.conj_lhs ? format_g17(*r.conj_lhs) : std::string());
    os << ',' << (r.t1_pass ? '1' : '0') << ',' << (r.t2_pass ? '1' : '0') << ','
       << (r.bell_pass ? '1' : '0');
    os << ',';
    if (r.conj_pass) os << (*r.conj_pass ? '1' : '0');
    return os.str();
}

struct ScanSummary {
    std::uint64_t count = 0;
    std::uint64_t theorem1_failures = 0;
    std::uint64_t theorem2_failures = 0;
    std::uint64_t bell_failures = 0;
    std::uint64_t conjecture_failures = 0;
    std::uint64_t exclusivity_failures = 0;
    double min_theorem1_margin = 3.0;
    double min_theorem2_margin = 3.0;
    double min_bell_margin = 12.0;
    double max_conj_lhs = 0.0;             // pure ensembles
    double max_pure_sum_f3_deviation = 0.0; // |sum_f3 - 3| over pure samples
    double max_sum_f3 = 0.0;
    std::uint64_t worst_sample_index = 0;   // argmax conj_lhs (pure) / sum_f3 (mixed)

    bool any_failure() const {
        return theorem1_failures || theorem2_failures || bell_failures || conjecture_failures ||
               exclusivity_failures;
    }
};

struct ScanResult {
    EnsembleSpec spec;
    std::vector<ScanRecord> records;
    ScanSummary summary;
    json worst_state; // replayable state file for the worst sample
};

namespace detail {

inline ScanRecord scan_one(const EnsembleSpec& spec, std::uint64_t index, const RunConfig& cfg,
                           bool conjecture) {
    ScanRecord rec;
    rec.sample_index = index;
    rec.seed = spec.seed;
    rec.ensemble = ensemble_name(spec.kind);

    TradeoffReport rep = [&] {
        if (spec.kind == EnsembleKind::GinibreMixed)
            return tradeoff_report(sample_ginibre_mixed(spec, index));
        if (spec.kind == EnsembleKind::RealCanonical)
            return tradeoff_report(sample_real_canonical(spec, index));
        return tradeoff_report(sample_haar_pure(spec, index));
    }();

    rec.f2_sq = rep.f2_sq;
    rec.f3_sq = rep.f3_sq;
    rec.sum_f2_sq = rep.sum_f2_sq;
    rec.sum_f3_sq = rep.sum_f3_sq;
    rec.bell_sq_sum = rep.sum_bell_sq;
    rec.tangle = rep.tangle;
    rec.conj_lhs = rep.complementarity_lhs;

    rec.t1_pass = check_theorem1(rep, cfg.tolerance).pass;
    rec.t2_pass = check_theorem2(rep, cfg.tolerance).pass;
    rec.bell_pass = check_bell_monogamy(rep, 10.0 * cfg.tolerance).pass;
    rec.exclusivity_ok = exclusivity_check(rep, cfg.tolerance).consistent;
    if (conjecture && rep.purity_flag)
        rec.conj_pass = *rep.complementarity_lhs <= 3.0 + cfg.tolerance;
    return rec;
}

} // namespace detail

/// Runs a verification scan; each sample uses its own (seed, index) substream,
/// so record values are identical for any worker count.
inline ScanResult run_scan(const EnsembleSpec& spec, const RunConfig& cfg, bool conjecture) {
    spec.validate();
    const std::uint64_t n = static_cast<std::uint64_t>(spec.count);

    ScanResult out;
    out.spec = spec;
    out.records.resize(n);

    unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto body = [&](unsigned w) {
        try {
            for (std::uint64_t i = w; i < n; i += workers)
                out.records[i] = detail::scan_one(spec, i, cfg, conjecture);
        } catch (...) {
            std::lock_guard<std::mutex> lk(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (workers <= 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    ScanSummary& s = out.summary;
    s.count = n;
    const bool pure_kind = spec.kind != EnsembleKind::GinibreMixed;
    double worst_key = -1.0;
    for (const ScanRecord& r : out.records) {
        if (!r.t1_pass) ++s.theorem1_failures;
        if (!r.t2_pass) ++s.theorem2_failures;
        if (!r.bell_pass) ++s.bell_failures;
        if (r.conj_pass && !*r.conj_pass) ++s.conjecture_failures;
        if (!r.exclusivity_ok) ++s.exclusivity_failures;
        s.min_theorem1_margin = std::min(s.min_theorem1_margin, 3.0 - r.sum_f2_sq);
        s.min_theorem2_margin = std::min(s.min_theorem2_margin, 3.0 - r.sum_f3_sq);
        s.min_bell_margin = std::min(s.min_bell_margin, 12.0 - r.bell_sq_sum);
        s.max_sum_f3 = std::max(s.max_sum_f3, r.sum_f3_sq);
        if (pure_kind) {
            s.max_pure_sum_f3_deviation =
                std::max(s.max_pure_sum_f3_deviation, std::abs(r.sum_f3_sq - 3.0));
            if (r.conj_lhs) s.max_conj_lhs = std::max(s.max_conj_lhs, *r.conj_lhs);
        }
        const double key = pure_kind ? r.conj_lhs.value_or(0.0) : r.sum_f3_sq;
        if (key > worst_key) {
            worst_key = key;
            s.worst_sample_index = r.sample_index;
        }
    }

    // Regenerate the worst sample (substreams make this exact) for replay.
    if (spec.kind == EnsembleKind::GinibreMixed)
        out.worst_state = state_to_json(sample_ginibre_mixed(spec, s.worst_sample_index));
    else if (spec.kind == EnsembleKind::RealCanonical)
        out.worst_state = state_to_json(sample_real_canonical(spec, s.worst_sample_index));
    else
        out.worst_state = state_to_json(sample_haar_pure(spec, s.worst_sample_index));
    return out;
}

inline std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// CSV body is byte-stable for a fixed (spec, tolerance); the timestamp
/// header line is the only run-dependent part and can be suppressed.
inline std::string scan_to_csv(const ScanResult& res, const RunConfig& cfg) {
    std::ostringstream os;
    if (!cfg.no_timestamp) os << "# generated " << iso8601_now() << "\n";
    os << scan_csv_header() << "\n";
    for (const ScanRecord& r : res.records) os << scan_csv_row(r) << "\n";
    return os.str();
}

inline json summary_to_json(const ScanResult& res, const RunConfig& cfg) {
    const ScanSummary& s = res.summary;
    json j = {{"schema_version", 1},
              {"ensemble", ensemble_name(res.spec.kind)},
              {"count", s.count},
              {"seed", res.spec.seed},
              {"tolerance", cfg.tolerance},
              {"failures",
               {{"theorem1", s.theorem1_failures},
                {"theorem2", s.theorem2_failures},
                {"bell_monogamy", s.bell_failures},
                {"conjecture", s.conjecture_failures},
                {"exclusivity", s.exclusivity_failures}}},
              {"min_margins",
               {{"theorem1", s.min_theorem1_margin},
                {"theorem2", s.min_theorem2_margin},
                {"bell_monogamy", s.min_bell_margin}}},
              {"max_sum_f3", s.max_sum_f3},
              {"worst_sample_index", s.worst_sample_index}};
    if (res.spec.kind != EnsembleKind::GinibreMixed) {
        j["max_conjecture_lhs"] = s.max_conj_lhs;
        j["max_pure_sum_f3_deviation"] = s.max_pure_sum_f3_deviation;
    }
    if (res.spec.kind == EnsembleKind::GinibreMixed) j["rank"] = res.spec.rank;
    return j;
}

} // namespace qsteer
