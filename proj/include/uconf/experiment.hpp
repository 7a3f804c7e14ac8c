#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uconf/alignment.hpp"
#include "uconf/synth.hpp"

namespace uconf {

// Runs fn(0..count-1) on `workers` threads; results keep input order. After
// all work finishes, the exception of the lowest failing index is rethrown.
template <typename R>
std::vector<R> parallel_map(std::size_t count, std::size_t workers, const std::function<R(std::size_t)>& fn);

enum class TraceStatus { ok, explosion, unreachable, failed };

std::string to_string(TraceStatus s);

struct TraceReport {
    CaseId case_id;
    TraceStatus status = TraceStatus::ok;
    std::string message;
    // Lower bound via the behavior net; present unless that search failed.
    std::optional<BoundResult> lower;
    // Upper bound by enumeration; present only when status == ok.
    std::optional<ConformanceBounds> bruteforce;
    double behavior_ms = 0.0;
    double bruteforce_ms = 0.0;
};

struct BoundsConfig {
    AlignOptions align;
    std::size_t realization_cap = 10'000;
    std::size_t workers = 1;
};

struct BoundsReport {
    std::vector<TraceReport> traces;
    // Totals over traces with status ok.
    std::uint64_t lower_total = 0;
    std::uint64_t upper_total = 0;
    std::size_t completed = 0;
    std::size_t exploded = 0;
    std::size_t failed = 0;
};

/*
 * Per trace: lower bound through the behavior net, then both bounds by
 * brute force. The two lower bounds must agree; a mismatch throws
 * internal_consistency_error. Errors in one trace do not affect the others.
 */
BoundsReport compute_bounds(const SimpleUncertainLog& log, const SystemNet& model, const BoundsConfig& config);

std::string bounds_json(const BoundsReport& report);
// Columns: case,status,lower,upper,realizations,lower_witness,upper_witness
std::string bounds_csv(const BoundsReport& report);

struct SweepConfig {
    std::size_t n = 10;
    std::size_t traces = 250;
    std::vector<double> ps{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    DeviationParams deviations;
    std::uint64_t seed = 1;
    Timestamp interval_radius = 3 * kMillisPerDay / 2;
    BoundsConfig bounds;
};

/*
 * Totals and means cover only the traces that completed at every p of the
 * sweep (`common` of them), so rows stay comparable when high-p rows lose
 * traces to the realization cap. `completed` and `exploded` are per row.
 */
struct ExperimentRecord {
    double p = 0.0;
    std::size_t n = 0;
    std::size_t traces = 0;
    std::size_t completed = 0;
    std::size_t exploded = 0;
    std::size_t common = 0;
    std::uint64_t lower_total = 0;
    std::uint64_t upper_total = 0;
    double lower_mean = 0.0;
    double upper_mean = 0.0;
    double elapsed_bruteforce_ms = 0.0;
    double elapsed_behavior_ms = 0.0;
    std::uint64_t seed = 0;
};

// The certain, deviated log every row of a sweep starts from.
struct SweepInput {
    SystemNet model;
    TimedLog log;
};

SweepInput sweep_input(std::size_t n, std::size_t traces, const DeviationParams& deviations, std::uint64_t seed);

// One row per p, in the order given.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config);

// Timing columns are appended only when with_timings is set, so the default
// output is byte-identical across runs.
std::string sweep_csv(const std::vector<ExperimentRecord>& rows, bool with_timings = false);

struct PerfConfig {
    std::vector<std::size_t> ns{5, 8, 12};
    std::size_t traces = 100;
    double p = 0.2;
    DeviationParams deviations;
    std::uint64_t seed = 1;
    Timestamp interval_radius = 3 * kMillisPerDay / 2;
    BoundsConfig bounds;
};

struct PerfRecord {
    std::size_t n = 0;
    std::size_t traces = 0;
    std::size_t completed = 0;
    std::size_t exploded = 0;
    std::uint64_t lower_total = 0;
    double bruteforce_total_ms = 0.0;
    double behavior_total_ms = 0.0;
    double bruteforce_median_ms = 0.0;
    double behavior_median_ms = 0.0;
    std::uint64_t seed = 0;

    // behavior time / brute-force time, totals over completed traces
    double ratio() const { return bruteforce_total_ms > 0 ? behavior_total_ms / bruteforce_total_ms : 0.0; }
};

/*
 * For every n: time the brute-force minimum against the behavior-net lower
 * bound on the same traces. Unequal costs throw internal_consistency_error.
 */
std::vector<PerfRecord> run_perf(const PerfConfig& config);

std::string perf_csv(const std::vector<PerfRecord>& rows);

} // namespace uconf

#include "uconf/detail/parallel_map.hpp"
