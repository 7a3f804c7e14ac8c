#include "uconf/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "json.hpp"
#include "uconf/errors.hpp"

namespace uconf {

using nlohmann::json;

std::string to_string(TraceStatus s) {
    switch (s) {
    case TraceStatus::ok: return "ok";
    case TraceStatus::explosion: return "explosion";
    case TraceStatus::unreachable: return "unreachable";
    case TraceStatus::failed: return "failed";
    }
    return "failed";
}

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point since) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - since).count();
}

TraceReport bounds_for_trace(const SimpleUncertainTrace& trace, const SystemNet& model, const BoundsConfig& config) {
    TraceReport r;
    r.case_id = trace.case_id;
    auto record_failure = [&](TraceStatus s, const std::exception& e) {
        r.status = s;
        r.message = e.what();
    };
    try {
        auto start = clock_type::now();
        r.lower = lower_bound(trace, model, config.align);
        r.behavior_ms = elapsed_ms(start);

        start = clock_type::now();
        r.bruteforce = bounds_bruteforce(trace, model, config.realization_cap, config.align);
        r.bruteforce_ms = elapsed_ms(start);
    } catch (const explosion_error& e) {
        record_failure(TraceStatus::explosion, e);
    } catch (const unreachable_final_marking_error& e) {
        record_failure(TraceStatus::unreachable, e);
    } catch (const internal_consistency_error&) {
        throw;
    } catch (const error& e) {
        record_failure(TraceStatus::failed, e);
    }
    if (r.lower && r.bruteforce && r.lower->cost != r.bruteforce->lower) {
        throw internal_consistency_error("trace '" + trace.case_id + "': behavior-net lower bound " +
                                         std::to_string(r.lower->cost) + " differs from brute-force minimum " +
                                         std::to_string(r.bruteforce->lower));
    }
    return r;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const ActivitySequence& seq) {
    std::string out;
    for (const auto& a : seq) out += (out.empty() ? "" : " ") + a;
    return out;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

} // namespace

BoundsReport compute_bounds(const SimpleUncertainLog& log, const SystemNet& model, const BoundsConfig& config) {
    BoundsReport report;
    report.traces = parallel_map<TraceReport>(log.size(), config.workers, [&](std::size_t i) {
        return bounds_for_trace(log[i], model, config);
    });
    for (const auto& t : report.traces) {
        switch (t.status) {
        case TraceStatus::ok:
            ++report.completed;
            report.lower_total += t.lower->cost;
            report.upper_total += t.bruteforce->upper;
            break;
        case TraceStatus::explosion: ++report.exploded; break;
        default: ++report.failed; break;
        }
    }
    return report;
}

std::string bounds_json(const BoundsReport& report) {
    json traces = json::array();
    for (const auto& t : report.traces) {
        json j;
        j["case"] = t.case_id;
        j["status"] = to_string(t.status);
        if (!t.message.empty()) j["message"] = t.message;
        if (t.lower) {
            j["lower"] = t.lower->cost;
            j["lower_witness"] = t.lower->witness;
            j["lower_alignment"] = json::parse(to_json(t.lower->alignment));
        }
        if (t.bruteforce) {
            j["upper"] = t.bruteforce->upper;
            j["upper_witness"] = t.bruteforce->upper_witness;
            j["realizations"] = t.bruteforce->realization_count;
        }
        traces.push_back(std::move(j));
    }
    json out;
    out["lower_total"] = report.lower_total;
    out["upper_total"] = report.upper_total;
    out["completed"] = report.completed;
    out["exploded"] = report.exploded;
    out["failed"] = report.failed;
    out["traces"] = std::move(traces);
    return out.dump(2) + "\n";
}

std::string bounds_csv(const BoundsReport& report) {
    std::string out = "case,status,lower,upper,realizations,lower_witness,upper_witness\n";
    for (const auto& t : report.traces) {
        out += csv_field(t.case_id) + "," + to_string(t.status) + ",";
        out += (t.lower ? std::to_string(t.lower->cost) : "") + ",";
        out += (t.bruteforce ? std::to_string(t.bruteforce->upper) : "") + ",";
        out += (t.bruteforce ? std::to_string(t.bruteforce->realization_count) : "") + ",";
        out += (t.lower ? csv_field(join(t.lower->witness)) : "") + ",";
        out += (t.bruteforce ? csv_field(join(t.bruteforce->upper_witness)) : "") + "\n";
    }
    return out;
}

SweepInput sweep_input(std::size_t n, std::size_t traces, const DeviationParams& deviations, std::uint64_t seed) {
    SweepInput in{generate_model(n, seed), {}};
    in.log = inject_deviations(playout(in.model, traces, seed), deviations, alphabet(in.model), seed);
    return in;
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config) {
    const SweepInput in = sweep_input(config.n, config.traces, config.deviations, config.seed);
    std::vector<BoundsReport> reports;
    for (double p : config.ps) {
        UncertaintyParams up{p, alphabet(in.model), config.interval_radius};
        reports.push_back(compute_bounds(inject_uncertainty(in.log, up, config.seed), in.model, config.bounds));
    }
    std::vector<bool> common(in.log.size(), true);
    for (const auto& report : reports) {
        for (std::size_t i = 0; i < common.size(); ++i) {
            if (report.traces[i].status != TraceStatus::ok) common[i] = false;
        }
    }
    const auto shared = static_cast<std::size_t>(std::count(common.begin(), common.end(), true));

    std::vector<ExperimentRecord> rows;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const BoundsReport& report = reports[k];
        ExperimentRecord r;
        r.p = config.ps[k];
        r.n = config.n;
        r.traces = report.traces.size();
        r.completed = report.completed;
        r.exploded = report.exploded;
        r.common = shared;
        for (std::size_t i = 0; i < report.traces.size(); ++i) {
            const auto& t = report.traces[i];
            r.elapsed_behavior_ms += t.behavior_ms;
            r.elapsed_bruteforce_ms += t.bruteforce_ms;
            if (!common[i]) continue;
            r.lower_total += t.lower->cost;
            r.upper_total += t.bruteforce->upper;
        }
        if (shared) {
            r.lower_mean = static_cast<double>(r.lower_total) / static_cast<double>(shared);
            r.upper_mean = static_cast<double>(r.upper_total) / static_cast<double>(shared);
        }
        r.seed = config.seed;
        rows.push_back(r);
    }
    return rows;
}

std::string sweep_csv(const std::vector<ExperimentRecord>& rows, bool with_timings) {
    std::string out = "p,n,traces,completed,exploded,common,lower_total,upper_total,lower_mean,upper_mean,seed";
    out += with_timings ? ",elapsed_bruteforce_ms,elapsed_behavior_ms\n" : "\n";
    for (const auto& r : rows) {
        out += fmt("%g", r.p) + "," + std::to_string(r.n) + "," + std::to_string(r.traces) + "," +
               std::to_string(r.completed) + "," + std::to_string(r.exploded) + "," + std::to_string(r.common) + "," +
               std::to_string(r.lower_total) + "," + std::to_string(r.upper_total) + "," + fmt("%.4f", r.lower_mean) + "," + fmt("%.4f", r.upper_mean) +
               "," + std::to_string(r.seed);
        if (with_timings) out += "," + fmt("%.3f", r.elapsed_bruteforce_ms) + "," + fmt("%.3f", r.elapsed_behavior_ms);
        out += "\n";
    }
    return out;
}

std::vector<PerfRecord> run_perf(const PerfConfig& config) {
    std::vector<PerfRecord> rows;
    for (std::size_t n : config.ns) {
        const SweepInput in = sweep_input(n, config.traces, config.deviations, config.seed);
        UncertaintyParams up{config.p, alphabet(in.model), config.interval_radius};
        const auto log = inject_uncertainty(in.log, up, config.seed);
        const auto report = compute_bounds(log, in.model, config.bounds);

        PerfRecord r;
        r.n = n;
        r.traces = log.size();
        r.completed = report.completed;
        r.exploded = report.exploded;
        r.lower_total = report.lower_total;
        r.seed = config.seed;
        std::vector<double> bf, bn;
        for (const auto& t : report.traces) {
            if (t.status != TraceStatus::ok) continue;
            bf.push_back(t.bruteforce_ms);
            bn.push_back(t.behavior_ms);
            r.bruteforce_total_ms += t.bruteforce_ms;
            r.behavior_total_ms += t.behavior_ms;
        }
        r.bruteforce_median_ms = median(bf);
        r.behavior_median_ms = median(bn);
        rows.push_back(r);
    }
    return rows;
}

std::string perf_csv(const std::vector<PerfRecord>& rows) {
    std::string out = "n,traces,completed,exploded,lower_total,bruteforce_total_ms,behavior_total_ms,"
                      "bruteforce_median_ms,behavior_median_ms,ratio,seed\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.traces) + "," + std::to_string(r.completed) + "," +
               std::to_string(r.exploded) + "," + std::to_string(r.lower_total) + "," +
               fmt("%.3f", r.bruteforce_total_ms) + "," + fmt("%.3f", r.behavior_total_ms) + "," +
               fmt("%.4f", r.bruteforce_median_ms) + "," + fmt("%.4f", r.behavior_median_ms) + "," +
               fmt("%.5f", r.ratio()) + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

} // namespace uconf
