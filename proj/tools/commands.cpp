#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "uconf/errors.hpp"
#include "uconf/experiment.hpp"
#include "uconf/jsonl.hpp"
#include "uconf/pnml.hpp"
#include "uconf/xes.hpp"

namespace uconf::cli {

namespace {

CostFunction parse_cost(const std::string& spec) {
    CostFunction c;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--cost", "expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        std::uint32_t value = 0;
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1 || v > 1'000'000) throw std::invalid_argument(item);
            value = static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--cost", "bad value in '" + item + "'");
        }
        if (key == "sync") c.synchronous = value;
        else if (key == "logmove") c.log_move = value;
        else if (key == "modelmove") c.model_visible = value;
        else if (key == "tau") c.model_invisible = value;
        else throw CLI::ValidationError("--cost", "unknown key '" + key + "'");
    }
    return c;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot write " + path);
    f << text;
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string with_extension(const std::string& path, const std::string& ext) {
    return std::filesystem::path(path).replace_extension(ext).string();
}

struct BoundsArgs {
    std::string log, model, out, cost = "sync=0,logmove=1,modelmove=1,tau=0";
    std::size_t cap = 10'000;
    std::size_t workers = 1;
    std::size_t state_cap = 1'000'000;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
    const SimpleUncertainLog log = load_log_file(a.log);
    const SystemNet model = load_pnml_file(a.model);

    BoundsConfig config;
    config.align.cost = parse_cost(a.cost);
    config.align.state_cap = a.state_cap;
    config.realization_cap = a.cap;
    config.workers = a.workers;
    const BoundsReport report = compute_bounds(log, model, config);

    for (const auto& t : report.traces) {
        if (t.status != TraceStatus::ok) err << "trace '" << t.case_id << "': " << to_string(t.status) << ": " << t.message << "\n";
    }
    write_text(a.out, bounds_json(report), out);
    if (!a.out.empty() && a.out != "-") write_text(with_extension(a.out, ".csv"), bounds_csv(report), out);

    if (report.failed) return kExitAlignment;
    if (report.exploded) return kExitExplosion;
    return kExitOk;
}

struct GenArgs {
    std::size_t n = 10, traces = 250;
    double p = 0.0;
    std::uint64_t seed = 1;
    std::string out, model;
    bool no_deviations = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    DeviationParams dev;
    if (a.no_deviations) dev = {0.0, 0.0, 0.0};
    const SweepInput in = sweep_input(a.n, a.traces, dev, a.seed);
    const auto log = inject_uncertainty(in.log, {a.p, alphabet(in.model), 3 * kMillisPerDay / 2}, a.seed);
    if (!a.model.empty()) save_pnml_file(in.model, a.model);
    if (a.out.empty() || a.out == "-") out << write_jsonl(log);
    else save_log_file(log, a.out);
    return kExitOk;
}

struct SweepArgs {
    std::size_t n = 10, traces = 250, cap = 10'000, workers = 1;
    std::vector<double> ps{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    std::uint64_t seed = 1;
    std::string out;
    bool timings = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    SweepConfig config;
    config.n = a.n;
    config.traces = a.traces;
    config.ps = a.ps;
    config.seed = a.seed;
    config.bounds.realization_cap = a.cap;
    config.bounds.workers = a.workers;
    write_text(a.out, sweep_csv(run_sweep(config), a.timings), out);
    return kExitOk;
}

struct PerfArgs {
    std::vector<std::size_t> ns{5, 8, 12};
    std::size_t traces = 100, cap = 10'000, workers = 1;
    double p = 0.2;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_perf(const PerfArgs& a, std::ostream& out) {
    PerfConfig config;
    config.ns = a.ns;
    config.traces = a.traces;
    config.p = a.p;
    config.seed = a.seed;
    config.bounds.realization_cap = a.cap;
    config.bounds.workers = a.workers;
    write_text(a.out, perf_csv(run_perf(config)), out);
    return kExitOk;
}

// Each weak event goes to the case of its enclosing trace when that case is
// possible, otherwise to its least possible case.
SimpleUncertainLog strengthen(const std::vector<WeakTrace>& weak) {
    std::vector<WeaklyUncertainEvent> events;
    std::vector<CaseId> home;
    for (const auto& t : weak) {
        for (const auto& e : t.events) {
            events.push_back(e);
            home.push_back(t.case_id);
        }
    }
    const auto strong = weak_to_strong(events);
    std::map<EventId, CaseId> assignment;
    for (std::size_t i = 0; i < strong.size(); ++i) {
        const auto& cases = strong[i].case_ids;
        assignment[strong[i].id] = cases.count(home[i]) ? home[i] : *cases.begin();
    }
    return simplify(strong, assignment);
}

struct ConvertArgs {
    std::string log, out;
    bool weak = false;
};

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
    const SimpleUncertainLog log = a.weak ? strengthen(import_xes_weak(read_text(a.log))) : load_log_file(a.log);
    if (a.out.empty() || a.out == "-") out << write_jsonl(log);
    else save_log_file(log, a.out);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conformance bounds for uncertain event logs", "uconf"};
    app.require_subcommand(1);

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Lower and upper alignment cost per trace");
    bounds->add_option("--log", ba.log, "Uncertain log (.xes or .jsonl)")->required()->check(CLI::ExistingFile);
    bounds->add_option("--model", ba.model, "Process model (.pnml)")->required()->check(CLI::ExistingFile);
    bounds->add_option("--out", ba.out, "JSON report path; the CSV goes next to it");
    bounds->add_option("--cost", ba.cost, "Cost function")->capture_default_str();
    bounds->add_option("--cap", ba.cap, "Realizations per trace before giving up")->capture_default_str();
    bounds->add_option("--state-cap", ba.state_cap, "Search states per alignment")->capture_default_str();
    bounds->add_option("--workers", ba.workers)->check(CLI::PositiveNumber)->capture_default_str();

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "Random model, playout, deviations and uncertainty");
    gen->add_option("--n", ga.n, "Visible transitions in the model")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--traces", ga.traces)->capture_default_str();
    gen->add_option("--p", ga.p, "Uncertainty probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    gen->add_option("--seed", ga.seed)->capture_default_str();
    gen->add_option("--out", ga.out, "Log path (.xes or .jsonl); stdout gets JSON lines");
    gen->add_option("--model", ga.model, "Where to write the model (.pnml)");
    gen->add_flag("--no-deviations", ga.no_deviations);

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "Bound totals for increasing p");
    sweep->add_option("--n", sa.n)->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--traces", sa.traces)->capture_default_str();
    sweep->add_option("--p", sa.ps, "Comma-separated list")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--seed", sa.seed)->capture_default_str();
    sweep->add_option("--cap", sa.cap)->capture_default_str();
    sweep->add_option("--workers", sa.workers)->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--out", sa.out, "CSV path; stdout if omitted");
    sweep->add_flag("--timings", sa.timings, "Append wall-clock columns");

    PerfArgs pa;
    auto* perf = app.add_subcommand("perf", "Behavior net vs brute force timing");
    perf->add_option("--n", pa.ns, "Comma-separated list")->delimiter(',')->check(CLI::PositiveNumber);
    perf->add_option("--traces", pa.traces)->capture_default_str();
    perf->add_option("--p", pa.p)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    perf->add_option("--seed", pa.seed)->capture_default_str();
    perf->add_option("--cap", pa.cap)->capture_default_str();
    perf->add_option("--workers", pa.workers)->check(CLI::PositiveNumber)->capture_default_str();
    perf->add_option("--out", pa.out, "CSV path; stdout if omitted");

    ConvertArgs ca;
    auto* convert = app.add_subcommand("convert", "XES <-> JSON lines");
    convert->add_option("--log", ca.log, "Input log")->required()->check(CLI::ExistingFile);
    convert->add_option("--out", ca.out, "Output path; the extension picks the format");
    convert->add_flag("--weak", ca.weak, "Input is weakly uncertain XES");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*bounds) return cmd_bounds(ba, out, err);
        if (*gen) return cmd_gen(ga, out);
        if (*sweep) return cmd_sweep(sa, out);
        if (*perf) return cmd_perf(pa, out);
        if (*convert) return cmd_convert(ca, out);
    } catch (const CLI::ValidationError& e) {
        err << "uconf: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        err << "uconf: " << e.what() << "\n";
        return kExitParse;
    } catch (const schema_error& e) {
        err << "uconf: " << e.what() << "\n";
        return kExitParse;
    } catch (const invalid_net_error& e) {
        err << "uconf: " << e.what() << "\n";
        return kExitParse;
    } catch (const explosion_error& e) {
        err << "uconf: " << e.what() << "\n";
        return kExitExplosion;
    } catch (const std::exception& e) {
        err << "uconf: " << e.what() << "\n";
        return kExitAlignment;
    }
    return kExitUsage;
}

} // namespace uconf::cli
