#include "gdmatch/cli.hpp"

#include "gdmatch/bench.hpp"
#include "gdmatch/certifier.hpp"
#include "gdmatch/errors.hpp"
#include "gdmatch/generators.hpp"
#include "gdmatch/json_io.hpp"
#include "gdmatch/offline_opt.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gdm {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

NumericMode env_mode()
{
    const char* env = std::getenv("DM_MODE");
    if (!env || !*env) return NumericMode::exact;
    return numeric_mode_from_string(env);
}

std::optional<NumericMode> mode_flag(const std::string& text)
{
    if (text.empty()) return std::nullopt;
    return numeric_mode_from_string(text);
}

Instance load_instance(const std::string& path, const std::string& mode)
{
    return parse_instance(read_file(path), mode_flag(mode), env_mode());
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) {
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text)
{
    std::vector<std::size_t> out;
    for (const std::string& part : split(text, ',')) {
        auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoul(part));
            } else {
                std::size_t lo = std::stoul(part.substr(0, dash));
                std::size_t hi = std::stoul(part.substr(dash + 1));
                for (std::size_t x = lo; x <= hi; ++x) out.push_back(x);
            }
        } catch (const std::logic_error&) {
            throw InputError("bad number list '" + text + "'");
        }
    }
    return out;
}

struct GenParams {
    std::string kind;
    std::size_t m = 0;
    std::string variant = "mpmd";
    std::uint64_t seed = 1;
    std::string metric = "line";
    long horizon = 10;
    long spread = 10;
    unsigned long resolution = 4;
    std::string half = "clockwise";
    std::string mode;
    std::string out;
};

Instance generate(const GenParams& p)
{
    if (p.kind == "tightness") return tightness_instance(p.m, variant_from_string(p.variant));
    if (p.kind == "ring") {
        if (p.half != "clockwise" && p.half != "counterclockwise") throw InputError("--half must be clockwise or counterclockwise");
        return ring_instance(p.m, p.half == "clockwise" ? RingHalf::clockwise : RingHalf::counterclockwise);
    }
    if (p.kind == "random") {
        RandomSpec spec;
        spec.seed = p.seed;
        spec.m = p.m;
        spec.variant = variant_from_string(p.variant);
        spec.metric = metric_kind_from_string(p.metric);
        spec.horizon = p.horizon;
        spec.spread = p.spread;
        spec.resolution = p.resolution;
        return random_instance(spec);
    }
    throw InputError("unknown generator kind '" + p.kind + "' (expected tightness|ring|random)");
}

int cmd_gen(const GenParams& p, std::ostream& out)
{
    Instance inst = generate(p);
    if (auto mode = mode_flag(p.mode)) inst = inst.converted(*mode);
    const std::string text = serialize_instance(inst);
    if (p.out.empty()) {
        out << text;
    } else {
        write_file(p.out, text);
    }
    return kExitOk;
}

struct RunParams {
    std::string instance;
    std::string trace;
    bool certify = false;
    std::string mode;
};

int cmd_run(const RunParams& p, std::ostream& out, std::ostream& err)
{
    const Instance inst = load_instance(p.instance, p.mode);
    RunResult result = run(inst);
    if (!p.trace.empty()) write_file(p.trace, write_event_log(result.events));
    out << summary_to_json(result).dump(2) << '\n';
    if (p.certify) {
        CertifyOutcome outcome = certify(inst, result);
        if (const auto* v = std::get_if<Violation>(&outcome)) {
            err << violation_to_json(*v).dump(2) << '\n';
            return kExitViolation;
        }
    }
    return kExitOk;
}

struct OptParams {
    std::string instance;
    std::string method = "auto";
    std::string mode;
};

int cmd_opt(const OptParams& p, std::ostream& out)
{
    const Instance inst = load_instance(p.instance, p.mode);
    const OptChoice choice = opt_choice_from_string(p.method);
    if (choice == OptChoice::none) throw InputError("opt needs a method other than none");
    auto solution = solve_offline(inst, choice);
    if (!solution) throw SizeError("no exact oracle applies: non-bipartite instance above " + std::to_string(kBruteForceLimit) + " requests");
    out << opt_to_json(*solution).dump(2) << '\n';
    return kExitOk;
}

struct CertifyParams {
    std::string instance;
    std::string trace;
    std::string opt = "auto";
    std::string mode;
};

int cmd_certify(const CertifyParams& p, std::ostream& out)
{
    const Instance inst = load_instance(p.instance, p.mode);
    const OptChoice choice = opt_choice_from_string(p.opt);
    CertifyOutcome outcome = p.trace.empty() ? certify(inst, run(inst))
                                             : certify(inst, read_event_log(read_file(p.trace), inst.mode()));
    Json doc;
    if (const auto* v = std::get_if<Violation>(&outcome)) {
        doc["certified"] = false;
        doc["violation"] = violation_to_json(*v);
        out << doc.dump(2) << '\n';
        return kExitViolation;
    }
    const auto& cert = std::get<DualCertificate>(outcome);
    std::optional<Scalar> opt_value;
    if (auto solution = solve_offline(inst, choice)) opt_value = solution->value;
    try {
        RatioReport report = ratio_report(inst, cert, opt_value);
        doc["certified"] = true;
        doc["report"] = ratio_report_to_json(report);
        doc["certificate"] = certificate_to_json(cert);
    } catch (const CertificationError& e) {
        doc["certified"] = false;
        doc["violation"] = violation_to_json(e.violation());
        out << doc.dump(2) << '\n';
        return kExitViolation;
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
}

struct BenchParams {
    std::vector<std::string> files;
    std::string gen;
    std::string seeds = "1";
    std::string ms = "2";
    std::string variant = "mpmd";
    std::string metric = "line";
    std::string opt = "auto";
    std::string out;
    std::string csv;
    std::string mode;
    unsigned threads = 1;
    bool timing = false;
};

std::vector<BenchItem> bench_corpus(const BenchParams& p)
{
    std::vector<BenchItem> items;
    for (const std::string& file : p.files) items.push_back({file, load_instance(file, p.mode)});
    if (p.gen.empty()) return items;

    const auto ms = parse_sizes(p.ms);
    if (p.gen == "tightness") {
        for (std::size_t m : ms) {
            items.push_back({"tightness-m" + std::to_string(m) + "-" + p.variant, tightness_instance(m, variant_from_string(p.variant))});
        }
    } else if (p.gen == "ring") {
        for (std::size_t m : ms) items.push_back({"ring-m" + std::to_string(m), ring_instance(m)});
    } else if (p.gen == "random") {
        static const char* kMetrics[] = {"line", "matrix", "ring"};
        for (std::size_t seed : parse_sizes(p.seeds)) {
            for (std::size_t m : ms) {
                RandomSpec spec;
                spec.seed = seed;
                spec.m = m;
                std::string variant = p.variant == "mixed" ? (seed % 2 ? "mpmd" : "mbpmd") : p.variant;
                std::string metric = p.metric == "mixed" ? kMetrics[(seed / 2) % 3] : p.metric;
                spec.variant = variant_from_string(variant);
                spec.metric = metric_kind_from_string(metric);
                items.push_back({"random-s" + std::to_string(seed) + "-m" + std::to_string(m) + "-" + variant + "-" + metric,
                                 random_instance(spec)});
            }
        }
    } else {
        throw InputError("unknown bench generator '" + p.gen + "' (expected tightness|ring|random)");
    }
    if (auto mode = mode_flag(p.mode)) {
        for (BenchItem& item : items) item.instance = item.instance.converted(*mode);
    }
    return items;
}

int cmd_bench(const BenchParams& p, std::ostream& out)
{
    std::vector<BenchItem> items = bench_corpus(p);
    if (items.empty()) throw InputError("empty corpus: pass --files and/or --gen");
    BenchOptions options;
    options.opt = opt_choice_from_string(p.opt);
    options.threads = p.threads;
    std::vector<BenchRow> rows = run_bench(items, options);
    out << bench_to_table(rows, p.timing);
    if (!p.out.empty()) write_file(p.out, bench_to_json(rows, p.timing).dump(2) + "\n");
    if (!p.csv.empty()) write_file(p.csv, bench_to_csv(rows));
    return bench_exit_code(rows);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Greedy Dual for min-cost (bipartite) perfect matching with delays"};
    app.require_subcommand(1);

    GenParams gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance (tightness, ring or random)");
    gen_cmd->add_option("--kind", gen.kind, "tightness|ring|random")->required();
    gen_cmd->add_option("--m", gen.m, "Number of pairs (half the request count)")->required();
    gen_cmd->add_option("--variant", gen.variant, "mpmd|mbpmd");
    gen_cmd->add_option("--seed", gen.seed, "Random generator seed");
    gen_cmd->add_option("--metric", gen.metric, "line|matrix|ring|euclidean (random only)");
    gen_cmd->add_option("--horizon", gen.horizon, "Arrival times lie in [0, horizon] (random only)");
    gen_cmd->add_option("--spread", gen.spread, "Coordinates lie in [0, spread] (random only)");
    gen_cmd->add_option("--resolution", gen.resolution, "Denominator of drawn rationals (random only)");
    gen_cmd->add_option("--half", gen.half, "clockwise|counterclockwise (ring only)");
    gen_cmd->add_option("--mode", gen.mode, "exact|float");
    gen_cmd->add_option("-o,--out", gen.out, "Output file (default stdout)");

    RunParams runp;
    auto* run_cmd = app.add_subcommand("run", "Run Greedy Dual on an instance and print a cost summary");
    run_cmd->add_option("instance", runp.instance, "Instance JSON file")->required();
    run_cmd->add_option("--trace", runp.trace, "Write the event log (JSON Lines) here");
    run_cmd->add_flag("--certify", runp.certify, "Certify the run; exit 2 on a violation");
    run_cmd->add_option("--mode", runp.mode, "exact|float");

    OptParams optp;
    auto* opt_cmd = app.add_subcommand("opt", "Offline optimum of an instance");
    opt_cmd->add_option("instance", optp.instance, "Instance JSON file")->required();
    opt_cmd->add_option("--method", optp.method, "brute|hungarian|auto");
    opt_cmd->add_option("--mode", optp.mode, "exact|float");

    CertifyParams certp;
    auto* cert_cmd = app.add_subcommand("certify", "Verify a run and print its dual certificate and ratio report");
    cert_cmd->add_option("instance", certp.instance, "Instance JSON file")->required();
    cert_cmd->add_option("--trace", certp.trace, "Event log to verify (default: run the engine)");
    cert_cmd->add_option("--opt", certp.opt, "brute|hungarian|auto|none");
    cert_cmd->add_option("--mode", certp.mode, "exact|float");

    BenchParams benchp;
    auto* bench_cmd = app.add_subcommand("bench", "Run, certify and compare a corpus against the offline optimum");
    bench_cmd->add_option("--files", benchp.files, "Instance files");
    bench_cmd->add_option("--gen", benchp.gen, "tightness|ring|random");
    bench_cmd->add_option("--seeds", benchp.seeds, "Seeds, e.g. 1-100 or 1,5,9 (random)");
    bench_cmd->add_option("--m", benchp.ms, "Pair counts, e.g. 4,10,20");
    bench_cmd->add_option("--variant", benchp.variant, "mpmd|mbpmd|mixed");
    bench_cmd->add_option("--metric", benchp.metric, "line|matrix|ring|euclidean|mixed (random)");
    bench_cmd->add_option("--opt", benchp.opt, "brute|hungarian|auto|none");
    bench_cmd->add_option("--out", benchp.out, "Write rows and aggregate as JSON");
    bench_cmd->add_option("--csv", benchp.csv, "Write rows as CSV");
    bench_cmd->add_option("--threads", benchp.threads, "Worker threads");
    bench_cmd->add_flag("--timing", benchp.timing, "Include wall times (output no longer reproducible)");
    bench_cmd->add_option("--mode", benchp.mode, "exact|float");

    std::vector<std::string> argv_storage{"gdmatch"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*run_cmd) return cmd_run(runp, out, err);
        if (*opt_cmd) return cmd_opt(optp, out);
        if (*cert_cmd) return cmd_certify(certp, out);
        if (*bench_cmd) return cmd_bench(benchp, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const EnginePanic& e) {
        err << "engine invariant breached: " << e.what() << '\n';
        return kExitViolation;
    } catch (const CertificationError& e) {
        err << "certification failed: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitInput;
}

} // namespace gdm
