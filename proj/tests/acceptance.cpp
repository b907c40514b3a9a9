#include "gdmatch/certifier.hpp"
#include "gdmatch/cli.hpp"
#include "gdmatch/engine.hpp"
#include "gdmatch/generators.hpp"
#include "gdmatch/json_io.hpp"
#include "gdmatch/offline_opt.hpp"

#include "test_support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gdm;
using gdm::test::q;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::size_t checked = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        ++checked;
        if (!ok) failures.push_back(what);
    }
};

struct CorpusRun {
    Instance instance;
    RunResult result;
    CertifyOutcome outcome;
    OptSolution opt;
};

std::string label(std::size_t i) { return "corpus #" + std::to_string(i); }

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string describe(const CertifyOutcome& outcome)
{
    const auto* v = std::get_if<Violation>(&outcome);
    return v ? v->property + " at event " + std::to_string(v->event_index) + ": " + v->detail : "certified";
}

bool violates(const CertifyOutcome& outcome, std::initializer_list<std::string_view> prefixes)
{
    const auto* v = std::get_if<Violation>(&outcome);
    if (!v) return false;
    for (std::string_view p : prefixes) {
        if (v->property.starts_with(p)) return true;
    }
    return false;
}

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "GD total <= (2m+1) OPT on the random corpus"},
        {2, "dual objective <= OPT on the random corpus"},
        {3, "waiting cost equals dual objective (exact corpus, float euclidean corpus)"},
        {4, "dual feasibility at every event"},
        {5, "marked forest spans active sets and stays tight at every event"},
        {6, "matched distance bounded by marked path, at most two crossings, and 2x dual"},
        {7, "lower-bound instance: connection 2m, total 2m+2+2(m-1)/m, OPT 2(1+(m-1)/m)"},
        {8, "free requests have Y equal to their waiting time at every event"},
        {9, "assignment oracle equals exhaustive oracle on bipartite instances"},
        {10, "identical inputs give byte-identical files and reports"},
    };
    auto& c1 = criteria[0];
    auto& c2 = criteria[1];
    auto& c3 = criteria[2];
    auto& c4 = criteria[3];
    auto& c5 = criteria[4];
    auto& c6 = criteria[5];
    auto& c7 = criteria[6];
    auto& c8 = criteria[7];
    auto& c9 = criteria[8];
    auto& c10 = criteria[9];

    // Exact corpus: 600 instances, 2m <= 10, both variants, line/matrix/ring.
    std::vector<CorpusRun> corpus;
    for (Instance& inst : gdm::test::small_corpus(600)) {
        RunResult r = run(inst);
        CertifyOutcome outcome = certify(inst, r);
        OptSolution opt = opt_brute(inst);
        corpus.push_back({std::move(inst), std::move(r), std::move(outcome), std::move(opt)});
    }

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusRun& c = corpus[i];
        const Scalar bound = Scalar(static_cast<int>(2 * c.instance.m() + 1));
        c1.expect(c.result.total_cost <= bound * c.opt.value, label(i) + ": total " + c.result.total_cost.str() + " vs OPT " + c.opt.value.str());
        c2.expect(c.result.dual_objective <= c.opt.value, label(i) + ": dual " + c.result.dual_objective.str() + " vs OPT " + c.opt.value.str());
        c3.expect(c.result.waiting_cost == c.result.dual_objective && !violates(c.outcome, {"P8"}),
                  label(i) + ": waiting " + c.result.waiting_cost.str() + " vs dual " + c.result.dual_objective.str());

        // A violation of any kind stops the replay, so later events were not checked either.
        const bool certified = std::holds_alternative<DualCertificate>(c.outcome);
        c4.expect(certified, label(i) + ": " + describe(c.outcome));
        c5.expect(certified, label(i) + ": " + describe(c.outcome));
        c8.expect(certified, label(i) + ": " + describe(c.outcome));

        for (const MatchedPair& p : c.result.matching) {
            PathCheck check = marked_path_check(c.instance, c.result.events, ordered(p.u, p.v));
            c6.expect(check.distance_ok && check.crossings_ok && check.distance <= Scalar(2) * c.result.dual_objective,
                      label(i) + ": pair (" + std::to_string(p.u) + "," + std::to_string(p.v) + ") crossings " +
                          std::to_string(check.max_crossings));
        }
        if (c.instance.variant() == Variant::mbpmd) {
            OptSolution h = opt_hungarian(c.instance);
            c9.expect(h.value == c.opt.value, label(i) + ": hungarian " + h.value.str() + " vs brute " + c.opt.value.str());
        }
    }

    // Bipartite instances with twelve requests.
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.m = 6;
        spec.variant = Variant::mbpmd;
        spec.metric = seed % 3 == 0 ? MetricKind::line : seed % 3 == 1 ? MetricKind::matrix : MetricKind::ring;
        Instance inst = random_instance(spec);
        OptSolution b = opt_brute(inst);
        OptSolution h = opt_hungarian(inst);
        c9.expect(b.value == h.value, "m=6 seed " + std::to_string(seed) + ": hungarian " + h.value.str() + " vs brute " + b.value.str());
    }

    // Float corpus on the plane.
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.m = 1 + seed % 5;
        spec.variant = seed % 2 ? Variant::mbpmd : Variant::mpmd;
        spec.metric = MetricKind::euclidean;
        Instance inst = random_instance(spec);
        RunResult r = run(inst);
        const double w = r.waiting_cost.to_double();
        const double d = r.dual_objective.to_double();
        c3.expect(std::abs(w - d) <= 1e-6 * std::max(1.0, std::abs(d)),
                  "euclidean seed " + std::to_string(seed) + ": waiting " + r.waiting_cost.str() + " vs dual " + r.dual_objective.str());
    }

    // Structured instances: the lower-bound family and the ring construction.
    std::vector<Instance> structured;
    for (std::size_t m : {4u, 10u, 20u, 50u}) {
        for (Variant variant : {Variant::mpmd, Variant::mbpmd}) structured.push_back(tightness_instance(m, variant));
    }
    for (std::size_t m : {6u, 8u, 12u}) structured.push_back(ring_instance(m));
    for (const Instance& inst : structured) {
        RunResult r = run(inst);
        CertifyOutcome outcome = certify(inst, r);
        const bool certified = std::holds_alternative<DualCertificate>(outcome);
        const std::string name = std::string(to_string(inst.variant())) + " structured m=" + std::to_string(inst.m());
        c4.expect(certified, name + ": " + describe(outcome));
        c5.expect(certified, name + ": " + describe(outcome));
        c8.expect(certified, name + ": " + describe(outcome));
        c3.expect(r.waiting_cost == r.dual_objective, name + ": waiting differs from dual");
        for (const MatchedPair& p : r.matching) {
            PathCheck check = marked_path_check(inst, r.events, ordered(p.u, p.v));
            c6.expect(check.distance_ok && check.crossings_ok && check.distance <= Scalar(2) * r.dual_objective, name + ": path check");
        }
    }

    for (std::size_t m : {4u, 10u, 20u, 50u}) {
        for (Variant variant : {Variant::mpmd, Variant::mbpmd}) {
            const std::string name = std::string(to_string(variant)) + " m=" + std::to_string(m);
            Instance inst = tightness_instance(m, variant);
            RunResult r = run(inst);
            const Scalar mm(static_cast<int>(m));
            const Scalar frac = q(static_cast<long>(m - 1), m);
            const Scalar opt_expected = Scalar(2) * (Scalar(1) + frac);
            c7.expect(r.connection_cost == Scalar(2) * mm, name + ": connection " + r.connection_cost.str());
            c7.expect(r.total_cost == Scalar(2) * mm + Scalar(2) + Scalar(2) * frac, name + ": total " + r.total_cost.str());

            // Pair neighbouring releases at the same point: (p1,p2), (q1,q2), (p3,p4), ...
            std::vector<RequestPair> same_point;
            for (std::size_t j = 0; j < m; j += 2) {
                same_point.push_back({2 * j, 2 * j + 2});
                same_point.push_back({2 * j + 1, 2 * j + 3});
            }
            const Scalar pairing = matching_cost(inst, same_point);
            c7.expect(pairing == opt_expected && opt_expected < Scalar(4), name + ": same-point pairing " + pairing.str());

            Scalar opt = pairing;
            if (2 * m <= kBruteForceLimit) {
                opt = opt_brute(inst).value;
                c7.expect(opt == opt_expected, name + ": brute OPT " + opt.str());
            } else if (variant == Variant::mbpmd) {
                opt = opt_hungarian(inst).value;
                c7.expect(opt == opt_expected, name + ": hungarian OPT " + opt.str());
            }
            c7.expect(r.total_cost / opt >= mm / Scalar(2), name + ": ratio " + (r.total_cost / opt).str());
        }
    }

    // Free requests: P4 checked by the engine itself as well as by the replay.
    for (std::size_t i = 0; i < 200; ++i) {
        try {
            run(corpus[i].instance, {.check_invariants = true});
            c8.expect(true, "");
        } catch (const std::exception& e) {
            c8.expect(false, label(i) + ": " + e.what());
        }
    }

    // Determinism through the command-line tool.
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gdmatch_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto tool = [&](std::vector<std::string> args, const std::string& stdout_file) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        std::ofstream(dir / stdout_file, std::ios::binary) << out.str();
        return code;
    };
    for (int round = 0; round < 2; ++round) {
        const std::string t = std::to_string(round);
        const std::string inst = (dir / ("rand" + t + ".json")).string();
        const std::string tight = (dir / ("tight" + t + ".json")).string();
        tool({"gen", "--kind", "random", "--m", "5", "--seed", "17", "--variant", "mbpmd", "--metric", "matrix", "-o", inst}, "gen_out" + t);
        tool({"gen", "--kind", "tightness", "--m", "10", "--variant", "mbpmd", "-o", tight}, "gen2_out" + t);
        tool({"gen", "--kind", "ring", "--m", "8"}, "ring" + t);
        tool({"run", inst, "--trace", (dir / ("trace" + t)).string()}, "run" + t);
        tool({"run", tight, "--certify"}, "run_tight" + t);
        tool({"opt", inst}, "opt" + t);
        tool({"certify", tight, "--opt", "hungarian"}, "cert" + t);
        tool({"bench", "--gen", "random", "--seeds", "1-40", "--m", "1,2,3,4,5", "--variant", "mixed", "--metric", "mixed",
              "--threads", round ? "4" : "1", "--out", (dir / ("bench" + t + ".json")).string(), "--csv", (dir / ("bench" + t + ".csv")).string()},
             "bench_table" + t);
    }
    for (const char* stem : {"rand", "tight"}) {
        c10.expect(slurp(dir / (std::string(stem) + "0.json")) == slurp(dir / (std::string(stem) + "1.json")), std::string(stem) + " instance differs");
    }
    for (const char* stem : {"gen_out", "gen2_out", "ring", "trace", "run", "run_tight", "opt", "cert", "bench_table"}) {
        const std::string a = slurp(dir / (std::string(stem) + "0"));
        c10.expect(!a.empty() || std::string_view(stem).starts_with("gen"), std::string(stem) + " is empty");
        c10.expect(a == slurp(dir / (std::string(stem) + "1")), std::string(stem) + " differs");
    }
    for (const char* ext : {".json", ".csv"}) {
        c10.expect(slurp(dir / ("bench0" + std::string(ext))) == slurp(dir / ("bench1" + std::string(ext))), std::string("bench") + ext + " differs");
    }
    fs::remove_all(dir);

    bool all = true;
    for (const Criterion& c : criteria) {
        const bool ok = c.failures.empty() && c.checked > 0;
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " (" << c.checked << " checks";
        if (!ok) std::cout << ", " << c.failures.size() << " failed";
        std::cout << ")\n";
        for (std::size_t k = 0; k < std::min<std::size_t>(c.failures.size(), 5); ++k) std::cout << "    " << c.failures[k] << "\n";
    }
    return all ? 0 : 1;
}
