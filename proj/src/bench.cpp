#include "gdmatch/bench.hpp"

#include "gdmatch/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace gdm {

OptChoice opt_choice_from_string(std::string_view text)
{
    if (text == "none") return OptChoice::none;
    if (text == "brute") return OptChoice::brute;
    if (text == "hungarian") return OptChoice::hungarian;
    if (text == "auto") return OptChoice::automatic;
    throw InputError("unknown opt method '" + std::string(text) + "' (expected brute|hungarian|auto|none)");
}

std::optional<OptSolution> solve_offline(const Instance& instance, OptChoice choice)
{
    switch (choice) {
    case OptChoice::none: return std::nullopt;
    case OptChoice::brute: return opt_brute(instance);
    case OptChoice::hungarian: return opt_hungarian(instance);
    case OptChoice::automatic:
        if (instance.size() <= kBruteForceLimit) return opt_brute(instance);
        if (instance.variant() == Variant::mbpmd) return opt_hungarian(instance);
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

BenchRow bench_one(const BenchItem& item, OptChoice opt)
{
    const auto start = std::chrono::steady_clock::now();
    BenchRow row;
    row.instance_id = item.id;
    row.m = item.instance.m();
    row.variant = item.instance.variant();
    try {
        RunResult result = run(item.instance);
        CertifyOutcome outcome = certify(item.instance, result);
        if (const auto* v = std::get_if<Violation>(&outcome)) {
            row.error = v->property + ": " + v->detail;
            row.violation = true;
        } else {
            const auto& cert = std::get<DualCertificate>(outcome);
            std::optional<Scalar> opt_value;
            if (auto solution = solve_offline(item.instance, opt)) opt_value = solution->value;
            RatioReport report = ratio_report(item.instance, cert, opt_value);
            row.gd_total = report.gd_total;
            row.dual_objective = report.dual_objective;
            row.opt_value = report.opt_value;
            row.ratio_vs_dual = report.ratio_vs_dual;
            row.ratio_vs_opt = report.ratio_vs_opt;
            row.certified = true;
        }
    } catch (const CertificationError& e) {
        row.error = e.what();
        row.violation = true;
    } catch (const EnginePanic& e) {
        row.error = e.what();
        row.violation = true;
    } catch (const InputError& e) {
        row.error = e.what();
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::string opt_str(const std::optional<Scalar>& x) { return x ? x->str() : ""; }

std::string decimal(const Scalar& x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x.to_double());
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::vector<BenchRow> run_bench(const std::vector<BenchItem>& items, const BenchOptions& options)
{
    std::vector<BenchRow> rows(items.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) rows[i] = bench_one(items[i], options.opt);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(items.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows)
{
    std::ostringstream out;
    out << "instance_id,m,variant,gd_total,dual_objective,opt_value,ratio_vs_dual,ratio_vs_opt,certified,error\n";
    for (const BenchRow& r : rows) {
        out << csv_field(r.instance_id) << ',' << r.m << ',' << to_string(r.variant) << ',';
        if (r.certified) {
            out << r.gd_total.str() << ',' << r.dual_objective.str() << ',' << opt_str(r.opt_value) << ','
                << r.ratio_vs_dual.str() << ',' << opt_str(r.ratio_vs_opt) << ",true,";
        } else {
            out << ",,,,,false," << csv_field(r.error);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

struct Aggregate {
    std::optional<Scalar> max_ratio_vs_dual;
    std::optional<Scalar> max_ratio_vs_opt;
    std::size_t certified = 0;
};

Aggregate aggregate(const std::vector<BenchRow>& rows)
{
    Aggregate a;
    for (const BenchRow& r : rows) {
        if (!r.certified) continue;
        ++a.certified;
        if (!a.max_ratio_vs_dual || *a.max_ratio_vs_dual < r.ratio_vs_dual) a.max_ratio_vs_dual = r.ratio_vs_dual;
        if (r.ratio_vs_opt && (!a.max_ratio_vs_opt || *a.max_ratio_vs_opt < *r.ratio_vs_opt)) a.max_ratio_vs_opt = r.ratio_vs_opt;
    }
    return a;
}

} // namespace

Json bench_to_json(const std::vector<BenchRow>& rows, bool with_timing)
{
    auto optional_json = [](const std::optional<Scalar>& x) { return x ? scalar_to_json(*x) : Json(nullptr); };
    Json out;
    Json list = Json::array();
    for (const BenchRow& r : rows) {
        Json j;
        j["instance_id"] = r.instance_id;
        j["m"] = r.m;
        j["variant"] = std::string(to_string(r.variant));
        if (r.certified) {
            j["gd_total"] = scalar_to_json(r.gd_total);
            j["dual_objective"] = scalar_to_json(r.dual_objective);
            j["opt_value"] = optional_json(r.opt_value);
            j["ratio_vs_dual"] = scalar_to_json(r.ratio_vs_dual);
            j["ratio_vs_opt"] = optional_json(r.ratio_vs_opt);
        }
        j["certified"] = r.certified;
        if (!r.certified) j["error"] = r.error;
        if (with_timing) j["wall_time"] = r.wall_time;
        list.push_back(std::move(j));
    }
    out["rows"] = std::move(list);
    Aggregate a = aggregate(rows);
    out["aggregate"] = {{"instances", rows.size()},
                        {"certified", a.certified},
                        {"max_ratio_vs_dual", optional_json(a.max_ratio_vs_dual)},
                        {"max_ratio_vs_opt", optional_json(a.max_ratio_vs_opt)}};
    return out;
}

std::string bench_to_table(const std::vector<BenchRow>& rows, bool with_timing)
{
    std::ostringstream out;
    int width = 8;
    for (const BenchRow& r : rows) width = std::max(width, static_cast<int>(r.instance_id.size()));
    std::vector<char> line(static_cast<std::size_t>(width) + 256);
    auto emit = [&] {
        std::string text(line.data());
        text.erase(text.find_last_not_of(' ') + 1);
        out << text << '\n';
    };
    std::snprintf(line.data(), line.size(), "%-*s %4s %-6s %12s %12s %12s %10s %10s %s", width, "instance", "m", "var",
                  "gd_total", "dual", "opt", "gd/dual", "gd/opt", with_timing ? "time[s]" : "");
    emit();
    for (const BenchRow& r : rows) {
        if (!r.certified) {
            out << r.instance_id << "  ERROR " << r.error << '\n';
            continue;
        }
        std::string timing;
        if (with_timing) {
            char t[32];
            std::snprintf(t, sizeof t, "%.4f", r.wall_time);
            timing = t;
        }
        std::snprintf(line.data(), line.size(), "%-*s %4zu %-6s %12s %12s %12s %10s %10s %s", width, r.instance_id.c_str(), r.m,
                      std::string(to_string(r.variant)).c_str(), decimal(r.gd_total).c_str(),
                      decimal(r.dual_objective).c_str(), r.opt_value ? decimal(*r.opt_value).c_str() : "-",
                      decimal(r.ratio_vs_dual).c_str(), r.ratio_vs_opt ? decimal(*r.ratio_vs_opt).c_str() : "-",
                      timing.c_str());
        emit();
    }
    Aggregate a = aggregate(rows);
    out << "aggregate: " << a.certified << "/" << rows.size() << " certified";
    if (a.max_ratio_vs_dual) out << ", max gd/dual " << decimal(*a.max_ratio_vs_dual);
    if (a.max_ratio_vs_opt) out << ", max gd/opt " << decimal(*a.max_ratio_vs_opt);
    out << '\n';
    return out.str();
}

int bench_exit_code(const std::vector<BenchRow>& rows)
{
    int code = 0;
    for (const BenchRow& r : rows) {
        if (r.certified) continue;
        code = std::max(code, r.violation ? 2 : 1);
    }
    return code;
}

} // namespace gdm
