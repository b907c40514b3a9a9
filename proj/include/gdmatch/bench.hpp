#ifndef GDMATCH_BENCH_HPP
#define GDMATCH_BENCH_HPP

#include "gdmatch/json_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gdm {

enum class OptChoice {
    none,
    brute,
    hungarian,
    /// brute up to kBruteForceLimit requests, hungarian above it for mbpmd, none otherwise
    automatic,
};

OptChoice opt_choice_from_string(std::string_view text);

/// Applies `choice`; nullopt for OptChoice::none or when automatic finds no applicable oracle.
std::optional<OptSolution> solve_offline(const Instance& instance, OptChoice choice);

struct BenchItem {
    std::string id;
    Instance instance;
};

struct BenchRow {
    std::string instance_id;
    std::size_t m = 0;
    Variant variant = Variant::mpmd;
    Scalar gd_total;
    Scalar dual_objective;
    std::optional<Scalar> opt_value;
    Scalar ratio_vs_dual;
    std::optional<Scalar> ratio_vs_opt;
    bool certified = false;
    /// Set on error rows: the violated property or the input error.
    std::string error;
    bool violation = false; ///< error is a certification violation rather than an input error
    double wall_time = 0;   ///< seconds
};

struct BenchOptions {
    OptChoice opt = OptChoice::automatic;
    unsigned threads = 1;
};

/// One row per item, in item order regardless of which worker finished first.
std::vector<BenchRow> run_bench(const std::vector<BenchItem>& items, const BenchOptions& options);

/// Fixed column order: instance_id,m,variant,gd_total,dual_objective,opt_value,ratio_vs_dual,ratio_vs_opt,certified,error
std::string bench_to_csv(const std::vector<BenchRow>& rows);
/// {"rows": [...], "aggregate": {...}}. Wall times only when `with_timing`.
Json bench_to_json(const std::vector<BenchRow>& rows, bool with_timing = false);
std::string bench_to_table(const std::vector<BenchRow>& rows, bool with_timing = false);

/// 0 when every row certified, 2 if any violation, 1 if only input errors.
int bench_exit_code(const std::vector<BenchRow>& rows);

} // namespace gdm

#endif // GDMATCH_BENCH_HPP
