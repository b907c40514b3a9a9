#include "gdmatch/offline_opt.hpp"

#include "gdmatch/errors.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace gdm {

std::string_view to_string(OptMethod method)
{
    return method == OptMethod::brute ? "brute" : "hungarian";
}

Scalar matching_cost(const Instance& instance, const std::vector<RequestPair>& pairs)
{
    std::vector<char> seen(instance.size(), 0);
    Scalar total = Scalar::zero(instance.mode());
    for (auto [u, v] : pairs) {
        if (u >= instance.size() || v >= instance.size() || seen[u] || seen[v]) {
            throw InputError("not a matching: request reused or out of range");
        }
        auto c = instance.edge_cost(u, v);
        if (!c) throw InputError("ineligible pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
        seen[u] = seen[v] = 1;
        total += *c;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InputError("matching is not perfect");
    return total;
}

OptSolution opt_brute(const Instance& instance)
{
    const std::size_t n = instance.size();
    if (n > kBruteForceLimit) {
        throw SizeError("brute force is limited to " + std::to_string(kBruteForceLimit) + " requests (instance has " +
                        std::to_string(n) + ")" +
                        (instance.variant() == Variant::mbpmd ? "; use the hungarian method" : ""));
    }

    std::vector<std::vector<std::optional<Scalar>>> cost(n, std::vector<std::optional<Scalar>>(n));
    for (RequestId u = 0; u < n; ++u) {
        for (RequestId v = 0; v < n; ++v) cost[u][v] = instance.edge_cost(u, v);
    }

    std::vector<char> used(n, 0);
    std::vector<RequestPair> current;
    std::optional<OptSolution> best;

    // The recursion always pairs the least unused request first and tries partners in
    // increasing order, so pair lists are visited in lexicographic order and the first
    // minimum found is the lexicographically least one.
    std::function<void(const Scalar&)> search = [&](const Scalar& partial) {
        if (best && partial >= best->value) return;
        auto first = std::find(used.begin(), used.end(), 0);
        if (first == used.end()) {
            best = OptSolution{current, partial, OptMethod::brute};
            return;
        }
        const auto u = static_cast<RequestId>(first - used.begin());
        used[u] = 1;
        for (RequestId v = u + 1; v < n; ++v) {
            if (used[v] || !cost[u][v]) continue;
            used[v] = 1;
            current.emplace_back(u, v);
            search(partial + *cost[u][v]);
            current.pop_back();
            used[v] = 0;
        }
        used[u] = 0;
    };
    search(Scalar::zero(instance.mode()));

    if (!best) throw InputError("instance admits no perfect matching");
    return *best;
}

OptSolution opt_hungarian(const Instance& instance)
{
    if (instance.variant() != Variant::mbpmd) throw InputError("the hungarian method needs a bipartite (mbpmd) instance");

    std::vector<RequestId> rows;
    std::vector<RequestId> cols;
    for (const Request& r : instance.requests()) (r.sgn > 0 ? rows : cols).push_back(r.index);
    const std::size_t k = rows.size();

    const Scalar zero = Scalar::zero(instance.mode());
    std::vector<std::vector<Scalar>> a(k + 1, std::vector<Scalar>(k + 1, zero));
    Scalar inf = Scalar(1) + zero;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            a[i + 1][j + 1] = *instance.edge_cost(rows[i], cols[j]);
            inf += a[i + 1][j + 1];
        }
    }

    // Shortest augmenting paths with row/column potentials, 1-based; column 0 is a sentinel.
    std::vector<Scalar> pot_row(k + 1, zero), pot_col(k + 1, zero);
    std::vector<std::size_t> match_of_col(k + 1, 0), way(k + 1, 0);
    for (std::size_t i = 1; i <= k; ++i) {
        match_of_col[0] = i;
        std::size_t j0 = 0;
        std::vector<Scalar> minv(k + 1, inf);
        std::vector<char> used(k + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match_of_col[j0];
            Scalar delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= k; ++j) {
                if (used[j]) continue;
                Scalar cur = a[i0][j] - pot_row[i0] - pot_col[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= k; ++j) {
                if (used[j]) {
                    pot_row[match_of_col[j]] += delta;
                    pot_col[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_of_col[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match_of_col[j0] = match_of_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    OptSolution out;
    out.method = OptMethod::hungarian;
    for (std::size_t j = 1; j <= k; ++j) out.pairs.push_back(ordered(rows[match_of_col[j] - 1], cols[j - 1]));
    std::sort(out.pairs.begin(), out.pairs.end());
    out.value = matching_cost(instance, out.pairs);
    return out;
}

} // namespace gdm
