#ifndef GDMATCH_TEST_SUPPORT_HPP
#define GDMATCH_TEST_SUPPORT_HPP

#include "gdmatch/engine.hpp"
#include "gdmatch/generators.hpp"
#include "gdmatch/instance.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace gdm::test {

inline Scalar q(long num, unsigned long den = 1) { return Scalar::rational(num, den); }

struct LineRequest {
    Scalar x;
    Scalar atime;
    int sgn = 0;
};

inline Instance line_instance(Variant variant, const std::vector<LineRequest>& spec)
{
    std::vector<Request> requests;
    for (const auto& r : spec) requests.push_back({0, Point::line(r.x), r.atime, r.sgn});
    return Instance(variant, NumericMode::exact, Metric::line(), std::move(requests));
}

/// Random exact corpus cycling through variants and metrics, 2m <= 10.
inline std::vector<Instance> small_corpus(std::size_t count, std::uint64_t first_seed = 1)
{
    static const MetricKind kMetrics[] = {MetricKind::line, MetricKind::matrix, MetricKind::ring};
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
        RandomSpec spec;
        spec.seed = first_seed + i;
        spec.m = 1 + (i % 5);
        spec.variant = i % 2 ? Variant::mbpmd : Variant::mpmd;
        spec.metric = kMetrics[(i / 2) % 3];
        spec.horizon = static_cast<long>(2 + i % 7);
        spec.spread = static_cast<long>(1 + (i / 3) % 8);
        out.push_back(random_instance(spec));
    }
    return out;
}

/**
 *  Reference Greedy Dual kept deliberately naive: no cached potentials, no
 *  frozen values, every constraint re-summed over the whole set family. Used
 *  only to cross-check the engine's matching and costs.
 */
struct ReferenceRun {
    std::vector<std::tuple<RequestId, RequestId, Scalar>> matching;
    Scalar dual_objective;
};

inline ReferenceRun reference_greedy_dual(const Instance& inst)
{
    struct Set {
        std::vector<RequestId> members;
        bool active = true;
        Scalar y;
    };
    const std::size_t n = inst.size();
    std::vector<Set> sets;
    std::vector<char> matched(n, 0);
    std::size_t arrived = 0;
    Scalar now = inst.request(0).atime;
    ReferenceRun out;

    auto in = [](const Set& s, RequestId u) { return std::find(s.members.begin(), s.members.end(), u) != s.members.end(); };
    auto active_of = [&](RequestId u) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (sets[i].active && in(sets[i], u)) return i;
        }
        throw std::logic_error("request without active set");
    };
    auto growing = [&](const Set& s) {
        return s.active && std::any_of(s.members.begin(), s.members.end(), [&](RequestId u) { return !matched[u]; });
    };
    auto crossing_sum = [&](RequestId u, RequestId v) {
        Scalar sum;
        for (const Set& s : sets) {
            if (in(s, u) != in(s, v)) sum += s.y;
        }
        return sum;
    };

    while (arrived < n || std::count(matched.begin(), matched.end(), 0) > 0) {
        std::optional<Scalar> next;
        if (arrived < n) next = inst.request(arrived).atime;
        for (RequestId u = 0; u < arrived; ++u) {
            for (RequestId v = u + 1; v < arrived; ++v) {
                if (!inst.eligible(u, v) || active_of(u) == active_of(v)) continue;
                int rate = growing(sets[active_of(u)]) + growing(sets[active_of(v)]);
                if (rate == 0) continue;
                Scalar t = now + (*inst.edge_cost(u, v) - crossing_sum(u, v)) / Scalar(rate);
                if (!next || t < *next) next = t;
            }
        }
        const Scalar dt = *next - now;
        for (Set& s : sets) {
            if (growing(s)) s.y += dt;
        }
        now = *next;
        while (arrived < n && inst.request(arrived).atime == now) {
            sets.push_back({{arrived}, true, Scalar()});
            ++arrived;
        }
        for (bool again = true; again;) {
            again = false;
            for (RequestId u = 0; u < arrived && !again; ++u) {
                for (RequestId v = u + 1; v < arrived && !again; ++v) {
                    if (!inst.eligible(u, v) || active_of(u) == active_of(v)) continue;
                    if (!(crossing_sum(u, v) == *inst.edge_cost(u, v))) continue;
                    Set merged;
                    std::size_t a = active_of(u);
                    std::size_t b = active_of(v);
                    merged.members = sets[a].members;
                    merged.members.insert(merged.members.end(), sets[b].members.begin(), sets[b].members.end());
                    std::sort(merged.members.begin(), merged.members.end());
                    sets[a].active = sets[b].active = false;
                    for (;;) {
                        std::vector<RequestId> free;
                        for (RequestId w : merged.members) {
                            if (!matched[w]) free.push_back(w);
                        }
                        std::optional<std::pair<RequestId, RequestId>> pick;
                        for (std::size_t j = 1; j < free.size() && !pick; ++j) {
                            if (inst.eligible(free[0], free[j])) pick = std::pair{free[0], free[j]};
                        }
                        if (!pick) break;
                        matched[pick->first] = matched[pick->second] = 1;
                        out.matching.emplace_back(pick->first, pick->second, now);
                    }
                    sets.push_back(std::move(merged));
                    again = true;
                }
            }
        }
    }
    for (const Set& s : sets) out.dual_objective += Scalar(static_cast<int>(inst.surplus(s.members))) * s.y;
    return out;
}

} // namespace gdm::test

#endif // GDMATCH_TEST_SUPPORT_HPP
