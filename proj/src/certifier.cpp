#include "gdmatch/certifier.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace gdm {

namespace {

std::string pair_str(RequestId u, RequestId v)
{
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

struct ReplaySet {
    std::vector<RequestId> members;
    std::optional<SetId> parent;
    bool active = true;
    Scalar y;
    std::size_t marked_inside = 0;
};

/**
 *  Independent re-execution of an event log. Only the instance and the log are
 *  trusted as inputs; every derived quantity is rebuilt here.
 */
class Replay {
public:
    Replay(const Instance& inst, const EventLog& log)
        : inst_(inst), log_(log), n_(inst.size()), zero_(Scalar::zero(inst.mode())),
          singleton_(n_, 0), active_of_(n_, 0), match_time_(n_), adjacency_(n_), forest_(n_)
    {
        std::iota(forest_.begin(), forest_.end(), RequestId{0});
    }

    /// Replays events [0, stop); with stop == log size also runs the end-of-run checks.
    void play(std::size_t stop)
    {
        index_ = 0;
        while (index_ < stop) {
            const Event& ev = log_[index_];
            if (!started_) {
                clock_ = ev.time;
                started_ = true;
            }
            if (ev.time < clock_) fail("monotonicity", "event time " + ev.time.str() + " precedes " + clock_.str());
            if (ev.time > clock_) {
                check_batch();
                advance(ev.time, stop);
                continue;
            }
            step(ev);
            ++index_;
        }
        if (stop == log_.size()) {
            index_ = log_.size();
            check_batch();
            check_end();
        }
    }

    /// Marked tree path inspection for a pair being matched at the current state.
    PathCheck path_check(RequestId u, RequestId v) const
    {
        PathCheck out;
        out.distance = inst_.distance(u, v);
        out.path = tree_path(u, v);
        out.path_distance = zero_;
        out.path_cost = zero_;
        if (out.path.empty()) return out;
        for (std::size_t i = 0; i + 1 < out.path.size(); ++i) {
            out.path_distance += inst_.distance(out.path[i], out.path[i + 1]);
            out.path_cost += *inst_.edge_cost(out.path[i], out.path[i + 1]);
        }
        for (const ReplaySet& s : sets_) {
            std::size_t crossings = 0;
            for (std::size_t i = 0; i + 1 < out.path.size(); ++i) {
                crossings += contains(s, out.path[i]) != contains(s, out.path[i + 1]);
            }
            out.max_crossings = std::max(out.max_crossings, crossings);
        }
        out.distance_ok = tolerant_le(out.distance, out.path_distance) && tolerant_le(out.path_distance, out.path_cost);
        out.crossings_ok = out.max_crossings <= 2;
        return out;
    }

    DualCertificate certificate() const
    {
        DualCertificate c;
        c.m = inst_.m();
        c.objective = zero_;
        for (SetId id = 0; id < sets_.size(); ++id) {
            const ReplaySet& s = sets_[id];
            unsigned sur = inst_.surplus(s.members);
            c.sets.push_back({id, s.members, sur, s.y});
            c.objective += Scalar(static_cast<int>(sur)) * s.y;
        }
        for (RequestId u = 0; u < n_; ++u) {
            for (RequestId v = u + 1; v < n_; ++v) {
                if (inst_.eligible(u, v)) c.per_edge_slack.push_back({u, v, *inst_.edge_cost(u, v) - constraint(u, v)});
            }
        }
        c.matching = matching_;
        c.connection_cost = c.waiting_cost = zero_;
        for (const MatchedPair& p : matching_) {
            c.connection_cost += inst_.distance(p.u, p.v);
            c.waiting_cost += (p.time - inst_.request(p.u).atime) + (p.time - inst_.request(p.v).atime);
        }
        c.total_cost = c.connection_cost + c.waiting_cost;
        return c;
    }

    const std::vector<PathCheck>& path_checks() const { return path_checks_; }

    std::size_t index() const { return index_; }

private:
    [[noreturn]] void fail(std::string property, std::string detail) const
    {
        throw CertificationError(Violation{std::move(property), std::move(detail), index_});
    }

    bool contains(const ReplaySet& s, RequestId u) const
    {
        return std::binary_search(s.members.begin(), s.members.end(), u);
    }

    bool is_free(RequestId u) const { return u < arrived_ && !match_time_[u]; }

    void require_request(RequestId u, const char* what) const
    {
        if (u >= arrived_) fail("log structure", std::string(what) + " names unarrived request " + std::to_string(u));
    }

    std::size_t free_count(const ReplaySet& s) const
    {
        return static_cast<std::size_t>(std::count_if(s.members.begin(), s.members.end(), [&](RequestId u) { return is_free(u); }));
    }

    // Sets containing u, innermost first.
    std::vector<SetId> chain(RequestId u) const
    {
        std::vector<SetId> out{singleton_[u]};
        while (sets_[out.back()].parent) out.push_back(*sets_[out.back()].parent);
        return out;
    }

    Scalar potential(RequestId u) const
    {
        Scalar sum = zero_;
        for (SetId s : chain(u)) sum += sets_[s].y;
        return sum;
    }

    /// Sum of y_S over sets holding exactly one of u, v.
    Scalar constraint(RequestId u, RequestId v) const
    {
        auto cu = chain(u);
        auto cv = chain(v);
        while (!cu.empty() && !cv.empty() && cu.back() == cv.back()) {
            cu.pop_back();
            cv.pop_back();
        }
        Scalar sum = zero_;
        for (SetId s : cu) sum += sets_[s].y;
        for (SetId s : cv) sum += sets_[s].y;
        return sum;
    }

    RequestId find(RequestId x)
    {
        while (forest_[x] != x) x = forest_[x] = forest_[forest_[x]];
        return x;
    }

    std::vector<RequestId> tree_path(RequestId from, RequestId to) const
    {
        std::vector<std::optional<RequestId>> previous(n_);
        std::deque<RequestId> queue{from};
        previous[from] = from;
        while (!queue.empty()) {
            RequestId x = queue.front();
            queue.pop_front();
            if (x == to) break;
            for (RequestId z : adjacency_[x]) {
                if (!previous[z]) {
                    previous[z] = x;
                    queue.push_back(z);
                }
            }
        }
        if (!previous[to]) return {};
        std::vector<RequestId> path{to};
        while (path.back() != from) path.push_back(*previous[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
    }

    void advance(const Scalar& t, std::size_t stop)
    {
        std::vector<SetId> growing;
        for (SetId id = 0; id < sets_.size(); ++id) {
            if (sets_[id].active && free_count(sets_[id]) > 0) growing.push_back(id);
        }
        std::vector<char> seen(sets_.size(), 0);
        while (index_ < stop && log_[index_].time == t) {
            const auto* grow = std::get_if<event::Grow>(&log_[index_].what);
            if (!grow) break;
            if (grow->set >= sets_.size() || !std::binary_search(growing.begin(), growing.end(), grow->set)) {
                fail("P4 potential", "set " + std::to_string(grow->set) + " grows without a free request");
            }
            if (seen[grow->set]) fail("log structure", "set " + std::to_string(grow->set) + " grows twice");
            if (!(grow->from == clock_) || !(grow->to == t)) {
                fail("P4 potential", "grow interval [" + grow->from.str() + "," + grow->to.str() + "] of set " +
                                         std::to_string(grow->set) + " does not span [" + clock_.str() + "," + t.str() + "]");
            }
            seen[grow->set] = 1;
            ++index_;
        }
        for (SetId id : growing) {
            if (!seen[id]) fail("P4 potential", "growing set " + std::to_string(id) + " did not grow over [" + clock_.str() + "," + t.str() + "]");
            sets_[id].y += t - clock_;
        }
        clock_ = t;
        for (RequestId u = 0; u < arrived_; ++u) {
            if (is_free(u) && !tolerant_equal(potential(u), clock_ - inst_.request(u).atime)) {
                fail("P4 potential", "free request " + std::to_string(u) + " has Y " + potential(u).str() + " at time " + clock_.str());
            }
        }
    }

    void step(const Event& ev)
    {
        if (pending_tight_ && !std::holds_alternative<event::Merge>(ev.what)) {
            fail("log structure", "tight event not followed by its merge");
        }
        std::visit([&](const auto& e) { apply(e); }, ev.what);
    }

    void apply(const event::Grow&) { fail("log structure", "grow record outside the start of a time step"); }

    void apply(const event::Arrival& e)
    {
        if (e.request != arrived_ || e.request >= n_) fail("log structure", "arrival of request " + std::to_string(e.request) + " out of order");
        if (!(inst_.request(e.request).atime == clock_)) {
            fail("arrival time", "request " + std::to_string(e.request) + " arrives at " + inst_.request(e.request).atime.str() +
                                     ", logged at " + clock_.str());
        }
        if (e.set != sets_.size()) fail("log structure", "arrival creates set " + std::to_string(e.set) + ", expected " + std::to_string(sets_.size()));
        ReplaySet s;
        s.members = {e.request};
        s.y = zero_;
        singleton_[e.request] = e.set;
        active_of_[e.request] = e.set;
        sets_.push_back(std::move(s));
        ++arrived_;
    }

    void apply(const event::Tight& e)
    {
        require_request(e.u, "tight event");
        require_request(e.v, "tight event");
        if (!inst_.eligible(e.u, e.v)) fail("P11 eligibility", "tight event on ineligible pair " + pair_str(e.u, e.v));
        if (active_of_[e.u] == active_of_[e.v]) fail("log structure", "tight pair " + pair_str(e.u, e.v) + " already shares an active set");
        Scalar value = constraint(e.u, e.v);
        if (!tolerant_equal(value, *inst_.edge_cost(e.u, e.v))) {
            fail("P7 marked tight", "pair " + pair_str(e.u, e.v) + " marked at value " + value.str() + " < cost " + inst_.edge_cost(e.u, e.v)->str());
        }
        if (e.u > e.v) fail("tie order", "tight pair " + pair_str(e.u, e.v) + " is not listed as (min, max)");
        for (RequestId u = 0; u <= e.u; ++u) {
            for (RequestId v = u + 1; v < (u == e.u ? e.v : arrived_); ++v) {
                if (!inst_.eligible(u, v) || active_of_[u] == active_of_[v]) continue;
                if (tolerant_equal(constraint(u, v), *inst_.edge_cost(u, v))) {
                    fail("tie order", "pair " + pair_str(u, v) + " is tight and precedes " + pair_str(e.u, e.v));
                }
            }
        }
        pending_tight_ = RequestPair{e.u, e.v};
    }

    void apply(const event::Merge& e)
    {
        if (!pending_tight_) fail("log structure", "merge without a tight edge");
        auto [u, v] = *pending_tight_;
        pending_tight_.reset();
        if (e.left != active_of_[u] || e.right != active_of_[v]) fail("log structure", "merge children differ from the tight pair's active sets");
        if (e.set != sets_.size()) fail("log structure", "merge creates set " + std::to_string(e.set) + ", expected " + std::to_string(sets_.size()));
        if (find(u) == find(v)) fail("P6 marked forest", "marked edge " + pair_str(u, v) + " closes a cycle");
        forest_[find(u)] = find(v);
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
        marked_.push_back(ordered(u, v));

        ReplaySet s;
        ReplaySet& a = sets_[e.left];
        ReplaySet& b = sets_[e.right];
        std::merge(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(), std::back_inserter(s.members));
        s.y = zero_;
        s.marked_inside = a.marked_inside + b.marked_inside + 1;
        a.active = b.active = false;
        a.parent = b.parent = e.set;
        for (RequestId x : s.members) active_of_[x] = e.set;
        sets_.push_back(std::move(s));
    }

    void apply(const event::Match& e)
    {
        require_request(e.u, "match");
        require_request(e.v, "match");
        if (!inst_.eligible(e.u, e.v)) fail("P11 eligibility", "matched ineligible pair " + pair_str(e.u, e.v));
        if (!is_free(e.u) || !is_free(e.v)) fail("P11 eligibility", "matched pair " + pair_str(e.u, e.v) + " is not free");
        if (active_of_[e.u] != active_of_[e.v]) fail("log structure", "matched pair " + pair_str(e.u, e.v) + " lies in different active sets");

        PathCheck check = path_check(e.u, e.v);
        if (check.path.empty()) fail("P6 marked forest", "no marked path between " + pair_str(e.u, e.v));
        if (!check.distance_ok) fail("P9 connection bound", "dist of " + pair_str(e.u, e.v) + " exceeds its marked path");
        if (!check.crossings_ok) {
            fail("P9 connection bound", "marked path of " + pair_str(e.u, e.v) + " crosses a set " + std::to_string(check.max_crossings) + " times");
        }
        path_checks_.push_back(std::move(check));
        match_time_[e.u] = match_time_[e.v] = clock_;
        matching_.push_back({e.u, e.v, clock_});
    }

    void check_batch() const
    {
        if (pending_tight_) fail("log structure", "tight event not followed by its merge");

        std::size_t covered = 0;
        for (SetId id = 0; id < sets_.size(); ++id) {
            const ReplaySet& s = sets_[id];
            if (!s.active) continue;
            covered += s.members.size();
            for (RequestId u : s.members) {
                if (active_of_[u] != id) fail("P1 partition", "request " + std::to_string(u) + " lies in two active sets");
            }
            if (free_count(s) != inst_.surplus(s.members)) {
                fail("P3 surplus", "active set " + std::to_string(id) + " has " + std::to_string(free_count(s)) +
                                       " free requests, surplus " + std::to_string(inst_.surplus(s.members)));
            }
            if (s.marked_inside + 1 != s.members.size()) fail("P6 marked forest", "active set " + std::to_string(id) + " is not spanned by a tree");
        }
        if (covered != arrived_) fail("P1 partition", "active sets cover " + std::to_string(covered) + " of " + std::to_string(arrived_) + " arrived requests");

        for (RequestId u = 0; u < arrived_; ++u) {
            Scalar y = potential(u);
            Scalar waited = clock_ - inst_.request(u).atime;
            if (!tolerant_le(y, waited)) fail("P4 potential", "request " + std::to_string(u) + " has Y " + y.str() + " > " + waited.str());
            if (is_free(u) && !tolerant_equal(y, waited)) fail("P4 potential", "free request " + std::to_string(u) + " has Y " + y.str() + " != " + waited.str());
        }

        for (RequestId u = 0; u < arrived_; ++u) {
            for (RequestId v = u + 1; v < arrived_; ++v) {
                if (!inst_.eligible(u, v)) continue;
                Scalar value = constraint(u, v);
                const Scalar cost = *inst_.edge_cost(u, v);
                if (!tolerant_le(value, cost)) fail("P5 feasibility", "pair " + pair_str(u, v) + " at " + value.str() + " > cost " + cost.str());
                if (active_of_[u] != active_of_[v] && tolerant_equal(value, cost)) {
                    fail("tight exhaustion", "pair " + pair_str(u, v) + " is tight across active sets after processing");
                }
            }
        }

        for (auto [u, v] : marked_) {
            if (active_of_[u] != active_of_[v]) fail("P6 marked forest", "marked edge " + pair_str(u, v) + " crosses an active boundary");
            if (!tolerant_equal(constraint(u, v), *inst_.edge_cost(u, v))) fail("P7 marked tight", "marked edge " + pair_str(u, v) + " lost tightness");
        }
    }

    void check_end() const
    {
        if (arrived_ != n_) fail("completeness", std::to_string(n_ - arrived_) + " requests never arrived");
        for (RequestId u = 0; u < n_; ++u) {
            if (!match_time_[u]) fail("completeness", "request " + std::to_string(u) + " never matched");
        }

        for (std::size_t i = 0; i < sets_.size(); ++i) {
            for (std::size_t j = i + 1; j < sets_.size(); ++j) {
                const auto& a = sets_[i].members;
                const auto& b = sets_[j].members;
                std::vector<RequestId> common;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
                if (!common.empty() && common.size() != a.size() && common.size() != b.size()) {
                    fail("P2 laminar", "sets " + std::to_string(i) + " and " + std::to_string(j) + " cross");
                }
            }
        }

        DualCertificate c = certificate();
        if (!tolerant_equal(c.waiting_cost, c.objective)) {
            fail("P8 waiting equals dual", "waiting " + c.waiting_cost.str() + " vs dual objective " + c.objective.str());
        }
        for (const MatchedPair& p : c.matching) {
            if (!tolerant_le(inst_.distance(p.u, p.v), Scalar(2) * c.objective)) {
                fail("P9 connection bound", "dist of " + pair_str(p.u, p.v) + " exceeds twice the dual objective");
            }
        }
        const Scalar bound = Scalar(static_cast<int>(2 * inst_.m() + 1));
        if (!tolerant_le(c.total_cost, bound * c.objective)) {
            fail("P10 total bound", "total " + c.total_cost.str() + " > (2m+1) * " + c.objective.str());
        }
    }

    const Instance& inst_;
    const EventLog& log_;
    std::size_t n_;
    Scalar zero_;

    std::size_t index_ = 0;
    bool started_ = false;
    Scalar clock_;
    std::size_t arrived_ = 0;
    std::vector<ReplaySet> sets_;
    std::vector<SetId> singleton_;
    std::vector<SetId> active_of_;
    std::vector<std::optional<Scalar>> match_time_;
    std::vector<MatchedPair> matching_;
    std::vector<std::vector<RequestId>> adjacency_;
    std::vector<RequestId> forest_;
    std::vector<RequestPair> marked_;
    std::optional<RequestPair> pending_tight_;
    std::vector<PathCheck> path_checks_;
};

} // namespace

CertifyOutcome certify(const Instance& instance, const EventLog& log)
{
    try {
        Replay replay(instance, log);
        replay.play(log.size());
        return replay.certificate();
    } catch (const CertificationError& e) {
        return e.violation();
    }
}

CertifyOutcome certify(const Instance& instance, const RunResult& result)
{
    CertifyOutcome outcome = certify(instance, result.events);
    const auto* cert = std::get_if<DualCertificate>(&outcome);
    if (!cert) return outcome;

    auto drift = [&](const std::string& what, const Scalar& reported, const Scalar& recomputed) -> std::optional<Violation> {
        if (tolerant_equal(reported, recomputed)) return std::nullopt;
        return Violation{"aggregate drift", what + " reported " + reported.str() + ", recomputed " + recomputed.str(), result.events.size()};
    };
    if (auto v = drift("connection cost", result.connection_cost, cert->connection_cost)) return *v;
    if (auto v = drift("waiting cost", result.waiting_cost, cert->waiting_cost)) return *v;
    if (auto v = drift("dual objective", result.dual_objective, cert->objective)) return *v;
    if (auto v = drift("total cost", result.total_cost, cert->total_cost)) return *v;
    if (result.matching.size() != cert->matching.size()) {
        return Violation{"aggregate drift", "matching size differs from the log", result.events.size()};
    }
    return outcome;
}

PathCheck marked_path_check(const Instance& instance, const EventLog& log, RequestPair pair)
{
    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto* match = std::get_if<event::Match>(&log[i].what);
        if (!match || ordered(match->u, match->v) != ordered(pair.first, pair.second)) continue;
        Replay replay(instance, log);
        replay.play(i);
        return replay.path_check(pair.first, pair.second);
    }
    throw std::invalid_argument("pair " + pair_str(pair.first, pair.second) + " is not matched in the log");
}

RatioReport ratio_report(const Instance& instance, const DualCertificate& certificate, std::optional<Scalar> opt_value)
{
    auto ratio = [](const Scalar& num, const Scalar& den) {
        if (den.sign() == 0) return num.sign() == 0 ? Scalar(1) + Scalar::zero(num.mode()) : num / Scalar(0.0);
        return num / den;
    };
    RatioReport r;
    r.gd_total = certificate.total_cost;
    r.dual_objective = certificate.objective;
    r.bound = Scalar(static_cast<int>(2 * instance.m() + 1));
    if (!tolerant_le(r.gd_total, r.bound * r.dual_objective)) {
        throw CertificationError({"P10 total bound", "total " + r.gd_total.str() + " > (2m+1) * " + r.dual_objective.str(), 0});
    }
    r.ratio_vs_dual = ratio(r.gd_total, r.dual_objective);
    if (opt_value) {
        if (!tolerant_le(r.dual_objective, *opt_value)) {
            throw CertificationError({"weak duality", "dual objective " + r.dual_objective.str() + " > opt " + opt_value->str(), 0});
        }
        r.opt_value = opt_value;
        r.ratio_vs_opt = ratio(r.gd_total, *opt_value);
    }
    return r;
}

} // namespace gdm
