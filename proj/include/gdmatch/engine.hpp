#ifndef GDMATCH_ENGINE_HPP
#define GDMATCH_ENGINE_HPP

#include "gdmatch/events.hpp"
#include "gdmatch/instance.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace gdm {

enum class SetStatus { growing, nongrowing, inactive };

/// One set of the laminar family that was active at some point.
struct SetRecord {
    SetId id = 0;
    std::vector<RequestId> members; ///< sorted
    unsigned sur = 0;
    Scalar y;
    SetStatus status = SetStatus::growing;
    std::optional<SetId> parent;
    std::optional<std::pair<SetId, SetId>> children;
    std::vector<RequestId> free; ///< unmatched members, in arrival order
    Scalar created;
    std::vector<std::pair<Scalar, Scalar>> growth; ///< coalesced growing intervals

    bool active() const noexcept { return status != SetStatus::inactive; }
};

struct MatchedPair {
    RequestId u;
    RequestId v;
    Scalar time;
};

using RequestPair = std::pair<RequestId, RequestId>; ///< always (min, max)

inline RequestPair ordered(RequestId u, RequestId v) { return u < v ? RequestPair{u, v} : RequestPair{v, u}; }

struct RunResult {
    Variant variant = Variant::mpmd;
    NumericMode mode = NumericMode::exact;
    std::size_t m = 0;
    std::vector<MatchedPair> matching;
    std::vector<SetRecord> sets;
    std::vector<RequestPair> marked; ///< in marking order
    EventLog events;
    Scalar connection_cost;
    Scalar waiting_cost;
    Scalar dual_objective;
    Scalar total_cost;
};

enum class NextEventKind { arrival, tight };

struct NextEvent {
    Scalar time;
    NextEventKind kind;
};

struct EngineOptions {
    /// Re-verify the structural invariants after every event batch (quadratic per batch).
    bool check_invariants = false;
};

/**
 *  Event-driven simulation of Greedy Dual.
 *
 *  Every arrived request belongs to exactly one active set. Dual variables of
 *  active sets holding a free request grow at unit rate; when the constraint
 *  of an eligible pair spanning two active sets becomes tight, the sets are
 *  merged, the pair's edge is marked, and free requests inside the union are
 *  matched as long as an eligible pair of them exists.
 *
 *  The step operations are public so that single events can be driven and
 *  inspected; `run` chains them to completion.
 */
class GreedyDual {
public:
    explicit GreedyDual(const Instance& instance, EngineOptions options = {});

    const Instance& instance() const noexcept { return *instance_; }
    const Scalar& clock() const noexcept { return clock_; }
    const std::vector<SetRecord>& sets() const noexcept { return sets_; }
    const std::vector<MatchedPair>& matching() const noexcept { return matching_; }
    const std::vector<RequestPair>& marked() const noexcept { return marked_; }
    const EventLog& events() const noexcept { return events_; }
    /// Sum of y over every set containing u.
    const Scalar& potential(RequestId u) const { return potential_.at(u); }
    bool arrived(RequestId u) const { return u < next_arrival_; }
    bool is_free(RequestId u) const { return arrived(u) && !matched_.at(u); }
    /// The active set containing u. Throws if u has not arrived.
    SetId active_set(RequestId u) const;
    bool finished() const noexcept;

    /// Earliest of the next arrival and the next tight constraint. Arrivals win ties.
    NextEvent next_event_time() const;
    /// Grows every active growing set by t - clock. No event may lie strictly inside.
    void advance_to(const Scalar& t);
    /// Opens the singleton for the next pending request; the clock must equal its arrival time.
    RequestId on_arrival();
    /// Merges tight cross pairs until none remain, least pair first.
    void process_tight();
    /// Current left-hand side of the dual constraint of an eligible arrived pair.
    Scalar constraint_value(RequestId u, RequestId v) const;

    void check_invariants() const;

    RunResult result() const;

private:
    std::optional<RequestPair> least_tight_pair() const;
    void merge(RequestId u, RequestId v);
    void match_free(SetRecord& set);
    const Scalar& cost(RequestId u, RequestId v) const { return cost_[u * n_ + v]; }
    bool eligible(RequestId u, RequestId v) const { return eligible_[u * n_ + v]; }

    const Instance* instance_;
    EngineOptions options_;
    std::size_t n_;
    std::vector<Scalar> cost_;
    std::vector<char> eligible_;

    Scalar clock_;
    RequestId next_arrival_ = 0;
    std::vector<SetRecord> sets_;
    std::vector<SetId> active_of_;
    std::vector<Scalar> potential_;
    std::vector<char> matched_;
    std::map<RequestPair, Scalar> frozen_;
    std::vector<RequestPair> marked_;
    std::vector<MatchedPair> matching_;
    EventLog events_;
};

/// Runs Greedy Dual to completion.
RunResult run(const Instance& instance, EngineOptions options = {});

} // namespace gdm

#endif // GDMATCH_ENGINE_HPP
