#ifndef GDMATCH_CERTIFIER_HPP
#define GDMATCH_CERTIFIER_HPP

#include "gdmatch/engine.hpp"
#include "gdmatch/events.hpp"
#include "gdmatch/instance.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gdm {

/// The earliest property failure found while replaying a log.
struct Violation {
    std::string property; ///< e.g. "P5 feasibility"
    std::string detail;   ///< witnesses
    std::size_t event_index = 0; ///< position in the log; the log length for end-of-run checks
};

class CertificationError : public std::runtime_error {
public:
    explicit CertificationError(Violation v)
        : std::runtime_error(v.property + " at event " + std::to_string(v.event_index) + ": " + v.detail),
          violation_(std::move(v)) {}

    const Violation& violation() const noexcept { return violation_; }

private:
    Violation violation_;
};

struct CertifiedSet {
    SetId id = 0;
    std::vector<RequestId> members;
    unsigned sur = 0;
    Scalar y;
};

struct EdgeSlack {
    RequestId u = 0;
    RequestId v = 0;
    Scalar slack; ///< cost minus constraint value at termination
};

/**
 *  A feasible dual solution recomputed from the event log, together with the
 *  primal costs of the matching the log describes.
 */
struct DualCertificate {
    std::vector<CertifiedSet> sets;
    Scalar objective;
    std::vector<EdgeSlack> per_edge_slack;
    std::vector<MatchedPair> matching;
    Scalar connection_cost;
    Scalar waiting_cost;
    Scalar total_cost;
    std::size_t m = 0;
};

using CertifyOutcome = std::variant<DualCertificate, Violation>;

/**
 *  Replays `log` against `instance` from first principles and checks at every
 *  event time: partition, laminarity, surplus, potentials, dual feasibility,
 *  the marked forest, tightness of marked edges, exhaustion of tight cross
 *  pairs and eligibility; at termination: complete matching, waiting cost
 *  equal to the dual objective, the per-edge connection bounds and the
 *  (2m+1) total bound.
 */
CertifyOutcome certify(const Instance& instance, const EventLog& log);

/// As above, and additionally requires the result's aggregates to match the recomputation.
CertifyOutcome certify(const Instance& instance, const RunResult& result);

struct PathCheck {
    std::vector<RequestId> path; ///< u ... v along marked edges
    Scalar distance;             ///< dist(u, v)
    Scalar path_distance;        ///< sum of dist over path edges
    Scalar path_cost;            ///< sum of edge costs over path edges
    std::size_t max_crossings = 0; ///< max over sets existing at match time
    bool distance_ok = false;    ///< distance <= path_distance <= path_cost
    bool crossings_ok = false;   ///< max_crossings <= 2
};

/// Rebuilds the marked forest when `pair` is matched and inspects the tree path between its ends.
PathCheck marked_path_check(const Instance& instance, const EventLog& log, RequestPair pair);

struct RatioReport {
    Scalar gd_total;
    Scalar dual_objective;
    std::optional<Scalar> opt_value;
    Scalar ratio_vs_dual; ///< 0/0 is reported as 1
    std::optional<Scalar> ratio_vs_opt;
    Scalar bound; ///< 2m + 1
};

/// Throws CertificationError when gd_total > (2m+1)·dual or dual > opt.
RatioReport ratio_report(const Instance& instance, const DualCertificate& certificate,
                         std::optional<Scalar> opt_value = std::nullopt);

} // namespace gdm

#endif // GDMATCH_CERTIFIER_HPP
