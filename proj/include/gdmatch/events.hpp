#ifndef GDMATCH_EVENTS_HPP
#define GDMATCH_EVENTS_HPP

#include "gdmatch/instance.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace gdm {

using SetId = std::size_t;

namespace event {

struct Arrival {
    RequestId request;
    SetId set; ///< the singleton created for it
    friend bool operator==(const Arrival&, const Arrival&) = default;
};

/// The dual constraint of (u, v) became tight; always followed by the Merge it triggers.
struct Tight {
    RequestId u;
    RequestId v;
    friend bool operator==(const Tight&, const Tight&) = default;
};

struct Merge {
    SetId set;
    SetId left;  ///< active set of the tight pair's first request
    SetId right; ///< active set of the tight pair's second request
    friend bool operator==(const Merge&, const Merge&) = default;
};

struct Match {
    RequestId u;
    RequestId v;
    friend bool operator==(const Match&, const Match&) = default;
};

/// `set` grew its dual variable over [from, to]. Logged at time `to`.
struct Grow {
    SetId set;
    Scalar from;
    Scalar to;
    friend bool operator==(const Grow&, const Grow&) = default;
};

} // namespace event

/**
 *  One entry of the engine log. Within one timestamp the engine emits, in
 *  order: the Grow records of the preceding interval, the Arrivals at that
 *  time, then Tight/Merge/Match groups.
 */
struct Event {
    Scalar time;
    std::variant<event::Arrival, event::Tight, event::Merge, event::Match, event::Grow> what;

    std::string_view kind() const;
    friend bool operator==(const Event&, const Event&) = default;
};

using EventLog = std::vector<Event>;

} // namespace gdm

#endif // GDMATCH_EVENTS_HPP
