#ifndef GDMATCH_GENERATORS_HPP
#define GDMATCH_GENERATORS_HPP

#include "gdmatch/instance.hpp"

#include <cstdint>

namespace gdm {

/**
 *  Two points at distance 2 with one request at each point per release time
 *  0, 1+e, 1+3e, ..., 1+(2m-3)e where e = 1/m. Greedy Dual pays connection
 *  cost 2m on it while matching same-point neighbours costs less than 4.
 *
 *  For mbpmd, polarities alternate at the first point starting positive and
 *  are mirrored at the second. Throws InputError unless m is even and >= 2.
 */
Instance tightness_instance(std::size_t m, Variant variant);

/// Which half of the ring the first two (antipodal) requests are taken to cover.
enum class RingHalf { clockwise, counterclockwise };

/**
 *  Ring of circumference 1 with e = 1/(m * 2^(m-1)), in three phases:
 *  m/2 requests that repeatedly bisect the arc not yet covered by a greedy
 *  spanning tree, m/2 duplicates of those positions at time e, then m/2
 *  pairs at the two tree leaves p and q, pair k released at e * (1 + k).
 *  Non-bipartite. Throws InputError unless m is even and >= 6.
 */
Instance ring_instance(std::size_t m, RingHalf first_half = RingHalf::clockwise);

struct RandomSpec {
    std::uint64_t seed = 1;
    std::size_t m = 1;
    Variant variant = Variant::mpmd;
    MetricKind metric = MetricKind::line;
    /// Arrival times are drawn from [0, horizon].
    long horizon = 10;
    /// Coordinates are drawn from [0, spread] (matrix: points of an L1 grid of that size).
    long spread = 10;
    /// Denominator of every drawn rational; 1 yields integers.
    unsigned long resolution = 4;
};

/// Deterministic function of the spec. Euclidean instances are built in float mode.
Instance random_instance(const RandomSpec& spec);

} // namespace gdm

#endif // GDMATCH_GENERATORS_HPP
