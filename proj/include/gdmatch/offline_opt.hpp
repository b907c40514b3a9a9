#ifndef GDMATCH_OFFLINE_OPT_HPP
#define GDMATCH_OFFLINE_OPT_HPP

#include "gdmatch/engine.hpp"
#include "gdmatch/instance.hpp"

#include <string_view>
#include <vector>

namespace gdm {

enum class OptMethod { brute, hungarian };

std::string_view to_string(OptMethod method);

/// A minimum-cost perfect matching under cost = dist + |atime difference|.
struct OptSolution {
    std::vector<RequestPair> pairs; ///< sorted, each (min, max)
    Scalar value;
    OptMethod method = OptMethod::brute;
};

/// Largest request count the exhaustive oracle accepts.
inline constexpr std::size_t kBruteForceLimit = 12;

/**
 *  Exhaustive search over all perfect matchings (eligible pairs only).
 *  Among minima, returns the lexicographically least sorted pair list.
 *  Throws SizeError above kBruteForceLimit requests.
 */
OptSolution opt_brute(const Instance& instance);

/// Assignment between positive and negative requests. mbpmd only; throws InputError otherwise.
OptSolution opt_hungarian(const Instance& instance);

/// Value of a given perfect matching. Throws InputError if it is not one.
Scalar matching_cost(const Instance& instance, const std::vector<RequestPair>& pairs);

} // namespace gdm

#endif // GDMATCH_OFFLINE_OPT_HPP
