#ifndef GDMATCH_INSTANCE_HPP
#define GDMATCH_INSTANCE_HPP

#include "gdmatch/metric.hpp"
#include "gdmatch/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gdm {

/// Non-bipartite (any two requests may be matched) or bipartite (opposite polarities only).
enum class Variant { mpmd, mbpmd };

std::string_view to_string(Variant variant);
Variant variant_from_string(std::string_view text);

using RequestId = std::size_t;

struct Request {
    RequestId index = 0;
    Point pos;
    Scalar atime;
    int sgn = 0; ///< -1 or +1 in mbpmd, 0 in mpmd
};

/**
 *  A validated request sequence. Construction converts every quantity to
 *  `mode` and throws InputError on any broken invariant: metric axioms,
 *  point/metric mismatch, nondecreasing arrival times, even count, polarity
 *  balance. Request indices are reassigned to list order.
 */
class Instance {
public:
    Instance(Variant variant, NumericMode mode, Metric metric, std::vector<Request> requests);

    Variant variant() const noexcept { return variant_; }
    NumericMode mode() const noexcept { return mode_; }
    const Metric& metric() const noexcept { return metric_; }
    std::span<const Request> requests() const noexcept { return requests_; }
    const Request& request(RequestId u) const { return requests_.at(u); }
    std::size_t size() const noexcept { return requests_.size(); }
    /// Number of pairs in a perfect matching.
    std::size_t m() const noexcept { return requests_.size() / 2; }

    bool eligible(RequestId u, RequestId v) const;
    Scalar distance(RequestId u, RequestId v) const;

    /// dist + |atime difference|, or nullopt when the pair may not be matched.
    std::optional<Scalar> edge_cost(RequestId u, RequestId v) const;

    /// Parity of the size (mpmd) or absolute polarity imbalance (mbpmd).
    unsigned surplus(std::span<const RequestId> members) const;

    /// Same instance re-expressed in another numeric mode.
    Instance converted(NumericMode mode) const;

private:
    Variant variant_;
    NumericMode mode_;
    Metric metric_;
    std::vector<Request> requests_;
};

} // namespace gdm

#endif // GDMATCH_INSTANCE_HPP
