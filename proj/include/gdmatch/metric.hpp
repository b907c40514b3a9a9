#ifndef GDMATCH_METRIC_HPP
#define GDMATCH_METRIC_HPP

#include "gdmatch/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gdm {

enum class MetricKind { matrix, line, euclidean, ring };

std::string_view to_string(MetricKind kind);
MetricKind metric_kind_from_string(std::string_view text);

/// A location in a metric space. Which coordinates are meaningful depends on `kind`.
struct Point {
    MetricKind kind = MetricKind::line;
    std::size_t index = 0; ///< matrix
    Scalar x;              ///< line, euclidean, ring (arc position in [0, h))
    Scalar y;              ///< euclidean

    static Point matrix(std::size_t index) { return {MetricKind::matrix, index, {}, {}}; }
    static Point line(Scalar x) { return {MetricKind::line, 0, std::move(x), {}}; }
    static Point plane(Scalar x, Scalar y) { return {MetricKind::euclidean, 0, std::move(x), std::move(y)}; }

    friend bool operator==(const Point&, const Point&) = default;
};

/// Which metric axiom failed, and on which points.
struct MetricViolation {
    enum class Axiom { identity, symmetry, nonnegativity, triangle } axiom;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t via = 0; ///< intermediate point, triangle violations only

    std::string describe() const;
};

class Metric {
public:
    static Metric matrix(std::vector<std::vector<Scalar>> distances);
    static Metric line();
    static Metric euclidean();
    static Metric ring(Scalar circumference);

    MetricKind kind() const noexcept { return kind_; }
    const std::vector<std::vector<Scalar>>& distances() const noexcept { return distances_; }
    const Scalar& circumference() const noexcept { return circumference_; }
    std::size_t size() const noexcept { return distances_.size(); }

    /// Ring positions are reduced modulo the circumference.
    Point ring_point(Scalar position) const;

    /// Throws InvalidPoint when `p` does not belong to this metric.
    void check_point(const Point& p) const;

    Scalar distance(const Point& a, const Point& b) const;

    /// Exhaustive axiom check for explicit matrices; other kinds hold by construction.
    std::optional<MetricViolation> validate() const;

    Metric converted(NumericMode mode) const;

private:
    MetricKind kind_ = MetricKind::line;
    std::vector<std::vector<Scalar>> distances_;
    Scalar circumference_;
};

} // namespace gdm

#endif // GDMATCH_METRIC_HPP
