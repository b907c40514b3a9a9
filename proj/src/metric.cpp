#include "gdmatch/metric.hpp"

#include "gdmatch/errors.hpp"

#include <cmath>

namespace gdm {

std::string_view to_string(MetricKind kind)
{
    switch (kind) {
    case MetricKind::matrix: return "matrix";
    case MetricKind::line: return "line";
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::ring: return "ring";
    }
    return "?";
}

MetricKind metric_kind_from_string(std::string_view text)
{
    if (text == "matrix") return MetricKind::matrix;
    if (text == "line") return MetricKind::line;
    if (text == "euclidean") return MetricKind::euclidean;
    if (text == "ring") return MetricKind::ring;
    throw InputError("unknown metric kind '" + std::string(text) + "'");
}

std::string MetricViolation::describe() const
{
    auto pair = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    switch (axiom) {
    case Axiom::identity: return "identity violated at " + pair;
    case Axiom::symmetry: return "asymmetry at " + pair;
    case Axiom::nonnegativity: return "negative distance at " + pair;
    case Axiom::triangle: return "triangle inequality violated at " + pair + " via " + std::to_string(via);
    }
    return "?";
}

Metric Metric::matrix(std::vector<std::vector<Scalar>> distances)
{
    for (const auto& row : distances) {
        if (row.size() != distances.size()) throw InputError("distance matrix is not square");
    }
    Metric m;
    m.kind_ = MetricKind::matrix;
    m.distances_ = std::move(distances);
    return m;
}

Metric Metric::line()
{
    Metric m;
    m.kind_ = MetricKind::line;
    return m;
}

Metric Metric::euclidean()
{
    Metric m;
    m.kind_ = MetricKind::euclidean;
    return m;
}

Metric Metric::ring(Scalar circumference)
{
    if (circumference.sign() <= 0) throw InputError("ring circumference must be positive");
    Metric m;
    m.kind_ = MetricKind::ring;
    m.circumference_ = std::move(circumference);
    return m;
}

Point Metric::ring_point(Scalar position) const
{
    if (kind_ != MetricKind::ring) throw InvalidPoint("ring point requested from a " + std::string(to_string(kind_)) + " metric");
    if (position.is_exact()) {
        mpq_class q = position.as_rational() / circumference_.as_rational();
        mpz_class turns;
        mpz_fdiv_q(turns.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        position -= Scalar(mpq_class(turns)) * circumference_;
    } else {
        double h = circumference_.to_double();
        double p = std::fmod(position.to_double(), h);
        if (p < 0) p += h;
        position = Scalar(p);
    }
    return {MetricKind::ring, 0, std::move(position), {}};
}

void Metric::check_point(const Point& p) const
{
    if (p.kind != kind_) {
        throw InvalidPoint(std::string(to_string(p.kind)) + " point used with a " + std::string(to_string(kind_)) + " metric");
    }
    if (kind_ == MetricKind::matrix && p.index >= distances_.size()) {
        throw InvalidPoint("matrix point index " + std::to_string(p.index) + " out of range");
    }
    if (kind_ == MetricKind::ring && (p.x.sign() < 0 || p.x >= circumference_)) {
        throw InvalidPoint("ring position " + p.x.str() + " outside [0, h)");
    }
}

Scalar Metric::distance(const Point& a, const Point& b) const
{
    check_point(a);
    check_point(b);
    switch (kind_) {
    case MetricKind::matrix: return distances_[a.index][b.index];
    case MetricKind::line: return abs(a.x - b.x);
    case MetricKind::euclidean: {
        Scalar dx = a.x - b.x;
        Scalar dy = a.y - b.y;
        return sqrt(dx * dx + dy * dy);
    }
    case MetricKind::ring: {
        Scalar d = abs(a.x - b.x);
        return min(d, circumference_ - d);
    }
    }
    throw InvalidPoint("unknown metric kind");
}

std::optional<MetricViolation> Metric::validate() const
{
    using Axiom = MetricViolation::Axiom;
    if (kind_ != MetricKind::matrix) return std::nullopt;
    const std::size_t n = distances_.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (distances_[a][a].sign() != 0) return MetricViolation{Axiom::identity, a, a};
        for (std::size_t b = 0; b < n; ++b) {
            if (distances_[a][b].sign() < 0) return MetricViolation{Axiom::nonnegativity, a, b};
            if (!(distances_[a][b] == distances_[b][a])) return MetricViolation{Axiom::symmetry, std::min(a, b), std::max(a, b)};
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (!tolerant_le(distances_[a][b], distances_[a][c] + distances_[c][b])) {
                    return MetricViolation{Axiom::triangle, a, b, c};
                }
            }
        }
    }
    return std::nullopt;
}

Metric Metric::converted(NumericMode mode) const
{
    Metric out = *this;
    for (auto& row : out.distances_) {
        for (auto& d : row) d = d.converted(mode);
    }
    out.circumference_ = circumference_.converted(mode);
    return out;
}

} // namespace gdm
